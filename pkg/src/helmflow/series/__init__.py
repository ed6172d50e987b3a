from numpy import ndarray

from helmflow.network.admittance import AdmittanceModel
from helmflow.network.model import Network
from helmflow.series.base import BaseEmbedding, CoefficientResiduals
from helmflow.series.germ import GermSeries
from helmflow.series.implementations import CanonicalEmbedding, MinimalEmbedding
from helmflow.settings.solver import EmbeddingKind

_EMBEDDINGS = {
    EmbeddingKind.MINIMAL: MinimalEmbedding,
    EmbeddingKind.CANONICAL: CanonicalEmbedding,
}


def get_embedding(
    kind: EmbeddingKind, network: Network, model: AdmittanceModel
) -> BaseEmbedding:
    """
    Instantiates the embedding implementation for ``kind``.
    """
    return _EMBEDDINGS[EmbeddingKind(kind)](network, model)


def init_white_germ(
    network: Network, model: AdmittanceModel, embedding: EmbeddingKind
) -> GermSeries:
    """
    Order-0 germ of the zero-injection energized network.

    Raises:
        WhiteBranchError: If any V_i[0] vanishes.
    """
    return get_embedding(embedding, network, model).init_white_germ()


def extend_series(
    germ: GermSeries, network: Network, model: AdmittanceModel, target_order: int
) -> GermSeries:
    """
    Extends ``germ`` in place through ``target_order``.

    Raises:
        DegenerateNetworkError: If the recursion matrix is singular.
    """
    return get_embedding(germ.embedding, network, model).extend(germ, target_order)


def embedded_residual(
    germ: GermSeries, network: Network, model: AdmittanceModel, s: complex
) -> ndarray:
    """
    Residual of the doubled embedded equations for the truncated series at ``s``.

    Raises:
        SeriesEvaluationError: If a truncated voltage series vanishes at ``s``.
    """
    return get_embedding(germ.embedding, network, model).embedded_residual(germ, s)


def coefficient_residuals(
    germ: GermSeries, network: Network, model: AdmittanceModel
) -> CoefficientResiduals:
    """
    Per-order residuals of the reflection, reciprocal and PV constraint identities.
    """
    return get_embedding(germ.embedding, network, model).coefficient_residuals(germ)


__all__ = [
    "BaseEmbedding",
    "CanonicalEmbedding",
    "CoefficientResiduals",
    "EmbeddingKind",
    "GermSeries",
    "MinimalEmbedding",
    "coefficient_residuals",
    "embedded_residual",
    "extend_series",
    "get_embedding",
    "init_white_germ",
]
