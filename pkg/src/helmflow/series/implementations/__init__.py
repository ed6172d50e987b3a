from helmflow.series.implementations.canonical import CanonicalEmbedding
from helmflow.series.implementations.minimal import MinimalEmbedding


__all__ = [
    "CanonicalEmbedding",
    "MinimalEmbedding",
]
