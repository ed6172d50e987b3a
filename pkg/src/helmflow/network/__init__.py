from helmflow.network.admittance import AdmittanceModel, build_admittance
from helmflow.network.mismatch import mismatch, mismatch_norm
from helmflow.network.model import BranchSpec, BusKind, BusSpec, Network


__all__ = [
    "AdmittanceModel",
    "BranchSpec",
    "BusKind",
    "BusSpec",
    "Network",
    "build_admittance",
    "mismatch",
    "mismatch_norm",
]
