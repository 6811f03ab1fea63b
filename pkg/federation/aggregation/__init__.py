"""
Agregação no servidor (ModelFusion) - FedAvg, FedProx, FedNova e FedAdam
"""

from .config import DEFAULT_PROX_MU, ServerOptimizer, ServerOptimizerConfig
from .base import ClientContribution, FusionStrategy
from .fedavg import FedAvgFusion, fedavg_fuse
from .fednova import FedNovaFusion, fednova_fuse
from .fedadam import FedAdamFusion, ServerOptState, fedadam_fuse
from .factory import FusionFactory

__all__ = [
    "DEFAULT_PROX_MU",
    "ServerOptimizer",
    "ServerOptimizerConfig",
    "ClientContribution",
    "FusionStrategy",
    "FedAvgFusion",
    "fedavg_fuse",
    "FedNovaFusion",
    "fednova_fuse",
    "FedAdamFusion",
    "ServerOptState",
    "fedadam_fuse",
    "FusionFactory",
]
