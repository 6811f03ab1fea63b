"""
Engine - laço de rodadas, amostragem de clientes e relatório da execução
"""

from .metrics import (
    FINAL_WINDOW,
    RoundMetrics,
    RunReport,
    final_accuracy,
    phase_means,
    projected_comm_units,
    rounds_to_accuracy,
)
from .sampling import sample_clients
from .setup import FederationSetup, load_dataset, prepare_federation
from .engine import FederatedEngine, run_simulation

__all__ = [
    "FINAL_WINDOW",
    "RoundMetrics",
    "RunReport",
    "final_accuracy",
    "phase_means",
    "projected_comm_units",
    "rounds_to_accuracy",
    "sample_clients",
    "FederationSetup",
    "load_dataset",
    "prepare_federation",
    "FederatedEngine",
    "run_simulation",
]
