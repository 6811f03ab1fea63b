"""
ClipFL - ranking por validação, Noise Candidacy Score, poda única e métricas
"""

from .scores import CandidateSplit, NcsTable, rank_clients, split_candidates, update_ncs
from .pruning import FederationState, Phase, prune, pruning_order
from .metrics import candidate_precision, identification_accuracy, identification_recall, optional_metric
from .controller import ClipFLController

__all__ = [
    "CandidateSplit",
    "NcsTable",
    "rank_clients",
    "split_candidates",
    "update_ncs",
    "FederationState",
    "Phase",
    "prune",
    "pruning_order",
    "candidate_precision",
    "identification_accuracy",
    "identification_recall",
    "optional_metric",
    "ClipFLController",
]
