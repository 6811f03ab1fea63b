"""
FedAvg: média ponderada pelo tamanho dos datasets locais
"""

from typing import Sequence

import numpy as np

from federation.aggregation.base import ClientContribution, FusionStrategy, ordered, sample_weights
from federation.model import ParamVector


def fedavg_fuse(contribs: Sequence[ClientContribution]) -> ParamVector:
    """
    θ = Σ_k |D_k|/Σ|D_k| · θ_k

    Com tamanhos (100, 300) e parâmetros a, b o resultado é 0.25·a + 0.75·b.
    """
    items = ordered(contribs)
    weights = sample_weights(items)
    fused = np.zeros(len(items[0].params))
    for weight, contrib in zip(weights, items):
        fused += weight * contrib.params.values
    return items[0].params.replace(fused)


class FedAvgFusion(FusionStrategy):
    """Fusão padrão; também usada pelo FedProx"""

    def __init__(self, name: str = "fedavg"):
        self.name = name

    def fuse(self, global_params: ParamVector, contribs: Sequence[ClientContribution]) -> ParamVector:
        return fedavg_fuse(contribs)
