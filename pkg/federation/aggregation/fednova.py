"""
FedNova: agregação normalizada pelo número de passos locais
"""

from typing import Sequence

import numpy as np

from federation.aggregation.base import ClientContribution, FusionStrategy, ordered, sample_weights
from federation.errors import FusionError
from federation.model import ParamVector


def fednova_fuse(global_params: ParamVector, contribs: Sequence[ClientContribution]) -> ParamVector:
    """
    θ = θ^t − τ_eff · Σ w_k·d_k

    com w_k = n_k/Σn, d_k = (θ^t − θ_k)/τ_k e τ_eff = Σ w_k·τ_k. Quando todos
    os τ_k são iguais o resultado coincide com o FedAvg.

    Raises:
        FusionError: Se algum τ_k for < 1
    """
    items = ordered(contribs)
    if any(c.local_steps < 1 for c in items):
        raise FusionError("FedNova exige local_steps >= 1 em todas as contribuições")
    if not items[0].params.same_layout(global_params):
        raise FusionError("modelo global e contribuições com layouts diferentes")

    weights = sample_weights(items)
    tau_eff = float(sum(w * c.local_steps for w, c in zip(weights, items)))
    direction = np.zeros(len(global_params))
    for weight, contrib in zip(weights, items):
        direction += weight * (global_params.values - contrib.params.values) / contrib.local_steps
    return global_params.replace(global_params.values - tau_eff * direction)


class FedNovaFusion(FusionStrategy):
    name = "fednova"

    def fuse(self, global_params: ParamVector, contribs: Sequence[ClientContribution]) -> ParamVector:
        return fednova_fuse(global_params, contribs)
