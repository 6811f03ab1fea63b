"""
FedAdam: otimizador adaptativo no servidor sobre o pseudo-gradiente
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from federation.aggregation.base import ClientContribution, FusionStrategy
from federation.aggregation.config import ServerOptimizerConfig
from federation.aggregation.fedavg import fedavg_fuse
from federation.errors import FusionError
from federation.model import ParamVector


@dataclass(frozen=True)
class ServerOptState:
    """
    Momentos do FedAdam (sem correção de viés)

    Attributes:
        first_moment: m
        second_moment: v (elemento a elemento, >= 0)
        beta1, beta2: Decaimentos dos momentos
        tau_adapt: Piso de adaptatividade τ
        server_lr: Taxa de aprendizado do servidor
    """
    first_moment: np.ndarray
    second_moment: np.ndarray
    beta1: float = 0.9
    beta2: float = 0.99
    tau_adapt: float = 0.001
    server_lr: float = 0.01

    def __post_init__(self):
        m = np.array(self.first_moment, dtype=np.float64, copy=True)
        v = np.array(self.second_moment, dtype=np.float64, copy=True)
        if m.shape != v.shape:
            raise FusionError("momentos com formas diferentes")
        if np.any(v < 0):
            raise FusionError("segundo momento negativo")
        m.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "first_moment", m)
        object.__setattr__(self, "second_moment", v)

    @classmethod
    def fresh(cls, size: int, **hyper) -> ServerOptState:
        """Estado inicial com m = v = 0"""
        return cls(np.zeros(size), np.zeros(size), **hyper)


def fedadam_fuse(
    global_params: ParamVector,
    contribs: Sequence[ClientContribution],
    state: ServerOptState,
) -> Tuple[ParamVector, ServerOptState]:
    """
    Passo FedAdam

    Δ = fedavg(contribs) − θ^t
    m ← β1·m + (1−β1)·Δ
    v ← β2·v + (1−β2)·Δ⊙Δ
    θ^{t+1} = θ^t + lr · m / (√v + τ)

    Returns:
        (novo modelo global, novo estado)

    Raises:
        FusionError: Se os momentos não casarem com o layout
    """
    if state.first_moment.shape[0] != len(global_params):
        raise FusionError("estado do servidor não corresponde ao layout do modelo")
    delta = fedavg_fuse(contribs).values - global_params.values
    m = state.beta1 * state.first_moment + (1.0 - state.beta1) * delta
    v = state.beta2 * state.second_moment + (1.0 - state.beta2) * delta * delta
    new_values = global_params.values + state.server_lr * m / (np.sqrt(v) + state.tau_adapt)
    return global_params.replace(new_values), replace(state, first_moment=m, second_moment=v)


class FedAdamFusion(FusionStrategy):
    """Estratégia com estado: o engine é o único dono dos momentos"""

    name = "fedadam"

    def __init__(self, config: ServerOptimizerConfig):
        self.config = config
        self.state: Optional[ServerOptState] = None

    def fuse(self, global_params: ParamVector, contribs: Sequence[ClientContribution]) -> ParamVector:
        if self.state is None:
            self.state = ServerOptState.fresh(
                len(global_params),
                beta1=self.config.beta1,
                beta2=self.config.beta2,
                tau_adapt=self.config.tau,
                server_lr=self.config.lr,
            )
        new_global, self.state = fedadam_fuse(global_params, contribs, self.state)
        return new_global

    def get_status(self) -> Dict[str, Any]:
        status = super().get_status()
        if self.state is not None:
            status["second_moment_max"] = float(self.state.second_moment.max())
        return status
