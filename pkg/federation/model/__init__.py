"""
Modelo local - MLP, loss, treino local (ClientUpdate) e avaliação
"""

from .params import Layout, ParamVector, init_params, layout_size, mlp_layout
from .network import LossConfig, evaluate, forward, loss_and_grad, predict
from .training import LocalUpdateResult, OptimizerConfig, count_local_steps, local_update

__all__ = [
    "Layout",
    "ParamVector",
    "init_params",
    "layout_size",
    "mlp_layout",
    "LossConfig",
    "evaluate",
    "forward",
    "loss_and_grad",
    "predict",
    "LocalUpdateResult",
    "OptimizerConfig",
    "count_local_steps",
    "local_update",
]
