"""
ClientUpdate: SGD com momentum sobre o shard local
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from federation.data import Dataset
from federation.errors import EmptyShardError
from federation.model.network import LossConfig, loss_and_grad
from federation.model.params import ParamVector
from federation.partition import ClientShard
from federation.rng import RngStream
from simulator.logging_config import get_logger

logger = get_logger(__name__, component="model")


class OptimizerConfig(BaseModel):
    """Hiperparâmetros do treino local (padrões do protocolo com ViT em CIFAR)"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    lr: float = Field(default=0.03, gt=0, description="Taxa de aprendizado")
    momentum: float = Field(default=0.9, ge=0, lt=1)
    weight_decay: float = Field(default=0.0, ge=0)
    epochs: int = Field(default=10, ge=1, description="Épocas locais E")
    batch: int = Field(default=10, ge=1, description="Tamanho do lote B")
    prox_mu: Optional[float] = Field(
        default=None, ge=0,
        description="Coeficiente proximal; None = 0.001 com fedprox, 0 nos demais"
    )


@dataclass(frozen=True)
class LocalUpdateResult:
    """
    Resultado do ClientUpdate

    Attributes:
        params: θ_k após o treino local
        local_steps: τ_k = E·⌈|D_k|/B⌉ (usado pelo FedNova)
        n_samples: |D_k|
    """
    params: ParamVector
    local_steps: int
    n_samples: int


def count_local_steps(n_samples: int, epochs: int, batch: int) -> int:
    """τ_k; o lote final curto conta como um passo"""
    return epochs * math.ceil(n_samples / batch)


def local_update(
    global_params: ParamVector,
    shard: ClientShard,
    dataset: Dataset,
    opt_cfg: OptimizerConfig,
    loss_cfg: LossConfig,
    rng: RngStream,
    prox_mu: float = 0.0,
) -> LocalUpdateResult:
    """
    E épocas de SGD com momentum em mini-lotes embaralhados a cada época

    O momentum segue a convenção buf ← m·buf + g, θ ← θ − lr·buf, com o
    weight decay somado ao gradiente. Com prox_mu > 0 a âncora proximal é o
    modelo global recebido (FedProx).

    Args:
        global_params: θ^t recebido do servidor (não é modificado)
        shard: Dados locais (índices no dataset + rótulos locais)
        dataset: Dataset global de onde vêm as features
        opt_cfg: Hiperparâmetros do otimizador
        loss_cfg: Hiperparâmetros da loss
        rng: Stream do cliente nesta rodada
        prox_mu: Coeficiente proximal efetivo

    Returns:
        LocalUpdateResult com a cópia atualizada dos parâmetros

    Raises:
        EmptyShardError: Se o shard não tiver amostras
    """
    if shard.is_empty:
        raise EmptyShardError(shard.client_id)

    features = dataset.features[shard.indices]
    labels = shard.labels
    n = shard.size
    anchor = global_params if prox_mu > 0 else None

    theta = np.array(global_params.values, copy=True)
    buf = np.zeros_like(theta)

    for _ in range(opt_cfg.epochs):
        order = rng.permutation(n)
        for start in range(0, n, opt_cfg.batch):
            batch = order[start:start + opt_cfg.batch]
            _, grad = loss_and_grad(
                global_params.replace(theta),
                features[batch],
                labels[batch],
                loss_cfg,
                prox_anchor=anchor,
                prox_mu=prox_mu,
            )
            g = grad.values
            if opt_cfg.weight_decay:
                g = g + opt_cfg.weight_decay * theta
            buf = opt_cfg.momentum * buf + g
            theta = theta - opt_cfg.lr * buf

    steps = count_local_steps(n, opt_cfg.epochs, opt_cfg.batch)
    logger.debug(
        "Treino local concluído",
        extra={"client_id": shard.client_id, "n_samples": n, "local_steps": steps}
    )
    return LocalUpdateResult(params=global_params.replace(theta), local_steps=steps, n_samples=n)
