"""
Configurações e Enums para os otimizadores do servidor
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

# Coeficiente proximal padrão do FedProx quando opt.prox_mu não é informado
DEFAULT_PROX_MU = 0.001


class ServerOptimizer(str, Enum):
    """Estratégias de ModelFusion suportadas"""
    FEDAVG = "fedavg"
    FEDPROX = "fedprox"
    FEDNOVA = "fednova"
    FEDADAM = "fedadam"


class ServerOptimizerConfig(BaseModel):
    """
    Seção `server` da configuração

    fedprox usa a fusão do FedAvg; a diferença está no termo proximal do
    treino local.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    optimizer: ServerOptimizer = ServerOptimizer.FEDAVG
    lr: float = Field(default=0.01, gt=0, description="Taxa de aprendizado do servidor (FedAdam)")
    tau: float = Field(default=0.001, gt=0, description="Piso de adaptatividade τ (FedAdam)")
    beta1: float = Field(default=0.9, ge=0, lt=1)
    beta2: float = Field(default=0.99, ge=0, lt=1)

    def effective_prox_mu(self, configured: float | None) -> float:
        """Coeficiente proximal usado pelos clientes"""
        if configured is not None:
            return configured
        return DEFAULT_PROX_MU if self.optimizer == ServerOptimizer.FEDPROX else 0.0
