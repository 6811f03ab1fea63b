"""
Fusion Factory - Cria a estratégia de agregação de acordo com o otimizador configurado
"""

from federation.aggregation.base import FusionStrategy
from federation.aggregation.config import ServerOptimizer, ServerOptimizerConfig
from federation.aggregation.fedadam import FedAdamFusion
from federation.aggregation.fedavg import FedAvgFusion
from federation.aggregation.fednova import FedNovaFusion
from federation.errors import ConfigurationError
from simulator.logging_config import get_logger

logger = get_logger(__name__, component="aggregation")


class FusionFactory:
    """Factory para criar estratégias de ModelFusion"""

    @staticmethod
    def create(config: ServerOptimizerConfig) -> FusionStrategy:
        """
        Cria uma estratégia nova (sem estado herdado de outra execução)

        Args:
            config: Seção `server` da configuração

        Returns:
            FusionStrategy correspondente

        Raises:
            ConfigurationError: Se o otimizador não for suportado
        """
        optimizer = config.optimizer
        if optimizer == ServerOptimizer.FEDAVG:
            strategy: FusionStrategy = FedAvgFusion()
        elif optimizer == ServerOptimizer.FEDPROX:
            strategy = FedAvgFusion(name="fedprox")
        elif optimizer == ServerOptimizer.FEDNOVA:
            strategy = FedNovaFusion()
        elif optimizer == ServerOptimizer.FEDADAM:
            strategy = FedAdamFusion(config)
        else:
            raise ConfigurationError(f"otimizador não suportado: {optimizer}", key="server.optimizer")

        logger.debug("Estratégia de fusão criada", extra={"optimizer": strategy.name})
        return strategy
