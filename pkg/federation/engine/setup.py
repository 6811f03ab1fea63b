"""
Preparação da federação: dados → divisão → partição → ruído → modelo inicial

Cada etapa usa um stream próprio derivado da semente raiz, então o modo
vanilla e o ClipFL partem exatamente do mesmo estado inicial.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Dict, Iterable, Tuple

from federation.data import Dataset, SplitIndices, generate_synthetic, load_csv, split
from federation.model import ParamVector, init_params, mlp_layout
from federation.noise import NoisyClientSelection, corrupt_labels, select_noisy_clients, symmetric_matrix
from federation.partition import ClientShard, partition_dirichlet, partition_iid
from federation.rng import RngStream
from simulator.logging_config import get_logger

if TYPE_CHECKING:
    from simulator.config import ExperimentConfig

logger = get_logger(__name__, component="engine")


@dataclass(frozen=True)
class FederationSetup:
    """
    Tudo o que existe antes da primeira rodada

    Attributes:
        dataset: Dataset completo
        splits: Índices de treino/validação/teste
        validation: D^val do servidor
        test: Conjunto de teste global
        shards: Shards com os rótulos observados (após corrupção)
        clean_shards: Shards com os rótulos originais
        noisy: S_n verdadeiro
        flips: client_id → rótulos alterados
        initial_params: θ^0
    """
    dataset: Dataset
    splits: SplitIndices
    validation: Dataset
    test: Dataset
    shards: Tuple[ClientShard, ...]
    clean_shards: Tuple[ClientShard, ...]
    noisy: NoisyClientSelection
    flips: Dict[int, int]
    initial_params: ParamVector

    @property
    def num_clients(self) -> int:
        return len(self.shards)

    @property
    def num_classes(self) -> int:
        return self.dataset.num_classes

    @property
    def eligible(self) -> frozenset:
        """Clientes com ao menos uma amostra"""
        return frozenset(shard.client_id for shard in self.shards if not shard.is_empty)

    def with_truth(self, noisy_ids: Iterable[int]) -> FederationSetup:
        """
        Mesmo setup com outro conjunto verdadeiro de ruidosos

        Os shards não mudam; só as métricas leem o conjunto.
        """
        return replace(self, noisy=replace(self.noisy, noisy_ids=frozenset(int(c) for c in noisy_ids)))


def load_dataset(cfg: ExperimentConfig) -> Dataset:
    """Dataset sintético ou CSV conforme data.kind"""
    from simulator.config import DataKind

    if cfg.data.kind == DataKind.CSV:
        return load_csv(cfg.data.path)
    return generate_synthetic(
        cfg.data.k,
        cfg.data.per_class,
        cfg.data.dim,
        cfg.data.spread,
        RngStream(cfg.seed, "data"),
        separation=cfg.data.separation,
    )


def prepare_federation(cfg: ExperimentConfig) -> FederationSetup:
    """
    Executa as etapas determinísticas anteriores às rodadas

    Raises:
        ConfigurationError, IngestionError, DataError: Propagados dos módulos
    """
    from simulator.config import PartitionKind

    dataset = load_dataset(cfg)
    splits = split(dataset, RngStream(cfg.seed, "split"), cfg.data.split_ratio)

    num_clients = cfg.federation.clients
    partition_rng = RngStream(cfg.seed, "partition")
    if cfg.partition.kind == PartitionKind.DIRICHLET:
        clean_shards = partition_dirichlet(splits.train, dataset.labels, num_clients, cfg.partition.alpha, partition_rng)
    else:
        clean_shards = partition_iid(splits.train, dataset.labels, num_clients, partition_rng)

    noise_rng = RngStream(cfg.seed, "noise")
    noisy = select_noisy_clients(num_clients, cfg.noise.rho, noise_rng.child("select"))
    transition = symmetric_matrix(dataset.num_classes, cfg.noise.mu)
    shards = []
    flips: Dict[int, int] = {}
    for shard in clean_shards:
        if shard.client_id in noisy.noisy_ids:
            shard, flips[shard.client_id] = corrupt_labels(
                shard, transition, noise_rng.child(f"client/{shard.client_id}")
            )
        shards.append(shard)

    layout = mlp_layout(dataset.feature_dim, dataset.num_classes, cfg.model.hidden)
    initial = init_params(layout, RngStream(cfg.seed, "init"))

    logger.info(
        "Federação preparada",
        extra={
            "event_type": "setup",
            "seed": cfg.seed,
            "n_samples": dataset.n_samples,
            "splits": list(splits.sizes),
            "num_clients": num_clients,
            "n_noisy": len(noisy.noisy_ids),
            "flips": sum(flips.values()),
        }
    )
    return FederationSetup(
        dataset=dataset,
        splits=splits,
        validation=dataset.subset(splits.validation),
        test=dataset.subset(splits.test),
        shards=tuple(shards),
        clean_shards=tuple(clean_shards),
        noisy=noisy,
        flips=flips,
        initial_params=initial,
    )
