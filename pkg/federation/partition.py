"""
Particionamento do split de treino entre os clientes

Suporta divisão IID uniforme e não-IID por Dirichlet(α) por classe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from federation.errors import ConfigurationError, DataError
from federation.rng import RngStream
from simulator.logging_config import get_logger

logger = get_logger(__name__, component="partition")


@dataclass(frozen=True)
class ClientShard:
    """
    Dataset local D_k de um cliente

    Attributes:
        client_id: Identificador do cliente
        indices: Índices globais (no dataset) das amostras do cliente
        labels: Rótulos locais alinhados com indices (possivelmente corrompidos)
    """
    client_id: int
    indices: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        indices = np.array(self.indices, dtype=np.int64, copy=True)
        labels = np.array(self.labels, dtype=np.int64, copy=True)
        if indices.shape != labels.shape:
            raise DataError(f"cliente {self.client_id}: indices e labels desalinhados")
        if np.unique(indices).size != indices.size:
            raise DataError(f"cliente {self.client_id}: índices duplicados no shard")
        indices.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return int(self.indices.shape[0])

    @property
    def is_empty(self) -> bool:
        return self.size == 0

    def with_labels(self, labels: np.ndarray) -> ClientShard:
        """Cópia do shard com outros rótulos (features/índices intactos)"""
        return ClientShard(self.client_id, self.indices, labels)


def _make_shard(client_id: int, indices: np.ndarray, labels: np.ndarray) -> ClientShard:
    indices = np.sort(np.asarray(indices, dtype=np.int64))
    return ClientShard(client_id, indices, labels[indices])


def partition_iid(
    train_indices: Sequence[int],
    labels: np.ndarray,
    num_clients: int,
    rng: RngStream,
) -> List[ClientShard]:
    """
    Distribui o treino uniformemente em N shards de tamanho quase igual

    Args:
        train_indices: Índices globais do split de treino
        labels: Vetor de rótulos do dataset completo (indexado por índice global)
        num_clients: Quantidade de clientes N
        rng: Stream de aleatoriedade

    Returns:
        Lista de N ClientShard cujos tamanhos diferem em no máximo 1

    Examples:
        >>> [s.size for s in partition_iid(range(10), labels, 3, rng)]
        [4, 3, 3]
    """
    train = np.asarray(train_indices, dtype=np.int64)
    if num_clients < 1:
        raise ConfigurationError(f"N deve ser >= 1, recebeu {num_clients}", key="federation.clients")
    if train.size < num_clients:
        raise ConfigurationError(
            f"treino com {train.size} amostras não cobre {num_clients} clientes",
            key="federation.clients",
        )
    labels = np.asarray(labels, dtype=np.int64)
    chunks = np.array_split(train[rng.permutation(train.size)], num_clients)
    shards = [_make_shard(cid, chunk, labels) for cid, chunk in enumerate(chunks)]
    logger.info(
        "Particionamento IID concluído",
        extra={"event_type": "partition", "kind": "iid", "num_clients": num_clients}
    )
    return shards


def _largest_remainder(proportions: np.ndarray, total: int) -> np.ndarray:
    """Arredonda proportions·total para inteiros que somam exatamente total"""
    quotas = proportions * total
    counts = np.floor(quotas).astype(np.int64)
    missing = int(total - counts.sum())
    if missing > 0:
        fractions = quotas - counts
        # Maior resto primeiro; empate pelo menor id de cliente
        order = np.lexsort((np.arange(len(fractions)), -fractions))
        counts[order[:missing]] += 1
    return counts


def _dirichlet(alpha: float, num_clients: int, rng: RngStream) -> np.ndarray:
    draws = np.asarray(rng.gamma(alpha, size=num_clients), dtype=np.float64)
    total = draws.sum()
    if not total > 0:
        # α muito pequeno: todos os Gamma sofreram underflow
        draws = np.zeros(num_clients)
        draws[rng.uniform_int(num_clients)] = 1.0
        total = 1.0
    return draws / total


def partition_dirichlet(
    train_indices: Sequence[int],
    labels: np.ndarray,
    num_clients: int,
    alpha: float,
    rng: RngStream,
) -> List[ClientShard]:
    """
    Particionamento não-IID: para cada classe sorteia z ~ Dir_N(α)

    A fração z_j das amostras (embaralhadas) da classe vai para o cliente j;
    o arredondamento usa o método do maior resto, de modo que toda amostra
    é atribuída. Shards vazios são permitidos.

    Args:
        train_indices: Índices globais do split de treino
        labels: Vetor de rótulos do dataset completo
        num_clients: Quantidade de clientes N
        alpha: Concentração α (> 0); menor α, mais heterogêneo
        rng: Stream de aleatoriedade

    Returns:
        Lista de N ClientShard formando uma cobertura disjunta do treino

    Raises:
        ConfigurationError: Se α <= 0 ou N < 1
    """
    if not alpha > 0:
        raise ConfigurationError(f"alpha deve ser > 0, recebeu {alpha}", key="partition.alpha")
    if num_clients < 1:
        raise ConfigurationError(f"N deve ser >= 1, recebeu {num_clients}", key="federation.clients")

    train = np.asarray(train_indices, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64)
    train_labels = labels[train]
    assigned: List[List[np.ndarray]] = [[] for _ in range(num_clients)]

    for cls in np.unique(train_labels):
        members = train[train_labels == cls]
        members = members[rng.permutation(members.size)]
        counts = _largest_remainder(_dirichlet(alpha, num_clients, rng), members.size)
        bounds = np.cumsum(counts)[:-1]
        for cid, part in enumerate(np.split(members, bounds)):
            assigned[cid].append(part)

    shards = [
        _make_shard(cid, np.concatenate(parts) if parts else np.empty(0, dtype=np.int64), labels)
        for cid, parts in enumerate(assigned)
    ]
    empty = [s.client_id for s in shards if s.is_empty]
    logger.info(
        "Particionamento Dirichlet concluído",
        extra={
            "event_type": "partition",
            "kind": "dirichlet",
            "alpha": alpha,
            "num_clients": num_clients,
            "empty_clients": len(empty),
        }
    )
    if empty:
        logger.warning("Clientes sem amostras serão excluídos da amostragem", extra={"clients": empty})
    return shards


def class_histogram(shards: Sequence[ClientShard], num_classes: int) -> np.ndarray:
    """
    Matriz N×K com a contagem de amostras por classe em cada cliente

    Args:
        shards: Shards dos clientes (ordem define as linhas)
        num_classes: Quantidade de classes K

    Returns:
        Matriz de contagens int64
    """
    hist = np.zeros((len(shards), num_classes), dtype=np.int64)
    for row, shard in enumerate(shards):
        hist[row] = np.bincount(shard.labels, minlength=num_classes)[:num_classes]
    return hist
