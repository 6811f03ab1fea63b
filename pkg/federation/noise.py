"""
Modelo de ruído simétrico de rótulos

Constrói a matriz de transição T, escolhe quais clientes são ruidosos e
corrompe os rótulos de um shard amostrando cada novo rótulo da linha T[y].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Tuple

import numpy as np

from federation.errors import ConfigurationError, DataError
from federation.partition import ClientShard
from federation.rng import RngStream, floor_fraction
from simulator.logging_config import get_logger

logger = get_logger(__name__, component="noise")


@dataclass(frozen=True)
class NoiseTransitionMatrix:
    """
    Matriz de transição K×K estocástica por linhas

    T[i][j] é a probabilidade de uma amostra da classe i ser observada como j.

    Attributes:
        num_classes: K
        mu: Nível de ruído μ em [0, 1]
        entries: Matriz T
    """
    num_classes: int
    mu: float
    entries: np.ndarray

    def row(self, label: int) -> np.ndarray:
        return self.entries[label]


@dataclass(frozen=True)
class NoisyClientSelection:
    """
    Conjunto verdadeiro de clientes ruidosos S_n

    Usado só para corromper dados e calcular métricas; nunca influencia
    decisões de treino ou de poda.
    """
    noisy_ids: FrozenSet[int]
    rho: float


def symmetric_matrix(num_classes: int, mu: float) -> NoiseTransitionMatrix:
    """
    Matriz simétrica: diagonal 1−μ, fora da diagonal μ/(K−1)

    Args:
        num_classes: K (>= 2)
        mu: Nível de ruído em [0, 1]

    Returns:
        NoiseTransitionMatrix

    Raises:
        ConfigurationError: Se K < 2 ou μ fora de [0, 1]

    Examples:
        >>> t = symmetric_matrix(6, 0.5)
        >>> float(t.entries[0, 0]), float(t.entries[0, 1])
        (0.5, 0.1)
    """
    if num_classes < 2:
        raise ConfigurationError(f"K deve ser >= 2, recebeu {num_classes}", key="data.k")
    if not 0.0 <= mu <= 1.0:
        raise ConfigurationError(f"mu deve estar em [0, 1], recebeu {mu}", key="noise.mu")

    entries = np.full((num_classes, num_classes), mu / (num_classes - 1), dtype=np.float64)
    np.fill_diagonal(entries, 1.0 - mu)
    entries.setflags(write=False)
    return NoiseTransitionMatrix(num_classes=num_classes, mu=float(mu), entries=entries)


def select_noisy_clients(num_clients: int, rho: float, rng: RngStream) -> NoisyClientSelection:
    """
    Sorteia uniformemente ⌊ρ·N⌋ clientes para terem rótulos corrompidos

    Examples:
        >>> len(select_noisy_clients(100, 0.5, rng).noisy_ids)
        50
    """
    if not 0.0 <= rho <= 1.0:
        raise ConfigurationError(f"rho deve estar em [0, 1], recebeu {rho}", key="noise.rho")
    count = floor_fraction(rho, num_clients)
    chosen = rng.sample_without_replacement(list(range(num_clients)), count) if count else []
    logger.info(
        "Clientes ruidosos selecionados",
        extra={"event_type": "noisy_selected", "n_noisy": count, "num_clients": num_clients}
    )
    return NoisyClientSelection(noisy_ids=frozenset(chosen), rho=float(rho))


def corrupt_labels(
    shard: ClientShard,
    transition: NoiseTransitionMatrix,
    rng: RngStream,
) -> Tuple[ClientShard, int]:
    """
    Reamostra cada rótulo y da distribuição categórica T[y]

    Uma amostra mantém o rótulo com probabilidade 1−μ. Features e índices
    não são tocados.

    Args:
        shard: Shard do cliente
        transition: Matriz de transição
        rng: Stream do cliente

    Returns:
        (shard corrompido, quantidade de rótulos alterados)

    Raises:
        DataError: Se algum rótulo for >= K
    """
    labels = shard.labels
    k = transition.num_classes
    if labels.size and (labels.min() < 0 or labels.max() >= k):
        raise DataError(f"cliente {shard.client_id}: rótulo fora de [0, {k})")
    if labels.size == 0:
        return shard, 0

    cdf = np.cumsum(transition.entries, axis=1)
    cdf[:, -1] = 1.0
    draws = rng.random(labels.size)
    new_labels = (cdf[labels] <= draws[:, None]).sum(axis=1)
    new_labels = np.minimum(new_labels, k - 1).astype(np.int64)

    flips = int((new_labels != labels).sum())
    logger.debug(
        "Rótulos corrompidos",
        extra={"client_id": shard.client_id, "flips": flips, "n_samples": shard.size}
    )
    return shard.with_labels(new_labels), flips


def empirical_transition(clean: np.ndarray, observed: np.ndarray, num_classes: int) -> np.ndarray:
    """
    Frequências de transição observadas, normalizadas por linha

    Linhas de classes ausentes ficam zeradas.
    """
    counts = np.zeros((num_classes, num_classes), dtype=np.float64)
    np.add.at(counts, (np.asarray(clean, dtype=np.int64), np.asarray(observed, dtype=np.int64)), 1.0)
    totals = counts.sum(axis=1, keepdims=True)
    return np.divide(counts, totals, out=np.zeros_like(counts), where=totals > 0)
