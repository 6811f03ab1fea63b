"""
Representação de datasets e divisão treino/validação/teste
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from federation.errors import ConfigurationError, DataError
from federation.rng import RngStream
from simulator.logging_config import get_logger

logger = get_logger(__name__, component="data")

DEFAULT_SPLIT_RATIO: Tuple[int, int, int] = (9, 1, 2)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Dataset:
    """
    Dataset de classificação imutável

    Attributes:
        features: Matriz (n_samples × feature_dim) em float64
        labels: Vetor de rótulos inteiros em [0, num_classes)
        num_classes: Quantidade de classes K
    """
    features: np.ndarray
    labels: np.ndarray
    num_classes: int

    def __post_init__(self):
        features = _frozen(np.asarray(self.features, dtype=np.float64))
        labels = _frozen(np.asarray(self.labels, dtype=np.int64))
        if features.ndim != 2:
            raise DataError(f"features deve ser uma matriz 2D, recebeu ndim={features.ndim}")
        if labels.ndim != 1 or labels.shape[0] != features.shape[0]:
            raise DataError(
                f"labels ({labels.shape}) não alinhado com features ({features.shape})"
            )
        if self.num_classes < 2:
            raise DataError(f"num_classes deve ser >= 2, recebeu {self.num_classes}")
        if labels.size and (labels.min() < 0 or labels.max() >= self.num_classes):
            raise DataError(f"rótulos fora de [0, {self.num_classes})")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    @property
    def n_samples(self) -> int:
        return int(self.labels.shape[0])

    @property
    def feature_dim(self) -> int:
        return int(self.features.shape[1])

    def subset(self, indices: Sequence[int]) -> Dataset:
        """Retorna a visão do dataset restrita aos índices (na ordem dada)"""
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(self.features[idx], self.labels[idx], self.num_classes)


@dataclass(frozen=True)
class SplitIndices:
    """
    Partição disjunta dos índices de amostra

    Attributes:
        train: Índices particionados entre os clientes
        validation: Índices reservados ao servidor (D^val)
        test: Índices de avaliação do modelo global
    """
    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray

    def __post_init__(self):
        for name in ("train", "validation", "test"):
            object.__setattr__(self, name, _frozen(np.asarray(getattr(self, name), dtype=np.int64)))

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return (len(self.train), len(self.validation), len(self.test))


def split(
    dataset: Dataset,
    rng: RngStream,
    ratio: Sequence[int] = DEFAULT_SPLIT_RATIO,
) -> SplitIndices:
    """
    Divide o dataset aleatoriamente em treino, validação e teste

    Os tamanhos de treino e validação usam piso da proporção; o restante vai
    para o teste.

    Args:
        dataset: Dataset completo
        rng: Stream de aleatoriedade
        ratio: Proporção (treino, validação, teste), padrão 9:1:2

    Returns:
        SplitIndices

    Raises:
        ConfigurationError: Se a razão for inválida ou o dataset pequeno demais

    Examples:
        >>> split(ds_1200, rng).sizes
        (900, 100, 200)
    """
    if len(ratio) != 3 or any(int(part) < 0 for part in ratio) or sum(ratio) <= 0:
        raise ConfigurationError(f"razão de divisão inválida: {tuple(ratio)}", key="data.split_ratio")
    total = int(sum(ratio))
    n = dataset.n_samples
    if n < total:
        raise ConfigurationError(
            f"dataset com {n} amostras é menor que a soma da razão ({total})",
            key="data.split_ratio",
        )

    n_train = n * int(ratio[0]) // total
    n_val = n * int(ratio[1]) // total
    order = rng.permutation(n)

    result = SplitIndices(
        train=order[:n_train],
        validation=order[n_train:n_train + n_val],
        test=order[n_train + n_val:],
    )
    logger.debug("Dataset dividido", extra={"event_type": "split", "sizes": list(result.sizes)})
    return result
