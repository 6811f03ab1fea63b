"""
Aleatoriedade determinística e derivável por rótulo

Toda operação estocástica do simulador recebe um RngStream explícito.
Cada stream é derivado de (semente raiz, rótulo) via hash, então a ordem em
que os streams são criados não altera nenhuma sequência: o treino paralelo
dos clientes continua reprodutível.
"""

from __future__ import annotations

import hashlib
import math
from typing import Sequence

import numpy as np

from federation.errors import ConfigurationError

_SEED_MASK = (1 << 64) - 1
# Tolerância para pisos de produtos razão × contagem (0.29 * 100 == 28.999...)
_FLOOR_EPS = 1e-9


def _label_words(label: str) -> tuple[int, ...]:
    digest = hashlib.blake2b(label.encode("utf-8"), digest_size=16).digest()
    return tuple(int(word) for word in np.frombuffer(digest, dtype="<u4"))


class RngStream:
    """
    Stream pseudoaleatório identificado por (semente raiz, rótulo)

    Não é criptográfico. Um stream pertence a uma única tarefa por vez:
    pode ser passado entre threads, nunca compartilhado simultaneamente.

    Attributes:
        root_seed: Semente raiz de 64 bits
        label: Caminho de derivação (ex: "partition", "noise/client/7")
    """

    def __init__(self, root_seed: int, label: str):
        if not label:
            raise ConfigurationError("rótulo do stream não pode ser vazio", key="seed")
        self.root_seed = int(root_seed) & _SEED_MASK
        self.label = label
        seed_seq = np.random.SeedSequence(entropy=self.root_seed, spawn_key=_label_words(label))
        self._gen = np.random.Generator(np.random.PCG64(seed_seq))

    def child(self, suffix: str) -> RngStream:
        """Deriva um stream independente com rótulo "<label>/<suffix>" """
        return RngStream(self.root_seed, f"{self.label}/{suffix}")

    def uniform_int(self, n: int) -> int:
        """Inteiro uniforme em [0, n)"""
        if n < 1:
            raise ConfigurationError(f"uniform_int exige n >= 1, recebeu {n}")
        return int(self._gen.integers(0, n))

    def random(self, size: int | None = None) -> float | np.ndarray:
        """Uniforme em [0, 1)"""
        return self._gen.random(size)

    def normal(self, loc: float = 0.0, scale: float = 1.0, size=None) -> np.ndarray:
        return self._gen.normal(loc, scale, size)

    def gamma(self, shape: float, size=None) -> np.ndarray:
        return self._gen.gamma(shape, 1.0, size)

    def permutation(self, n_or_items) -> np.ndarray:
        return self._gen.permutation(n_or_items)

    def sample_without_replacement(self, items: Sequence[int], k: int) -> list[int]:
        """Amostra k elementos distintos de items (ordem de sorteio)"""
        chosen = self._gen.choice(np.asarray(items), size=k, replace=False)
        return [int(x) for x in chosen]

    def __repr__(self) -> str:
        return f"RngStream(root_seed={self.root_seed}, label={self.label!r})"


def derive_stream(root_seed: int, label: str) -> RngStream:
    """
    Deriva um stream determinístico a partir da semente raiz e do rótulo

    Args:
        root_seed: Semente raiz (chave de configuração `seed`)
        label: Caminho de derivação não vazio

    Returns:
        RngStream cujo conteúdo depende apenas de (root_seed, label)

    Examples:
        >>> a = derive_stream(42, "partition")
        >>> b = derive_stream(42, "partition")
        >>> a.uniform_int(10) == b.uniform_int(10)
        True
    """
    return RngStream(root_seed, label)


def floor_fraction(ratio: float, count: int) -> int:
    """
    ⌊ratio · count⌋ tolerante a erro de representação decimal

    Examples:
        >>> floor_fraction(0.29, 100)
        29
        >>> floor_fraction(0.33, 10)
        3
    """
    return int(math.floor(ratio * count + _FLOOR_EPS))
