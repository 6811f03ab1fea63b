"""
Ranking por acurácia de validação e Noise Candidacy Score (NCS)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence, Tuple

from federation.errors import ConfigurationError, StateError


class CandidateSplit(NamedTuple):
    """Candidatos da rodada, ambos na ordem do ranking"""
    clean: Tuple[int, ...]
    noisy: Tuple[int, ...]


@dataclass(frozen=True)
class NcsTable:
    """
    NCS[i] = quantas vezes o cliente i foi candidato a ruidoso na Fase I

    Imutável: cada atualização devolve uma nova tabela. Depois da poda a
    tabela é congelada e não aceita mais incrementos.
    """
    scores: Mapping[int, int]
    frozen: bool = False
    _items: Tuple[Tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        items = tuple(sorted((int(k), int(v)) for k, v in dict(self.scores).items()))
        if any(v < 0 for _, v in items):
            raise StateError("NCS não pode ser negativo")
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "scores", MappingProxyType(dict(items)))

    @classmethod
    def for_clients(cls, client_ids: Iterable[int]) -> NcsTable:
        """Tabela zerada para todos os clientes"""
        return cls({int(cid): 0 for cid in client_ids})

    def __getitem__(self, client_id: int) -> int:
        return self.scores[client_id]

    def freeze(self) -> NcsTable:
        return NcsTable(dict(self.scores), frozen=True)

    def as_dict(self) -> dict:
        """Cópia ordenada por client_id"""
        return dict(self._items)


def rank_clients(accuracies: Mapping[int, float]) -> list[int]:
    """
    Ordena clientes por acurácia de validação decrescente

    Empates são resolvidos pelo menor client_id.

    Examples:
        >>> rank_clients({3: 0.9, 1: 0.4, 7: 0.7})
        [3, 7, 1]
        >>> rank_clients({2: 0.5, 0: 0.5, 9: 0.5})
        [0, 2, 9]
    """
    if not accuracies:
        raise StateError("nenhuma acurácia para ordenar")
    return sorted(accuracies, key=lambda cid: (-accuracies[cid], cid))


def split_candidates(ranked: Sequence[int], m: int) -> CandidateSplit:
    """
    Top-m como candidatos limpos, o restante como candidatos ruidosos

    Se houver m clientes ou menos, todos são limpos (saturação).

    Raises:
        ConfigurationError: Se m < 1
    """
    if m < 1:
        raise ConfigurationError(f"m deve ser >= 1, recebeu {m}", key="clipfl.m")
    ranked = tuple(int(cid) for cid in ranked)
    return CandidateSplit(clean=ranked[:m], noisy=ranked[m:])


def update_ncs(table: NcsTable, noisy_candidates: Iterable[int]) -> NcsTable:
    """
    Incrementa em 1 o NCS de cada candidato a ruidoso

    Raises:
        StateError: Cliente desconhecido ou tabela já congelada pela poda
    """
    candidates = set(int(cid) for cid in noisy_candidates)
    if not candidates:
        return table
    if table.frozen:
        raise StateError("tabela NCS congelada após a poda")
    unknown = candidates - set(table.scores)
    if unknown:
        raise StateError(f"clientes desconhecidos na tabela NCS: {sorted(unknown)}")
    scores = dict(table.scores)
    for cid in candidates:
        scores[cid] += 1
    return NcsTable(scores)
