"""
Estado da federação e poda única dos clientes com maior NCS
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import FrozenSet, Iterable, Tuple

from federation.clipfl.scores import NcsTable
from federation.errors import ConfigurationError, ProtocolError, StateError
from federation.rng import floor_fraction


class Phase(Enum):
    """Fases do protocolo em relação à poda"""
    PRE = "pre"  # Fase I: coleta de evidências
    POST = "post"  # Fase III: FL padrão nos sobreviventes


@dataclass(frozen=True)
class FederationState:
    """
    Conjunto de clientes ativos e podados

    Attributes:
        active: S, em ordem crescente de id
        pruned: Ŝ_n (vazio antes da poda)
        truth_noisy: S_n verdadeiro; somente métricas, nunca decisões
        phase: PRE ou POST
    """
    active: Tuple[int, ...]
    pruned: FrozenSet[int] = frozenset()
    truth_noisy: FrozenSet[int] = frozenset()
    phase: Phase = Phase.PRE

    def __post_init__(self):
        active = tuple(sorted(int(cid) for cid in self.active))
        if len(set(active)) != len(active):
            raise StateError("clientes ativos duplicados")
        pruned = frozenset(int(cid) for cid in self.pruned)
        if pruned & set(active):
            raise StateError("cliente simultaneamente ativo e podado")
        object.__setattr__(self, "active", active)
        object.__setattr__(self, "pruned", pruned)
        object.__setattr__(self, "truth_noisy", frozenset(int(c) for c in self.truth_noisy))

    @classmethod
    def initial(cls, num_clients: int, truth_noisy: Iterable[int] = ()) -> FederationState:
        return cls(active=tuple(range(num_clients)), truth_noisy=frozenset(truth_noisy))

    @property
    def all_clients(self) -> FrozenSet[int]:
        return frozenset(self.active) | self.pruned


def pruning_order(active: Iterable[int], table: NcsTable) -> list[int]:
    """Clientes por NCS decrescente; empate pelo menor id"""
    return sorted(active, key=lambda cid: (-table[cid], cid))


def prune(state: FederationState, table: NcsTable, p: float) -> FederationState:
    """
    Remove de uma só vez os ⌊p·|S|⌋ clientes com maior NCS

    A fase avança para POST mesmo com p = 0.

    Raises:
        ConfigurationError: Se p estiver fora de [0, 1)
        ProtocolError: Se a poda já tiver ocorrido
        StateError: Se algum cliente ativo não tiver NCS

    Examples:
        >>> len(prune(FederationState.initial(7), NcsTable.for_clients(range(7)), 0.5).pruned)
        3
    """
    if not 0.0 <= p < 1.0:
        raise ConfigurationError(f"p deve estar em [0, 1), recebeu {p}", key="clipfl.p")
    if state.phase != Phase.PRE:
        raise ProtocolError("a poda de clientes é única e já foi executada")
    missing = [cid for cid in state.active if cid not in table.scores]
    if missing:
        raise StateError(f"clientes ativos sem NCS: {missing}")

    count = floor_fraction(p, len(state.active))
    removed = frozenset(pruning_order(state.active, table)[:count])
    return replace(
        state,
        active=tuple(cid for cid in state.active if cid not in removed),
        pruned=state.pruned | removed,
        phase=Phase.POST,
    )
