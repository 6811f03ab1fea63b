"""
Métricas por rodada, relatório da execução e contabilidade de comunicação
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from federation.errors import StateError
from federation.model import ParamVector
from federation.rng import floor_fraction

# Janela do protocolo de avaliação: média das últimas 10 rodadas
FINAL_WINDOW = 10


@dataclass(frozen=True)
class RoundMetrics:
    """
    Resultado observável de uma rodada

    Attributes:
        round: Índice da rodada (a partir de 1)
        phase: "pre", "post" ou "vanilla"
        test_accuracy: Acurácia do novo modelo global no teste
        sampled: Clientes amostrados, ordem crescente
        clean_candidates: Candidatos limpos na ordem do ranking (só Fase I)
        noisy_candidates: Candidatos ruidosos na ordem do ranking (só Fase I)
        candidate_precision: Fração de candidatos ruidosos realmente ruidosos
    """
    round: int
    phase: str
    test_accuracy: float
    sampled: Tuple[int, ...]
    clean_candidates: Tuple[int, ...] = ()
    noisy_candidates: Tuple[int, ...] = ()
    candidate_precision: Optional[float] = None

    @property
    def comm_units(self) -> int:
        """Modelos enviados (download + upload)"""
        return 2 * len(self.sampled)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "round": self.round,
            "phase": self.phase,
            "test_accuracy": self.test_accuracy,
            "sampled": list(self.sampled),
            "clean_candidates": list(self.clean_candidates),
            "noisy_candidates": list(self.noisy_candidates),
            "candidate_precision": self.candidate_precision,
            "comm_units": self.comm_units,
        }


def final_accuracy(accuracies: Sequence[float], window: int = FINAL_WINDOW) -> float:
    """
    Média das últimas min(window, n) acurácias

    Examples:
        >>> final_accuracy([0.5, 1.0])
        0.75
    """
    if not accuracies:
        raise StateError("nenhuma rodada executada")
    tail = list(accuracies)[-window:]
    return sum(tail) / len(tail)


def rounds_to_accuracy(accuracies: Sequence[float], target: float) -> Optional[int]:
    """Primeira rodada (a partir de 1) com acurácia >= target, ou None"""
    for index, acc in enumerate(accuracies, start=1):
        if acc >= target:
            return index
    return None


def projected_comm_units(
    num_clients: int,
    sample_rate: float,
    t_pre: int,
    t_post: int,
    p: float,
    clipfl_enabled: bool,
) -> int:
    """
    Transferências previstas para um cronograma sem shards vazios

    Examples:
        >>> projected_comm_units(100, 0.1, 80, 40, 0.5, True)
        2000
        >>> projected_comm_units(100, 0.1, 80, 40, 0.5, False)
        2400
    """
    per_round = floor_fraction(sample_rate, num_clients)
    if not clipfl_enabled:
        return 2 * (t_pre + t_post) * per_round
    survivors = num_clients - floor_fraction(p, num_clients)
    return 2 * (t_pre * per_round + t_post * floor_fraction(sample_rate, survivors))


def phase_means(per_round: Sequence[RoundMetrics]) -> Dict[str, float]:
    """Acurácia média de teste por fase"""
    grouped: Dict[str, List[float]] = {}
    for metrics in per_round:
        grouped.setdefault(metrics.phase, []).append(metrics.test_accuracy)
    return {phase: sum(values) / len(values) for phase, values in sorted(grouped.items())}


@dataclass(frozen=True)
class RunReport:
    """
    Relatório completo de uma execução

    global_params fica fora do to_dict(): serve a comparações entre
    execuções, não aos artefatos.
    """
    mode: str
    seed: int
    per_round: Tuple[RoundMetrics, ...]
    pruned_ids: Tuple[int, ...]
    ncs: Dict[int, int]
    noisy_ids: Tuple[int, ...]
    identification_accuracy: Optional[float]
    identification_recall: Optional[float]
    config: Dict[str, Any]
    global_params: Optional[ParamVector] = field(default=None, compare=False, repr=False)
    target_accuracy: Optional[float] = None

    @property
    def accuracies(self) -> List[float]:
        return [metrics.test_accuracy for metrics in self.per_round]

    @property
    def final_accuracy(self) -> float:
        return final_accuracy(self.accuracies)

    @property
    def total_comm_units(self) -> int:
        return sum(metrics.comm_units for metrics in self.per_round)

    @property
    def rounds_to_target(self) -> Optional[int]:
        if self.target_accuracy is None:
            return None
        return rounds_to_accuracy(self.accuracies, self.target_accuracy)

    def to_dict(self) -> Dict[str, Any]:
        """
        Forma serializável do summary.json

        Métricas indefinidas aparecem como "n/a".
        """
        def _metric(value: Optional[float]):
            return "n/a" if value is None else value

        summary: Dict[str, Any] = {
            "mode": self.mode,
            "seed": self.seed,
            "final_accuracy": self.final_accuracy,
            "identification_accuracy": _metric(self.identification_accuracy),
            "identification_recall": _metric(self.identification_recall),
            "total_comm_units": self.total_comm_units,
            "rounds": len(self.per_round),
            "pruned_ids": list(self.pruned_ids),
            "noisy_ids": list(self.noisy_ids),
            "ncs": {str(cid): score for cid, score in sorted(self.ncs.items())},
            "phase_mean_accuracy": phase_means(self.per_round),
            "per_round": [metrics.to_dict() for metrics in self.per_round],
            "config": self.config,
        }
        if self.target_accuracy is not None:
            summary["target_accuracy"] = self.target_accuracy
            summary["rounds_to_target"] = _metric(self.rounds_to_target)
        return summary
