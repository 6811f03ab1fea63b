"""
Métricas de identificação de clientes ruidosos

Estas funções são as únicas que leem o conjunto verdadeiro S_n.
"""

from typing import Iterable, Optional

from federation.errors import IdentificationError


def identification_accuracy(pruned: Iterable[int], truth_noisy: Iterable[int]) -> float:
    """
    |podados ∩ ruidosos| / |podados|

    Raises:
        IdentificationError: Se nenhum cliente foi podado (métrica indefinida)

    Examples:
        >>> identification_accuracy({1, 2, 3, 4}, {4, 9})
        0.25
    """
    pruned = set(pruned)
    if not pruned:
        raise IdentificationError("nenhum cliente podado: acurácia de identificação indefinida")
    return len(pruned & set(truth_noisy)) / len(pruned)


def identification_recall(pruned: Iterable[int], truth_noisy: Iterable[int]) -> float:
    """
    |podados ∩ ruidosos| / |ruidosos|

    Raises:
        IdentificationError: Se não há clientes ruidosos
    """
    truth = set(truth_noisy)
    if not truth:
        raise IdentificationError("nenhum cliente ruidoso: recall indefinido")
    return len(set(pruned) & truth) / len(truth)


def candidate_precision(noisy_candidates: Iterable[int], truth_noisy: Iterable[int]) -> Optional[float]:
    """Fração dos candidatos a ruidoso da rodada que são de fato ruidosos (None se não houver candidatos)"""
    candidates = set(noisy_candidates)
    if not candidates:
        return None
    return len(candidates & set(truth_noisy)) / len(candidates)


def optional_metric(func, *args) -> Optional[float]:
    """Aplica a métrica devolvendo None quando ela é indefinida"""
    try:
        return func(*args)
    except IdentificationError:
        return None
