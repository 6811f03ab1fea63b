"""
Interface abstrata para estratégias de agregação no servidor
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

import numpy as np

from federation.errors import FusionError
from federation.model import ParamVector


@dataclass(frozen=True)
class ClientContribution:
    """
    Modelo devolvido por um cliente ao fim do treino local

    Attributes:
        client_id: Identificador do cliente
        params: θ_k
        n_samples: |D_k| (peso na média)
        local_steps: τ_k (normalização do FedNova)
    """
    client_id: int
    params: ParamVector
    n_samples: int
    local_steps: int = 1

    def __post_init__(self):
        if self.n_samples < 1:
            raise FusionError(f"cliente {self.client_id}: n_samples deve ser >= 1")


def ordered(contribs: Sequence[ClientContribution]) -> List[ClientContribution]:
    """
    Contribuições em ordem crescente de client_id

    A soma sempre na mesma ordem torna as fusões invariantes a permutações
    bit a bit.
    """
    if not contribs:
        raise FusionError("lista de contribuições vazia")
    result = sorted(contribs, key=lambda c: c.client_id)
    layout = result[0].params.layout
    if any(c.params.layout != layout for c in result):
        raise FusionError("contribuições com layouts diferentes")
    return result


def sample_weights(contribs: Sequence[ClientContribution]) -> np.ndarray:
    """|D_k| / Σ|D_k|"""
    sizes = np.array([c.n_samples for c in contribs], dtype=np.float64)
    return sizes / sizes.sum()


class FusionStrategy(ABC):
    """Interface de ModelFusion: funde contribuições no novo modelo global"""

    name: str = "abstract"

    @abstractmethod
    def fuse(self, global_params: ParamVector, contribs: Sequence[ClientContribution]) -> ParamVector:
        """
        Produz θ^{t+1}

        Args:
            global_params: θ^t
            contribs: Contribuições dos clientes escolhidos para a fusão

        Returns:
            Novo modelo global

        Raises:
            FusionError: Lista vazia ou contribuições inválidas
        """
        pass

    def get_status(self) -> Dict[str, Any]:
        """Estado resumido da estratégia (para logs)"""
        return {"strategy": self.name}
