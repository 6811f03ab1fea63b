"""
Controlador ClipFL - máquina de estados PRE → POST

Acumula evidências (NCS) durante a Fase I e executa a poda única na Fase II.
O conjunto verdadeiro de clientes ruidosos fica guardado no estado apenas
para métricas; nenhuma decisão do controlador o consulta.
"""

from typing import Any, Dict, Iterable, Mapping, Optional

from federation.clipfl.metrics import identification_accuracy, identification_recall, optional_metric
from federation.clipfl.pruning import FederationState, Phase, prune
from federation.clipfl.scores import CandidateSplit, NcsTable, rank_clients, split_candidates, update_ncs
from federation.errors import ConfigurationError, ProtocolError
from simulator.logging_config import get_logger

logger = get_logger(__name__, component="clipfl")


class ClipFLController:
    """
    Orquestra ranking, candidatos, NCS e poda

    Estados:
    - PRE: cada rodada observada atualiza o NCS
    - POST: poda executada, tabela congelada; observar rodadas é erro
    """

    def __init__(
        self,
        num_clients: int,
        m: int,
        p: float,
        truth_noisy: Iterable[int] = (),
    ):
        """
        Args:
            num_clients: N (clientes 0..N-1)
            m: Quantidade de candidatos limpos por rodada
            p: Fração de clientes podados
            truth_noisy: S_n verdadeiro (somente métricas)
        """
        if m < 1:
            raise ConfigurationError(f"m deve ser >= 1, recebeu {m}", key="clipfl.m")
        if not 0.0 <= p < 1.0:
            raise ConfigurationError(f"p deve estar em [0, 1), recebeu {p}", key="clipfl.p")
        self.m = m
        self.p = p
        self.state = FederationState.initial(num_clients, truth_noisy)
        self.table = NcsTable.for_clients(range(num_clients))
        self.rounds_observed = 0

        logger.info(
            "Controlador ClipFL inicializado",
            extra={"num_clients": num_clients, "m": m, "p": p}
        )

    @property
    def phase(self) -> Phase:
        return self.state.phase

    @property
    def active(self) -> tuple:
        return self.state.active

    def observe_round(self, accuracies: Mapping[int, float], round_index: Optional[int] = None) -> CandidateSplit:
        """
        Processa as acurácias de validação de uma rodada da Fase I

        Args:
            accuracies: client_id → acurácia de θ_k em D^val
            round_index: Rodada (só para logs)

        Returns:
            CandidateSplit com os candidatos limpos (fundidos) e ruidosos

        Raises:
            ProtocolError: Se a poda já ocorreu
            StateError: Acurácias vazias ou cliente desconhecido
        """
        if self.state.phase != Phase.PRE:
            raise ProtocolError("rodadas da Fase I não podem ser observadas após a poda")
        candidates = split_candidates(rank_clients(accuracies), self.m)
        self.table = update_ncs(self.table, candidates.noisy)
        self.rounds_observed += 1

        logger.debug(
            "Candidatos identificados",
            extra={
                "round": round_index,
                "phase": self.state.phase.value,
                "n_clean": len(candidates.clean),
                "n_noisy": len(candidates.noisy),
            }
        )
        return candidates

    def prune(self) -> FederationState:
        """
        Fase II: remove os ⌊p·|S|⌋ clientes de maior NCS e congela a tabela

        Raises:
            ProtocolError: Se chamado mais de uma vez
        """
        self.state = prune(self.state, self.table, self.p)
        self.table = self.table.freeze()

        logger.info(
            "Poda de clientes executada",
            extra={
                "event_type": "prune",
                "pruned_ids": sorted(self.state.pruned),
                "n_active": len(self.state.active),
                "identification_accuracy": self.identification_accuracy,
            }
        )
        return self.state

    @property
    def identification_accuracy(self) -> Optional[float]:
        """None enquanto nada foi podado"""
        return optional_metric(identification_accuracy, self.state.pruned, self.state.truth_noisy)

    @property
    def identification_recall(self) -> Optional[float]:
        if self.state.phase != Phase.POST:
            return None
        return optional_metric(identification_recall, self.state.pruned, self.state.truth_noisy)

    def get_status(self) -> Dict[str, Any]:
        """Retorna o status atual do controlador"""
        return {
            "phase": self.state.phase.value,
            "rounds_observed": self.rounds_observed,
            "active": len(self.state.active),
            "pruned_ids": sorted(self.state.pruned),
            "ncs": self.table.as_dict(),
            "frozen": self.table.frozen,
        }
