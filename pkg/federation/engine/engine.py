"""
Laço de rodadas do ClipFL (Fases I, II e III) e do FL vanilla

O engine é o único dono do estado mutável da execução: modelo global,
controlador ClipFL e estado do otimizador do servidor. O treino local dos
clientes roda em paralelo; avaliação, ranking e fusão são uma barreira
sequencial ordenada por client_id.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, Callable, Dict, List, Optional, Sequence, Tuple

from federation.aggregation import ClientContribution, FusionFactory
from federation.clipfl import ClipFLController, Phase, candidate_precision
from federation.engine.metrics import RoundMetrics, RunReport, phase_means
from federation.engine.sampling import sample_clients
from federation.engine.setup import FederationSetup, prepare_federation
from federation.errors import FederationError, RoundError
from federation.model import LocalUpdateResult, ParamVector, evaluate, local_update
from federation.rng import RngStream
from simulator.logging_config import LogContext, get_logger

if TYPE_CHECKING:
    from simulator.config import ExperimentConfig

logger = get_logger(__name__, component="engine")

VANILLA_PHASE = "vanilla"

RoundCallback = Callable[[ParamVector, RoundMetrics], None]


class FederatedEngine:
    """
    Executa T_pre + T_post rodadas

    Com clipfl.enabled as primeiras T_pre rodadas fundem só os candidatos
    limpos e alimentam o NCS; a poda acontece uma vez entre as fases. Sem
    ClipFL todas as rodadas são FedAvg (ou a variante configurada) padrão.
    """

    def __init__(self, setup: FederationSetup, cfg: ExperimentConfig, threads: Optional[int] = None):
        """
        Args:
            setup: Estado inicial preparado
            cfg: Configuração validada
            threads: Workers do treino local (padrão: cfg.threads)
        """
        self.setup = setup
        self.cfg = cfg
        self.threads = threads or cfg.threads
        self.fusion = FusionFactory.create(cfg.server)
        self.prox_mu = cfg.prox_mu
        self.global_params = setup.initial_params
        self.history: List[RoundMetrics] = []
        self.controller: Optional[ClipFLController] = None
        if cfg.clipfl.enabled:
            self.controller = ClipFLController(
                setup.num_clients,
                m=cfg.clipfl.m,
                p=cfg.clipfl.p,
                truth_noisy=setup.noisy.noisy_ids,
            )
        self._eligible = setup.eligible

    @property
    def mode(self) -> str:
        return "clipfl" if self.controller else "vanilla"

    @property
    def phase(self) -> str:
        return self.controller.phase.value if self.controller else VANILLA_PHASE

    def sampling_pool(self) -> List[int]:
        """Clientes ativos com amostras"""
        active = self.controller.active if self.controller else range(self.setup.num_clients)
        return [cid for cid in active if cid in self._eligible]

    def _train_client(self, client_id: int, round_index: int) -> LocalUpdateResult:
        rng = RngStream(self.cfg.seed, f"train/round/{round_index}/client/{client_id}")
        return local_update(
            self.global_params,
            self.setup.shards[client_id],
            self.setup.dataset,
            self.cfg.opt,
            self.cfg.loss,
            rng,
            prox_mu=self.prox_mu,
        )

    def _local_updates(self, sampled: Sequence[int], round_index: int) -> Dict[int, LocalUpdateResult]:
        if self.threads <= 1 or len(sampled) == 1:
            return {cid: self._train_client(cid, round_index) for cid in sampled}
        with ThreadPoolExecutor(max_workers=min(self.threads, len(sampled))) as pool:
            results = pool.map(lambda cid: self._train_client(cid, round_index), sampled)
            return dict(zip(sampled, results))

    def run_round(self, round_index: int) -> Tuple[ParamVector, RoundMetrics]:
        """
        Uma rodada completa: amostragem, ClientUpdate, (ranking), fusão, teste

        Args:
            round_index: Índice da rodada, a partir de 1

        Returns:
            (novo modelo global, RoundMetrics)

        Raises:
            RoundError: Qualquer falha da rodada, com o índice como contexto
        """
        try:
            return self._run_round(round_index)
        except RoundError:
            raise
        except FederationError as e:
            logger.error(
                "Falha na rodada",
                extra={"round": round_index, "error": str(e), "error_type": type(e).__name__}
            )
            raise RoundError(str(e), round_index) from e

    def _run_round(self, round_index: int) -> Tuple[ParamVector, RoundMetrics]:
        phase = self.phase
        pool = self.sampling_pool()
        if not pool:
            raise RoundError("nenhum cliente elegível com amostras", round_index)
        sampled = sample_clients(pool, self.cfg.federation.sample_rate, RngStream(self.cfg.seed, f"sample/round/{round_index}"))

        updates = self._local_updates(sampled, round_index)
        contribs = [
            ClientContribution(cid, result.params, result.n_samples, result.local_steps)
            for cid, result in sorted(updates.items())
        ]

        clean: Tuple[int, ...] = ()
        noisy: Tuple[int, ...] = ()
        precision = None
        fused_contribs = contribs
        if self.controller is not None and self.controller.phase == Phase.PRE:
            accuracies = {cid: evaluate(updates[cid].params, self.setup.validation) for cid in sampled}
            candidates = self.controller.observe_round(accuracies, round_index)
            clean, noisy = candidates.clean, candidates.noisy
            selected = set(clean)
            fused_contribs = [c for c in contribs if c.client_id in selected]
            precision = candidate_precision(noisy, self.controller.state.truth_noisy)

        new_global = self.fusion.fuse(self.global_params, fused_contribs)
        test_accuracy = evaluate(new_global, self.setup.test)

        metrics = RoundMetrics(
            round=round_index,
            phase=phase,
            test_accuracy=test_accuracy,
            sampled=tuple(sampled),
            clean_candidates=clean,
            noisy_candidates=noisy,
            candidate_precision=precision,
        )
        logger.info(
            "Rodada concluída",
            extra={
                "round": round_index,
                "phase": phase,
                "test_accuracy": round(test_accuracy, 4),
                "n_sampled": len(sampled),
                "n_clean": len(clean),
                "n_noisy": len(noisy),
                "comm_units": metrics.comm_units,
            }
        )
        return new_global, metrics

    def run(self, on_round: Optional[RoundCallback] = None) -> RunReport:
        """
        Executa todas as rodadas e monta o RunReport

        Args:
            on_round: Chamado com (θ^{t+1}, métricas) ao fim de cada rodada
        """
        start = time.perf_counter()
        t_pre, t_post = self.cfg.clipfl.t_pre, self.cfg.clipfl.t_post

        with LogContext(run_mode=self.mode):
            logger.info(
                "Execução iniciada",
                extra={"event_type": "run_start", "seed": self.cfg.seed, "mode": self.mode,
                       "optimizer": self.fusion.name}
            )
            for round_index in range(1, t_pre + t_post + 1):
                if self.controller is not None and round_index == t_pre + 1:
                    self.controller.prune()
                self.global_params, metrics = self.run_round(round_index)
                self.history.append(metrics)
                if on_round is not None:
                    on_round(self.global_params, metrics)

            if self.controller is not None and self.controller.phase == Phase.PRE:
                # t_post = 0: a poda ainda acontece para reportar a identificação
                self.controller.prune()

            report = self._report()
            logger.info(
                "Execução concluída",
                extra={
                    "event_type": "run_end",
                    "duration_ms": round((time.perf_counter() - start) * 1000, 1),
                    "test_accuracy": round(report.final_accuracy, 4),
                    "comm_units": report.total_comm_units,
                    "identification_accuracy": report.identification_accuracy,
                    "phase_mean_accuracy": {k: round(v, 4) for k, v in phase_means(report.per_round).items()},
                }
            )
        return report

    def _report(self) -> RunReport:
        if self.controller is not None:
            pruned = tuple(sorted(self.controller.state.pruned))
            ncs = self.controller.table.as_dict()
            ident_acc = self.controller.identification_accuracy
            ident_recall = self.controller.identification_recall
        else:
            pruned, ncs, ident_acc, ident_recall = (), {}, None, None
        return RunReport(
            mode=self.mode,
            seed=self.cfg.seed,
            per_round=tuple(self.history),
            pruned_ids=pruned,
            ncs=ncs,
            noisy_ids=tuple(sorted(self.setup.noisy.noisy_ids)),
            identification_accuracy=ident_acc,
            identification_recall=ident_recall,
            config=self.cfg.echo(),
            global_params=self.global_params,
            target_accuracy=self.cfg.output.target_accuracy,
        )


def run_simulation(cfg: ExperimentConfig, setup: Optional[FederationSetup] = None) -> RunReport:
    """
    Ponto de entrada da biblioteca: prepara a federação e executa todas as rodadas

    Args:
        cfg: Configuração validada
        setup: Setup já preparado (reaproveitado no modo ab)

    Returns:
        RunReport da execução
    """
    setup = setup or prepare_federation(cfg)
    return FederatedEngine(setup, cfg).run()
