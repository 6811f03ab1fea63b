"""
Testes de integração do engine: execução completa em uma federação pequena
"""

import importlib

import numpy as np
import pytest

from federation.engine import FederatedEngine, prepare_federation, run_simulation
from federation.noise import select_noisy_clients
from federation.rng import RngStream
from simulator.config import parse_config
from simulator.reporting import write_artifacts


def _config(tiny_overrides, **extra):
    overrides = dict(tiny_overrides)
    overrides.update(extra)
    return parse_config(None, overrides)


def _run_and_read(cfg, out_dir):
    setup = prepare_federation(cfg)
    report = FederatedEngine(setup, cfg).run()
    write_artifacts(out_dir, setup, report)
    return report, (out_dir / "rounds.csv").read_bytes(), (out_dir / "summary.json").read_bytes()


@pytest.mark.integration
class TestClipFLRun:
    """Testes de uma execução ClipFL completa"""

    def test_round_count_and_phases(self, tiny_config):
        """Testa T_pre + T_post rodadas com as fases corretas"""
        report = run_simulation(tiny_config)
        assert [m.round for m in report.per_round] == [1, 2, 3, 4, 5]
        assert [m.phase for m in report.per_round] == ["pre", "pre", "pre", "post", "post"]

    def test_pruned_never_sampled_again(self, tiny_config):
        """Testa que nenhum podado volta a ser amostrado"""
        report = run_simulation(tiny_config)
        assert len(report.pruned_ids) == 3
        for metrics in report.per_round:
            if metrics.phase == "post":
                assert not set(metrics.sampled) & set(report.pruned_ids)

    def test_phase_one_candidates(self, tiny_config):
        """Testa 3 amostrados divididos em 2 limpos e 1 ruidoso por rodada"""
        report = run_simulation(tiny_config)
        for metrics in report.per_round[:3]:
            assert len(metrics.sampled) == 3
            assert len(metrics.clean_candidates) == 2
            assert len(metrics.noisy_candidates) == 1
            assert set(metrics.clean_candidates) | set(metrics.noisy_candidates) == set(metrics.sampled)
        for metrics in report.per_round[3:]:
            assert metrics.clean_candidates == () and metrics.noisy_candidates == ()

    def test_ncs_counts_phase_one(self, tiny_config):
        """Testa NCS = vezes em que o cliente foi candidato a ruidoso"""
        report = run_simulation(tiny_config)
        expected = {cid: 0 for cid in range(6)}
        for metrics in report.per_round[:3]:
            for cid in metrics.noisy_candidates:
                expected[cid] += 1
        assert report.ncs == expected

    def test_communication(self, tiny_config):
        """Testa 2 transferências por amostrado: 3 rodadas de 3 e 2 de 1"""
        report = run_simulation(tiny_config)
        assert report.total_comm_units == 2 * (3 * 3 + 2 * 1)

    def test_identification_metrics(self, tiny_config):
        """Testa métricas de identificação definidas e em [0, 1]"""
        report = run_simulation(tiny_config)
        assert len(report.noisy_ids) == 3
        assert 0.0 <= report.identification_accuracy <= 1.0
        assert 0.0 <= report.identification_recall <= 1.0

    def test_zero_post_rounds_still_prunes(self, tiny_overrides):
        """Testa t_post = 0: a poda acontece ao final"""
        report = run_simulation(_config(tiny_overrides, **{"clipfl.t_post": 0}))
        assert len(report.per_round) == 3
        assert len(report.pruned_ids) == 3

    @pytest.mark.parametrize("optimizer", ["fedprox", "fednova", "fedadam"])
    def test_server_optimizers(self, tiny_overrides, optimizer):
        """Testa execução completa com cada variante de agregação"""
        report = run_simulation(_config(tiny_overrides, **{"server.optimizer": optimizer}))
        assert len(report.per_round) == 5
        assert all(0.0 <= acc <= 1.0 for acc in report.accuracies)

    def test_dirichlet_partition(self, tiny_overrides):
        """Testa execução com partição Dirichlet"""
        report = run_simulation(_config(tiny_overrides, **{"partition.kind": "dirichlet", "partition.alpha": 0.5}))
        assert len(report.per_round) == 5


@pytest.mark.integration
class TestDeterminism:
    """Reprodutibilidade entre execuções e número de threads"""

    def test_same_seed_same_artifacts(self, tiny_overrides, tmp_path):
        """Testa rounds.csv e summary.json idênticos byte a byte com 1 e 3 threads"""
        out = tmp_path / "run"
        _, rounds_a, summary_a = _run_and_read(_config(tiny_overrides, threads=1), out)
        _, rounds_b, summary_b = _run_and_read(_config(tiny_overrides, threads=3), out)
        assert rounds_a == rounds_b
        assert summary_a == summary_b

    def test_noise_streams_follow_labels(self, tiny_config):
        """Testa que a seleção de ruidosos usa o stream noise/select da semente"""
        setup = prepare_federation(tiny_config)
        expected = select_noisy_clients(6, 0.5, RngStream(tiny_config.seed, "noise/select"))
        assert setup.noisy.noisy_ids == expected.noisy_ids

    def test_different_seeds_differ(self, tiny_overrides):
        """Testa que sementes diferentes mudam o sorteio dos ruidosos ou das amostras"""
        a = run_simulation(_config(tiny_overrides, seed=1))
        b = run_simulation(_config(tiny_overrides, seed=2))
        assert (a.noisy_ids, [m.sampled for m in a.per_round]) != (b.noisy_ids, [m.sampled for m in b.per_round])


@pytest.mark.integration
class TestVanillaEquivalence:
    """ClipFL degenerado deve reproduzir o FedAvg vanilla"""

    def test_saturated_candidates_match_vanilla(self, tiny_overrides):
        """Testa m >= amostrados e p = 0: mesmos modelos globais rodada a rodada"""
        degenerate = _config(tiny_overrides, **{"clipfl.m": 6, "clipfl.p": 0.0})
        vanilla = degenerate.with_clipfl(False)
        setup = prepare_federation(degenerate)

        trajectories = {}
        for name, cfg in (("clipfl", degenerate), ("vanilla", vanilla)):
            models = []
            FederatedEngine(setup, cfg).run(on_round=lambda params, _metrics: models.append(params.values.copy()))
            trajectories[name] = models

        assert len(trajectories["clipfl"]) == 5
        for a, b in zip(trajectories["clipfl"], trajectories["vanilla"]):
            assert np.array_equal(a, b)

    def test_vanilla_report(self, tiny_config):
        """Testa relatório vanilla: sem poda, métricas indefinidas"""
        report = run_simulation(tiny_config.with_clipfl(False))
        assert report.mode == "vanilla"
        assert report.pruned_ids == ()
        assert report.identification_accuracy is None
        assert all(m.phase == "vanilla" for m in report.per_round)
        assert report.total_comm_units == 5 * 2 * 3


@pytest.mark.integration
class TestTruthFirewall:
    """O conjunto verdadeiro de ruidosos não influencia decisões"""

    def test_scrambled_truth_same_decisions(self, tiny_config):
        """Testa mesmo modelo final e mesma poda com S_n embaralhado"""
        setup = prepare_federation(tiny_config)
        true_ids = set(setup.noisy.noisy_ids)
        fake_ids = [cid for cid in range(setup.num_clients) if cid not in true_ids]

        real = FederatedEngine(setup, tiny_config).run()
        scrambled = FederatedEngine(setup.with_truth(fake_ids), tiny_config).run()

        assert real.pruned_ids == scrambled.pruned_ids
        assert real.ncs == scrambled.ncs
        assert np.array_equal(real.global_params.values, scrambled.global_params.values)
        if real.identification_accuracy is not None:
            assert real.identification_accuracy + scrambled.identification_accuracy == pytest.approx(1.0)


@pytest.mark.integration
class TestSingleRound:
    """Rodadas isoladas com resultados conhecidos"""

    def test_forced_accuracies_candidates(self, tiny_overrides, monkeypatch):
        """Testa listas de candidatos com acurácias de validação forçadas em 4 clientes"""
        engine_module = importlib.import_module("federation.engine.engine")
        cfg = _config(tiny_overrides, **{"federation.clients": 4, "federation.sample_rate": 1.0})
        setup = prepare_federation(cfg)
        engine = FederatedEngine(setup, cfg)

        owners = {}
        train_client = engine._train_client

        def tracking(client_id, round_index):
            result = train_client(client_id, round_index)
            owners[id(result.params)] = client_id
            return result

        forced = {0: 0.3, 1: 0.9, 2: 0.3, 3: 0.6}
        real_evaluate = engine_module.evaluate

        def fake_evaluate(params, dataset):
            if dataset is setup.validation:
                return forced[owners[id(params)]]
            return real_evaluate(params, dataset)

        engine._train_client = tracking
        monkeypatch.setattr(engine_module, "evaluate", fake_evaluate)

        _, metrics = engine.run_round(1)
        assert metrics.sampled == (0, 1, 2, 3)
        assert metrics.clean_candidates == (1, 3)
        assert metrics.noisy_candidates == (0, 2)
        assert engine.controller.table.as_dict() == {0: 1, 1: 0, 2: 1, 3: 0}

    def test_vanilla_single_client_identity(self, tiny_overrides):
        """Testa FedAvg com um único amostrado: global = modelo do cliente"""
        cfg = _config(
            tiny_overrides, **{"federation.clients": 4, "federation.sample_rate": 0.25, "clipfl.enabled": False}
        )
        engine = FederatedEngine(prepare_federation(cfg), cfg)

        new_global, metrics = engine.run_round(1)
        assert len(metrics.sampled) == 1
        local = engine._train_client(metrics.sampled[0], 1)
        assert np.array_equal(new_global.values, local.params.values)
