"""
Testes para o ClipFLController
"""

import math

import pytest

from federation.clipfl import ClipFLController, Phase
from federation.errors import ConfigurationError, ProtocolError
from federation.rng import RngStream

from simulator.tests.unit.clipfl.test_scores import SCRIPTED_NCS, SCRIPTED_ROUNDS


def _brute_force(num_clients, rounds, m, p):
    """Reimplementação direta: seleção repetida do melhor em vez de ordenação"""
    ncs = {cid: 0 for cid in range(num_clients)}
    for accuracies in rounds:
        remaining = dict(accuracies)
        ranked = []
        while remaining:
            best = None
            for cid, acc in remaining.items():
                if best is None or acc > remaining[best] or (acc == remaining[best] and cid < best):
                    best = cid
            ranked.append(best)
            del remaining[best]
        for position, cid in enumerate(ranked):
            if position >= m:
                ncs[cid] += 1

    count = math.floor(p * num_clients + 1e-9)
    pool = set(range(num_clients))
    pruned = set()
    for _ in range(count):
        worst = None
        for cid in pool:
            if worst is None or ncs[cid] > ncs[worst] or (ncs[cid] == ncs[worst] and cid < worst):
                worst = cid
        pruned.add(worst)
        pool.remove(worst)
    return ncs, pruned


@pytest.mark.unit
class TestClipFLController:
    """Testes da máquina de estados PRE → POST"""

    def test_scripted_trace(self):
        """Testa NCS e podados no trace de 6 clientes"""
        controller = ClipFLController(6, m=2, p=0.5, truth_noisy=[1, 2, 4])
        for t, accuracies in enumerate(SCRIPTED_ROUNDS, start=1):
            controller.observe_round(accuracies, round_index=t)
        assert controller.table.as_dict() == SCRIPTED_NCS
        state = controller.prune()
        assert state.pruned == frozenset({1, 2, 3})
        assert state.active == (0, 4, 5)
        assert controller.identification_accuracy == pytest.approx(2 / 3)
        assert controller.identification_recall == pytest.approx(2 / 3)

    def test_observe_returns_split(self):
        """Testa candidatos devolvidos na ordem do ranking"""
        controller = ClipFLController(4, m=1, p=0.25)
        split = controller.observe_round({0: 0.1, 3: 0.9, 2: 0.4})
        assert split.clean == (3,)
        assert split.noisy == (2, 0)
        assert controller.rounds_observed == 1

    def test_observe_after_prune(self):
        """Testa rodada da Fase I depois da poda"""
        controller = ClipFLController(4, m=1, p=0.5)
        controller.prune()
        with pytest.raises(ProtocolError):
            controller.observe_round({0: 0.5})

    def test_prune_twice(self):
        """Testa segunda poda"""
        controller = ClipFLController(4, m=1, p=0.5)
        controller.prune()
        with pytest.raises(ProtocolError):
            controller.prune()

    def test_never_sampled_keep_zero(self):
        """Testa que clientes não amostrados mantêm NCS 0 e sobrevivem"""
        controller = ClipFLController(5, m=1, p=0.4)
        controller.observe_round({0: 0.9, 1: 0.1, 2: 0.2})
        controller.prune()
        assert controller.table[3] == 0 and controller.table[4] == 0
        assert controller.state.pruned == frozenset({1, 2})

    def test_metrics_before_prune(self):
        """Testa métricas indefinidas antes da poda"""
        controller = ClipFLController(3, m=1, p=0.5, truth_noisy=[0])
        assert controller.identification_accuracy is None
        assert controller.identification_recall is None

    def test_zero_p_metrics(self):
        """Testa p=0: acurácia indefinida, recall 0"""
        controller = ClipFLController(3, m=1, p=0.0, truth_noisy=[0])
        controller.prune()
        assert controller.phase == Phase.POST
        assert controller.identification_accuracy is None
        assert controller.identification_recall == 0.0

    @pytest.mark.parametrize("m,p,key", [(0, 0.5, "clipfl.m"), (1, 1.0, "clipfl.p")])
    def test_invalid_parameters(self, m, p, key):
        """Testa m < 1 e p >= 1"""
        with pytest.raises(ConfigurationError, match=key):
            ClipFLController(4, m=m, p=p)

    def test_status(self):
        """Testa o dicionário de status"""
        controller = ClipFLController(2, m=1, p=0.5)
        controller.observe_round({0: 0.2, 1: 0.3})
        status = controller.get_status()
        assert status["phase"] == "pre"
        assert status["ncs"] == {0: 1, 1: 0}
        assert status["frozen"] is False


@pytest.mark.unit
class TestControllerOracle:
    """Equivalência com a reimplementação por força bruta"""

    def test_random_traces(self):
        """Testa 1000 traces aleatórios com até 8 clientes e 6 rodadas"""
        settings = RngStream(314, "oracle")
        for _ in range(1000):
            num_clients = 1 + settings.uniform_int(8)
            num_rounds = 1 + settings.uniform_int(6)
            m = 1 + settings.uniform_int(4)
            p = float(settings.random()) * 0.99
            rounds = []
            for _ in range(num_rounds):
                size = 1 + settings.uniform_int(num_clients)
                sampled = settings.sample_without_replacement(list(range(num_clients)), size)
                # acurácias em décimos para forçar empates
                rounds.append({cid: settings.uniform_int(11) / 10 for cid in sampled})

            controller = ClipFLController(num_clients, m=m, p=p)
            for accuracies in rounds:
                controller.observe_round(accuracies)
            state = controller.prune()

            expected_ncs, expected_pruned = _brute_force(num_clients, rounds, m, p)
            assert controller.table.as_dict() == expected_ncs
            assert state.pruned == frozenset(expected_pruned)
