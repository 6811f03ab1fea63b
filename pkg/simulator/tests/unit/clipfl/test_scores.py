"""
Testes para ranking, candidatos e NCS
"""

import pytest

from federation.clipfl import NcsTable, rank_clients, split_candidates, update_ncs
from federation.errors import ConfigurationError, StateError

# Rodadas com acurácias fixas em 6 clientes, m = 2
SCRIPTED_ROUNDS = [
    {0: 0.9, 1: 0.2, 2: 0.5, 3: 0.8},  # [0, 3 | 2, 1]
    {1: 0.3, 4: 0.7, 5: 0.7},  # [4, 5 | 1]
    {0: 0.6, 2: 0.6, 3: 0.1, 5: 0.9},  # [5, 0 | 2, 3]
    {1: 0.1, 2: 0.2},  # saturado
]
SCRIPTED_NCS = {0: 0, 1: 2, 2: 2, 3: 1, 4: 0, 5: 0}


@pytest.mark.unit
class TestRankClients:
    """Testes do ranking por acurácia de validação"""

    def test_descending(self):
        """Testa ordem decrescente"""
        assert rank_clients({3: 0.9, 1: 0.4, 7: 0.7}) == [3, 7, 1]

    def test_ties_by_lowest_id(self):
        """Testa desempate pelo menor id"""
        assert rank_clients({2: 0.5, 0: 0.5, 9: 0.5}) == [0, 2, 9]

    def test_singleton(self):
        """Testa um único cliente"""
        assert rank_clients({4: 0.1}) == [4]

    def test_empty(self):
        """Testa mapa vazio"""
        with pytest.raises(StateError):
            rank_clients({})


@pytest.mark.unit
class TestSplitCandidates:
    """Testes da divisão top-m"""

    def test_ten_ranked(self):
        """Testa 10 ordenados com m=5"""
        split = split_candidates(list(range(10)), 5)
        assert split.clean == (0, 1, 2, 3, 4)
        assert split.noisy == (5, 6, 7, 8, 9)

    def test_saturation(self):
        """Testa |ranked| <= m: todos limpos"""
        split = split_candidates([8, 3, 1], 5)
        assert split.clean == (8, 3, 1)
        assert split.noisy == ()

    def test_top_one(self):
        """Testa m=1"""
        assert split_candidates([6, 2, 4], 1).clean == (6,)

    def test_invalid_m(self):
        """Testa m < 1"""
        with pytest.raises(ConfigurationError, match="clipfl.m"):
            split_candidates([1, 2], 0)


@pytest.mark.unit
class TestUpdateNcs:
    """Testes da contagem de candidaturas"""

    def test_counting(self):
        """Testa cliente marcado em 3 de 5 rodadas"""
        table = NcsTable.for_clients(range(3))
        for flagged in [True, False, True, True, False]:
            table = update_ncs(table, [1] if flagged else [])
        assert table[1] == 3
        assert table[0] == 0

    def test_empty_candidates_unchanged(self):
        """Testa conjunto vazio"""
        table = NcsTable.for_clients(range(3))
        assert update_ncs(table, []) is table

    def test_unknown_client(self):
        """Testa id fora da tabela"""
        with pytest.raises(StateError):
            update_ncs(NcsTable.for_clients(range(3)), [7])

    def test_frozen_table(self):
        """Testa incremento após o congelamento"""
        with pytest.raises(StateError):
            update_ncs(NcsTable.for_clients(range(3)).freeze(), [1])

    def test_immutable(self):
        """Testa que a tabela original não muda"""
        table = NcsTable.for_clients(range(3))
        update_ncs(table, [0, 2])
        assert table.as_dict() == {0: 0, 1: 0, 2: 0}

    def test_negative_rejected(self):
        """Testa NCS negativo"""
        with pytest.raises(StateError):
            NcsTable({0: -1})

    def test_scripted_trace(self):
        """Testa o trace de 6 clientes e 4 rodadas contra a tabela calculada à mão"""
        table = NcsTable.for_clients(range(6))
        for accuracies in SCRIPTED_ROUNDS:
            table = update_ncs(table, split_candidates(rank_clients(accuracies), 2).noisy)
        assert table.as_dict() == SCRIPTED_NCS
