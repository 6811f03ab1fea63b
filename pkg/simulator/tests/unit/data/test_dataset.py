"""
Testes para Dataset, divisão treino/validação/teste e gerador sintético
"""

import numpy as np
import pytest

from federation.data import Dataset, generate_synthetic, split
from federation.errors import ConfigurationError, DataError
from federation.rng import RngStream
from simulator.config import DataConfig


def _dataset(n: int, num_classes: int = 3) -> Dataset:
    return Dataset(np.zeros((n, 2)), np.arange(n) % num_classes, num_classes)


@pytest.mark.unit
class TestDataset:
    """Testes de invariantes do Dataset"""

    def test_labels_out_of_range(self):
        """Testa rejeição de rótulo >= K"""
        with pytest.raises(DataError):
            Dataset(np.zeros((2, 2)), np.array([0, 3]), num_classes=3)

    def test_misaligned_rows(self):
        """Testa rejeição de features e rótulos desalinhados"""
        with pytest.raises(DataError):
            Dataset(np.zeros((3, 2)), np.array([0, 1]), num_classes=2)

    def test_arrays_are_read_only(self):
        """Testa imutabilidade"""
        ds = _dataset(4)
        with pytest.raises(ValueError):
            ds.labels[0] = 1

    def test_subset_keeps_order(self):
        """Testa subset na ordem dos índices"""
        ds = _dataset(6)
        sub = ds.subset([5, 0])
        assert sub.n_samples == 2
        assert list(sub.labels) == [2, 0]


@pytest.mark.unit
class TestSplit:
    """Testes da divisão 9:1:2"""

    @pytest.mark.parametrize("n,expected", [
        (1200, (900, 100, 200)),
        (60000, (45000, 5000, 10000)),
        (13, (9, 1, 3)),
    ])
    def test_sizes(self, n, expected):
        """Testa tamanhos por piso com resto para o teste"""
        assert split(_dataset(n), RngStream(1, "split")).sizes == expected

    def test_bijection(self):
        """Testa que os três conjuntos cobrem o dataset sem repetição"""
        s = split(_dataset(257), RngStream(2, "split"))
        merged = np.concatenate([s.train, s.validation, s.test])
        assert sorted(merged.tolist()) == list(range(257))

    def test_deterministic(self):
        """Testa reprodutibilidade com o mesmo stream"""
        a = split(_dataset(100), RngStream(3, "split"))
        b = split(_dataset(100), RngStream(3, "split"))
        assert np.array_equal(a.train, b.train)
        assert np.array_equal(a.test, b.test)

    def test_too_small(self):
        """Testa dataset menor que a soma da razão"""
        with pytest.raises(ConfigurationError, match="data.split_ratio"):
            split(_dataset(11), RngStream(1, "split"))


@pytest.mark.unit
class TestSyntheticGenerator:
    """Testes do gerador de blobs gaussianos"""

    def test_counts_and_balance(self):
        """Testa K·per_class amostras balanceadas"""
        ds = generate_synthetic(10, 100, 16, 0.5, RngStream(1, "data"))
        assert ds.n_samples == 1000
        assert ds.feature_dim == 16
        assert np.bincount(ds.labels).tolist() == [100] * 10

    def test_minimal_instance(self):
        """Testa K=2, uma amostra por classe"""
        ds = generate_synthetic(2, 1, 2, 0.1, RngStream(1, "data"))
        assert ds.n_samples == 2
        assert set(ds.labels.tolist()) == {0, 1}

    def test_reproducible(self):
        """Testa reprodutibilidade elemento a elemento"""
        a = generate_synthetic(4, 10, 5, 0.3, RngStream(8, "data"))
        b = generate_synthetic(4, 10, 5, 0.3, RngStream(8, "data"))
        assert np.array_equal(a.features, b.features)

    def test_more_classes_than_dimensions(self):
        """Testa direções aleatórias quando K > dim"""
        ds = generate_synthetic(12, 5, 3, 0.2, RngStream(4, "data"))
        assert ds.num_classes == 12
        assert np.all(np.isfinite(ds.features))

    @pytest.mark.parametrize("args,key", [
        ((1, 10, 4, 0.5), "data.k"),
        ((3, 0, 4, 0.5), "data.per_class"),
        ((3, 10, 1, 0.5), "data.dim"),
        ((3, 10, 4, 0.0), "data.spread"),
    ])
    def test_invalid_dimensions(self, args, key):
        """Testa erros de configuração com a chave correspondente"""
        with pytest.raises(ConfigurationError, match=key):
            generate_synthetic(*args, RngStream(1, "data"))

    @pytest.mark.parametrize("seed", [11, 12, 13])
    def test_linear_separability(self, seed):
        """Testa que um classificador linear passa de 95% em amostras retidas com os padrões do protocolo"""
        defaults = DataConfig()
        ds = generate_synthetic(
            defaults.k, 200, defaults.dim, defaults.spread, RngStream(seed, "data"),
            separation=defaults.separation,
        )
        order = RngStream(seed, "holdout").permutation(ds.n_samples)
        train, held = order[:1000], order[1000:]

        def _design(idx):
            return np.hstack([ds.features[idx], np.ones((len(idx), 1))])

        targets = np.eye(defaults.k)[ds.labels[train]]
        weights, *_ = np.linalg.lstsq(_design(train), targets, rcond=None)
        predictions = np.argmax(_design(held) @ weights, axis=1)
        assert (predictions == ds.labels[held]).mean() >= 0.95
