"""
Fixtures compartilhadas por todos os testes
"""

import numpy as np
import pytest

from federation.data import Dataset
from federation.model import ParamVector, init_params, mlp_layout
from federation.rng import RngStream
from simulator.config import parse_config


@pytest.fixture
def rng():
    """
    Stream determinístico para testes

    Returns:
        RngStream: Semente 1234, rótulo "test"
    """
    return RngStream(1234, "test")


@pytest.fixture
def make_rng():
    """Fábrica de streams: make_rng("rótulo", seed=...)"""
    def _make(label: str = "test", seed: int = 1234) -> RngStream:
        return RngStream(seed, label)
    return _make


@pytest.fixture
def toy_dataset():
    """
    Dataset 2D com 4 amostras linearmente separáveis em 2 classes

    Returns:
        Dataset: x > 0 → classe 1
    """
    features = np.array([[-2.0, 0.0], [-1.0, 0.5], [1.0, -0.5], [2.0, 0.0]])
    labels = np.array([0, 0, 1, 1])
    return Dataset(features, labels, num_classes=2)


@pytest.fixture
def small_params(rng):
    """MLP 4 → 5 → 3 inicializado"""
    return init_params(mlp_layout(4, 3, (5,)), rng)


@pytest.fixture
def linear_params():
    """
    Modelo 2 → 2 → 2 que separa o toy_dataset

    Returns:
        ParamVector: Camada oculta quase identidade, saída [-x, x]
    """
    w1 = np.array([[1.0, 0.0], [0.0, 1.0]])
    b1 = np.zeros(2)
    w2 = np.array([[-3.0, 3.0], [0.0, 0.0]])
    b2 = np.zeros(2)
    values = np.concatenate([w1.ravel(), b1, w2.ravel(), b2])
    return ParamVector(values, ((2, 2), (2, 2)))


TINY_OVERRIDES = {
    "seed": 7,
    "threads": 1,
    "data.k": 3,
    "data.per_class": 40,
    "data.dim": 4,
    "federation.clients": 6,
    "federation.sample_rate": 0.5,
    "model.hidden": [8],
    "opt.epochs": 1,
    "opt.batch": 10,
    "clipfl.m": 2,
    "clipfl.p": 0.5,
    "clipfl.t_pre": 3,
    "clipfl.t_post": 2,
    "noise.rho": 0.5,
    "noise.mu": 0.8,
}


@pytest.fixture
def tiny_overrides():
    """Overrides de uma federação pequena e rápida (6 clientes, 5 rodadas)"""
    return dict(TINY_OVERRIDES)


@pytest.fixture
def tiny_config(tiny_overrides, tmp_path):
    """
    ExperimentConfig pequeno com saída em diretório temporário

    Returns:
        ExperimentConfig: ClipFL habilitado, 3 rodadas de Fase I e 2 de Fase III
    """
    overrides = dict(tiny_overrides)
    overrides["output.dir"] = str(tmp_path / "out")
    return parse_config(None, overrides)
