"""
Gerador de dataset sintético (blobs gaussianos por classe)

Substitui o pipeline de imagens: o protocolo é agnóstico ao modelo, então
qualquer tarefa de classificação aprendível serve para exercitar a
identificação e a poda de clientes ruidosos.
"""

import numpy as np

from federation.data.dataset import Dataset
from federation.errors import ConfigurationError
from federation.rng import RngStream
from simulator.logging_config import get_logger

logger = get_logger(__name__, component="data")

DEFAULT_SPREAD = 1.0
DEFAULT_SEPARATION = 5.5


def _class_directions(num_classes: int, feature_dim: int, rng: RngStream) -> np.ndarray:
    """Direções unitárias das classes: ortonormais quando K <= dim"""
    raw = rng.normal(size=(feature_dim, max(num_classes, 1)))
    if num_classes <= feature_dim:
        q, r = np.linalg.qr(raw[:, :num_classes])
        # Fixa o sinal para que a decomposição seja única
        q = q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))
        return q.T
    directions = raw.T
    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


def _min_pairwise_distance(points: np.ndarray) -> float:
    diffs = points[:, None, :] - points[None, :, :]
    dist = np.sqrt((diffs ** 2).sum(axis=-1))
    np.fill_diagonal(dist, np.inf)
    return float(dist.min())


def generate_synthetic(
    num_classes: int,
    per_class: int,
    feature_dim: int,
    spread: float,
    rng: RngStream,
    separation: float = DEFAULT_SEPARATION,
) -> Dataset:
    """
    Gera K·per_class amostras, cada classe uma gaussiana isotrópica

    Os centros são direções aleatórias escaladas para que a menor distância
    entre centros seja exatamente separation·spread (5.5·spread por padrão;
    nunca abaixo de 4·spread nas configurações do protocolo).

    Args:
        num_classes: Quantidade de classes K (>= 2)
        per_class: Amostras por classe (>= 1)
        feature_dim: Dimensão das features (>= 2)
        spread: Desvio padrão de cada blob (> 0)
        rng: Stream de aleatoriedade
        separation: Distância mínima entre centros em unidades de spread

    Returns:
        Dataset balanceado, amostras agrupadas por classe

    Raises:
        ConfigurationError: Se alguma dimensão for inválida
    """
    if num_classes < 2:
        raise ConfigurationError(f"K deve ser >= 2, recebeu {num_classes}", key="data.k")
    if per_class < 1:
        raise ConfigurationError(f"per_class deve ser >= 1, recebeu {per_class}", key="data.per_class")
    if feature_dim < 2:
        raise ConfigurationError(f"dim deve ser >= 2, recebeu {feature_dim}", key="data.dim")
    if not spread > 0:
        raise ConfigurationError(f"spread deve ser > 0, recebeu {spread}", key="data.spread")
    if not separation > 0:
        raise ConfigurationError(f"separation deve ser > 0, recebeu {separation}", key="data.separation")

    directions = _class_directions(num_classes, feature_dim, rng)
    min_dist = _min_pairwise_distance(directions)
    if min_dist <= 0:
        raise ConfigurationError("direções de classe coincidentes; aumente data.dim", key="data.dim")
    centers = directions * (separation * spread / min_dist)

    labels = np.repeat(np.arange(num_classes, dtype=np.int64), per_class)
    noise = rng.normal(0.0, spread, size=(labels.shape[0], feature_dim))
    features = centers[labels] + noise

    logger.info(
        "Dataset sintético gerado",
        extra={
            "event_type": "synthetic_generated",
            "n_samples": int(labels.shape[0]),
            "num_classes": num_classes,
            "feature_dim": feature_dim,
        }
    )
    return Dataset(features, labels, num_classes)
