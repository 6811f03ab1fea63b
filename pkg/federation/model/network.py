"""
MLP com tanh, cross-entropy com label smoothing e temperatura, e
retropropagação manual em float64
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from federation.data import Dataset
from federation.errors import EvaluationError, ShapeError
from federation.model.params import ParamVector


class LossConfig(BaseModel):
    """Parâmetros da loss ℓ: logits divididos pela temperatura antes do softmax"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    temperature: float = Field(default=10.0, gt=0, description="Temperatura do softmax")
    smoothing: float = Field(default=0.1, ge=0, lt=1, description="Nível de label smoothing")


def _check_input(params: ParamVector, features: np.ndarray) -> np.ndarray:
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2 or features.shape[1] != params.input_dim:
        raise ShapeError(
            f"features com forma {features.shape} incompatível com entrada {params.input_dim}"
        )
    return features


def _forward_trace(params: ParamVector, features: np.ndarray) -> Tuple[np.ndarray, List[np.ndarray]]:
    """Logits e as ativações de entrada de cada camada (para o backward)"""
    layers = params.layers()
    activations = [features]
    hidden = features
    for w, b in layers[:-1]:
        hidden = np.tanh(hidden @ w + b)
        activations.append(hidden)
    w_out, b_out = layers[-1]
    return hidden @ w_out + b_out, activations


def forward(params: ParamVector, features: np.ndarray) -> np.ndarray:
    """
    Calcula f(x; θ) para um lote

    Args:
        params: Parâmetros do modelo
        features: Matriz (batch × input_dim)

    Returns:
        Logits (batch × K)

    Raises:
        ShapeError: Se a dimensão das features não casar com o layout
    """
    features = _check_input(params, features)
    logits, _ = _forward_trace(params, features)
    return logits


def _log_softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def smoothed_targets(labels: np.ndarray, num_classes: int, smoothing: float) -> np.ndarray:
    """(1−s)·one-hot + s/K"""
    targets = np.full((labels.shape[0], num_classes), smoothing / num_classes)
    targets[np.arange(labels.shape[0]), labels] += 1.0 - smoothing
    return targets


def loss_and_grad(
    params: ParamVector,
    features: np.ndarray,
    labels: np.ndarray,
    loss_cfg: LossConfig,
    prox_anchor: Optional[ParamVector] = None,
    prox_mu: float = 0.0,
) -> Tuple[float, ParamVector]:
    """
    Loss média do lote e seu gradiente exato

    loss = média(CE suavizada sobre logits/T) + (μ_prox/2)·‖θ − âncora‖²,
    o termo proximal só entra quando há âncora.

    Args:
        params: θ
        features: Lote (batch × input_dim), não vazio
        labels: Rótulos do lote
        loss_cfg: Temperatura e suavização
        prox_anchor: Modelo global da rodada (variante FedProx)
        prox_mu: Coeficiente proximal

    Returns:
        (loss, gradiente no mesmo layout de params)
    """
    features = _check_input(params, features)
    labels = np.asarray(labels, dtype=np.int64)
    n = features.shape[0]
    if n == 0 or labels.shape[0] != n:
        raise ShapeError(f"lote inválido: {n} features para {labels.shape[0]} rótulos")

    logits, activations = _forward_trace(params, features)
    temperature = loss_cfg.temperature
    log_probs = _log_softmax(logits / temperature)
    targets = smoothed_targets(labels, params.num_classes, loss_cfg.smoothing)
    loss = float(-(targets * log_probs).sum() / n)

    delta = (np.exp(log_probs) - targets) / (n * temperature)
    layers = params.layers()
    grads: List[np.ndarray] = [np.empty(0)] * (2 * len(layers))
    for idx in range(len(layers) - 1, -1, -1):
        w, _ = layers[idx]
        inputs = activations[idx]
        grads[2 * idx] = (inputs.T @ delta).reshape(-1)
        grads[2 * idx + 1] = delta.sum(axis=0)
        if idx > 0:
            delta = (delta @ w.T) * (1.0 - inputs ** 2)
    grad = np.concatenate(grads)

    if prox_anchor is not None:
        if not prox_anchor.same_layout(params):
            raise ShapeError("âncora proximal com layout diferente")
        diff = params.values - prox_anchor.values
        loss += 0.5 * prox_mu * float(diff @ diff)
        grad = grad + prox_mu * diff

    return loss, params.replace(grad)


def predict(params: ParamVector, features: np.ndarray) -> np.ndarray:
    """argmax dos logits; empates resolvidos pela menor classe"""
    return np.argmax(forward(params, features), axis=1)


def evaluate(params: ParamVector, dataset: Dataset) -> float:
    """
    Acurácia: fração de amostras cujo argmax dos logits é o rótulo

    Raises:
        EvaluationError: Se o dataset estiver vazio
    """
    if dataset.n_samples == 0:
        raise EvaluationError("avaliação sobre conjunto vazio")
    correct = int((predict(params, dataset.features) == dataset.labels).sum())
    return correct / dataset.n_samples
