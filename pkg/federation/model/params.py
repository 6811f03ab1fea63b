"""
Vetor plano de parâmetros θ compartilhado entre clientes e servidor
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from federation.errors import ShapeError
from federation.rng import RngStream

Layout = Tuple[Tuple[int, int], ...]


def layout_size(layout: Layout) -> int:
    """Σ (in_dim·out_dim + out_dim) sobre as camadas"""
    return int(sum(i * o + o for i, o in layout))


def mlp_layout(input_dim: int, num_classes: int, hidden: Sequence[int] = (32,)) -> Layout:
    """
    Layout de um MLP: input → hidden... → K

    Examples:
        >>> mlp_layout(16, 10, (32,))
        ((16, 32), (32, 10))
    """
    dims = [int(input_dim), *(int(h) for h in hidden), int(num_classes)]
    if any(d < 1 for d in dims):
        raise ShapeError(f"dimensões de camada inválidas: {dims}")
    return tuple((dims[i], dims[i + 1]) for i in range(len(dims) - 1))


def _check_layout(layout: Layout) -> Layout:
    layout = tuple((int(i), int(o)) for i, o in layout)
    if not layout:
        raise ShapeError("layout vazio")
    for (_, out_prev), (in_next, _) in zip(layout, layout[1:]):
        if out_prev != in_next:
            raise ShapeError(f"camadas incompatíveis no layout: {layout}")
    if any(i < 1 or o < 1 for i, o in layout):
        raise ShapeError(f"dimensões de camada inválidas: {layout}")
    return layout


@dataclass(frozen=True)
class ParamVector:
    """
    Parâmetros do modelo em um vetor float64 plano e imutável

    Cada camada ocupa W (in_dim × out_dim, row-major) seguido de b (out_dim).

    Attributes:
        values: Vetor plano
        layout: Descritor de camadas ((in_dim, out_dim), ...)
    """
    values: np.ndarray
    layout: Layout

    def __post_init__(self):
        layout = _check_layout(self.layout)
        values = np.array(self.values, dtype=np.float64, copy=True).reshape(-1)
        if values.shape[0] != layout_size(layout):
            raise ShapeError(
                f"vetor com {values.shape[0]} entradas não corresponde ao layout ({layout_size(layout)})"
            )
        if not np.all(np.isfinite(values)):
            raise ShapeError("parâmetros contêm valores não finitos")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "layout", layout)

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def input_dim(self) -> int:
        return self.layout[0][0]

    @property
    def num_classes(self) -> int:
        return self.layout[-1][1]

    def layers(self) -> List[Tuple[np.ndarray, np.ndarray]]:
        """Visões (W, b) por camada, sem cópia"""
        out = []
        offset = 0
        for fan_in, fan_out in self.layout:
            w = self.values[offset:offset + fan_in * fan_out].reshape(fan_in, fan_out)
            offset += fan_in * fan_out
            b = self.values[offset:offset + fan_out]
            offset += fan_out
            out.append((w, b))
        return out

    def replace(self, values: np.ndarray) -> ParamVector:
        """Novo ParamVector com o mesmo layout"""
        return ParamVector(values, self.layout)

    def same_layout(self, other: ParamVector) -> bool:
        return self.layout == other.layout


def init_params(layout: Layout, rng: RngStream) -> ParamVector:
    """
    Inicialização θ^0: pesos N(0, 1/fan_in), vieses zero

    Examples:
        >>> len(init_params(((16, 32), (32, 10)), rng))
        874
    """
    layout = _check_layout(layout)
    chunks = []
    for fan_in, fan_out in layout:
        chunks.append(rng.normal(0.0, 1.0 / np.sqrt(fan_in), size=fan_in * fan_out))
        chunks.append(np.zeros(fan_out))
    return ParamVector(np.concatenate(chunks), layout)
