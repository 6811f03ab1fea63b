"""
Configuração de experimentos (ExperimentConfig)

Um único formato documentado: TOML com as seções data, partition, noise,
federation, model, opt, loss, server, clipfl e output, mais as chaves de
topo seed e threads. Valores ausentes recebem os padrões do protocolo.
Veja docs/CONFIGURACAO.md.
"""

from __future__ import annotations

import json
import os
import tomllib
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from federation.aggregation import ServerOptimizerConfig
from federation.data import DEFAULT_SEPARATION, DEFAULT_SPLIT_RATIO, DEFAULT_SPREAD
from federation.errors import ConfigurationError
from federation.model import LossConfig, OptimizerConfig
from federation.rng import floor_fraction
from simulator.logging_config import get_logger

logger = get_logger(__name__, component="cli")

THREADS_ENV = "CLIPFL_SIM_THREADS"


class DataKind(str, Enum):
    """Origem dos dados"""
    SYNTHETIC = "synthetic"
    CSV = "csv"


class PartitionKind(str, Enum):
    """Estratégia de particionamento entre clientes"""
    IID = "iid"
    DIRICHLET = "dirichlet"


class RunMode(str, Enum):
    """single: uma execução; ab: vanilla e ClipFL com a mesma semente"""
    SINGLE = "single"
    AB = "ab"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class DataConfig(_Section):
    kind: DataKind = DataKind.SYNTHETIC
    k: int = Field(default=10, ge=2, description="Quantidade de classes K")
    per_class: int = Field(default=120, ge=1, description="Amostras por classe")
    dim: int = Field(default=16, ge=2, description="Dimensão das features")
    spread: float = Field(default=DEFAULT_SPREAD, gt=0, description="Desvio padrão de cada blob")
    separation: float = Field(default=DEFAULT_SEPARATION, gt=0, description="Distância mínima entre centros, em unidades de spread")
    path: Optional[str] = None
    split_ratio: Tuple[int, int, int] = DEFAULT_SPLIT_RATIO

    @field_validator("split_ratio")
    @classmethod
    def _positive_ratio(cls, value):
        if any(part < 0 for part in value) or value[0] == 0 or value[2] == 0:
            raise ValueError("razão inválida: partes >= 0, treino e teste > 0")
        return value


class PartitionConfig(_Section):
    kind: PartitionKind = PartitionKind.IID
    alpha: float = Field(default=0.5, gt=0, description="Concentração da Dirichlet")


class NoiseConfig(_Section):
    mu: float = Field(default=0.8, ge=0, le=1, description="Nível de ruído μ")
    rho: float = Field(default=0.5, ge=0, le=1, description="Fração de clientes ruidosos ρ")


class FederationConfig(_Section):
    clients: int = Field(default=100, ge=1, description="Quantidade de clientes N")
    sample_rate: float = Field(default=0.1, gt=0, le=1, description="Taxa de amostragem C")


class ModelConfig(_Section):
    hidden: Tuple[int, ...] = Field(default=(32,), description="Larguras das camadas ocultas")

    @field_validator("hidden", mode="before")
    @classmethod
    def _width_as_tuple(cls, value):
        if isinstance(value, int):
            return (value,)
        return value

    @field_validator("hidden")
    @classmethod
    def _positive_widths(cls, value):
        if any(width < 1 for width in value):
            raise ValueError("larguras devem ser >= 1")
        return value


class ClipFLConfig(_Section):
    enabled: bool = True
    m: int = Field(default=5, ge=1, description="Candidatos limpos por rodada")
    p: float = Field(default=0.5, ge=0, lt=1, description="Fração de clientes podados")
    t_pre: int = Field(default=80, ge=0, description="Rodadas da Fase I")
    t_post: int = Field(default=40, ge=0, description="Rodadas da Fase III")


class OutputConfig(_Section):
    dir: str = "results"
    target_accuracy: Optional[float] = Field(default=None, gt=0, le=1)


def default_threads() -> int:
    """CLIPFL_SIM_THREADS ou a quantidade de CPUs"""
    raw = os.getenv(THREADS_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ConfigurationError(f"{THREADS_ENV} deve ser inteiro, recebeu {raw!r}", key="threads")
        if value < 1:
            raise ConfigurationError(f"{THREADS_ENV} deve ser >= 1", key="threads")
        return value
    return os.cpu_count() or 1


class ExperimentConfig(_Section):
    """
    Configuração completa e validada de um experimento

    Todas as pré-condições dos módulos que dependem de mais de um campo são
    verificadas aqui, antes de qualquer trabalho começar.
    """
    seed: int = Field(default=42, ge=0)
    threads: int = Field(default_factory=default_threads, ge=1)
    data: DataConfig = DataConfig()
    partition: PartitionConfig = PartitionConfig()
    noise: NoiseConfig = NoiseConfig()
    federation: FederationConfig = FederationConfig()
    model: ModelConfig = ModelConfig()
    opt: OptimizerConfig = OptimizerConfig()
    loss: LossConfig = LossConfig()
    server: ServerOptimizerConfig = ServerOptimizerConfig()
    clipfl: ClipFLConfig = ClipFLConfig()
    output: OutputConfig = OutputConfig()

    @model_validator(mode="after")
    def _cross_field_checks(self):
        if self.clipfl.enabled and self.clipfl.t_pre == 0:
            raise ConfigurationError("ClipFL exige t_pre >= 1 (a poda precisa de evidências)", key="clipfl.t_pre")
        if self.clipfl.t_pre + self.clipfl.t_post == 0:
            raise ConfigurationError("a execução precisa de ao menos uma rodada", key="clipfl.t_post")
        if floor_fraction(self.federation.sample_rate, self.federation.clients) == 0:
            raise ConfigurationError(
                f"⌊N·C⌋ = 0 com N={self.federation.clients}", key="federation.sample_rate"
            )
        if self.clipfl.enabled and self.clipfl.t_post > 0:
            survivors = self.federation.clients - floor_fraction(self.clipfl.p, self.federation.clients)
            if floor_fraction(self.federation.sample_rate, survivors) == 0:
                raise ConfigurationError(
                    f"⌊(N − ⌊p·N⌋)·C⌋ = 0 após a poda com {survivors} clientes restantes",
                    key="federation.sample_rate",
                )
        if self.clipfl.enabled and self.data.split_ratio[1] == 0:
            raise ConfigurationError("ClipFL exige um split de validação não vazio", key="data.split_ratio")
        if self.data.kind == DataKind.CSV and not self.data.path:
            raise ConfigurationError("data.kind = csv exige um caminho", key="data.path")
        if self.data.kind == DataKind.SYNTHETIC and self.data.per_class * self.data.k < sum(self.data.split_ratio):
            raise ConfigurationError(
                "dataset sintético menor que a soma da razão de divisão", key="data.per_class"
            )
        return self

    @property
    def total_rounds(self) -> int:
        return self.clipfl.t_pre + self.clipfl.t_post

    @property
    def prox_mu(self) -> float:
        """Coeficiente proximal efetivo dos clientes"""
        return self.server.effective_prox_mu(self.opt.prox_mu)

    def with_clipfl(self, enabled: bool) -> ExperimentConfig:
        """Cópia com o ClipFL ligado ou desligado (modo ab)"""
        tree = self.model_dump(mode="json")
        tree["clipfl"]["enabled"] = enabled
        return build_config(tree)

    def echo(self) -> Dict[str, Any]:
        """
        Valores efetivos em tipos JSON para o summary.json

        threads fica de fora: afeta só a velocidade, nunca os resultados.
        """
        return self.model_dump(mode="json", exclude={"threads"})


def _set_dotted(tree: Dict[str, Any], dotted: str, value: Any) -> None:
    parts = dotted.split(".")
    if not all(parts):
        raise ConfigurationError(f"chave inválida: {dotted!r}", key=dotted)
    node = tree
    for part in parts[:-1]:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise ConfigurationError(f"{part} não é uma seção", key=dotted)
        node = child
    node[parts[-1]] = value


def parse_override(item: str) -> Tuple[str, Any]:
    """
    Converte "chave=valor" de --set

    O valor é lido como literal TOML quando possível (números, booleanos,
    listas, strings entre aspas); caso contrário fica como string.

    Examples:
        >>> parse_override("clipfl.p=0.3")
        ('clipfl.p', 0.3)
        >>> parse_override("output.dir=out/run1")
        ('output.dir', 'out/run1')
    """
    if "=" not in item:
        raise ConfigurationError(f"override sem '=': {item!r}")
    key, raw = item.split("=", 1)
    key = key.strip()
    raw = raw.strip()
    try:
        value = tomllib.loads(f"v = {raw}")["v"]
    except tomllib.TOMLDecodeError:
        value = raw
    return key, value


def _error_key(error: Mapping[str, Any]) -> str:
    return ".".join(str(part) for part in error.get("loc", ()))


def build_config(tree: Mapping[str, Any]) -> ExperimentConfig:
    """
    Valida uma árvore de valores

    Raises:
        ConfigurationError: Com o caminho da primeira chave inválida
    """
    try:
        return ExperimentConfig.model_validate(dict(tree))
    except ValidationError as e:
        first = e.errors()[0]
        key = _error_key(first)
        if first.get("type") == "extra_forbidden":
            message = "chave desconhecida"
        else:
            message = first.get("msg", "valor inválido")
        raise ConfigurationError(message, key=key or None) from e


def parse_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentConfig:
    """
    Lê o arquivo TOML (opcional) e aplica overrides em notação pontuada

    Overrides vencem os valores do arquivo (ex: --seed 7 sobre seed = 42).

    Args:
        path: Caminho do arquivo TOML; None usa só os padrões
        overrides: {"seed": 7, "clipfl.p": 0.3, ...}

    Returns:
        ExperimentConfig validado

    Raises:
        ConfigurationError: Arquivo ausente/malformado, chave desconhecida,
            tipo errado ou restrição violada
    """
    tree: Dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigurationError(f"arquivo não encontrado: {path}", key="config")
        try:
            with path.open("rb") as fh:
                tree = tomllib.load(fh)
        except tomllib.TOMLDecodeError as e:
            raise ConfigurationError(f"TOML malformado em {path}: {e}", key="config") from e

    for dotted, value in (overrides or {}).items():
        _set_dotted(tree, dotted, value)

    config = build_config(tree)
    logger.debug(
        "Configuração carregada",
        extra={"seed": config.seed, "optimizer": config.server.optimizer.value, "path": str(path) if path else None}
    )
    return config


def render_config(config: ExperimentConfig) -> str:
    """Texto de --print-config: valores efetivos, chaves ordenadas"""
    return json.dumps(config.model_dump(mode="json"), indent=2, sort_keys=True, ensure_ascii=False)


def as_overrides(pairs: Sequence[str]) -> Dict[str, Any]:
    """Lista de "chave=valor" em dicionário de overrides"""
    return dict(parse_override(item) for item in pairs)
