"""
Ingestão de datasets externos em CSV

Formato: cabeçalho `f0,f1,...,f{d-1},label`, uma amostra por linha,
features reais e rótulo inteiro não negativo.
"""

import csv
import io
from pathlib import Path
from typing import List, Union

import numpy as np

from federation.data.dataset import Dataset
from federation.errors import DataError, IngestionError
from simulator.logging_config import get_logger

logger = get_logger(__name__, component="data")


def _check_header(header: List[str]) -> int:
    if len(header) < 2 or header[-1].strip() != "label":
        raise IngestionError("cabeçalho deve terminar com a coluna 'label'", line=1)
    expected = [f"f{i}" for i in range(len(header) - 1)]
    found = [col.strip() for col in header[:-1]]
    if found != expected:
        raise IngestionError(
            f"colunas de features devem ser {expected[0]}..{expected[-1]}, encontrado {found}",
            line=1,
        )
    return len(expected)


def load_csv(path: Union[str, Path]) -> Dataset:
    """
    Carrega um dataset de um arquivo CSV

    Args:
        path: Caminho do arquivo

    Returns:
        Dataset com K = maior rótulo + 1

    Raises:
        IngestionError: Arquivo ausente, conteúdo fora de UTF-8, linha irregular
            ou rótulo não inteiro, sempre com o número da linha ofensora
    """
    path = Path(path)
    if not path.is_file():
        raise IngestionError(f"arquivo não encontrado: {path}")

    features: List[List[float]] = []
    labels: List[int] = []

    raw = path.read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise IngestionError(
            f"conteúdo não é UTF-8 válido ({e.reason})", line=raw.count(b"\n", 0, e.start) + 1
        ) from e

    with io.StringIO(text, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise IngestionError("arquivo vazio", line=1)
        dim = _check_header(header)

        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != dim + 1:
                raise IngestionError(f"esperadas {dim + 1} colunas, encontradas {len(row)}", line=line)
            try:
                values = [float(cell) for cell in row[:-1]]
            except ValueError as e:
                raise IngestionError(f"feature não numérica ({e})", line=line) from e
            raw_label = row[-1].strip()
            try:
                label = int(raw_label)
            except ValueError as e:
                raise IngestionError(f"rótulo não inteiro: {raw_label!r}", line=line) from e
            if label < 0:
                raise IngestionError(f"rótulo negativo: {label}", line=line)
            features.append(values)
            labels.append(label)

    if not labels:
        raise IngestionError("nenhuma amostra encontrada", line=2)

    num_classes = max(labels) + 1
    if num_classes < 2:
        raise DataError("dataset CSV precisa de pelo menos 2 classes")

    logger.info(
        "Dataset CSV carregado",
        extra={"event_type": "csv_loaded", "path": str(path), "n_samples": len(labels)}
    )
    return Dataset(np.asarray(features, dtype=np.float64), np.asarray(labels, dtype=np.int64), num_classes)
