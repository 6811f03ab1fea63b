"""
Dados - representação, geração sintética, divisão e ingestão CSV
"""

from .dataset import DEFAULT_SPLIT_RATIO, Dataset, SplitIndices, split
from .synthetic import DEFAULT_SEPARATION, DEFAULT_SPREAD, generate_synthetic
from .csv_loader import load_csv

__all__ = [
    "DEFAULT_SEPARATION",
    "DEFAULT_SPLIT_RATIO",
    "DEFAULT_SPREAD",
    "Dataset",
    "SplitIndices",
    "split",
    "generate_synthetic",
    "load_csv",
]
