# sepevo/bench/compare.py

import math
from pathlib import Path
from typing import Optional, Union

import pandas as pd

REQUIRED_COLUMNS = ("instance", "algorithm", "size")


def geometric_mean(values) -> float:
    values = list(values)
    if any(v <= 0 for v in values):
        raise ValueError("geometric mean needs positive sizes")
    return math.exp(math.fsum(math.log(v) for v in values) / len(values))


def load_results(path: Union[str, Path]) -> pd.DataFrame:
    frame = pd.read_csv(path, sep=None, engine="python")
    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f"results file lacks columns {missing}")
    return frame


def summarize(results: pd.DataFrame, reference: Optional[str] = None) -> pd.DataFrame:
    """
    Final-result summary per algorithm: geometric mean of the per-instance average size,
    increase relative to `reference` (percent), and on how many instances the algorithm
    is best with ties (<=) and strictly (<).
    """
    per_instance = results.groupby(["instance", "algorithm"])["size"].mean().unstack("algorithm")
    algorithms = list(per_instance.columns)
    reference = reference or algorithms[0]
    if reference not in algorithms:
        raise ValueError(f"unknown reference algorithm {reference!r}")

    rows = []
    ref_mean = geometric_mean(per_instance[reference].dropna())
    for algorithm in algorithms:
        column = per_instance[algorithm]
        others = per_instance.drop(columns=[algorithm])
        best_other = others.min(axis=1) if len(others.columns) else pd.Series(math.inf, index=column.index)
        mean = geometric_mean(column.dropna())
        rows.append({
            "algorithm": algorithm,
            "geomean": mean,
            "vs_reference_pct": 100.0 * (mean / ref_mean - 1.0),
            "best_le": int((column <= best_other).sum()),
            "best_lt": int((column < best_other).sum()),
        })
    return pd.DataFrame(rows)
