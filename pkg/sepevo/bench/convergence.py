# sepevo/bench/convergence.py

import math
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import pandas as pd

from sepevo.constants import EventKind
from sepevo.types import EventRecord

Pair = Tuple[float, float]

# ==================== Sequence transforms ====================

def min_prefix(seq: Sequence[Pair]) -> List[Pair]:
    """(t, min size up to t) for every entry of a time-sorted sequence."""
    out: List[Pair] = []
    best = math.inf
    last_t = -math.inf
    for t, size in seq:
        if t < last_t:
            raise ValueError(f"sequence is not sorted by time ({t} after {last_t})")
        last_t = t
        best = min(best, size)
        out.append((t, best))
    return out


def normalize(seq: Sequence[Pair], t_ref: float) -> List[Pair]:
    """Divide every timestamp by the sequential reference time of the instance."""
    if t_ref <= 0:
        raise ValueError(f"reference time must be positive, got {t_ref}")
    return [(t / t_ref, size) for t, size in seq]


def average_repetitions(runs: Sequence[Sequence[Pair]]) -> List[Pair]:
    """Index-wise arithmetic mean of (t, size) over repeated runs, cut to the shortest run."""
    runs = [list(run) for run in runs if run]
    if not runs:
        return []
    length = min(len(run) for run in runs)
    return [
        (sum(run[i][0] for run in runs) / len(runs), sum(run[i][1] for run in runs) / len(runs))
        for i in range(length)
    ]


def event_geomean(per_instance: Mapping[str, Sequence[Pair]]) -> List[Pair]:
    """
    Sweep all instances' events in time order; each event replaces its instance's value
    and emits the geometric mean over all instances. Every instance holds its first value
    until its first event.
    """
    current: Dict[str, float] = {}
    merged = []
    for order, (name, seq) in enumerate(per_instance.items()):
        if not seq:
            raise ValueError(f"instance {name!r} has no events")
        for t, size in seq:
            if size <= 0:
                raise ValueError(f"instance {name!r} has non-positive size {size}; geometric mean undefined")
            merged.append((t, order, name, size))
        current[name] = seq[0][1]

    merged.sort(key=lambda e: (e[0], e[1]))
    curve: List[Pair] = []
    for t, _, name, size in merged:
        current[name] = size
        mean = math.exp(math.fsum(math.log(v) for v in current.values()) / len(current))
        curve.append((t, mean))
    return curve

# ==================== Event logs ====================

def write_event_log(events: Iterable[EventRecord], path: Union[str, Path]) -> None:
    frame = pd.DataFrame([e.model_dump(mode="json") for e in events], columns=["t", "size", "pe", "kind"])
    frame.to_json(path, orient="records", lines=True)


def read_event_log(path: Union[str, Path]) -> List[EventRecord]:
    text = Path(path).read_text()
    if not text.strip():
        return []
    frame = pd.read_json(path, lines=True)
    return [
        EventRecord(t=float(row.t), size=int(row.size), pe=int(row.pe), kind=EventKind(row.kind))
        for row in frame.itertuples(index=False)
    ]


def event_sequence(events: Iterable[EventRecord]) -> List[Pair]:
    return sorted((e.t, float(e.size)) for e in events)


def instance_name(path: Union[str, Path]) -> str:
    """Logs are named `<instance>.<anything>.jsonl`; repetitions share the instance prefix."""
    return Path(path).name.split(".")[0]


def reference_time(events: Iterable[EventRecord]) -> float:
    """Time of the first created separator in one run; the fallback reference time."""
    creates = [e.t for e in events if e.kind is EventKind.CREATE]
    if not creates:
        raise ValueError("no create events to derive a reference time from")
    return min(creates)

# ==================== Curves ====================

def convergence_curve(
    logs: Mapping[str, Sequence[Sequence[EventRecord]]],
    t_ref: Optional[Mapping[str, float]] = None,
) -> pd.DataFrame:
    """Event-based geometric mean curve over instances, each given as repeated event logs."""
    per_instance = {}
    for name, runs in logs.items():
        if t_ref and name in t_ref:
            reference = t_ref[name]
        else:
            reference = sum(reference_time(run) for run in runs) / len(runs)
        averaged = average_repetitions([event_sequence(run) for run in runs])
        per_instance[name] = normalize(min_prefix(averaged), reference)
    curve = event_geomean(per_instance)
    return pd.DataFrame(curve, columns=["t_n", "G"])


def write_curve(curve: pd.DataFrame, path: Union[str, Path]) -> None:
    curve.to_csv(path, sep="\t", index=False)
