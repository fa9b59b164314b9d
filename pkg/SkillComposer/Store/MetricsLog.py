import json
import math
import os
from collections import Counter
from typing import Dict, Iterable, List, Tuple

from SkillComposer import Logger
from .StoreObjects import MetricsRow

logger = Logger.get_logger(__name__)


def append_metrics(path: str, row: MetricsRow):
    """Appends one JSON line and forces it to disk; one writer per file."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    line = json.dumps(row.GetValue(), sort_keys=True)
    with open(path, "a", encoding="utf-8") as f:
        f.write(line + "\n")
        f.flush()
        os.fsync(f.fileno())


def read_metrics(path: str) -> List[MetricsRow]:
    rows = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                rows.append(MetricsRow.from_dict(json.loads(line)))
    return rows


def format_success(successes: int, trials: int) -> str:
    if trials == 0:
        return "0/0 (n/a)"
    return f"{successes}/{trials} ({100.0 * successes / trials:.1f}%)"


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    p = successes / trials
    denominator = 1.0 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denominator
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4 * trials * trials)) / denominator
    return max(0.0, centre - half), min(1.0, centre + half)


def summarize_activity(rows: Iterable[MetricsRow], phase: str = "activity") -> Dict[str, object]:
    """Success counts overall and per layout, plus a failure-tag histogram."""
    trials = successes = 0
    per_layout: Dict[int, List[int]] = {}
    tags: Counter = Counter()
    for row in rows:
        if row.phase != phase:
            continue
        won = bool(row.metrics.get("success"))
        trials += 1
        successes += int(won)
        layout = row.metrics.get("layout")
        if layout is not None:
            counts = per_layout.setdefault(int(layout), [0, 0])
            counts[0] += int(won)
            counts[1] += 1
        tags.update(row.metrics.get("failure_tags", []))
    return {
        "trials": trials,
        "successes": successes,
        "rate": successes / trials if trials else 0.0,
        "per_layout": {layout: tuple(counts) for layout, counts in sorted(per_layout.items())},
        "failure_tags": dict(sorted(tags.items())),
        "text": format_success(successes, trials),
    }
