"""Cross-measure meta-analysis over a set of candidate runs.

Raw measure outputs point in different directions (high tau is good, high
RMSE is bad), so each is first mapped to a "badness" scale where lower is
better: tau, RBO and p-values are negated, ER becomes |1 - ER|, RMSE and
Delta ARP pass through. Runs are then ranked per measure and the rankings
compared with tie-aware Kendall correlation; pairs above 0.9 are flagged
equivalent, below 0.8 noticeably different.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigError
from .ordering import kendall_tau

# transform family by measure-id prefix; longest prefixes checked first
_FAMILIES = {
    "delta_arp": "identity",
    "p_value": "negate",
    "rmse": "identity",
    "rbo": "negate",
    "tau": "negate",
    "er": "abs-distance-from-1",
}

EQUIVALENT_THRESHOLD = 0.9
DIFFERENT_THRESHOLD = 0.8


@dataclass(frozen=True)
class MeasureRanking:
    measure_id: str
    run_ids: tuple[str, ...]  # best (lowest badness) first
    badness: tuple[float, ...]  # aligned with run_ids, non-decreasing


def _family(measure_id: str) -> str:
    key = measure_id.lower()
    for prefix in sorted(_FAMILIES, key=len, reverse=True):
        if key == prefix or key.startswith(prefix + "_") or key.startswith(prefix + "@"):
            return _FAMILIES[prefix]
    raise ConfigError(f"unknown measure id {measure_id!r}")


def consistency_transform(measure_id: str, raw: float) -> float:
    """Map a raw measure value to badness (lower = better re-creation)."""
    family = _family(measure_id)
    if family == "negate":
        return -raw
    if family == "abs-distance-from-1":
        return abs(1.0 - raw)
    return raw


def rank_runs(measure_id: str, raw_by_run: Mapping[str, float]) -> MeasureRanking:
    """Order runs by badness ascending, run-id as deterministic tie-break."""
    items = sorted(
        ((consistency_transform(measure_id, v), run) for run, v in raw_by_run.items())
    )
    return MeasureRanking(
        measure_id=measure_id,
        run_ids=tuple(run for _, run in items),
        badness=tuple(b for b, _ in items),
    )


def correlation_matrix(rankings: Sequence[MeasureRanking]) -> np.ndarray:
    """Pairwise Kendall tau between measures over per-run badness values.

    Correlations pair badness values per run (ties handled by the tau
    kernel's tie terms), so equal-badness runs do not inject noise.
    """
    if len(rankings) < 2:
        raise ConfigError("need at least 2 measure rankings")
    run_set = set(rankings[0].run_ids)
    for r in rankings[1:]:
        if set(r.run_ids) != run_set:
            raise ConfigError(
                f"run sets differ between {rankings[0].measure_id!r} and {r.measure_id!r}"
            )
    order = sorted(run_set)
    vectors = []
    for r in rankings:
        by_run = dict(zip(r.run_ids, r.badness))
        vectors.append([by_run[run] for run in order])
    k = len(rankings)
    mat = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            mat[i, j] = mat[j, i] = kendall_tau(vectors[i], vectors[j])
    return mat


def flag_equivalences(matrix: np.ndarray,
                      measure_ids: Sequence[str]) -> list[tuple[str, str, float, str]]:
    """Label each measure pair equivalent (> 0.9), different (< 0.8), or
    intermediate."""
    out = []
    for i in range(len(measure_ids)):
        for j in range(i + 1, len(measure_ids)):
            tau = float(matrix[i, j])
            if tau > EQUIVALENT_THRESHOLD:
                label = "equivalent"
            elif tau < DIFFERENT_THRESHOLD:
                label = "different"
            else:
                label = "intermediate"
            out.append((measure_ids[i], measure_ids[j], tau, label))
    return out


def matrix_to_csv(matrix: np.ndarray, measure_ids: Sequence[str]) -> str:
    lines = ["measure," + ",".join(measure_ids)]
    for i, mid in enumerate(measure_ids):
        lines.append(mid + "," + ",".join(f"{matrix[i, j]:.4f}" for j in range(len(measure_ids))))
    return "\n".join(lines) + "\n"
