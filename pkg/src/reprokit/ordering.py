"""Document-ordering similarity between two runs.

Kendall's tau (tie-aware), its union and intersection constructions for
rankings over different document sets, and rank-biased overlap (RBO).
All per-topic kernels are pure; per-topic results average via
:func:`mean_over_topics`, which excludes degenerate-tie topics explicitly
instead of silently biasing the mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigError, DegenerateTiesError, OverlapTooSmallError
from .trec_io import Run, TopicSet


@dataclass(frozen=True)
class RboParams:
    phi: float = 0.8
    depth: int = 1000

    def __post_init__(self):
        if not 0.0 < self.phi < 1.0:
            raise ConfigError(f"phi must be in (0,1), got {self.phi}")
        if self.depth < 1:
            raise ConfigError(f"depth must be >= 1, got {self.depth}")


def kendall_tau(x: Sequence[float], y: Sequence[float]) -> float:
    """Tie-aware Kendall correlation over all index pairs.

    (P - Q) / sqrt((P + Q + U) (P + Q + V)) with P/Q concordant/discordant
    pairs and U/V pairs tied in x only / y only; pairs tied in both lists
    enter neither factor.
    """
    if len(x) != len(y):
        raise ValueError(f"paired lists differ in length: {len(x)} vs {len(y)}")
    n = len(x)
    if n < 2:
        raise ValueError("need at least 2 paired items")
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    iu = np.triu_indices(n, k=1)
    dx = np.sign(xa[:, None] - xa[None, :])[iu]
    dy = np.sign(ya[:, None] - ya[None, :])[iu]
    prod = dx * dy
    p = int(np.count_nonzero(prod > 0))
    q = int(np.count_nonzero(prod < 0))
    u = int(np.count_nonzero((dx == 0) & (dy != 0)))
    v = int(np.count_nonzero((dy == 0) & (dx != 0)))
    denom = math.sqrt((p + q + u) * (p + q + v))
    if denom == 0:
        raise DegenerateTiesError("all pairs tied in one list; tau undefined")
    return (p - q) / denom


def tau_union(r_docs: Sequence[str], s_docs: Sequence[str],
              strict_lengths: bool = False) -> float:
    """Kendall's tau between rank positions taken in the union of two rankings.

    The union lists r's documents first, then s's unseen documents in s-order.
    The i-th document of r pairs with the i-th document of s; on unequal
    lengths only the common prefix min(|r|, |s|) is paired (error instead
    when ``strict_lengths``). Equals plain tau when both rankings hold the
    same document set.
    """
    if not r_docs or not s_docs:
        raise ValueError("rankings must be nonempty")
    if strict_lengths and len(r_docs) != len(s_docs):
        raise ValueError(f"rankings differ in length: {len(r_docs)} vs {len(s_docs)}")
    pos = {doc: i for i, doc in enumerate(r_docs, start=1)}
    nxt = len(r_docs) + 1
    for doc in s_docs:
        if doc not in pos:
            pos[doc] = nxt
            nxt += 1
    m = min(len(r_docs), len(s_docs))
    x = [pos[d] for d in r_docs[:m]]
    y = [pos[d] for d in s_docs[:m]]
    return kendall_tau(x, y)


def tau_intersection(r_docs: Sequence[str], s_docs: Sequence[str]) -> tuple[float, int]:
    """Tau over the relative orders of shared documents, plus the overlap size.

    Small overlaps make tau noisy, so the overlap is always reported with it.
    """
    shared = set(r_docs) & set(s_docs)
    if len(shared) < 2:
        raise OverlapTooSmallError(f"overlap too small: {len(shared)} shared documents")
    r_order = [d for d in r_docs if d in shared]
    s_pos = {d: i for i, d in enumerate(s_docs, start=1) if d in shared}
    x = list(range(1, len(r_order) + 1))
    y = [s_pos[d] for d in r_order]
    return kendall_tau(x, y), len(shared)


def rbo(r_docs: Sequence[str], s_docs: Sequence[str], params: RboParams) -> float:
    """Truncated rank-biased overlap: (1-phi) * sum phi^(i-1) * A_i.

    A_i is the prefix-overlap proportion at depth i. Evaluated to
    d = min(depth, max(|r|, |s|)) with no extrapolation; at phi = 0.8 and
    depth >= 1000 the neglected tail is below 0.8**1000.
    """
    if not r_docs or not s_docs:
        raise ValueError("rankings must be nonempty")
    d = min(params.depth, max(len(r_docs), len(s_docs)))
    seen_r: set[str] = set()
    seen_s: set[str] = set()
    overlap = 0
    total = 0.0
    weight = 1.0  # phi^(i-1)
    for i in range(1, d + 1):
        # add r's doc first so an identical doc at depth i counts exactly once
        if i <= len(r_docs):
            doc = r_docs[i - 1]
            if doc in seen_s:
                overlap += 1
            seen_r.add(doc)
        if i <= len(s_docs):
            doc = s_docs[i - 1]
            if doc in seen_r:
                overlap += 1
            seen_s.add(doc)
        total += weight * (overlap / i)
        weight *= params.phi
    return (1.0 - params.phi) * total


def mean_over_topics(per_topic: Mapping[str, float | None]) -> tuple[float, int]:
    """Average per-topic values; None entries (degenerate ties) are excluded.

    Returns (mean, number of excluded topics).
    """
    if not per_topic:
        raise ValueError("no topics to average")
    vals = [v for v in per_topic.values() if v is not None]
    excluded = len(per_topic) - len(vals)
    if not vals:
        raise DegenerateTiesError("tau degenerate on every topic")
    return sum(vals) / len(vals), excluded


def _per_topic(fn, r: Run, s: Run, topics: TopicSet, cutoff: int | None = None):
    out: dict[str, float | None] = {}
    for topic in topics:
        r_docs = r.doc_ids(topic)
        s_docs = s.doc_ids(topic)
        if cutoff is not None:
            r_docs = r_docs[:cutoff]
            s_docs = s_docs[:cutoff]
        try:
            out[topic] = fn(r_docs, s_docs)
        except DegenerateTiesError:
            out[topic] = None
        except ValueError:
            # tau undefined on single-item pairings (e.g. cutoff 1)
            out[topic] = None
    return out


def tau_union_over_topics(r: Run, s: Run, topics: TopicSet,
                          cutoff: int | None = None) -> dict[str, float | None]:
    return _per_topic(tau_union, r, s, topics, cutoff)


def rbo_over_topics(r: Run, s: Run, topics: TopicSet, params: RboParams,
                    cutoff: int | None = None) -> dict[str, float | None]:
    return _per_topic(lambda a, b: rbo(a, b, params), r, s, topics, cutoff)


def ordering_at_cutoffs(r: Run, s: Run, topics: TopicSet, cutoffs: Sequence[int],
                        params: RboParams) -> dict[int, tuple[float, float]]:
    """Mean tau-union and mean RBO after truncating both runs to each cutoff."""
    if list(cutoffs) != sorted(cutoffs):
        raise ConfigError("cutoffs must be ascending")
    out: dict[int, tuple[float | None, float]] = {}
    for k in cutoffs:
        try:
            tau_mean, _ = mean_over_topics(tau_union_over_topics(r, s, topics, cutoff=k))
        except DegenerateTiesError:
            tau_mean = None  # tau undefined everywhere, e.g. at cutoff 1
        rbo_mean, _ = mean_over_topics(rbo_over_topics(r, s, topics, params, cutoff=k))
        out[k] = (tau_mean, rbo_mean)
    return out
