"""Independent brute-force reference implementations.

Everything here evaluates definitions directly (counting loops, explicit
prefix intersections, numeric integration) and shares no code with the
package, so it can back expected values in the tests.
"""

from __future__ import annotations

import math

import numpy as np


def brute_precision_at_k(ranking, grades, k, threshold=1):
    hits = 0
    for doc in ranking[:k]:
        if grades.get(doc, 0) >= threshold:
            hits += 1
    return hits / k


def brute_average_precision(ranking, grades, threshold=1, cutoff=None):
    relevant = {d for d, g in grades.items() if g >= threshold}
    if not relevant:
        raise ValueError("no relevant docs")
    docs = ranking if cutoff is None else ranking[:cutoff]
    total = 0.0
    for i in range(len(docs)):
        if docs[i] in relevant:
            prec_here = sum(1 for d in docs[: i + 1] if d in relevant) / (i + 1)
            total += prec_here
    return total / len(relevant)


def brute_ndcg_at_k(ranking, grades, k, exponential=False):
    def gain(g):
        return 2.0 ** g - 1.0 if exponential else float(g)

    dcg = 0.0
    for i, doc in enumerate(ranking[:k], start=1):
        dcg += gain(grades.get(doc, 0)) / math.log2(i + 1)
    ideal = sorted(grades.values(), reverse=True)
    idcg = 0.0
    for i, g in enumerate(ideal[:k], start=1):
        idcg += gain(g) / math.log2(i + 1)
    if idcg == 0:
        raise ValueError("no relevant docs")
    return dcg / idcg


def brute_kendall_tau(x, y):
    """Exhaustive pair enumeration of concordant/discordant/tied pairs."""
    n = len(x)
    p = q = u = v = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = x[i] - x[j]
            dy = y[i] - y[j]
            if dx == 0 and dy == 0:
                continue
            if dx == 0:
                u += 1
            elif dy == 0:
                v += 1
            elif (dx > 0) == (dy > 0):
                p += 1
            else:
                q += 1
    denom = math.sqrt((p + q + u) * (p + q + v))
    if denom == 0:
        return None
    return (p - q) / denom


def brute_rbo(r_docs, s_docs, phi, depth):
    """Direct summation with explicit prefix-set intersections at every depth."""
    d = min(depth, max(len(r_docs), len(s_docs)))
    total = 0.0
    for i in range(1, d + 1):
        a_i = len(set(r_docs[:i]) & set(s_docs[:i])) / i
        total += phi ** (i - 1) * a_i
    return (1 - phi) * total


def t_cdf_by_integration(t, dof, n_points=200001):
    """Student-t CDF via trapezoidal integration of the density."""
    if t == 0:
        return 0.5
    const = math.gamma((dof + 1) / 2) / (math.sqrt(dof * math.pi) * math.gamma(dof / 2))
    hi = abs(t)
    xs = np.linspace(0.0, hi, n_points)
    density = const * (1 + xs ** 2 / dof) ** (-(dof + 1) / 2)
    half = float(np.trapezoid(density, xs))
    return 0.5 + half if t > 0 else 0.5 - half
