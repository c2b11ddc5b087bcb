"""Exact error-probability evaluation and brute-force optimal placement search.

Under a uniform prior the Bayes-optimal detector is the MAP rule, and its
error probability for a placement v over n points is

    P_e(v) = (1/n) * sum_y min_i sum_{j != i} p_j(y)
           = (1/n) * sum_y [ S(y) - max_j p_j(y) ]

since dropping the largest term minimizes the leave-one-out sum. S(y) is
accumulated from the collapsed pmf table: occupied rows once each plus the
shared empty-point row weighted n - k. The observation sum runs in ascending
index order so results are reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    ObservationIndex,
    Placement,
    PmfTable,
    SensorModel,
    canonicalize_placement,
)
from .partitions import enumerate_partitions

TIE_EPS = 1e-9
"""Absolute P_e gap below which placements are reported as tied.

Exact P_e values are sums of at most 2^m double products, so round-off sits
many orders below this; genuine region boundaries are exact tie loci and must
surface as ties instead of being broken by noise.
"""

MAX_SEARCH_M = 20  # exact evaluation is O(2^m); refuse beyond desk scale

MAP_TIE_RTOL = 1e-12
"""Relative slack when collecting MAP argmax ties.

Likelihoods of hypotheses that tie analytically (e.g. at p_d = p_f) are
computed through different multiplication orders and can differ by a few ulp;
this tolerance re-unites them without ever bridging genuine gaps.
"""


@dataclass(frozen=True)
class ErrorProbability:
    """Exact P_e of the MAP detector for one placement/model/point-count."""

    value: float
    placement: Placement
    model: SensorModel
    n: int


@dataclass(frozen=True)
class Optimum:
    """Tie-aware argmin over all placements of m sensors.

    ``best`` lists every placement within TIE_EPS of the minimum, in
    enumeration order. ``margin`` is the gap from the minimum to the best
    non-tied competitor (+inf when none exists, e.g. a full tie at
    p_d = p_f or a single-partition search). ``strict`` marks a unique
    minimizer with positive margin.
    """

    best: tuple[Placement, ...]
    pe_min: float
    margin: float
    strict: bool


def error_probability(
    placement: Placement, model: SensorModel, n: int | None = None
) -> ErrorProbability:
    """Exact P_e of the MAP detector; requires m <= n."""
    n = placement.n if n is None else n
    if placement.m > n:
        raise ValueError(f"m={placement.m} sensors exceed n={n} points")
    if n < placement.k:
        raise ValueError(f"n={n} smaller than {placement.k} occupied points")
    table = PmfTable.build(placement, model, n)
    k = placement.k
    total = 0.0
    for y in range(1 << placement.m):
        col = table.rows[:, y]
        s = float(col[:k].sum())
        mx = float(col[:k].max()) if k else 0.0
        if table.collapsed:
            empty = float(col[k])
            s += (n - k) * empty
            if empty > mx:
                mx = empty
        total += s - mx
    return ErrorProbability(value=total / n, placement=placement, model=model, n=n)


def error_probability_grid(
    counts: tuple[int, ...], n: int, pf: np.ndarray, pd: np.ndarray
) -> np.ndarray:
    """Vectorized P_e for one canonical placement at many (p_f, p_d) points.

    ``pf`` and ``pd`` are equal-length 1-D arrays; returns the matching P_e
    array. Same quantity as :func:`error_probability` (the test suite pins
    agreement); the exponent tables are placement-only, so a sweep touches
    each grid node with pure array arithmetic.
    """
    m = sum(counts)
    if m > n:
        raise ValueError(f"m={m} sensors exceed n={n} points")
    a_exp, b_exp, c_exp, d_exp, mult = _exponent_tables(counts, n)
    pf = np.asarray(pf, dtype=float)
    pd = np.asarray(pd, dtype=float)
    ks = np.arange(m + 1)[:, None]
    pd_pow = pd[None, :] ** ks
    qd_pow = (1.0 - pd)[None, :] ** ks
    pf_pow = pf[None, :] ** ks
    qf_pow = (1.0 - pf)[None, :] ** ks
    pmf = pd_pow[a_exp] * qd_pow[b_exp] * pf_pow[c_exp] * qf_pow[d_exp]  # (rows, 2^m, G)
    s = (mult[:, None, None] * pmf).sum(axis=0)
    mx = pmf.max(axis=0)
    return (s - mx).sum(axis=0) / n


def _exponent_tables(counts: tuple[int, ...], n: int):
    """Per-row, per-observation exponents of pd, 1-pd, pf, 1-pf, plus row weights."""
    m = sum(counts)
    k = len(counts)
    nrows = k + (1 if n > k else 0)
    shape = (nrows, 1 << m)
    a_exp = np.zeros(shape, dtype=np.intp)
    b_exp = np.zeros(shape, dtype=np.intp)
    c_exp = np.zeros(shape, dtype=np.intp)
    d_exp = np.zeros(shape, dtype=np.intp)
    offsets = np.concatenate(([0], np.cumsum(counts)))
    for y in range(1 << m):
        s = int(y).bit_count()
        for r in range(nrows):
            if r < k:
                v = counts[r]
                mask = ((1 << v) - 1) << (m - int(offsets[r]) - v)
                a = int(y & mask).bit_count()
            else:
                v, a = 0, 0
            a_exp[r, y] = a
            b_exp[r, y] = v - a
            c_exp[r, y] = s - a
            d_exp[r, y] = m - s - (v - a)
    mult = np.ones(nrows)
    if n > k:
        mult[k] = n - k
    return a_exp, b_exp, c_exp, d_exp, mult


def map_decide(
    y: ObservationIndex,
    placement: Placement,
    model: SensorModel,
    n: int | None = None,
) -> frozenset[int]:
    """Hypothesis indices attaining the maximum posterior for observation y.

    With a uniform prior this is the likelihood argmax; all ties are
    returned (every empty point joins the set whenever the shared
    empty-point row attains the maximum).
    """
    n = placement.n if n is None else n
    if placement.m > n:
        raise ValueError(f"m={placement.m} sensors exceed n={n} points")
    table = PmfTable.build(placement, model, n)
    values = [table.value(j, y) for j in range(1, n + 1)]
    mx = max(values)
    cut = mx - abs(mx) * MAP_TIE_RTOL
    return frozenset(j for j, p in enumerate(values, start=1) if p >= cut)


def closed_form_pe2(placement: Placement, model: SensorModel) -> float:
    """Independent closed-form P_e for the two-sensor, two-point cases.

    Term-by-term transcription of the explicit four-observation minima for
    the placements (1,1) and (2); valid on the whole (p_f, p_d) unit square.
    Used as an oracle against :func:`error_probability`.
    """
    if placement.m != 2 or placement.n != 2:
        raise ValueError("closed form covers m = n = 2 only")
    pd, pf = model.p_d, model.p_f
    if placement.counts == (1, 1):
        return 0.5 * (
            (1.0 - pd) * (1.0 - pf)
            + pd * pf
            + 2.0 * min(pf - pd * pf, pd - pd * pf)
        )
    if placement.counts == (2,):
        return 0.5 * (
            min((1.0 - pd) ** 2, (1.0 - pf) ** 2)
            + min(pd**2, pf**2)
            + 2.0 * min(pd * (1.0 - pd), pf * (1.0 - pf))
        )
    raise ValueError(f"unexpected placement {placement.counts} for m=n=2")


def optimal_placements(
    m: int, n: int, model: SensorModel, tie_eps: float = TIE_EPS
) -> Optimum:
    """Exhaustive search over all partitions of m; tie-aware argmin.

    Candidates are scored in enumeration order so tie reporting and CSV
    output are reproducible. No pruning: these exact values are the ground
    truth the structural results are checked against.
    """
    if not 1 <= m <= n:
        raise ValueError(f"require 1 <= m <= n, got m={m}, n={n}")
    if m > MAX_SEARCH_M:
        raise ValueError(f"m={m} exceeds the exact-search bound {MAX_SEARCH_M}")
    candidates = [
        canonicalize_placement(counts, n) for counts in enumerate_partitions(m)
    ]
    values = [error_probability(p, model, n).value for p in candidates]
    return _argmin_with_ties(candidates, values, tie_eps)


def _argmin_with_ties(
    candidates: list[Placement], values: list[float], tie_eps: float
) -> Optimum:
    pe_min = min(values)
    best = tuple(
        p for p, v in zip(candidates, values) if v - pe_min <= tie_eps
    )
    rest = [v for v in values if v - pe_min > tie_eps]
    margin = (min(rest) - pe_min) if rest else math.inf
    strict = len(best) == 1 and margin > tie_eps
    return Optimum(best=best, pe_min=pe_min, margin=margin, strict=strict)
