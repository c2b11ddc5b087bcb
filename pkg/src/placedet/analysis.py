"""(p_f, p_d)-plane sweeps, closed-form M=4 regions, and structural verifiers.

A region map evaluates the brute-force optimum at every node of a regular
grid over the unit square (by default restricted to the p_d >= p_f half where
sensors are better than chance). Tie cells keep their full tie set; nothing
is ever broken silently. On top of the maps sit numerical verifiers for the
structural claims: uniform placement is never the unique optimum when m = n,
scaled P_e differences are invariant in the point count, adding one extra
point enlarges the strict-optimal set by exactly the uniform placement,
the optimum moves monotonically along a majorization chain for m <= 5, and
that monotonicity fails for (m, n) = (7, 8).
"""

from __future__ import annotations

import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .detection import TIE_EPS, error_probability_grid, optimal_placements
from .majorization import PlacementScale, chain_sort, is_chain
from .model import SensorModel
from .partitions import enumerate_partitions

STEP_MIN = 1e-3
STEP_MAX = 0.1
SWEEP_MAX_M = 8

THM41_TOL = 1e-12
THM42_TOL = 1e-10

Counts = tuple[int, ...]


class BudgetError(RuntimeError):
    """Raised instead of silently running an oversized sweep."""


@dataclass(frozen=True)
class RegionCell:
    """Brute-force optimum at one grid node; ``best`` keeps all ties."""

    i_f: int
    i_d: int
    p_f: float
    p_d: float
    best: tuple[Counts, ...]
    pe_min: float
    margin: float
    strict: bool

    @property
    def tie_count(self) -> int:
        return len(self.best)


@dataclass(frozen=True)
class RegionMap:
    """Optimal-placement structure over a (p_f, p_d) grid.

    Cells are stored in row order: p_d ascending outer, p_f ascending inner.
    ``step`` is None for ad-hoc window maps built from explicit axis values.
    """

    m: int
    n: int
    step: float | None
    region: str
    pf_values: tuple[float, ...]
    pd_values: tuple[float, ...]
    partitions: tuple[Counts, ...]
    cells: tuple[RegionCell, ...]

    def rows(self) -> list[list[RegionCell]]:
        """Cells grouped by fixed p_d, each row ordered by ascending p_f."""
        by_row: dict[int, list[RegionCell]] = {}
        for cell in self.cells:
            by_row.setdefault(cell.i_d, []).append(cell)
        return [by_row[i] for i in sorted(by_row)]

    def columns(self) -> list[list[RegionCell]]:
        """Cells grouped by fixed p_f, each column ordered by ascending p_d."""
        by_col: dict[int, list[RegionCell]] = {}
        for cell in self.cells:
            by_col.setdefault(cell.i_f, []).append(cell)
        return [sorted(by_col[i], key=lambda c: c.i_d) for i in sorted(by_col)]

    def strict_placements(self) -> set[Counts]:
        """Every placement that is the unique optimum somewhere on the map."""
        return {cell.best[0] for cell in self.cells if cell.strict}


def grid_values(step: float) -> tuple[float, ...]:
    """Grid nodes k*step for k = 1 .. round(1/step) - 1 (covers [step, 1-step])."""
    if not STEP_MIN <= step <= STEP_MAX:
        raise BudgetError(f"step {step} outside [{STEP_MIN}, {STEP_MAX}]")
    top = round(1.0 / step) - 1
    return tuple(k * step for k in range(1, top + 1))


def sweep_plane(
    m: int, n: int, step: float, region: str = "pd_ge_pf", threads: int = 1
) -> RegionMap:
    """Brute-force optimum at every grid node.

    ``region`` is ``pd_ge_pf`` (default, the half-plane the structural
    results live on) or ``full`` (whole square, e.g. to exercise the
    bit-flip symmetry). Deterministic: node order, partition order and the
    tie rule are all fixed, so repeated runs emit identical CSV bytes.
    """
    if region not in ("pd_ge_pf", "full"):
        raise ValueError(f"unknown region {region!r}")
    values = grid_values(step)
    if m > SWEEP_MAX_M:
        cost = len(values) ** 2 * len(enumerate_partitions(m)) * (1 << m)
        raise BudgetError(
            f"sweep refused: m={m} > {SWEEP_MAX_M} would cost ~{cost:.2e} "
            "pmf evaluations; lower m or call error_probability_grid directly"
        )
    pf_idx: list[int] = []
    pd_idx: list[int] = []
    for i_d in range(len(values)):
        for i_f in range(len(values)):
            if region == "pd_ge_pf" and values[i_d] < values[i_f]:
                continue
            pf_idx.append(i_f)
            pd_idx.append(i_d)
    pf = np.array([values[i] for i in pf_idx])
    pd = np.array([values[i] for i in pd_idx])
    cells = _evaluate_cells(m, n, pf, pd, pf_idx, pd_idx, threads)
    return RegionMap(
        m=m,
        n=n,
        step=step,
        region=region,
        pf_values=values,
        pd_values=values,
        partitions=tuple(enumerate_partitions(m)),
        cells=cells,
    )


def sweep_window(
    m: int,
    n: int,
    pf_values: tuple[float, ...],
    pd_values: tuple[float, ...],
    threads: int = 1,
) -> RegionMap:
    """Region map over an explicit rectangle of axis values (no half-plane cut)."""
    pf_idx = []
    pd_idx = []
    for i_d in range(len(pd_values)):
        for i_f in range(len(pf_values)):
            pf_idx.append(i_f)
            pd_idx.append(i_d)
    pf = np.array([pf_values[i] for i in pf_idx])
    pd = np.array([pd_values[i] for i in pd_idx])
    cells = _evaluate_cells(m, n, pf, pd, pf_idx, pd_idx, threads)
    return RegionMap(
        m=m,
        n=n,
        step=None,
        region="window",
        pf_values=tuple(pf_values),
        pd_values=tuple(pd_values),
        partitions=tuple(enumerate_partitions(m)),
        cells=cells,
    )


def _evaluate_cells(m, n, pf, pd, pf_idx, pd_idx, threads) -> tuple[RegionCell, ...]:
    parts = tuple(enumerate_partitions(m))
    pes = np.empty((len(parts), pf.size))

    def run(i: int) -> None:
        pes[i] = error_probability_grid(parts[i], n, pf, pd)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, range(len(parts))))
    else:
        for i in range(len(parts)):
            run(i)

    pe_min = pes.min(axis=0)
    tie = (pes - pe_min[None, :]) <= TIE_EPS
    competitors = np.where(tie, np.inf, pes)
    second = competitors.min(axis=0)
    margin = second - pe_min
    tie_counts = tie.sum(axis=0)
    strict = (tie_counts == 1) & (margin > TIE_EPS)

    cells = []
    for g in range(pf.size):
        best = tuple(parts[i] for i in np.nonzero(tie[:, g])[0])
        cells.append(
            RegionCell(
                i_f=pf_idx[g],
                i_d=pd_idx[g],
                p_f=float(pf[g]),
                p_d=float(pd[g]),
                best=best,
                pe_min=float(pe_min[g]),
                margin=float(margin[g]),
                strict=bool(strict[g]),
            )
        )
    return tuple(cells)


def region_csv_text(region_map: RegionMap) -> str:
    """CSV dump: one row per node, row order = p_d outer / p_f inner ascending."""
    lines = ["p_f,p_d,best,tie_count,pe_min,margin"]
    for cell in region_map.cells:
        best = "-".join(str(v) for v in cell.best[0])
        lines.append(
            f"{cell.p_f:.6g},{cell.p_d:.6g},{best},{cell.tie_count},"
            f"{cell.pe_min!r},{cell.margin!r}"
        )
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# Closed-form optimality regions for four sensors on four points
# ---------------------------------------------------------------------------

M4_PLACEMENTS: tuple[Counts, ...] = ((4,), (3, 1), (2, 2), (2, 1, 1))


@dataclass(frozen=True)
class M4RegionVerdict:
    """Outcome of the closed-form region test at one point.

    ``placement`` is set when exactly one region expression fires; otherwise
    the point sits on (or numerically indistinguishable from) a boundary
    curve and ``ambiguous`` is set instead of guessing.
    """

    placement: Counts | None
    fired: tuple[Counts, ...]

    @property
    def ambiguous(self) -> bool:
        return self.placement is None


def _m4_fired_grid(pf: np.ndarray, pd: np.ndarray) -> np.ndarray:
    """Boolean (4, G) array: which closed-form region holds at each point.

    The four expressions are polynomial inequalities in (p_f, p_d) that tile
    the p_d > p_f half-plane; shared boundary curves may satisfy zero or two
    of them, which callers must treat as boundary hits.
    """
    f, d = np.asarray(pf, dtype=float), np.asarray(pd, dtype=float)
    poly4 = (d - f) * (
        -(d + f) * (d**2 + f**2) + (d**2 + d * f + f**2) + (1.0 - f**3)
    )
    e4 = poly4 < 0.0

    gap31 = 2.0 * (d**2 - f**2) - (d - f) - (d**3 - f**3) - d * f**2 * (d - f)
    cube_lt = d**3 * (1.0 - d) < f**3 * (1.0 - f)
    cube_ge = d**3 * (1.0 - d) >= f**3 * (1.0 - f)
    sq_lt = d**2 * (1.0 - d) < f**2 * (1.0 - f)
    corner_gt = (d + f - 1.0) ** 2 > d * f * (1.0 - f)
    corner_le = (d + f - 1.0) ** 2 <= d * f * (1.0 - f)
    e31 = ((poly4 >= 0.0) & (gap31 < 0.0) & cube_lt) | (corner_gt & cube_ge & sq_lt)

    sym22 = (d**2 - f**2) * (2.0 - d**2 - 2.0 * f**2) >= 0.0
    gap22 = (
        2.0 * (d - f)
        + 2.0 * f**3 * (1.0 - f)
        - d * f**2 * (1.0 - f)
        - d * f**2 * (1.0 - d)
        - (d**2 - f**2)
        - f * (d - f)
    )
    e22 = (sym22 & (gap31 >= 0.0) & (gap22 <= 0.0) & cube_lt) | (
        (2.0 * (1.0 - f) < d) & corner_le & cube_ge
    )

    e21 = 2.0 * (1.0 - f) >= d
    return np.stack([e4, e31, e22, e21])


def region_predicate_m4(p_f: float, p_d: float) -> M4RegionVerdict:
    """Closed-form optimal placement for m = n = 4 at one (p_f, p_d) point.

    Evaluates the four printed region inequalities verbatim; requires
    p_d >= p_f. Exactly one firing expression names the optimum; zero or
    several mark a boundary point.
    """
    if p_d < p_f:
        raise ValueError(f"regions are defined for p_d >= p_f, got ({p_f}, {p_d})")
    fired_mask = _m4_fired_grid(np.array([p_f]), np.array([p_d]))[:, 0]
    fired = tuple(M4_PLACEMENTS[i] for i in np.nonzero(fired_mask)[0])
    placement = fired[0] if len(fired) == 1 else None
    return M4RegionVerdict(placement=placement, fired=fired)


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one numerical claim check."""

    claim: str
    checked: int
    max_violation: float
    counterexamples: tuple
    passed: bool
    notes: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "claim": self.claim,
            "checked": self.checked,
            "max_violation": self.max_violation,
            "counterexamples": list(self.counterexamples),
            "pass": self.passed,
        }
        if self.notes:
            out["notes"] = self.notes
        return out


def _half_plane_grid(step: float) -> tuple[np.ndarray, np.ndarray]:
    values = grid_values(step)
    pf, pd = [], []
    for d in values:
        for f in values:
            if d >= f:
                pf.append(f)
                pd.append(d)
    return np.array(pf), np.array(pd)


def verify_thm41(m_max: int = 5, step: float = 0.02) -> VerificationReport:
    """Uniform placement never beats moving one sensor onto a neighbour.

    For every m = n <= m_max and every grid node, checks
    P_e(1,...,1) >= P_e(2,1,...,1,0) - tol on the p_d >= p_f half-plane.
    """
    pf, pd = _half_plane_grid(step)
    checked = 0
    worst = -math.inf
    counterexamples = []
    for m in range(2, m_max + 1):
        uniform = (1,) * m
        doubled = (2,) + (1,) * (m - 2)
        pe_uni = error_probability_grid(uniform, m, pf, pd)
        pe_two = error_probability_grid(doubled, m, pf, pd)
        excess = pe_two - pe_uni
        checked += pf.size
        worst = max(worst, float(excess.max()))
        for g in np.nonzero(excess > THM41_TOL)[0]:
            counterexamples.append(
                {"m": m, "p_f": float(pf[g]), "p_d": float(pd[g]), "excess": float(excess[g])}
            )
    return VerificationReport(
        claim="uniform-never-strictly-optimal",
        checked=checked,
        max_violation=max(worst, 0.0),
        counterexamples=tuple(counterexamples),
        passed=worst <= THM41_TOL and not counterexamples,
        notes={"worst_excess": worst, "tolerance": THM41_TOL},
    )


def verify_thm42(m: int, n1: int, n2: int, step: float = 0.05) -> VerificationReport:
    """Scaled P_e differences are invariant in the number of points.

    For m < n1 < n2 and every pair of placements (v, w):
    n2*(P_e(v)|n2 - P_e(w)|n2) == n1*(P_e(v)|n1 - P_e(w)|n1), checked on a
    full-square grid to tolerance 1e-10. Equal differences force equal argmin
    structure, so maps for (m, n1) and (m, n2) share their region geometry.
    """
    if not m < n1 < n2:
        raise ValueError(f"require m < n1 < n2, got {m}, {n1}, {n2}")
    values = grid_values(step)
    ff, dd = np.meshgrid(values, values)
    pf, pd = ff.ravel(), dd.ravel()
    parts = tuple(enumerate_partitions(m))
    pe1 = {p: error_probability_grid(p, n1, pf, pd) for p in parts}
    pe2 = {p: error_probability_grid(p, n2, pf, pd) for p in parts}
    checked = 0
    worst = 0.0
    counterexamples = []
    for i, v in enumerate(parts):
        for w in parts[i + 1 :]:
            dev = np.abs(n2 * (pe2[v] - pe2[w]) - n1 * (pe1[v] - pe1[w]))
            checked += pf.size
            worst = max(worst, float(dev.max()))
            for g in np.nonzero(dev > THM42_TOL)[0]:
                counterexamples.append(
                    {
                        "v": list(v),
                        "w": list(w),
                        "p_f": float(pf[g]),
                        "p_d": float(pd[g]),
                        "deviation": float(dev[g]),
                    }
                )
    return VerificationReport(
        claim="scaled-pe-difference-invariant-in-n",
        checked=checked,
        max_violation=worst,
        counterexamples=tuple(counterexamples),
        passed=worst <= THM42_TOL and not counterexamples,
        notes={"tolerance": THM42_TOL},
    )


def verify_cor41(m: int, step: float = 0.01, threads: int = 1) -> VerificationReport:
    """Adding one empty point enlarges the strict-optimal set by exactly uniform.

    Sweeps (m, m) and (m, m+1) and compares strict-optimal inventories:
    strict(m, m+1) must equal strict(m, m) plus the uniform placement, and
    uniform must actually win strictly somewhere on the (m, m+1) map.
    """
    if m > 5:
        raise ValueError(f"strict-set growth check supported for m <= 5, got m={m}")
    base = sweep_plane(m, m, step, threads=threads)
    extra = sweep_plane(m, m + 1, step, threads=threads)
    strict_base = base.strict_placements()
    strict_extra = extra.strict_placements()
    uniform = (1,) * m
    expected = strict_base | {uniform}
    missing = sorted(expected - strict_extra)
    surplus = sorted(strict_extra - expected)
    uniform_strict = uniform in strict_extra
    counterexamples = [
        *({"missing_at_n_plus_1": list(p)} for p in missing),
        *({"unexpected_at_n_plus_1": list(p)} for p in surplus),
    ]
    if not uniform_strict:
        counterexamples.append({"uniform_never_strict_at_n_plus_1": list(uniform)})
    passed = not counterexamples
    return VerificationReport(
        claim="strict-set-grows-by-uniform",
        checked=len(base.cells) + len(extra.cells),
        max_violation=float(len(missing) + len(surplus)),
        counterexamples=tuple(counterexamples),
        passed=passed,
        notes={
            "strict_at_n_equal_m": sorted("-".join(map(str, p)) for p in strict_base),
            "strict_at_n_plus_1": sorted("-".join(map(str, p)) for p in strict_extra),
        },
    )


def check_monotone_on_scale(
    region_map: RegionMap, scale: PlacementScale, axis: str
) -> VerificationReport:
    """Strict optima must climb the scale as p_f (or p_d) increases.

    Walks each grid row (axis ``increasing_pf``) or column (``increasing_pd``)
    and requires the scale level of consecutive strict optima to be
    non-decreasing. Tie cells are skipped and counted; strict cells whose
    optimum is not on the supplied scale are likewise skipped and counted
    (callers that need the scale to be exhaustive assert that count is zero).
    """
    if axis not in ("increasing_pf", "increasing_pd"):
        raise ValueError(f"unknown axis {axis!r}")
    lanes = region_map.rows() if axis == "increasing_pf" else region_map.columns()
    skipped_ties = 0
    off_scale: set[Counts] = set()
    skipped_off_scale = 0
    checked = 0
    violations = []
    worst_drop = 0
    for lane in lanes:
        previous_level = None
        previous_cell = None
        for cell in lane:
            if not cell.strict:
                skipped_ties += 1
                continue
            winner = cell.best[0]
            if winner not in scale:
                off_scale.add(winner)
                skipped_off_scale += 1
                continue
            level = scale.level(winner)
            checked += 1
            if previous_level is not None and level < previous_level:
                drop = previous_level - level
                worst_drop = max(worst_drop, drop)
                violations.append(
                    {
                        "axis": axis,
                        "p_f": cell.p_f,
                        "p_d": cell.p_d,
                        "from": "-".join(map(str, previous_cell.best[0])),
                        "to": "-".join(map(str, winner)),
                        "level_drop": drop,
                    }
                )
            previous_level = level
            previous_cell = cell
    return VerificationReport(
        claim=f"optimum-monotone-on-scale/{axis}",
        checked=checked,
        max_violation=float(worst_drop),
        counterexamples=tuple(violations),
        passed=not violations,
        notes={
            "skipped_ties": skipped_ties,
            "skipped_off_scale": skipped_off_scale,
            "off_scale_placements": sorted("-".join(map(str, p)) for p in off_scale),
        },
    )


def full_partition_scale(m: int) -> PlacementScale:
    """Chain of all partitions of m; exists only for m <= 5.

    The first incomparable pairs appear at m = 6 ((4,1,1) vs (3,3)), which is
    exactly why the monotonicity result stops there.
    """
    parts = tuple(enumerate_partitions(m))
    ok, pair = is_chain(parts)
    if not ok:
        raise ValueError(f"partitions of {m} are not totally ordered: {pair}")
    return chain_sort(parts)


def verify_prop51(
    m: int, n: int, step: float = 0.01, threads: int = 1
) -> VerificationReport:
    """Monotone-on-scale check on both axes for one (m, n) map, m <= 5."""
    scale = full_partition_scale(m)
    region_map = sweep_plane(m, n, step, threads=threads)
    by_pf = check_monotone_on_scale(region_map, scale, "increasing_pf")
    by_pd = check_monotone_on_scale(region_map, scale, "increasing_pd")
    return VerificationReport(
        claim=f"optimum-monotone-on-scale/m{m}n{n}",
        checked=by_pf.checked + by_pd.checked,
        max_violation=max(by_pf.max_violation, by_pd.max_violation),
        counterexamples=by_pf.counterexamples + by_pd.counterexamples,
        passed=by_pf.passed and by_pd.passed,
        notes={
            "skipped_ties": by_pf.notes["skipped_ties"] + by_pd.notes["skipped_ties"],
            "skipped_off_scale": by_pf.notes["skipped_off_scale"]
            + by_pd.notes["skipped_off_scale"],
            "scale": ["-".join(map(str, p)) for p in scale.members],
        },
    )


COUNTEREXAMPLE_PROBES: tuple[tuple[float, float, Counts], ...] = (
    (0.46, 0.6, (3, 2, 1, 1)),
    (0.48, 0.6, (2, 2, 2, 1)),
    (0.48, 0.5, (3, 2, 1, 1)),
)


def verify_counterexample(threads: int = 1) -> VerificationReport:
    """Monotone-on-scale fails for seven sensors on eight points.

    Reproduces the three probe optima at (p_f, p_d) in
    {(0.46, 0.6), (0.48, 0.6), (0.48, 0.5)} and then demands that a local
    window around them violates scale monotonicity on both axes: the optimum
    steps *down* from (3,2,1,1) to the lower (2,2,2,1) as either parameter
    grows. Passing means the violation was found.
    """
    m, n = 7, 8
    mismatches = []
    for p_f, p_d, expected in COUNTEREXAMPLE_PROBES:
        opt = optimal_placements(m, n, SensorModel(p_d=p_d, p_f=p_f))
        got = opt.best[0].counts if opt.strict else None
        if not opt.strict or got != expected:
            mismatches.append(
                {
                    "p_f": p_f,
                    "p_d": p_d,
                    "expected": list(expected),
                    "got": None if got is None else list(got),
                    "strict": opt.strict,
                }
            )
    pf_axis = tuple(0.46 + 0.01 * i for i in range(3))
    pd_axis = tuple(0.50 + 0.01 * i for i in range(11))
    window = sweep_window(m, n, pf_axis, pd_axis, threads=threads)
    scale = chain_sort([(3, 2, 1, 1), (2, 2, 2, 1)])
    by_pf = check_monotone_on_scale(window, scale, "increasing_pf")
    by_pd = check_monotone_on_scale(window, scale, "increasing_pd")
    found_both = bool(by_pf.counterexamples) and bool(by_pd.counterexamples)
    passed = not mismatches and found_both
    return VerificationReport(
        claim="monotone-on-scale-fails-for-7-sensors-8-points",
        checked=len(COUNTEREXAMPLE_PROBES) + len(window.cells),
        max_violation=float(len(mismatches)),
        counterexamples=tuple(mismatches),
        passed=passed,
        notes={
            "violations_increasing_pf": list(by_pf.counterexamples),
            "violations_increasing_pd": list(by_pd.counterexamples),
        },
    )


def check_conjecture_chain(region_map: RegionMap) -> VerificationReport:
    """Look for a set of optimal placements that forms a single chain.

    Strict optima are forced members; if they are pairwise comparable, tie
    cells are covered greedily, preferring representatives already chosen and
    otherwise extending the chain with a compatible tie member. Evidence
    gathering only: a found chain supports the chain hypothesis on this map,
    a failure pinpoints the obstruction.
    """
    strict = sorted(region_map.strict_placements(), reverse=True)
    ok, pair = is_chain(strict)
    if not ok:
        return VerificationReport(
            claim="optimal-chain-exists",
            checked=len(region_map.cells),
            max_violation=1.0,
            counterexamples=(
                {
                    "incomparable_strict_pair": [
                        "-".join(map(str, pair[0])),
                        "-".join(map(str, pair[1])),
                    ]
                },
            ),
            passed=False,
            notes={"strict_set": ["-".join(map(str, p)) for p in strict]},
        )
    chosen: set[Counts] = set(strict)
    uncovered = []
    for cell in region_map.cells:
        if cell.strict or any(b in chosen for b in cell.best):
            continue
        compatible = [
            b
            for b in cell.best
            if is_chain(list(chosen) + [b])[0]
        ]
        if compatible:
            chosen.add(compatible[0])
        else:
            uncovered.append(
                {
                    "p_f": cell.p_f,
                    "p_d": cell.p_d,
                    "tie_set": ["-".join(map(str, b)) for b in cell.best],
                }
            )
    passed = not uncovered
    chain = chain_sort(sorted(chosen)) if chosen else PlacementScale(members=())
    return VerificationReport(
        claim="optimal-chain-exists",
        checked=len(region_map.cells),
        max_violation=float(len(uncovered)),
        counterexamples=tuple(uncovered),
        passed=passed,
        notes={
            "chain": ["-".join(map(str, p)) for p in chain.members],
            "strict_set": ["-".join(map(str, p)) for p in strict],
        },
    )


def strict_onset(region_map: RegionMap, counts: Counts) -> tuple[float | None, float | None]:
    """(last p_d row before ``counts`` first wins strictly, first row where it does).

    Scanning rows bottom-up; (None, None) when the placement never wins, and
    a None first element when it already wins on the lowest row.
    """
    first = None
    previous = None
    for lane in region_map.rows():
        p_d = lane[0].p_d
        if any(cell.strict and cell.best[0] == counts for cell in lane):
            first = p_d
            break
        previous = p_d
    if first is None:
        return None, None
    return previous, first
