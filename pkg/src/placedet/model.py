"""Sensor/placement data model and exact conditional alarm probabilities.

The observation model: M identical binary sensors are distributed over N
points. Each sensor alarms with probability ``p_d`` when the intruder is at
its own point and with probability ``p_f`` otherwise, independently given
the intruder location. A placement assigns a count of sensors to each point;
because sensors are identical, only the sorted count vector matters, so the
canonical form is a non-increasing integer partition with zeros trimmed.

Joint alarm vectors ``(y_1, ..., y_M)`` are packed into integers with y_1 as
the most significant bit, i.e. the index equals the decimal value of the
binary string y_1 y_2 ... y_M. Sensors are laid out in block order: the
first v_1 bits belong to point 1, the next v_2 to point 2, and so on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

ObservationIndex = int


@dataclass(frozen=True)
class SensorModel:
    """Per-sensor detection probability ``p_d`` and false-alarm probability ``p_f``."""

    p_d: float
    p_f: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.p_d <= 1.0):
            raise ValueError(f"p_d must be in [0, 1], got {self.p_d}")
        if not (0.0 <= self.p_f <= 1.0):
            raise ValueError(f"p_f must be in [0, 1], got {self.p_f}")


def flip_model(model: SensorModel) -> SensorModel:
    """Complementary model (1-p_d, 1-p_f).

    Inverting every alarm bit turns a detector for ``model`` into a detector
    for the flipped model, so the error probability is invariant under this
    map. It reduces the p_d < p_f half-plane to the p_d >= p_f half.
    """
    return SensorModel(1.0 - model.p_d, 1.0 - model.p_f)


@dataclass(frozen=True)
class Placement:
    """Canonical sensor placement: non-increasing positive counts per point.

    ``counts`` holds only the occupied points (zeros trimmed); conceptually
    it is padded with zeros out to length ``n``. ``m`` is the total sensor
    count, ``n`` the number of points.
    """

    counts: tuple[int, ...]
    m: int
    n: int

    def __post_init__(self) -> None:
        if any(v <= 0 for v in self.counts):
            raise ValueError(f"counts must be positive after trimming: {self.counts}")
        if any(a < b for a, b in zip(self.counts, self.counts[1:])):
            raise ValueError(f"counts must be non-increasing: {self.counts}")
        if sum(self.counts) != self.m:
            raise ValueError(f"sum(counts)={sum(self.counts)} != m={self.m}")
        if len(self.counts) > self.n:
            raise ValueError(f"{len(self.counts)} occupied points exceed n={self.n}")

    @property
    def k(self) -> int:
        """Number of occupied points."""
        return len(self.counts)

    def count_at(self, j: int) -> int:
        """Sensor count v_j at point j (1-based), 0 for the implicit zero tail."""
        if not 1 <= j <= self.n:
            raise ValueError(f"point index {j} out of range 1..{self.n}")
        return self.counts[j - 1] if j <= self.k else 0

    def block_offset(self, j: int) -> int:
        """Index of the first sensor bit assigned to point j (1-based)."""
        return sum(self.counts[: j - 1])

    def padded(self, length: int | None = None) -> tuple[int, ...]:
        """Counts padded with zeros to ``length`` (default ``n``)."""
        length = self.n if length is None else length
        if length < self.k:
            raise ValueError(f"cannot pad {self.counts} to length {length}")
        return self.counts + (0,) * (length - self.k)

    def label(self) -> str:
        """Dash-joined counts, e.g. ``2-1-1``."""
        return "-".join(str(v) for v in self.counts)


def canonicalize_placement(raw_counts: Sequence[int], n: int) -> Placement:
    """Sort counts descending, trim zeros, and wrap as a Placement.

    Permutations of the count vector yield the same error probability under a
    uniform intruder prior, so the sorted form is the canonical representative.
    Idempotent on already-canonical input.
    """
    counts = [int(v) for v in raw_counts]
    if any(v < 0 for v in counts):
        raise ValueError(f"negative sensor counts not allowed: {raw_counts}")
    if len(counts) > n:
        raise ValueError(f"count vector of length {len(counts)} exceeds n={n}")
    m = sum(counts)
    if m < 1:
        raise ValueError("placement must contain at least one sensor")
    trimmed = tuple(sorted((v for v in counts if v > 0), reverse=True))
    if len(trimmed) > n:
        raise ValueError(f"{len(trimmed)} occupied points exceed n={n}")
    return Placement(trimmed, m, n)


def observation_bits(y: ObservationIndex, m: int) -> tuple[int, ...]:
    """Unpack index into bits (y_1, ..., y_m), y_1 most significant."""
    if not 0 <= y < (1 << m):
        raise ValueError(f"observation index {y} out of range for m={m}")
    return tuple((y >> (m - 1 - k)) & 1 for k in range(m))


def observation_index(bits: Iterable[int]) -> ObservationIndex:
    """Pack bits (y_1, ..., y_m) into an index, y_1 most significant."""
    y = 0
    for b in bits:
        y = (y << 1) | (b & 1)
    return y


def alarm_total(y: ObservationIndex) -> int:
    """Total alarm count s = y_1 + ... + y_M."""
    return int(y).bit_count()


def alarm_count_at_point(y: ObservationIndex, placement: Placement, j: int) -> int:
    """Number of alarmed sensors in the block assigned to point j.

    With the block layout, point j owns the contiguous bits at offset
    v_1 + ... + v_{j-1} of length v_j; returns 0 when v_j = 0.
    """
    if not 1 <= j <= placement.n:
        raise ValueError(f"hypothesis index {j} out of range 1..{placement.n}")
    v = placement.count_at(j)
    if v == 0:
        return 0
    m = placement.m
    off = placement.block_offset(j)
    mask = ((1 << v) - 1) << (m - off - v)
    return int(y & mask).bit_count()


def conditional_pmf(
    y: ObservationIndex, j: int, placement: Placement, model: SensorModel
) -> float:
    """Probability of the joint alarm vector ``y`` given the intruder at point j.

    For an occupied point the block of v_j own-point sensors alarms with
    probability p_d each and the remaining M - v_j sensors with p_f each:

        p_j(y) = p_d^a (1-p_d)^(v_j-a) p_f^(s-a) (1-p_f)^(M-s-(v_j-a))

    with s the total alarm count and a the own-block alarm count. For an
    empty point every sensor is a false-alarm source: p_f^s (1-p_f)^(M-s).
    The 0^0 = 1 convention makes deterministic sensors (p_d, p_f in {0, 1})
    exact instead of NaN.
    """
    m = placement.m
    s = alarm_total(y)
    v = placement.count_at(j)
    pd, pf = model.p_d, model.p_f
    if v == 0:
        return pf**s * (1.0 - pf) ** (m - s)
    a = alarm_count_at_point(y, placement, j)
    return pd**a * (1.0 - pd) ** (v - a) * pf ** (s - a) * (1.0 - pf) ** (m - s - (v - a))


@dataclass(frozen=True)
class PmfTable:
    """Dense conditional pmf table with the empty-point rows collapsed.

    Rows 0..k-1 hold p_j for the occupied points; when ``collapsed`` a final
    shared row holds the common pmf of all n - k empty points (it does not
    depend on the placement). Columns are observation indices 0..2^M - 1.
    The array is frozen read-only so tables can be shared across workers.
    """

    model: SensorModel
    placement: Placement
    n: int
    rows: np.ndarray
    collapsed: bool

    @classmethod
    def build(cls, placement: Placement, model: SensorModel, n: int | None = None) -> "PmfTable":
        n = placement.n if n is None else n
        if n < placement.k:
            raise ValueError(f"n={n} smaller than {placement.k} occupied points")
        m = placement.m
        k = placement.k
        collapsed = n > k
        nrows = k + (1 if collapsed else 0)
        rows = np.empty((nrows, 1 << m))
        pd_pow, qd_pow, pf_pow, qf_pow = _power_tables(model, m)
        offsets = [placement.block_offset(j) for j in range(1, k + 1)]
        for y in range(1 << m):
            s = int(y).bit_count()
            for r in range(k):
                v = placement.counts[r]
                mask = ((1 << v) - 1) << (m - offsets[r] - v)
                a = int(y & mask).bit_count()
                rows[r, y] = pd_pow[a] * qd_pow[v - a] * pf_pow[s - a] * qf_pow[m - s - (v - a)]
            if collapsed:
                rows[k, y] = pf_pow[s] * qf_pow[m - s]
        rows.flags.writeable = False
        return cls(model=model, placement=placement, n=n, rows=rows, collapsed=collapsed)

    def row(self, j: int) -> np.ndarray:
        """Pmf row for hypothesis j (1-based); empty points share the last row."""
        if not 1 <= j <= self.n:
            raise ValueError(f"hypothesis index {j} out of range 1..{self.n}")
        k = self.placement.k
        return self.rows[j - 1] if j <= k else self.rows[k]

    def value(self, j: int, y: ObservationIndex) -> float:
        return float(self.row(j)[y])

    def multiplicities(self) -> np.ndarray:
        """Hypothesis multiplicity per stored row (empty row counts n - k times)."""
        k = self.placement.k
        mult = np.ones(self.rows.shape[0])
        if self.collapsed:
            mult[k] = self.n - k
        return mult


def _power_tables(model: SensorModel, m: int):
    """pd^k, (1-pd)^k, pf^k, (1-pf)^k for k = 0..m (0^0 = 1 by float rules)."""
    pd, pf = model.p_d, model.p_f
    return (
        [pd**k for k in range(m + 1)],
        [(1.0 - pd) ** k for k in range(m + 1)],
        [pf**k for k in range(m + 1)],
        [(1.0 - pf) ** k for k in range(m + 1)],
    )
