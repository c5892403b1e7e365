"""Welch-bound certification of complex projective t-designs and related checks.

A finite set X of unit vectors in C^d satisfies, for every k >= 0,

    S_k(X) = (1/|X|^2) sum_{x,y in X} |<x|y>|^(2k)  >=  1 / C(d+k-1, k),

and X is a t-design exactly when equality holds for all k <= t. The functions
here evaluate both sides, the equivalent pointwise identity, angle sets,
subdegrees, frame bounds and the SIC / MUB conditions.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import factorize, prime_power
from .vectors import VectorSet, mub_residual

DESIGN_TOL = 1e-9
ANGLE_TOL = 1e-7
GRAM_TOL = 1e-10
ORTHO_TOL = 1e-8


def welch_bound(d: int, k: int) -> Fraction:
    """Exact value of 1 / C(d+k-1, k)."""
    if d < 1 or k < 0:
        raise ValueError(f"need d >= 1 and k >= 0, got d={d}, k={k}")
    return Fraction(1, math.comb(d + k - 1, k))


def _check_dims(X: VectorSet) -> None:
    if not isinstance(X, VectorSet):
        raise TypeError(f"expected a VectorSet, got {type(X).__name__}")


def welch_sum(X: VectorSet, k: int) -> float:
    """(1/|X|^2) sum over all ordered pairs, diagonal included, of |<x|y>|^(2k).

    Terms are accumulated in index order with :func:`math.fsum`, so the result
    is the correctly rounded sum and independent of any parallel split.
    """
    _check_dims(X)
    if k < 0:
        raise ValueError("k must be >= 0")
    ov = X.overlaps()
    n = len(X)
    return math.fsum((ov**k).ravel().tolist()) / (n * n)


@dataclass(frozen=True)
class WelchRow:
    k: int
    sum: float
    bound: Fraction
    residual: float


@dataclass(frozen=True)
class WelchProfile:
    """Welch sums for k = 0..k_max and the design order they imply."""

    rows: tuple[WelchRow, ...]
    order: int
    tol: float
    anomalies: tuple[int, ...] = ()

    def residual(self, k: int) -> float:
        return self.rows[k].residual


def design_order(X: VectorSet, k_max: int = 3, tol: float = DESIGN_TOL) -> WelchProfile:
    """Largest t <= k_max such that the Welch bound is met with equality for all k <= t.

    Every k up to k_max is evaluated, even after the first failure. Residuals
    below -tol violate the Welch inequality itself and are listed in
    ``anomalies``.
    """
    d = X.dim
    rows = []
    for k in range(k_max + 1):
        s = welch_sum(X, k)
        b = welch_bound(d, k)
        rows.append(WelchRow(k, s, b, s - float(b)))
    order = -1
    for row in rows:
        if abs(row.residual) > tol:
            break
        order = row.k
    anomalies = tuple(r.k for r in rows if r.residual < -tol)
    return WelchProfile(tuple(rows), order, tol, anomalies)


def welch_point_residual(X: VectorSet, k: int, x) -> float:
    """|<x|x>^k / C(d+k-1,k) - (1/|X|) sum_y |<x|y>|^(2k)| at one point x of C^d."""
    x = np.asarray(getattr(x, "amps", x), dtype=complex)
    if x.shape != (X.dim,):
        raise ValueError(f"probe has shape {x.shape}, expected ({X.dim},)")
    lhs = float(np.vdot(x, x).real) ** k * float(welch_bound(X.dim, k))
    ip = X.vectors.conj() @ x
    rhs = math.fsum(((ip.real**2 + ip.imag**2) ** k).tolist()) / len(X)
    return abs(lhs - rhs)


def random_unit_vectors(count: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vectors of C^dim as rows."""
    z = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def per_point_welch_check(X: VectorSet, k: int, probes: int = 100, seed: int = 0) -> float:
    """Largest pointwise residual over ``probes`` seeded random unit vectors and X itself.

    For a t-design this vanishes for every k <= t at every point of C^d, which
    makes it a stronger spot check than :func:`design_order`.
    """
    if probes < 1:
        raise ValueError("need at least one probe")
    points = np.vstack([random_unit_vectors(probes, X.dim, np.random.default_rng(seed)), X.vectors])
    return max(welch_point_residual(X, k, x) for x in points)


# -- angle sets ------------------------------------------------------------------

@dataclass(frozen=True)
class AngleSet:
    """Distinct squared overlaps |<x|y>|^2 over ordered pairs x != y.

    ``multiplicities`` counts ordered pairs, so they sum to |X|(|X|-1).
    """

    values: tuple[float, ...]
    multiplicities: tuple[int, ...]
    tol: float
    ambiguous: bool = False

    def __len__(self) -> int:
        return len(self.values)

    def matches(self, expected: Sequence[float], tol: float) -> bool:
        return len(expected) == len(self.values) and all(
            abs(a - b) <= tol for a, b in zip(self.values, sorted(expected))
        )

    def classify(self, overlaps: np.ndarray) -> np.ndarray:
        """Index of the nearest angle value for each overlap."""
        vals = np.asarray(self.values)
        return np.argmin(np.abs(np.asarray(overlaps)[..., None] - vals), axis=-1)


def angle_set(X: VectorSet, cluster_tol: float = ANGLE_TOL) -> AngleSet:
    """Single-linkage clusters of the off-diagonal squared overlaps.

    Neighbouring sorted overlaps closer than ``cluster_tol`` share a cluster;
    each cluster is reported by its mean. Clusters closer than ``10*cluster_tol``
    raise a warning and set ``ambiguous``.
    """
    n = len(X)
    if n < 2:
        raise ValueError("an angle set needs at least two vectors")
    ov = X.overlaps()
    vals = np.sort(ov[~np.eye(n, dtype=bool)])
    breaks = np.flatnonzero(np.diff(vals) > cluster_tol) + 1
    clusters = np.split(vals, breaks)
    centers = tuple(float(np.mean(c)) for c in clusters)
    mults = tuple(int(c.size) for c in clusters)
    gaps = [clusters[i + 1][0] - clusters[i][-1] for i in range(len(clusters) - 1)]
    ambiguous = any(g <= 10 * cluster_tol for g in gaps)
    if ambiguous:
        warnings.warn(f"angle clusters closer than {10 * cluster_tol:g}", RuntimeWarning, stacklevel=2)
    return AngleSet(centers, mults, cluster_tol, ambiguous)


@dataclass(frozen=True)
class Subdegrees:
    """``counts[i, a]`` is the number of y != x_i with |<x_i|y>|^2 = angles.values[a]."""

    angles: AngleSet
    counts: np.ndarray
    regular: bool

    def table(self) -> dict[float, int] | None:
        """Angle -> subdegree when the scheme is regular, else None."""
        if not self.regular:
            return None
        return {a: int(c) for a, c in zip(self.angles.values, self.counts[0])}


def subdegrees(X: VectorSet, angles: AngleSet | None = None) -> Subdegrees:
    angles = angle_set(X) if angles is None else angles
    n = len(X)
    ov = X.overlaps()
    cls = angles.classify(ov)
    counts = np.zeros((n, len(angles)), dtype=int)
    off = ~np.eye(n, dtype=bool)
    for a in range(len(angles)):
        counts[:, a] = np.sum((cls == a) & off, axis=1)
    regular = bool(np.all(counts == counts[0]))
    counts.setflags(write=False)
    return Subdegrees(angles, counts, regular)


def intersection_count(X: VectorSet, i: int, j: int, tol: float = ORTHO_TOL) -> int:
    """Number of z in X orthogonal to both x_i and x_j, for an orthogonal pair."""
    ov = X.overlaps()
    if i == j or ov[i, j] > tol:
        raise ValueError(f"vectors {i} and {j} are not orthogonal (|<x|y>|^2 = {ov[i, j]:.3e})")
    return int(np.sum((ov[i] <= tol) & (ov[j] <= tol)))


# -- frames, SICs, MUBs --------------------------------------------------------

@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float
    tight: bool

    def __iter__(self):
        return iter((self.lower, self.upper))


def frame_operator(F: VectorSet) -> np.ndarray:
    """sum_f |f><f|."""
    return F.vectors.T @ F.vectors.conj()


def frame_bounds(F: VectorSet, rel_tol: float = DESIGN_TOL) -> FrameBounds:
    """Extreme eigenvalues of the frame operator; tight iff they agree to rel_tol * |F|/d."""
    evals = np.linalg.eigvalsh(frame_operator(F))
    lo, hi = float(evals[0]), float(evals[-1])
    return FrameBounds(lo, hi, hi - lo <= rel_tol * len(F) / F.dim)


@dataclass(frozen=True)
class SicReport:
    is_sic: bool
    size_ok: bool
    max_deviation: float
    design: WelchProfile


def sic_check(X: VectorSet, tol: float = GRAM_TOL, k_max: int = 3) -> SicReport:
    """d^2 vectors with every off-diagonal squared overlap equal to 1/(d+1)."""
    d, n = X.dim, len(X)
    ov = X.overlaps()
    dev = 0.0
    if n > 1:
        dev = float(np.max(np.abs(ov[~np.eye(n, dtype=bool)] - 1 / (d + 1))))
    size_ok = n == d * d
    return SicReport(size_ok and dev <= tol, size_ok, dev, design_order(X, k_max))


@dataclass(frozen=True)
class MubCheck:
    ok: bool
    residual: float
    pair: tuple[int, int]


def mub_check(bases: Sequence[VectorSet], tol: float = GRAM_TOL) -> MubCheck:
    """Every basis orthonormal and every cross pair unbiased, within tol.

    ``pair`` names the bases where the worst residual occurs (equal indices
    mean a basis failed orthonormality).
    """
    bases = list(bases)
    if not bases:
        raise ValueError("need at least one basis")
    d = bases[0].dim
    for b in bases:
        if b.dim != d or len(b) != d:
            raise ValueError(f"every basis must hold {d} vectors of dimension {d}")
    worst, pair = mub_residual(bases)
    return MubCheck(worst <= tol, worst, pair)


# -- MUB counts ----------------------------------------------------------------

@dataclass(frozen=True)
class MubBounds:
    """Bounds on M(n), the largest number of MUBs in C^n."""

    n: int
    lower: int
    upper: int
    lower_rule: str
    upper_rule: str
    mols_order: int | None = None
    mols_count: int | None = None
    notes: tuple[str, ...] = field(default=())

    def __iter__(self):
        return iter((self.lower, self.upper))


def mols_lower_bound(m: int) -> int:
    """MacNeish bound: min over prime-power factors of (p^r - 1) MOLS of order m."""
    return min(p**r for p, r in factorize(m).items()) - 1


def mub_count_bounds(n: int) -> MubBounds:
    """Lower and upper bounds on M(n).

    The lower bound applies M(p^r) = p^r + 1 to each prime-power factor and
    M(mn) >= min(M(m), M(n)). For square n = m^2 the Latin-square route is
    reported separately, read both as N(m) and as N(m) + 2 bases.
    """
    if n < 2:
        raise ValueError(f"M(n) bounds need n >= 2, got {n}")
    factors = factorize(n)
    upper_rule = "M(n) <= n + 1"
    if prime_power(n):
        lower, lower_rule = n + 1, "M(p^r) = p^r + 1"
    else:
        parts = sorted(p**r for p, r in factors.items())
        lower = min(q + 1 for q in parts)
        lower_rule = "M(mn) >= min(M(m), M(n)) over " + " * ".join(map(str, parts))
    root = math.isqrt(n)
    mols_order = mols_count = None
    notes: tuple[str, ...] = ()
    if root * root == n and root >= 2:
        mols_order, mols_count = root, mols_lower_bound(root)
        notes = (
            f"Latin squares: N({root}) >= {mols_count}; the bullet reading gives M({n}) >= {mols_count}, "
            f"the construction reading (w + 2 bases from w squares) gives M({n}) >= {mols_count + 2}",
        )
    return MubBounds(n, lower, n + 1, lower_rule, upper_rule, mols_order, mols_count, notes)


# -- full report -----------------------------------------------------------------

@dataclass(frozen=True)
class DesignReport:
    dim: int
    size: int
    angles: AngleSet | None
    welch: WelchProfile
    subdegrees: Subdegrees | None
    frame: FrameBounds
    sic: SicReport
    mub_union: bool
    mub_groups: tuple[tuple[int, ...], ...] | None
    probe_residuals: dict[int, float] | None = None

    @property
    def order(self) -> int:
        return self.welch.order

    def as_dict(self) -> dict:
        """Plain JSON-ready summary."""
        w = self.welch
        out = {
            "dim": self.dim,
            "size": self.size,
            "design_order": w.order,
            "welch": [
                {"k": r.k, "sum": r.sum, "bound": float(r.bound), "bound_exact": str(r.bound), "residual": r.residual}
                for r in w.rows
            ],
            "welch_anomalies": list(w.anomalies),
            "angle_set": None,
            "regular_scheme": None,
            "subdegrees": None,
            "frame_bounds": {"lower": self.frame.lower, "upper": self.frame.upper, "tight": self.frame.tight},
            "sic": {"flag": self.sic.is_sic, "max_deviation": self.sic.max_deviation},
            "mub_union": self.mub_union,
        }
        if self.angles is not None:
            out["angle_set"] = {
                "values": list(self.angles.values),
                "multiplicities": list(self.angles.multiplicities),
                "cluster_tol": self.angles.tol,
                "ambiguous": self.angles.ambiguous,
            }
        if self.subdegrees is not None:
            out["regular_scheme"] = self.subdegrees.regular
            table = self.subdegrees.table()
            out["subdegrees"] = None if table is None else [[a, c] for a, c in table.items()]
        if self.probe_residuals is not None:
            out["probe_residuals"] = {str(k): v for k, v in self.probe_residuals.items()}
        return out


def _mub_groups(X: VectorSet, tol: float) -> tuple[tuple[int, ...], ...] | None:
    """Split X into candidate bases: by label when labelled, else by orthogonality."""
    d, n = X.dim, len(X)
    if n % d:
        return None
    if X.labels is not None:
        groups = [tuple(g) for g in X.groups().values()]
    else:
        ov = X.overlaps()
        seen = np.zeros(n, dtype=bool)
        groups = []
        for i in range(n):
            if seen[i]:
                continue
            g = tuple(int(j) for j in np.flatnonzero((ov[i] <= ORTHO_TOL) & ~seen)) if d > 1 else ()
            g = (i,) + tuple(j for j in g if j != i)
            seen[list(g)] = True
            groups.append(g)
    if any(len(g) != d for g in groups):
        return None
    if not mub_check([X.take(g) for g in groups], tol).ok:
        return None
    return tuple(groups)


def certify(
    X: VectorSet,
    k_max: int = 3,
    tol: float = DESIGN_TOL,
    cluster_tol: float = ANGLE_TOL,
    probes: int = 0,
    seed: int = 0,
) -> DesignReport:
    """Everything the module knows how to say about X."""
    welch = design_order(X, k_max, tol)
    angles = subs = None
    if len(X) >= 2:
        angles = angle_set(X, cluster_tol)
        subs = subdegrees(X, angles)
    groups = _mub_groups(X, GRAM_TOL)
    probe = None
    if probes:
        probe = {k: per_point_welch_check(X, k, probes, seed) for k in range(1, max(welch.order, 1) + 1)}
    return DesignReport(
        dim=X.dim,
        size=len(X),
        angles=angles,
        welch=welch,
        subdegrees=subs,
        frame=frame_bounds(F=X),
        sic=sic_check(X, k_max=k_max),
        mub_union=groups is not None,
        mub_groups=groups,
        probe_residuals=probe,
    )
