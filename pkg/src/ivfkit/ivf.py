"""Interval-valued functions on boxes: evaluation, limit probes, level sets,
infimum and argmin over grids.

An interval-valued function (IVF) is a pair of scalar endpoint fields with
``lower(x) <= upper(x)`` everywhere.  Endpoint fields are vectorized: they map
an ``(N, dim)`` array of points to an ``(N,)`` array of extended reals, where
``+inf`` at both endpoints encodes the extended value plus-infinity.

Semicontinuity verdicts are one-sided evidence: a ``True`` means no violation
was found at the probed ball ladder and tolerance, since semicontinuity is not
decidable from finitely many samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .errors import (
    EmptyGrid,
    EndpointOrderViolation,
    InvalidEndpoints,
    OutOfDomain,
)
from .interval import Interval, inf_family, nprec, sup_family

__all__ = [
    "Box",
    "SampleGrid",
    "ProbeParams",
    "IVF",
    "ScalarField",
    "unit_ball_points",
    "eval_ivf",
    "lower_limit",
    "upper_limit",
    "scalar_lower_limit",
    "scalar_upper_limit",
    "preceq_tol",
    "is_gh_lsc_at",
    "is_gh_usc_at",
    "ContinuityReport",
    "continuity_report",
    "is_gh_continuous_at",
    "EndpointLscReport",
    "endpoint_lsc_equivalence",
    "level_member",
    "level_member_mask",
    "sample_level_set",
    "LevelBoundReport",
    "level_bounded_probe",
    "add_ivf",
    "indicator",
    "infimum_over",
    "is_proper_probe",
    "argmin_over",
]

ScalarField = Callable[[np.ndarray], np.ndarray]

_INF = float("inf")


@dataclass(frozen=True)
class Box:
    """Axis-aligned box with finite per-dimension bounds."""

    bounds: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        norm_bounds = tuple((float(a), float(b)) for a, b in self.bounds)
        for a, b in norm_bounds:
            if not (math.isfinite(a) and math.isfinite(b)):
                raise InvalidEndpoints(f"box bounds must be finite, got ({a}, {b})")
            if a > b:
                raise InvalidEndpoints(f"reversed box bounds ({a}, {b})")
        object.__setattr__(self, "bounds", norm_bounds)

    @property
    def dim(self) -> int:
        return len(self.bounds)

    @property
    def center(self) -> np.ndarray:
        return np.array([(a + b) / 2.0 for a, b in self.bounds])

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return all(a <= v <= b for v, (a, b) in zip(x, self.bounds))

    def clip(self, points: np.ndarray) -> np.ndarray:
        lo = np.array([a for a, _ in self.bounds])
        hi = np.array([b for _, b in self.bounds])
        return np.clip(points, lo, hi)

    def widened(self, margin: float) -> "Box":
        return Box(tuple((a - margin, b + margin) for a, b in self.bounds))

    def intersect(self, other: "Box") -> "Box":
        if other.dim != self.dim:
            raise InvalidEndpoints("boxes of different dimension")
        return Box(
            tuple(
                (max(a1, a2), min(b1, b2))
                for (a1, b1), (a2, b2) in zip(self.bounds, other.bounds)
            )
        )


@dataclass(frozen=True)
class SampleGrid:
    """Uniform lattice over a box, enumerated lexicographically.

    The first coordinate varies slowest; reductions over grid values follow
    this fixed order so results are bitwise reproducible.
    """

    box: Box
    resolution: tuple[int, ...]

    def __post_init__(self) -> None:
        res = self.resolution
        if isinstance(res, int):
            res = (res,) * self.box.dim
        res = tuple(int(r) for r in res)
        if len(res) != self.box.dim:
            raise EmptyGrid("resolution rank does not match box dimension")
        if any(r < 2 for r in res):
            raise EmptyGrid("resolution must be >= 2 per dimension")
        object.__setattr__(self, "resolution", res)

    @property
    def size(self) -> int:
        out = 1
        for r in self.resolution:
            out *= r
        return out

    def axes(self) -> list[np.ndarray]:
        # lerp form (a*(n-k) + b*k)/n: exact at both ends and, by cancellation,
        # exactly zero at the midpoint of symmetric boxes -- axis-guard
        # functions (piecewise on x_i != 0) rely on hitting 0 exactly
        out = []
        for (a, b), r in zip(self.box.bounds, self.resolution):
            n = r - 1
            k = np.arange(r, dtype=float)
            ax = (a * (n - k) + b * k) / n
            ax[0] = a
            ax[-1] = b
            out.append(ax)
        return out

    def points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([m.ravel(order="C") for m in mesh], axis=-1)

    def spacing(self) -> np.ndarray:
        return np.array(
            [(b - a) / (r - 1) for (a, b), r in zip(self.box.bounds, self.resolution)]
        )

    def shell_mask(self) -> np.ndarray:
        """Boolean mask (in enumeration order) of points on the outermost layer."""
        idx = np.indices(self.resolution)
        shell = np.zeros(self.resolution, dtype=bool)
        for d, r in enumerate(self.resolution):
            shell |= (idx[d] == 0) | (idx[d] == r - 1)
        return shell.ravel(order="C")


DEFAULT_DELTA_LADDER = (0.5, 0.1, 0.02, 0.004, 0.0008, 0.00016)


@dataclass(frozen=True)
class ProbeParams:
    """Parameters of the shrinking-ball probes.

    ``delta_ladder`` must decrease strictly toward zero; each rung is sampled
    with the same scaled low-discrepancy point set plus the ball center.
    """

    delta_ladder: tuple[float, ...] = DEFAULT_DELTA_LADDER
    samples_per_ball: int = 512
    seed: int = 7
    tol: float = 1e-3
    continuity_gap_tol: float = 1e-2

    def __post_init__(self) -> None:
        ladder = tuple(float(d) for d in self.delta_ladder)
        if not ladder or ladder[-1] <= 0:
            raise ValueError("delta ladder must stay positive")
        if any(nxt >= prev for nxt, prev in zip(ladder[1:], ladder[:-1])):
            raise ValueError("delta ladder must be strictly decreasing")
        if self.samples_per_ball < 1:
            raise ValueError("samples_per_ball must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        object.__setattr__(self, "delta_ladder", ladder)


@lru_cache(maxsize=64)
def unit_ball_points(dim: int, count: int, seed: int) -> np.ndarray:
    """Deterministic low-discrepancy sample of the unit ball, shape (count, dim)."""
    sampler = qmc.Halton(d=dim + 1, scramble=True, seed=seed)
    u = sampler.random(count)
    z = ndtri(u[:, :dim])
    norms = np.linalg.norm(z, axis=1)
    norms[norms == 0] = 1.0
    radius = u[:, dim] ** (1.0 / dim)
    pts = z / norms[:, None] * radius[:, None]
    pts.setflags(write=False)
    return pts


@dataclass(frozen=True)
class IVF:
    """Interval-valued function given by vectorized lower/upper endpoint fields."""

    dim: int
    lower: ScalarField
    upper: ScalarField
    label: str = ""
    domain: Optional[Box] = None

    def values(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Evaluate both endpoint fields on an (N, dim) array, with checks."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.dim:
            raise OutOfDomain(
                f"{self.label!r}: expected points of dimension {self.dim}, got {pts.shape[1]}"
            )
        with np.errstate(all="ignore"):
            lo = np.asarray(self.lower(pts), dtype=float)
            hi = np.asarray(self.upper(pts), dtype=float)
        if np.isnan(lo).any() or np.isnan(hi).any():
            bad = pts[np.isnan(lo) | np.isnan(hi)][0]
            raise InvalidEndpoints(f"{self.label!r} produced NaN at {bad.tolist()}")
        order_ok = (lo <= hi) | (np.isinf(lo) & np.isinf(hi) & (lo == hi))
        if not order_ok.all():
            bad = pts[~order_ok][0]
            raise EndpointOrderViolation(
                f"{self.label!r}: lower > upper at {bad.tolist()}"
            )
        return lo, hi

    def __call__(self, x) -> Interval:
        x = np.asarray(x, dtype=float).reshape(-1)
        if self.domain is not None and not self.domain.contains(x):
            raise OutOfDomain(f"{x.tolist()} outside the domain of {self.label!r}")
        lo, hi = self.values(x[None, :])
        return Interval(float(lo[0]), float(hi[0]))


def eval_ivf(f: IVF, x) -> Interval:
    """Evaluate at a single point; value ``[+inf,+inf]`` encodes plus-infinity."""
    return f(x)


def _ball_values(
    f: IVF, xbar: np.ndarray, delta: float, params: ProbeParams
) -> tuple[np.ndarray, np.ndarray]:
    unit = unit_ball_points(f.dim, params.samples_per_ball, params.seed)
    pts = np.vstack([xbar[None, :], xbar[None, :] + delta * unit])
    if f.domain is not None:
        pts = f.domain.clip(pts)
    return f.values(pts)


def lower_limit(f: IVF, xbar, params: ProbeParams = ProbeParams()) -> Interval:
    """Limit of per-ball infima down the delta ladder (their supremum)."""
    xbar = np.asarray(xbar, dtype=float).reshape(-1)
    rung_infima = []
    for delta in params.delta_ladder:
        lo, hi = _ball_values(f, xbar, delta, params)
        rung_infima.append(Interval(float(lo.min()), float(hi.min())))
    return sup_family(rung_infima)


def upper_limit(f: IVF, xbar, params: ProbeParams = ProbeParams()) -> Interval:
    """Limit of per-ball suprema down the delta ladder (their infimum)."""
    xbar = np.asarray(xbar, dtype=float).reshape(-1)
    rung_suprema = []
    for delta in params.delta_ladder:
        lo, hi = _ball_values(f, xbar, delta, params)
        rung_suprema.append(Interval(float(lo.max()), float(hi.max())))
    return inf_family(rung_suprema)


def _scalar_limit(
    fld: ScalarField, dim: int, xbar: np.ndarray, params: ProbeParams, lower: bool
) -> float:
    unit = unit_ball_points(dim, params.samples_per_ball, params.seed)
    best = -_INF if lower else _INF
    for delta in params.delta_ladder:
        pts = np.vstack([xbar[None, :], xbar[None, :] + delta * unit])
        with np.errstate(all="ignore"):
            vals = np.asarray(fld(pts), dtype=float)
        rung = float(vals.min()) if lower else float(vals.max())
        best = max(best, rung) if lower else min(best, rung)
    return best


def scalar_lower_limit(fld: ScalarField, dim: int, xbar, params: ProbeParams = ProbeParams()) -> float:
    return _scalar_limit(fld, dim, np.asarray(xbar, float).reshape(-1), params, lower=True)


def scalar_upper_limit(fld: ScalarField, dim: int, xbar, params: ProbeParams = ProbeParams()) -> float:
    return _scalar_limit(fld, dim, np.asarray(xbar, float).reshape(-1), params, lower=False)


def preceq_tol(a: Interval, b: Interval, tol: float) -> bool:
    """Dominance with a tolerance slack on both endpoint comparisons."""
    return a.lo <= b.lo + tol and a.hi <= b.hi + tol


def is_gh_lsc_at(f: IVF, xbar, params: ProbeParams = ProbeParams()) -> bool:
    """No lower-semicontinuity violation found: ``f(xbar)`` dominates the lower limit."""
    return preceq_tol(f(xbar), lower_limit(f, xbar, params), params.tol)


def is_gh_usc_at(f: IVF, xbar, params: ProbeParams = ProbeParams()) -> bool:
    """No upper-semicontinuity violation found: the upper limit dominates ``f(xbar)``."""
    return preceq_tol(upper_limit(f, xbar, params), f(xbar), params.tol)


@dataclass(frozen=True)
class ContinuityReport:
    """Semicontinuity probes at a point plus an independent eps-delta cross-check."""

    point: tuple[float, ...]
    value: Interval
    liminf: Interval
    limsup: Interval
    lsc: bool
    usc: bool
    continuous: bool
    eps_delta_gap: float
    eps_delta_ok: bool

    @property
    def cross_check_agrees(self) -> bool:
        return self.continuous == self.eps_delta_ok

    def to_json(self) -> dict:
        from .interval import interval_to_json

        return {
            "point": list(self.point),
            "value": interval_to_json(self.value),
            "liminf": interval_to_json(self.liminf),
            "limsup": interval_to_json(self.limsup),
            "lsc": self.lsc,
            "usc": self.usc,
            "continuous": self.continuous,
            "eps_delta_gap": self.eps_delta_gap,
            "eps_delta_ok": self.eps_delta_ok,
        }


def continuity_report(f: IVF, xbar, params: ProbeParams = ProbeParams()) -> ContinuityReport:
    xbar = np.asarray(xbar, dtype=float).reshape(-1)
    value = f(xbar)
    liminf = lower_limit(f, xbar, params)
    limsup = upper_limit(f, xbar, params)
    lsc = preceq_tol(value, liminf, params.tol)
    usc = preceq_tol(limsup, value, params.tol)

    # eps-delta form on the tightest ball: sup of gH-distance to the center value
    lo, hi = _ball_values(f, xbar, params.delta_ladder[-1], params)
    with np.errstate(all="ignore"):
        dlo = np.where(lo == value.lo, 0.0, np.abs(lo - value.lo))
        dhi = np.where(hi == value.hi, 0.0, np.abs(hi - value.hi))
    gap = float(np.max(np.maximum(dlo, dhi)))
    if math.isnan(gap):
        gap = _INF
    return ContinuityReport(
        point=tuple(xbar.tolist()),
        value=value,
        liminf=liminf,
        limsup=limsup,
        lsc=lsc,
        usc=usc,
        continuous=lsc and usc,
        eps_delta_gap=gap,
        eps_delta_ok=gap <= params.continuity_gap_tol,
    )


def is_gh_continuous_at(f: IVF, xbar, params: ProbeParams = ProbeParams()) -> bool:
    """Conjunction of the lsc and usc probes (the eps-delta gap is recorded too)."""
    return continuity_report(f, xbar, params).continuous


@dataclass(frozen=True)
class EndpointLscReport:
    """Interval-level lsc probe against per-endpoint scalar lsc probes."""

    interval_route: bool
    lower_endpoint_lsc: bool
    upper_endpoint_lsc: bool

    @property
    def agrees(self) -> bool:
        return self.interval_route == (self.lower_endpoint_lsc and self.upper_endpoint_lsc)

    def to_json(self) -> dict:
        return {
            "interval_route": self.interval_route,
            "lower_endpoint_lsc": self.lower_endpoint_lsc,
            "upper_endpoint_lsc": self.upper_endpoint_lsc,
            "agrees": self.agrees,
        }


def endpoint_lsc_equivalence(
    f: IVF, xbar, params: ProbeParams = ProbeParams()
) -> EndpointLscReport:
    """Consistency report: the interval probe should match both scalar probes."""
    xbar = np.asarray(xbar, dtype=float).reshape(-1)
    value = f(xbar)
    lo_ok = value.lo <= scalar_lower_limit(f.lower, f.dim, xbar, params) + params.tol
    hi_ok = value.hi <= scalar_lower_limit(f.upper, f.dim, xbar, params) + params.tol
    return EndpointLscReport(
        interval_route=is_gh_lsc_at(f, xbar, params),
        lower_endpoint_lsc=lo_ok,
        upper_endpoint_lsc=hi_ok,
    )


def level_member(f: IVF, alpha: Interval, x) -> bool:
    """Membership in the level set: the value is not strictly dominated by alpha."""
    return nprec(alpha, f(x))


def level_member_mask(f: IVF, alpha: Interval, points: np.ndarray) -> np.ndarray:
    """Vectorized level-set membership for an (N, dim) array of points."""
    lo, hi = f.values(points)
    dominated_by_value = (lo <= alpha.lo) & (hi <= alpha.hi)
    crossing = ((alpha.lo < lo) & (alpha.hi > hi)) | ((alpha.lo > lo) & (alpha.hi < hi))
    return dominated_by_value | crossing


def sample_level_set(f: IVF, alpha: Interval, grid: SampleGrid) -> np.ndarray:
    """Grid points belonging to the level set, in enumeration order."""
    pts = grid.points()
    return pts[level_member_mask(f, alpha, pts)]


@dataclass(frozen=True)
class LevelBoundReport:
    alpha: Interval
    member_count: int
    shell_member_count: int

    @property
    def bounded_evidence(self) -> bool:
        """True when no member touched the outer shell of the sampled box."""
        return self.shell_member_count == 0

    def to_json(self) -> dict:
        from .interval import interval_to_json

        return {
            "alpha": interval_to_json(self.alpha),
            "member_count": self.member_count,
            "shell_member_count": self.shell_member_count,
            "bounded_evidence": self.bounded_evidence,
        }


def level_bounded_probe(
    f: IVF, alphas: Sequence[Interval], grid: SampleGrid
) -> list[LevelBoundReport]:
    """For each alpha, check whether level-set members stay off the outer shell."""
    pts = grid.points()
    shell = grid.shell_mask()
    out = []
    for alpha in alphas:
        member = level_member_mask(f, alpha, pts)
        out.append(
            LevelBoundReport(
                alpha=alpha,
                member_count=int(member.sum()),
                shell_member_count=int((member & shell).sum()),
            )
        )
    return out


def add_ivf(f1: IVF, f2: IVF) -> IVF:
    """Pointwise sum; ``[+inf,+inf]`` absorbs under addition."""
    if f1.dim != f2.dim:
        raise OutOfDomain("cannot add functions of different dimension")
    lower1, upper1, lower2, upper2 = f1.lower, f1.upper, f2.lower, f2.upper
    domain = f1.domain
    if domain is None:
        domain = f2.domain
    elif f2.domain is not None:
        domain = domain.intersect(f2.domain)
    return IVF(
        dim=f1.dim,
        lower=lambda pts: np.asarray(lower1(pts), float) + np.asarray(lower2(pts), float),
        upper=lambda pts: np.asarray(upper1(pts), float) + np.asarray(upper2(pts), float),
        label=f"({f1.label})+({f2.label})",
        domain=domain,
    )


def indicator(pred: Callable[[np.ndarray], np.ndarray], dim: int, label: str = "indicator") -> IVF:
    """Zero interval on the set, plus-infinity off it; encodes constraints."""

    def fld(pts: np.ndarray) -> np.ndarray:
        mask = np.asarray(pred(pts), dtype=bool)
        return np.where(mask, 0.0, _INF)

    return IVF(dim=dim, lower=fld, upper=fld, label=label)


def _grid_values(f: IVF, grid: SampleGrid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    pts = grid.points()
    if pts.shape[0] == 0:
        raise EmptyGrid("grid has no points")
    lo, hi = f.values(pts)
    return pts, lo, hi


def infimum_over(f: IVF, grid: SampleGrid) -> Interval:
    """Componentwise infimum of the sampled values."""
    _, lo, hi = _grid_values(f, grid)
    return Interval(float(lo.min()), float(hi.min()))


def is_proper_probe(f: IVF, grid: SampleGrid) -> bool:
    """Somewhere strictly below plus-infinity, nowhere the bottom element."""
    _, lo, hi = _grid_values(f, grid)
    pos_inf_values = (lo == _INF) & (hi == _INF)
    neg_inf_values = (lo == -_INF) & (hi == -_INF)
    return bool((~pos_inf_values).any() and not neg_inf_values.any())


def argmin_over(f: IVF, grid: SampleGrid, tol: float) -> np.ndarray:
    """Grid points whose value is within ``tol`` of the sampled infimum.

    Infinite endpoints of the infimum must be matched exactly; the finite gap
    is measured in the gH-distance.  Empty when the infimum is plus-infinity.
    """
    pts, lo, hi = _grid_values(f, grid)
    m_lo, m_hi = float(lo.min()), float(hi.min())
    if m_lo == _INF and m_hi == _INF:
        return pts[:0]
    with np.errstate(all="ignore"):
        dlo = np.where(lo == m_lo, 0.0, np.abs(lo - m_lo))
        dhi = np.where(hi == m_hi, 0.0, np.abs(hi - m_hi))
        dist = np.maximum(dlo, dhi)
    dist = np.where(np.isnan(dist), _INF, dist)
    return pts[dist <= tol]
