"""Certified approximate minimization of interval-valued functions.

Given a near-minimizer ``xbar`` (within ``eps`` of the sampled infimum in the
dominance order) and a trade-off rate ``delta``, the search returns a point
``x0`` together with evidence for three conclusions: a distance bound
``|x0 - xbar| < eps/delta``, descent ``F(x0)`` dominating into ``F(xbar)``,
and strict minimality of ``x0`` for the ``x0``-centered perturbation over the
sampled grid.  Uniqueness is reported as evidence over the sample set, never
as a proof; tolerance-scale ties (plateaus) are surfaced as warnings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .calculus import DEFAULT_LAMBDA_LADDER, gateaux_derivative
from .errors import EmptyArgmin, HypothesisViolated, ImproperFunction
from .interval import (
    Interval,
    add_scalar,
    interval_to_json,
    norm,
    nprec,
    prec,
    preceq,
)
from .ivf import IVF, Box, SampleGrid, argmin_over, infimum_over, is_proper_probe

__all__ = [
    "EkelandInput",
    "EkelandCertificate",
    "global_min",
    "perturbed",
    "evp_search",
    "verify_certificate",
    "evp_gateaux",
    "level_bound_lemma_check",
]

REFINEMENT_ROUNDS = 3
REFINEMENT_RESOLUTION = 21


@dataclass(frozen=True)
class EkelandInput:
    """Problem statement for the variational search."""

    f: IVF
    xbar: tuple[float, ...]
    eps: float
    delta: float
    box: Box
    grid: SampleGrid
    tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.eps <= 0 or self.delta <= 0 or self.tol <= 0:
            raise ValueError("eps, delta and tol must be positive")
        object.__setattr__(
            self, "xbar", tuple(float(v) for v in np.asarray(self.xbar).reshape(-1))
        )


@dataclass(frozen=True)
class EkelandCertificate:
    """Returned witness plus the evidence for each conclusion."""

    x0: tuple[float, ...]
    xbar: tuple[float, ...]
    eps: float
    delta: float
    value_x0: Interval
    value_xbar: Interval
    dist_x0_xbar: float
    dist_bound: float
    dist_bound_ok: bool
    descent_ok: bool
    checked_count: int
    violations: tuple[tuple[float, ...], ...]
    ties: tuple[tuple[float, ...], ...]
    warnings: tuple[str, ...]
    seed: Optional[int] = None

    @property
    def uniqueness_ok(self) -> bool:
        return len(self.violations) == 0

    @property
    def valid(self) -> bool:
        return self.dist_bound_ok and self.descent_ok and self.uniqueness_ok

    def to_json(self) -> dict:
        return {
            "x0": list(self.x0),
            "xbar": list(self.xbar),
            "eps": self.eps,
            "delta": self.delta,
            "value_x0": interval_to_json(self.value_x0),
            "value_xbar": interval_to_json(self.value_xbar),
            "checks": {
                "distance": {
                    "ok": self.dist_bound_ok,
                    "dist": self.dist_x0_xbar,
                    "bound": self.dist_bound,
                },
                "descent": {"ok": self.descent_ok},
                "uniqueness": {
                    "ok": self.uniqueness_ok,
                    "checked": self.checked_count,
                    "violations": [list(v) for v in self.violations],
                    "ties": [list(t) for t in self.ties],
                },
            },
            "warnings": list(self.warnings),
            "seed": self.seed,
        }


def global_min(f: IVF, grid: SampleGrid, tol: float) -> tuple[Interval, np.ndarray]:
    """Sampled infimum and its tolerance argmin; the function must be proper."""
    if not is_proper_probe(f, grid):
        raise ImproperFunction(f"{f.label!r} fails the properness probe on this grid")
    return infimum_over(f, grid), argmin_over(f, grid, tol)


def perturbed(f: IVF, delta: float, center) -> IVF:
    """Shift both endpoints by ``delta * |x - center|`` (a cone around center)."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    center = np.asarray(center, dtype=float).reshape(-1)
    lower, upper = f.lower, f.upper

    def cone(pts: np.ndarray) -> np.ndarray:
        return delta * np.linalg.norm(pts - center[None, :], axis=1)

    return IVF(
        dim=f.dim,
        lower=lambda pts: np.asarray(lower(pts), float) + cone(pts),
        upper=lambda pts: np.asarray(upper(pts), float) + cone(pts),
        label=f"{f.label}+{delta:g}*dist",
        domain=f.domain,
    )


def _tol_argmin_points(f: IVF, pts: np.ndarray, tol: float) -> np.ndarray:
    """Points whose value is within ``tol`` gH-distance of the componentwise infimum."""
    lo, hi = f.values(pts)
    m_lo, m_hi = float(lo.min()), float(hi.min())
    with np.errstate(all="ignore"):
        dlo = np.where(lo == m_lo, 0.0, np.abs(lo - m_lo))
        dhi = np.where(hi == m_hi, 0.0, np.abs(hi - m_hi))
        dist = np.maximum(dlo, dhi)
    dist = np.where(np.isnan(dist), math.inf, dist)
    return pts[dist <= tol]


def _strict_minimality_scan(
    f: IVF, x0: np.ndarray, delta: float, pts: np.ndarray, tie_tol: float
) -> tuple[int, list[tuple[float, ...]], list[tuple[float, ...]]]:
    """Check ``F(x0)`` strictly dominates ``F(x) + delta*|x-x0|`` off ``x0``."""
    v0 = f(x0)
    lo, hi = f.values(pts)
    r = np.linalg.norm(pts - x0[None, :], axis=1)
    off = r > 0
    plo = lo + delta * r
    phi = hi + delta * r
    dominated = (v0.lo <= plo) & (v0.hi <= phi) & ((v0.lo < plo) | (v0.hi < phi))
    bad = off & ~dominated
    with np.errstate(all="ignore"):
        gap = np.maximum(np.abs(plo - v0.lo), np.abs(phi - v0.hi))
    tie = off & dominated & (gap <= tie_tol)
    violations = [tuple(p.tolist()) for p in pts[bad]]
    ties = [tuple(p.tolist()) for p in pts[tie]]
    return int(off.sum()), violations, ties


def _pick_witness(
    f: IVF, candidates: np.ndarray, xbar: np.ndarray, tol: float
) -> np.ndarray:
    """Minimize f over the candidate set, breaking ties by |x-xbar| then lexicographically."""
    lo, hi = f.values(candidates)
    m_lo, m_hi = float(lo.min()), float(hi.min())
    with np.errstate(all="ignore"):
        dlo = np.where(lo == m_lo, 0.0, np.abs(lo - m_lo))
        dhi = np.where(hi == m_hi, 0.0, np.abs(hi - m_hi))
        dist = np.maximum(dlo, dhi)
    dist = np.where(np.isnan(dist), math.inf, dist)
    winners = candidates[dist <= tol]
    if len(winners) == 0:
        winners = candidates[dist == dist.min()]
    order = np.argsort(np.linalg.norm(winners - xbar[None, :], axis=1), kind="stable")
    winners = winners[order]
    best = winners[0]
    best_d = float(np.linalg.norm(best - xbar))
    for w in winners[1:]:
        if float(np.linalg.norm(w - xbar)) > best_d:
            break
        if tuple(w.tolist()) < tuple(best.tolist()):
            best = w
    return best


def evp_search(inp: EkelandInput) -> EkelandCertificate:
    """Two-stage perturbed-argmin search with local refinement.

    Stage 1 minimizes ``F + delta*|x - xbar|`` over the grid; stage 2 picks,
    among those minimizers, a point minimizing ``F`` itself.  Up to three
    rounds of ten-times-finer local grids tighten the witness.
    """
    f = inp.f
    xbar = np.asarray(inp.xbar, dtype=float)
    inf_f = infimum_over(f, inp.grid)
    if not inf_f.is_finite:
        raise HypothesisViolated(f"sampled infimum {inf_f!r} is not finite")
    value_xbar = f(xbar)
    if not prec(value_xbar, add_scalar(inf_f, inp.eps)):
        raise HypothesisViolated(
            f"F(xbar)={value_xbar!r} is not strictly within eps={inp.eps:g} "
            f"of the sampled infimum {inf_f!r}"
        )

    cone = perturbed(f, inp.delta, xbar)
    # xbar joins the candidate pool: the cone's kink sits exactly there, and
    # grid points only approximate it
    pool = np.vstack([inp.grid.points(), xbar[None, :]])
    stage1 = _tol_argmin_points(cone, pool, inp.tol)
    if len(stage1) == 0:
        raise EmptyArgmin(
            "stage-1 argmin is empty: no sampled point is within tol of both "
            "endpoint minima (grid too coarse, or the endpoint minimizers split)"
        )
    x0 = _pick_witness(f, stage1, xbar, inp.tol)

    spacing = inp.grid.spacing()
    for _ in range(REFINEMENT_ROUNDS):
        local = Box(
            tuple(
                (float(c - s), float(c + s))
                for c, s in zip(x0, spacing)
            )
        ).intersect(inp.box)
        local_grid = SampleGrid(local, (REFINEMENT_RESOLUTION,) * f.dim)
        local_c = argmin_over(cone, local_grid, inp.tol)
        if len(local_c):
            candidate = _pick_witness(f, local_c, xbar, inp.tol)
            if prec(cone(candidate), cone(x0)):
                x0 = candidate
        spacing = spacing / 10.0

    value_x0 = f(x0)
    dist = float(np.linalg.norm(x0 - xbar))
    bound = inp.eps / inp.delta
    checked, violations, ties = _strict_minimality_scan(
        f, x0, inp.delta, inp.grid.points(), inp.tol
    )
    warnings = []
    if ties:
        warnings.append(
            f"{len(ties)} grid points tie with x0 at tolerance {inp.tol:g}: "
            "the minimizer of the perturbed function is unique only above that scale"
        )
    if violations:
        warnings.append(f"{len(violations)} strict-minimality violations on the grid")
    return EkelandCertificate(
        x0=tuple(float(v) for v in x0),
        xbar=tuple(float(v) for v in xbar),
        eps=inp.eps,
        delta=inp.delta,
        value_x0=value_x0,
        value_xbar=value_xbar,
        dist_x0_xbar=dist,
        dist_bound=bound,
        dist_bound_ok=dist < bound,
        descent_ok=preceq(value_x0, value_xbar),
        checked_count=checked,
        violations=tuple(violations),
        ties=tuple(ties),
        warnings=tuple(warnings),
    )


def verify_certificate(
    f: IVF,
    cert: EkelandCertificate,
    grid: SampleGrid,
    delta: float,
    tol: float,
) -> bool:
    """Independent recheck of all three conclusions, typically on a finer grid."""
    x0 = np.asarray(cert.x0, dtype=float)
    xbar = np.asarray(cert.xbar, dtype=float)
    dist_ok = float(np.linalg.norm(x0 - xbar)) < cert.eps / delta
    descent_ok = preceq(f(x0), f(xbar))
    _, violations, _ = _strict_minimality_scan(f, x0, delta, grid.points(), tol)
    return dist_ok and descent_ok and not violations


def evp_gateaux(
    inp: EkelandInput,
    directions: np.ndarray,
    ladder: Sequence[float] = DEFAULT_LAMBDA_LADDER,
    tol: float = 1e-6,
) -> tuple[EkelandCertificate, float]:
    """Search, then bound the derivative norm at the witness from below.

    For a differentiable objective the returned bound should not exceed
    ``delta`` (up to tolerance): the witness is a near-stationary point.
    """
    cert = evp_search(inp)
    bound = 0.0
    for h in np.atleast_2d(directions):
        d = gateaux_derivative(inp.f, cert.x0, h, ladder=ladder, tol=tol)
        bound = max(bound, norm(d.value))
    return cert, bound


def level_bound_lemma_check(xbar, bound: Interval, grid: SampleGrid) -> bool:
    """Pointwise agreement of two routes to the bounded region around ``xbar``.

    Membership of ``x`` is ``bound`` not strictly dominating the degenerate
    interval ``[r, r]`` with ``r = |x - xbar|``; the closed-form reduction is
    ``r <= bound.lo`` or ``bound.lo < r < bound.hi``.
    """
    xbar = np.asarray(xbar, dtype=float).reshape(-1)
    pts = grid.points()
    r = np.linalg.norm(pts - xbar[None, :], axis=1)
    by_dominance = np.array([nprec(bound, Interval(float(v), float(v))) for v in r])
    by_reduction = (r <= bound.lo) | ((bound.lo < r) & (r < bound.hi))
    return bool(np.array_equal(by_dominance, by_reduction))
