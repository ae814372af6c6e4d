"""Torus fiber analysis: certified fiber roots with reflection pairing, and
the arc decomposition of the unit circle on which fiber structure is stable.

For an essentially symmetric bivariate p and |zeta| = 1, the fiber
polynomial p(zeta, .) is itself essentially symmetric, so its root multiset
is invariant under w -> 1/conj(w). A simple root whose flip ball meets only
its own enclosure is therefore certified unimodular: the flip of the true
root is a true root, and the only candidate is the root itself. This turns
an approximate |w| ~ 1 observation into a rigorous verdict; without
symmetry the unimodular count is heuristic and flagged as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .ball import ComplexBall, eval_poly_ball, torus_point
from .factor import resultant_multipoly, uni_deg, uni_trim
from .poly import MultiPoly
from .rootfind import (
    CertifiedRoot,
    PrecisionExhausted,
    roots_certified,
    unimodular_roots_exact,
)
from .scalars import GaussianRational

TWO_PI = 2.0 * math.pi

DEFAULT_PAIRING_MARGIN = 1e-9
DEFAULT_BREAKPOINT_EXCLUSION = 1e-6
_PRECS = (53, 113, 237)


@dataclass
class FiberReport:
    """Certified root data of one torus fiber p(e^(i*theta), .)."""

    theta: float
    roots: List[CertifiedRoot]
    pairing: List[int]
    unimodular_count: int
    inside_count: int
    outside_count: int
    pairing_certified: bool  # reflection-pairing argument valid (symmetry held)

    def root_angles(self) -> List[float]:
        return [
            math.atan2(r.midpoint().imag, r.midpoint().real) % TWO_PI
            for i, r in enumerate(self.roots)
            if self.pairing[i] == i
        ]


@dataclass
class ArcDecomposition:
    """Angles where the z2-root structure of p(e^(i*theta), .) can change:
    unimodular zeros of the discriminant-type resultant and of the leading
    coefficient. Between consecutive breakpoints the root count and
    simplicity pattern are constant."""

    breakpoints: List[float]
    sources: List[str]
    exact_points: List[Optional[GaussianRational]] = field(default_factory=list)

    def arcs(self) -> List[Tuple[float, float]]:
        if not self.breakpoints:
            return [(0.0, TWO_PI)]
        pts = sorted(self.breakpoints)
        out = []
        for a, b in zip(pts, pts[1:]):
            out.append((a, b))
        out.append((pts[-1], pts[0] + TWO_PI))
        return out

    def sample_angles(self, per_arc: int = 3, exclusion: float = DEFAULT_BREAKPOINT_EXCLUSION) -> List[List[float]]:
        """per_arc angles strictly inside each arc, away from the endpoints."""
        out = []
        for a, b in self.arcs():
            span = b - a
            if span <= 2 * exclusion:
                out.append([(a + b) / 2 % TWO_PI])
                continue
            lo, hi = a + exclusion, b - exclusion
            if per_arc == 1:
                angles = [(lo + hi) / 2]
            else:
                step = (hi - lo) / (per_arc + 1)
                angles = [lo + step * (k + 1) for k in range(per_arc)]
            out.append([t % TWO_PI for t in angles])
        return out


def fiber_coefficients(p: MultiPoly, theta: float, precision: int = 53) -> List[ComplexBall]:
    """Ball coefficients of the univariate fiber polynomial p(e^(i*theta), z2)."""
    if p.nvars != 2:
        raise ValueError("fiber analysis requires nvars = 2")
    zeta = torus_point(theta, precision)
    coeffs = []
    for a in p.coeffs_in(1):
        if a.is_zero():
            coeffs.append(ComplexBall(0.0, 0.0, precision))
        else:
            _, uni = a.to_univariate()
            coeffs.append(eval_poly_ball(uni, zeta))
    return coeffs


def pair_roots(
    roots: Sequence[CertifiedRoot], margin: float = DEFAULT_PAIRING_MARGIN
) -> Optional[Tuple[List[int], int, int, int]]:
    """Reflection pairing of certified roots.

    Returns (pairing, unimodular, inside, outside) or None when enclosures
    are too coarse: clustered roots, ambiguous partners, pairs closer than
    the separation margin, or an undecided off-circle side.
    """
    n = len(roots)
    if any(r.multiplicity_hint != 1 for r in roots):
        return None
    for i in range(n):
        for j in range(i + 1, n):
            if roots[i].value.separation_lower(roots[j].value) < margin:
                return None
    flips = []
    for r in roots:
        if not r.value.excludes_zero():
            return None
        flips.append(r.value.flip())
    pairing = [-1] * n
    for i, fb in enumerate(flips):
        partners = [j for j in range(n) if roots[j].value.separation_lower(fb) == 0.0]
        if len(partners) != 1:
            return None
        pairing[i] = partners[0]
    if any(pairing[pairing[i]] != i for i in range(n)):
        return None
    unimodular = inside = outside = 0
    for i, r in enumerate(roots):
        if pairing[i] == i:
            unimodular += 1
        elif r.value.certainly_inside_unit_disk():
            inside += 1
        elif r.value.certainly_outside_unit_disk():
            outside += 1
        else:
            return None
    return pairing, unimodular, inside, outside


def fiber_unimodular_roots(
    p: MultiPoly,
    theta: float,
    tol: float = DEFAULT_PAIRING_MARGIN,
    breakpoints: Optional[ArcDecomposition] = None,
    breakpoint_exclusion: float = DEFAULT_BREAKPOINT_EXCLUSION,
    symmetric: Optional[bool] = None,
) -> FiberReport:
    """Certified fiber report at angle theta (not a breakpoint).

    tol is the pairing separation margin. When p is not essentially
    symmetric the pairing argument is invalid and the report is flagged
    heuristic (pairing_certified False).
    """
    if breakpoints is not None:
        for b in breakpoints.breakpoints:
            d = abs((theta - b + math.pi) % TWO_PI - math.pi)
            if d < breakpoint_exclusion:
                raise ValueError(
                    f"theta={theta} is within {breakpoint_exclusion} of breakpoint {b}"
                )
    if symmetric is None:
        symmetric = p.essential_symmetry().symmetric
    last_exc: Optional[Exception] = None
    for prec in _PRECS:
        coeffs = fiber_coefficients(p, theta, prec)
        while len(coeffs) > 1 and coeffs[-1].is_exact() and coeffs[-1].midpoint() == 0:
            coeffs.pop()
        try:
            roots = roots_certified(coeffs, precision=prec)
        except PrecisionExhausted as exc:
            last_exc = exc
            continue
        if symmetric:
            paired = pair_roots(roots, margin=tol)
            if paired is None:
                continue
            pairing, unimodular, inside, outside = paired
            return FiberReport(theta, roots, pairing, unimodular, inside, outside, True)
        # no symmetry: the root multiset need not be flip-invariant, so the
        # pairing degenerates to the identity and all counts are heuristic
        pairing = list(range(len(roots)))
        unimodular_h = sum(
            1 for r in roots if r.value.mod_one_distance() <= max(tol, 1e-7)
        )
        inside = sum(1 for r in roots if r.value.certainly_inside_unit_disk())
        outside = sum(1 for r in roots if r.value.certainly_outside_unit_disk())
        return FiberReport(theta, roots, pairing, unimodular_h, inside, outside, False)
    raise PrecisionExhausted(
        f"fiber at theta={theta} could not be resolved"
    ) from last_exc


def torus_breakpoints(p: MultiPoly) -> ArcDecomposition:
    """Arc decomposition of the circle for the z2-fibers of p.

    Breakpoints are the angles of unimodular zeros of the resultant
    Res_z2(s, ds/dz2) (s the z2-square-free part of p) and of the
    z2-leading coefficient. Unimodular zeros of those exact univariate
    polynomials are found by the reflection screen gcd(q, reflect(q))
    followed by the exact circle split, so no breakpoint is ever missed;
    spurious extra angles would only subdivide arcs harmlessly.
    """
    if p.nvars != 2:
        raise ValueError("torus_breakpoints requires nvars = 2")
    if p.is_zero() or p.degree_in(1) < 1:
        raise ValueError("torus_breakpoints requires positive z2-degree")
    from .factor import gcd_multipoly

    dp = p.derivative(1)
    s = p
    if not dp.is_zero():
        g = gcd_multipoly(p, dp)
        if not g.is_constant():
            s = p.exact_divide(g)
    candidates: List[Tuple[MultiPoly, str]] = []
    ds = s.derivative(1)
    if s.degree_in(1) >= 1 and not ds.is_zero() and ds.degree_in(1) >= 1:
        candidates.append((resultant_multipoly(s, ds, 1), "discriminant zero"))
    lc = p.coeffs_in(1)[-1]
    candidates.append((lc, "leading-coefficient zero"))
    breakpoints: List[float] = []
    sources: List[str] = []
    exacts: List[Optional[GaussianRational]] = []
    for q, tag in candidates:
        if q.is_zero() or q.is_constant():
            continue
        if q.depends_on(1):
            raise ValueError("breakpoint source polynomial must be univariate in z1")
        _, uni = q.to_univariate()
        uni = uni_trim(uni)
        if uni_deg(uni) < 1:
            continue
        for root, _mult in unimodular_roots_exact(uni):
            mid = root.midpoint()
            angle = math.atan2(mid.imag, mid.real) % TWO_PI
            if any(
                abs((angle - b + math.pi) % TWO_PI - math.pi) < 1e-9 for b in breakpoints
            ):
                continue
            breakpoints.append(angle)
            sources.append(tag)
            exacts.append(root.exact)
    order = sorted(range(len(breakpoints)), key=lambda i: breakpoints[i])
    return ArcDecomposition(
        [breakpoints[i] for i in order],
        [sources[i] for i in order],
        [exacts[i] for i in order],
    )
