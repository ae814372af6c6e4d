"""Certified univariate complex root finding.

Approximations come from Aberth-Ehrlich simultaneous iteration (compiled
kernel when available); certification wraps each approximation in a
Weierstrass-correction disk: with W_i = f(r_i) / (lc * prod_{j!=i} (r_i -
r_j)), the disks D(r_i, n|W_i|) jointly contain every zero, and a connected
component made of m disks contains exactly m zeros. |f(r_i)| is bounded
above over the coefficient balls, so the certificate covers the exact
polynomial, not just its rounded image.

circle_split_exact adds the exact layer used by the torality decisions:
unit-circle membership of algebraic roots is decided by factoring and
flip-pairing (w <-> 1/conj(w)), never by a bare |w| ~ 1 test.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import mpmath

from ._kernels import aberth_iterate
from .ball import ComplexBall, ball_from_qi, eval_poly_ball
from .factor import (
    factor_univariate_qi,
    uni_deg,
    uni_derivative,
    uni_eval,
    uni_gcd,
    uni_is_zero,
    uni_monic,
    uni_reflect,
    uni_squarefree_decomposition,
    uni_trim,
)
from .scalars import GaussianRational

DEFAULT_ROOT_TOL = 1e-12


class PrecisionExhausted(ArithmeticError):
    """A certified decision could not be reached at the allowed precision."""


@dataclass
class CertifiedRoot:
    """An enclosure guaranteed to contain >= 1 root; for a cluster the
    multiplicity hint counts the roots inside (with multiplicity)."""

    value: ComplexBall
    multiplicity_hint: int = 1
    exact: Optional[GaussianRational] = None

    def midpoint(self) -> complex:
        return self.value.midpoint()


def _initial_guesses(coeffs: Sequence[complex]) -> List[complex]:
    n = len(coeffs) - 1
    lead = abs(coeffs[-1])
    radius = 1.0
    if lead > 0:
        radius = 1.0 + max(abs(c) for c in coeffs[:-1]) / lead if n else 1.0
    return [
        radius * cmath.exp(2j * math.pi * (k / n) + 0.4j) for k in range(n)
    ]


def _aberth_mpmath(coeffs, zs, max_iter: int, tol: float, prec: int):
    with mpmath.workprec(prec):
        c = [mpmath.mpc(x) for x in coeffs]
        z = [mpmath.mpc(x) for x in zs]
        n = len(z)
        m = len(c)
        for _ in range(max_iter):
            maxcorr = mpmath.mpf(0)
            for i in range(n):
                zi = z[i]
                f = c[m - 1]
                fp = mpmath.mpc(0)
                for k in range(m - 2, -1, -1):
                    fp = fp * zi + f
                    f = f * zi + c[k]
                if f == 0:
                    continue
                if fp == 0:
                    z[i] = zi + mpmath.mpf(10) ** (-prec // 3)
                    maxcorr = mpmath.mpf(1e30)
                    continue
                w = f / fp
                s = mpmath.mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (zi - z[j])
                corr = w / (1 - w * s)
                z[i] = zi - corr
                maxcorr = max(maxcorr, abs(corr))
            if maxcorr < tol:
                break
        return z


def roots_certified(
    coeffs: Sequence,
    precision: int = 53,
    max_iter: int = 400,
) -> List[CertifiedRoot]:
    """Certified enclosures of all roots of sum coeffs[k] x^k.

    Coefficients may be ComplexBall or GaussianRational. The leading
    coefficient ball must exclude zero (raise PrecisionExhausted otherwise);
    the multiplicity hints sum to the degree.
    """
    balls: List[ComplexBall] = []
    for c in coeffs:
        if isinstance(c, ComplexBall):
            balls.append(c.to_prec(precision) if c.prec != precision else c)
        elif isinstance(c, GaussianRational):
            balls.append(ball_from_qi(c, prec=precision))
        else:
            balls.append(ComplexBall(c, 0.0, precision))
    while balls and balls[-1].contains_zero() and balls[-1].is_exact() and balls[-1].midpoint() == 0:
        balls.pop()
    if not balls:
        raise ValueError("zero polynomial has no well-defined roots")
    if balls[-1].contains_zero():
        raise PrecisionExhausted(
            "leading coefficient is ambiguous at this precision; escalate precision"
        )
    n = len(balls) - 1
    if n == 0:
        return []
    centers = [b.midpoint() for b in balls]
    guesses = _initial_guesses(centers)
    tol = 1e-14 if precision <= 53 else float(mpmath.mpf(2) ** (8 - precision))
    if precision <= 53:
        approx, _ = aberth_iterate(centers, guesses, max_iter, tol)
        approx = [complex(z) for z in approx]
    else:
        with mpmath.workprec(precision):
            mp_centers = [b.center if b.prec == precision else mpmath.mpc(b.midpoint()) for b in balls]
        approx = _aberth_mpmath(mp_centers, guesses, max_iter, tol, precision)
    # Weierstrass-correction disks over the coefficient ball family
    lc_lower = balls[-1].abs_lower()
    radii: List[float] = []
    approx_c = [complex(z) for z in approx]
    for i, r in enumerate(approx):
        val = eval_poly_ball(balls, ComplexBall(r, 0.0, precision))
        num = val.abs_upper()
        den = lc_lower
        for j, s in enumerate(approx_c):
            if j == i:
                continue
            d = abs(approx_c[i] - s) * (1 - 4e-16) - 0.0
            if d <= 0:
                den = 0.0
                break
            den *= d
        if den <= 0 or not math.isfinite(den):
            radii.append(float("inf"))
        else:
            radii.append((n * num / den) * (1 + 1e-13))
    if any(not math.isfinite(r) for r in radii):
        # collapse to a single cluster over the root bound disk
        bound = 1.0 + max(b.abs_upper() for b in balls[:-1]) / lc_lower if n else 1.0
        return [CertifiedRoot(ComplexBall(0.0, bound, precision), n)]
    # merge overlapping disks into clusters
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if abs(approx_c[i] - approx_c[j]) <= (radii[i] + radii[j]) * (1 + 1e-12):
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[ra] = rb
    clusters: dict = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)
    out: List[CertifiedRoot] = []
    for members in clusters.values():
        if len(members) == 1:
            i = members[0]
            out.append(CertifiedRoot(ComplexBall(approx[i], radii[i], precision), 1))
        else:
            cx = sum(approx_c[i] for i in members) / len(members)
            rad = max(abs(approx_c[i] - cx) + radii[i] for i in members) * (1 + 1e-12)
            out.append(CertifiedRoot(ComplexBall(cx, rad, precision), len(members)))
    out.sort(key=lambda r: (r.midpoint().real, r.midpoint().imag))
    return out


_PREC_LADDER = (53, 113, 237, 480, 960)


def roots_of_qi_poly(f, precision: int = 53) -> List[CertifiedRoot]:
    """Certified roots of an exact Q(i) polynomial, with exact multiplicities
    recovered from square-free decomposition and exact values for linear
    factors."""
    f = uni_trim(list(f))
    if uni_is_zero(f):
        raise ValueError("zero polynomial")
    out: List[CertifiedRoot] = []
    v = 0
    while f[v].is_zero():
        v += 1
    if v:
        out.append(CertifiedRoot(ComplexBall(0.0, 0.0, precision), v, GaussianRational(0)))
        f = f[v:]
    if uni_deg(f) == 0:
        return out
    for part, mult in uni_squarefree_decomposition(f):
        if uni_deg(part) == 1:
            root = -part[0] / part[1]
            out.append(CertifiedRoot(ball_from_qi(root, prec=precision), mult, root))
        else:
            for enc in roots_certified(part, precision=precision):
                out.append(CertifiedRoot(enc.value, enc.multiplicity_hint * mult))
    return out


@dataclass
class CircleSplit:
    """Exact partition of the roots of a Q(i) polynomial by unit-circle
    position: (root, multiplicity) buckets, with certified enclosures and
    exact values where available."""

    inside: List[Tuple[CertifiedRoot, int]]
    on_circle: List[Tuple[CertifiedRoot, int]]
    outside: List[Tuple[CertifiedRoot, int]]

    def count_inside(self) -> int:
        return sum(m for _, m in self.inside)

    def count_on(self) -> int:
        return sum(m for _, m in self.on_circle)

    def count_outside(self) -> int:
        return sum(m for _, m in self.outside)


def _is_essentially_symmetric_uni(g) -> bool:
    refl = uni_reflect(g)
    return uni_monic(refl)[0] == uni_monic(g)[0]


def _pairing_decide(roots: List[CertifiedRoot]) -> Optional[List[str]]:
    """For the roots of an essentially symmetric square-free polynomial,
    decide each root's circle position by flip-pairing. Returns None when
    enclosures are too coarse (caller escalates precision)."""
    n = len(roots)
    if any(r.multiplicity_hint != 1 for r in roots):
        return None
    flips = []
    for r in roots:
        if not r.value.excludes_zero():
            return None
        flips.append(r.value.flip())
    verdicts: List[Optional[str]] = [None] * n
    for i, fb in enumerate(flips):
        partners = [j for j in range(n) if not roots[j].value.separation_lower(fb)]
        if len(partners) != 1:
            return None
        j = partners[0]
        if j == i:
            verdicts[i] = "on"
        else:
            # genuinely off-circle; decide side rigorously
            if roots[i].value.certainly_inside_unit_disk():
                verdicts[i] = "in"
            elif roots[i].value.certainly_outside_unit_disk():
                verdicts[i] = "out"
            else:
                return None
    return verdicts  # type: ignore[return-value]


def circle_split_exact(f, max_precision: int = 960) -> CircleSplit:
    """Partition the roots of the exact polynomial f by |root| <, ==, > 1.

    Terminating and rigorous: irreducible factors are either essentially
    symmetric (roots flip-closed; pairing decides each simple root) or not
    (then no root is unimodular and enclosures eventually decide each side).
    """
    f = uni_trim(list(f))
    if uni_is_zero(f):
        raise ValueError("zero polynomial")
    inside: List[Tuple[CertifiedRoot, int]] = []
    on_circle: List[Tuple[CertifiedRoot, int]] = []
    outside: List[Tuple[CertifiedRoot, int]] = []
    if uni_deg(f) == 0:
        return CircleSplit(inside, on_circle, outside)
    _, factors = factor_univariate_qi(f)
    for g, mult in factors:
        if uni_deg(g) == 1:
            root = -g[0] / g[1]
            enc = CertifiedRoot(ball_from_qi(root), 1, root)
            a2 = root.abs2()
            if a2 < 1:
                inside.append((enc, mult))
            elif a2 == 1:
                on_circle.append((enc, mult))
            else:
                outside.append((enc, mult))
            continue
        symmetric = _is_essentially_symmetric_uni(g)
        done = False
        for prec in _PREC_LADDER:
            if prec > max_precision:
                break
            try:
                roots = roots_certified(g, precision=prec)
            except PrecisionExhausted:
                continue
            if symmetric:
                verdicts = _pairing_decide(roots)
                if verdicts is None:
                    continue
                for r, v in zip(roots, verdicts):
                    if v == "on":
                        on_circle.append((r, mult))
                    elif v == "in":
                        inside.append((r, mult))
                    else:
                        outside.append((r, mult))
                done = True
                break
            else:
                # no unimodular roots exist; decide each side
                if all(
                    r.value.certainly_inside_unit_disk() or r.value.certainly_outside_unit_disk()
                    for r in roots
                ):
                    for r in roots:
                        if r.value.certainly_inside_unit_disk():
                            inside.append((r, mult))
                        else:
                            outside.append((r, mult))
                    done = True
                    break
        if not done:
            raise PrecisionExhausted(
                "could not separate roots from the unit circle at max precision"
            )
    return CircleSplit(inside, on_circle, outside)


def unimodular_roots_exact(f, max_precision: int = 960) -> List[Tuple[CertifiedRoot, int]]:
    """Certified unimodular roots of an exact polynomial, via the reflection
    screen gcd(f, reflect(f)) followed by the exact circle split."""
    f = uni_trim(list(f))
    if uni_deg(f) < 1:
        return []
    v = 0
    while f[v].is_zero():
        v += 1
    g = f[v:]
    screen = uni_gcd(g, uni_reflect(g))
    if uni_deg(screen) < 1:
        return []
    return circle_split_exact(screen, max_precision=max_precision).on_circle
