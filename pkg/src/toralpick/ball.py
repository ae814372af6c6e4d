"""Certified complex ball arithmetic.

A ComplexBall is a center plus an error radius that is guaranteed to
contain the exact value being tracked. Rounding of every operation is
absorbed into the radius with conservative (outward) bounds, so the
containment invariant survives arbitrary compositions. Centers are double
precision by default; callers may escalate to any mpmath precision (the
113-bit quad setting is the usual second stop).

This is deliberately not a general interval library: only the operations
the certification paths need are provided.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Union

import mpmath

from .scalars import GaussianRational

_EPS = 2.0**-52
_TINY = 5e-324


def _up(x: float) -> float:
    """Round a nonnegative radius bound upward (conservatively)."""
    return x * (1.0 + 4.0 * _EPS) + _TINY


class ComplexBall:
    """center +/- radius disk certified to contain an exact complex value."""

    __slots__ = ("center", "radius", "prec")

    def __init__(self, center, radius: float = 0.0, prec: int = 53):
        if prec <= 53:
            self.center = complex(center)
            self.prec = 53
        else:
            with mpmath.workprec(prec):
                self.center = mpmath.mpc(center)
            self.prec = prec
        radius = float(radius)
        if not math.isfinite(radius) or radius < 0:
            raise ValueError("radius must be finite and nonnegative")
        self.radius = radius

    # -- helpers -----------------------------------------------------------

    def _unit(self) -> float:
        """Relative rounding unit of the center representation."""
        return _EPS if self.prec == 53 else 2.0 ** (3 - self.prec)

    def _mag(self) -> float:
        c = self.center
        if self.prec == 53:
            return abs(c)
        return float(mpmath.fabs(c))

    def midpoint(self) -> complex:
        return complex(self.center)

    def is_exact(self) -> bool:
        return self.radius == 0.0

    def __repr__(self) -> str:
        return f"ComplexBall({self.midpoint()!r}, {self.radius:.3e})"

    def _coerce(self, other) -> "ComplexBall":
        if isinstance(other, ComplexBall):
            return other
        if isinstance(other, GaussianRational):
            return ball_from_qi(other, prec=self.prec)
        return ComplexBall(other, 0.0, prec=self.prec)

    def _promote(self, other: "ComplexBall"):
        prec = max(self.prec, other.prec)
        a = self if self.prec == prec else ComplexBall(self.center, self.radius, prec)
        b = other if other.prec == prec else ComplexBall(other.center, other.radius, prec)
        return a, b, prec

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "ComplexBall":
        a, b, prec = self._promote(self._coerce(other))
        if prec == 53:
            c = a.center + b.center
            rnd = abs(c) * _EPS * 2.0
        else:
            with mpmath.workprec(prec):
                c = a.center + b.center
                rnd = float(mpmath.fabs(c)) * a._unit() * 2.0
        return ComplexBall(c, _up(a.radius + b.radius + rnd), prec)

    __radd__ = __add__

    def __neg__(self) -> "ComplexBall":
        return ComplexBall(-self.center, self.radius, self.prec)

    def __sub__(self, other) -> "ComplexBall":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ComplexBall":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "ComplexBall":
        a, b, prec = self._promote(self._coerce(other))
        ma, mb = a._mag(), b._mag()
        if prec == 53:
            c = a.center * b.center
        else:
            with mpmath.workprec(prec):
                c = a.center * b.center
        rnd = 8.0 * a._unit() * ma * mb
        rad = _up(ma * b.radius + mb * a.radius + a.radius * b.radius + rnd)
        return ComplexBall(c, rad, prec)

    __rmul__ = __mul__

    def reciprocal(self) -> "ComplexBall":
        m = self._mag()
        if m <= self.radius:
            raise ZeroDivisionError("ball contains zero; cannot invert")
        if self.prec == 53:
            c = 1.0 / self.center
        else:
            with mpmath.workprec(self.prec):
                c = 1 / self.center
        # |1/w - 1/c| <= r / (|c| (|c| - r)) for |w - c| <= r
        rad = _up(self.radius / (m * (m - self.radius)) + 8.0 * self._unit() / m)
        return ComplexBall(c, rad, self.prec)

    def __truediv__(self, other) -> "ComplexBall":
        return self * self._coerce(other).reciprocal()

    def conj(self) -> "ComplexBall":
        if self.prec == 53:
            c = self.center.conjugate()
        else:
            c = mpmath.conj(self.center)
        return ComplexBall(c, self.radius, self.prec)

    def power(self, k: int) -> "ComplexBall":
        if k < 0:
            raise ValueError("negative power")
        result = ComplexBall(1.0, 0.0, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def flip(self) -> "ComplexBall":
        """The reflection w -> 1/conj(w); requires the ball to exclude zero."""
        return self.conj().reciprocal()

    # -- certified predicates --------------------------------------------------

    def abs_upper(self) -> float:
        return _up(self._mag() + self.radius)

    def abs_lower(self) -> float:
        v = self._mag() * (1.0 - 4.0 * _EPS) - self.radius
        return max(0.0, v)

    def contains_zero(self) -> bool:
        return self.abs_lower() == 0.0

    def excludes_zero(self) -> bool:
        return self.abs_lower() > 0.0

    def separation_lower(self, other: "ComplexBall") -> float:
        """Certified lower bound on the distance between the exact values."""
        a, b, prec = self._promote(other)
        if prec == 53:
            d = abs(a.center - b.center)
        else:
            with mpmath.workprec(prec):
                d = float(mpmath.fabs(a.center - b.center))
        v = d * (1.0 - 4.0 * _EPS) - a.radius - b.radius
        return max(0.0, v)

    def overlaps(self, other: "ComplexBall") -> bool:
        return self.separation_lower(other) == 0.0

    def mod_one_distance(self) -> float:
        """Certified upper bound on | |w| - 1 | over the ball."""
        return _up(abs(self._mag() - 1.0) + self.radius)

    def certainly_inside_unit_disk(self) -> bool:
        return self.abs_upper() < 1.0

    def certainly_outside_unit_disk(self) -> bool:
        return self.abs_lower() > 1.0

    def to_prec(self, prec: int) -> "ComplexBall":
        return ComplexBall(self.center, self.radius, prec)


# -- conversions ----------------------------------------------------------------


def _fraction_to_float_up(err: Fraction) -> float:
    """Upper float bound of a nonnegative fraction."""
    if err == 0:
        return 0.0
    return _up(err.numerator / err.denominator)


def ball_from_qi(c: GaussianRational, prec: int = 53) -> ComplexBall:
    """Enclose an exact Gaussian rational; radius 0 when exactly representable."""
    if prec == 53:
        fr = float(c.re)
        fi = float(c.im)
        err = abs(c.re - Fraction(fr)) + abs(c.im - Fraction(fi))
        return ComplexBall(complex(fr, fi), _fraction_to_float_up(err), 53)
    with mpmath.workprec(prec):
        fr = mpmath.mpf(c.re.numerator) / c.re.denominator
        fi = mpmath.mpf(c.im.numerator) / c.im.denominator
        center = mpmath.mpc(fr, fi)
        err = abs(c.re - _mpf_to_fraction(fr)) + abs(c.im - _mpf_to_fraction(fi))
    return ComplexBall(center, _fraction_to_float_up(err), prec)


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    value = Fraction(-man if sign else man)
    if exp >= 0:
        return value * (1 << exp)
    return value / (1 << -exp)


def ball_to_qi_exact(b: ComplexBall) -> GaussianRational:
    """Exact Gaussian rational of a zero-radius ball (centers are dyadic)."""
    if b.radius != 0.0:
        raise ValueError("ball is not exact")
    if b.prec == 53:
        return GaussianRational(Fraction(b.center.real), Fraction(b.center.imag))
    return GaussianRational(_mpf_to_fraction(b.center.real), _mpf_to_fraction(b.center.imag))


def torus_point(theta: float, prec: int = 53) -> ComplexBall:
    """Certified enclosure of e^(i*theta) for the exact real number theta."""
    if prec == 53:
        c = complex(math.cos(theta), math.sin(theta))
        # libm cos/sin are within a few ulp; 8 ulp is a safe envelope
        return ComplexBall(c, 8.0 * _EPS, 53)
    with mpmath.workprec(prec + 10):
        c = mpmath.mpc(mpmath.cos(theta), mpmath.sin(theta))
    return ComplexBall(c, 2.0 ** (4 - prec), prec)


def eval_poly_ball(coeffs, point: ComplexBall) -> ComplexBall:
    """Horner evaluation of a univariate polynomial with ball coefficients."""
    total = ComplexBall(0.0, 0.0, point.prec)
    for c in reversed(list(coeffs)):
        if not isinstance(c, ComplexBall):
            c = ball_from_qi(c, prec=point.prec) if isinstance(c, GaussianRational) else ComplexBall(c, 0.0, point.prec)
        total = total * point + c
    return total
