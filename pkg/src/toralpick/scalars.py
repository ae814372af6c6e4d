"""Exact arithmetic over the Gaussian rationals Q(i).

GaussianRational is the coefficient scalar for every exact computation in
the package: polynomial coefficients, interpolation nodes, unimodular
constants. Denominators are kept positive and in lowest terms by Fraction;
equality and the unit-circle test are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RatLike = Union[int, Fraction]


class GaussianRational:
    """Complex number a + b*i with rational a, b. Immutable, hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re: RatLike = 0, im: RatLike = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_any(value) -> "GaussianRational":
        """Coerce int, Fraction, or GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")

    # -- ring/field operations ----------------------------------------

    def __add__(self, other) -> "GaussianRational":
        other = GaussianRational.from_any(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other) -> "GaussianRational":
        return self + (-GaussianRational.from_any(other))

    def __rsub__(self, other) -> "GaussianRational":
        return GaussianRational.from_any(other) + (-self)

    def __mul__(self, other) -> "GaussianRational":
        other = GaussianRational.from_any(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other) -> "GaussianRational":
        return self * GaussianRational.from_any(other).inverse()

    def __rtruediv__(self, other) -> "GaussianRational":
        return GaussianRational.from_any(other) * self.inverse()

    def __pow__(self, k: int) -> "GaussianRational":
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure -----------------------------------------------------

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_unimodular(self) -> bool:
        """Exact test |z| == 1."""
        return self.abs2() == 1

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- formatting ------------------------------------------------------

    def __str__(self) -> str:
        return format_gaussian(self)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"


QI_ZERO = GaussianRational(0)
QI_ONE = GaussianRational(1)
QI_I = GaussianRational(0, 1)


def format_gaussian(c: GaussianRational) -> str:
    """Canonical text form: 'a/b', 'c/d*i', or 'a/b+c/d*i' (sign-folded)."""
    re, im = c.re, c.im
    if im == 0:
        return str(re)
    if im == 1:
        im_part = "i"
    elif im == -1:
        im_part = "-i"
    else:
        im_part = f"{im}*i"
    if re == 0:
        return im_part
    sign = "+" if im > 0 else "-"
    mag = im_part.lstrip("-")
    return f"{re}{sign}{mag}"


def parse_gaussian(text: str) -> GaussianRational:
    """Inverse of format_gaussian for serialized coefficients."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty coefficient")
    # Split into real and imaginary summands at a top-level +/- (not the
    # leading sign and not inside a fraction).
    idx = None
    for k in range(1, len(s)):
        if s[k] in "+-" and s[k - 1] not in "+-/*":
            idx = k
    if idx is None:
        parts = [s]
    else:
        parts = [s[:idx], s[idx:]]
    re = Fraction(0)
    im = Fraction(0)
    for part in parts:
        if part in ("i", "+i"):
            im += 1
        elif part == "-i":
            im -= 1
        elif part.endswith("*i"):
            im += Fraction(part[:-2])
        elif part.endswith("i"):
            raise ValueError(f"malformed coefficient {text!r}")
        else:
            re += Fraction(part)
    return GaussianRational(re, im)
