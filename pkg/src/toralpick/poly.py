"""Multivariate polynomials over Q(i): ring operations, reflection, symmetry.

Terms are stored sparsely as a map from exponent tuples to nonzero
GaussianRational coefficients; the zero polynomial is the empty map. The
term order used for normalization and printing is graded lexicographic with
z1 > z2 > ... > zN.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalars import GaussianRational, QI_ONE, QI_ZERO

Exponent = Tuple[int, ...]


class NonDivisibilityError(ArithmeticError):
    """Exact division failed; carries the offending remainder as a witness."""

    def __init__(self, message: str, remainder: "MultiPoly"):
        super().__init__(message)
        self.remainder = remainder


def grlex_key(e: Exponent) -> Tuple[int, Exponent]:
    """Graded lex sort key with z1 > z2 > ...; max(key) is the leading term."""
    return (sum(e), e)


class MultiPoly:
    """Sparse polynomial in Q(i)[z1,...,zn]."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exponent, GaussianRational]] = None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        self.nvars = nvars
        clean: Dict[Exponent, GaussianRational] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for nvars={nvars}")
                if any(k < 0 for k in e):
                    raise ValueError(f"negative exponent in {e}")
                c = GaussianRational.from_any(c)
                if not c.is_zero():
                    clean[e] = c
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars, {})

    @staticmethod
    def constant(nvars: int, c) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: GaussianRational.from_any(c)})

    @staticmethod
    def variable(nvars: int, index: int) -> "MultiPoly":
        """The polynomial z_{index+1}."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range")
        e = [0] * nvars
        e[index] = 1
        return MultiPoly(nvars, {tuple(e): QI_ONE})

    # -- basic predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get((0,) * self.nvars, QI_ZERO)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- ring operations ---------------------------------------------------

    def _check_compat(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("operands live in different polynomial rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compat(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, QI_ZERO) + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        out = MultiPoly.zero(self.nvars)
        out.terms = terms
        return out

    def __neg__(self) -> "MultiPoly":
        out = MultiPoly.zero(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(GaussianRational.from_any(other))
        self._check_compat(other)
        terms: Dict[Exponent, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, QI_ZERO) + c1 * c2
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = MultiPoly.zero(self.nvars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def scale(self, c: GaussianRational) -> "MultiPoly":
        c = GaussianRational.from_any(c)
        if c.is_zero():
            return MultiPoly.zero(self.nvars)
        out = MultiPoly.zero(self.nvars)
        out.terms = {e: k * c for e, k in self.terms.items()}
        return out

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift_exponent(self, shift: Sequence[int]) -> "MultiPoly":
        """Multiply by the monomial z^shift."""
        if len(shift) != self.nvars or any(s < 0 for s in shift):
            raise ValueError("bad monomial shift")
        out = MultiPoly.zero(self.nvars)
        out.terms = {
            tuple(a + b for a, b in zip(e, shift)): c for e, c in self.terms.items()
        }
        return out

    def derivative(self, var: int) -> "MultiPoly":
        """Partial derivative in variable index var (0-based)."""
        if not 0 <= var < self.nvars:
            raise ValueError("variable index out of range")
        terms: Dict[Exponent, GaussianRational] = {}
        for e, c in self.terms.items():
            k = e[var]
            if k == 0:
                continue
            e2 = list(e)
            e2[var] = k - 1
            terms[tuple(e2)] = c * k
        out = MultiPoly.zero(self.nvars)
        out.terms = terms
        return out

    # -- term-order structure ---------------------------------------------

    def leading_exponent(self) -> Exponent:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self) -> GaussianRational:
        return self.terms[self.leading_exponent()]

    def monic(self) -> Tuple["MultiPoly", GaussianRational]:
        """Normalize so the graded-lex leading coefficient is 1.

        Returns (normalized, unit) with self == normalized * unit.
        """
        lc = self.leading_coefficient()
        return self.scale(lc.inverse()), lc

    def sorted_terms(self) -> List[Tuple[Exponent, GaussianRational]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def total_degree(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial")
        return max(sum(e) for e in self.terms)

    def multidegree(self) -> Exponent:
        """Componentwise maximal exponent vector d = (d1,...,dn)."""
        if self.is_zero():
            raise ValueError("multidegree of the zero polynomial is undefined")
        return tuple(
            max(e[k] for e in self.terms) for k in range(self.nvars)
        )

    def degree_in(self, var: int) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial")
        return max(e[var] for e in self.terms)

    def min_degree_in(self, var: int) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial")
        return min(e[var] for e in self.terms)

    def depends_on(self, var: int) -> bool:
        return any(e[var] > 0 for e in self.terms)

    # -- exact division -----------------------------------------------------

    def exact_divide(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact quotient self / divisor; raises NonDivisibilityError otherwise.

        Single-divisor reduction in graded lex: when divisor | self the
        leading term of the running remainder is always reducible, so the
        loop terminates with remainder zero exactly in that case.
        """
        self._check_compat(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        quotient: Dict[Exponent, GaussianRational] = {}
        rem = self
        d_exp = divisor.leading_exponent()
        d_coef = divisor.terms[d_exp]
        while not rem.is_zero():
            r_exp = rem.leading_exponent()
            diff = tuple(a - b for a, b in zip(r_exp, d_exp))
            if any(k < 0 for k in diff):
                raise NonDivisibilityError("not divisible", rem)
            c = rem.terms[r_exp] / d_coef
            quotient[diff] = c
            rem = rem - divisor.shift_exponent(diff).scale(c)
        return MultiPoly(self.nvars, quotient)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_divide(self)
            return True
        except NonDivisibilityError:
            return False

    # -- reflection and symmetry --------------------------------------------

    def reflect(self) -> "MultiPoly":
        """Reflection through the unit torus: coefficient c at exponent e
        maps to conj(c) at d - e, with d the multidegree."""
        if self.is_zero():
            raise ValueError("reflection of the zero polynomial is undefined")
        d = self.multidegree()
        out = MultiPoly.zero(self.nvars)
        out.terms = {
            tuple(dk - ek for dk, ek in zip(d, e)): c.conj()
            for e, c in self.terms.items()
        }
        return out

    def conjugate_coefficients(self) -> "MultiPoly":
        out = MultiPoly.zero(self.nvars)
        out.terms = {e: c.conj() for e, c in self.terms.items()}
        return out

    def essential_symmetry(self) -> "SymmetryResult":
        """Decide whether reflect(self) == tau * self for unimodular tau.

        tau is the ratio of the leading coefficients and is then verified on
        every term; |tau| = 1 is checked exactly.
        """
        if self.is_zero():
            raise ValueError("symmetry of the zero polynomial is undefined")
        refl = self.reflect()
        if set(refl.terms) != set(self.terms):
            witness = next(iter(set(refl.terms) ^ set(self.terms)))
            return SymmetryResult(False, None, witness)
        lead = self.leading_exponent()
        tau = refl.terms[lead] / self.terms[lead]
        for e, c in self.terms.items():
            if refl.terms[e] != tau * c:
                return SymmetryResult(False, None, e)
        if not tau.is_unimodular():
            # Cannot occur when the coefficientwise identity holds, but the
            # unimodularity contract is asserted rather than assumed.
            return SymmetryResult(False, None, lead)
        return SymmetryResult(True, tau, None)

    # -- evaluation ----------------------------------------------------------

    def eval_exact(self, point: Sequence[GaussianRational]) -> GaussianRational:
        """Evaluate at a Gaussian-rational point, exactly."""
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        point = [GaussianRational.from_any(c) for c in point]
        total = GaussianRational(0)
        for e, c in self.terms.items():
            term = c
            for coord, k in zip(point, e):
                if k:
                    term = term * coord**k
            total = total + term
        return total

    def eval_ball(self, point) -> "object":
        """Evaluate at a point of ComplexBall coordinates; returns a ball
        containing the exact value. Zero-radius inputs (dyadic centers) take
        the exact path and produce zero-radius results when representable."""
        from .ball import ComplexBall, ball_from_qi, ball_to_qi_exact

        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        prec = max(p.prec for p in point) if point else 53
        if all(p.is_exact() for p in point):
            exact = self.eval_exact([ball_to_qi_exact(p) for p in point])
            return ball_from_qi(exact, prec=prec)
        total = ComplexBall(0.0, 0.0, prec)
        for e, c in self.terms.items():
            term = ball_from_qi(c, prec=prec)
            for coord, k in zip(point, e):
                if k:
                    term = term * coord.power(k)
            total = total + term
        return total

    # -- univariate/bivariate views -------------------------------------------

    def coeffs_in(self, var: int) -> List["MultiPoly"]:
        """Coefficient list [a_0, ..., a_k] of self as a polynomial in z_{var+1},
        each a_j a polynomial in the remaining variables (same nvars)."""
        k = self.degree_in(var) if not self.is_zero() else 0
        coeffs = [MultiPoly.zero(self.nvars) for _ in range(k + 1)]
        for e, c in self.terms.items():
            e2 = list(e)
            j = e2[var]
            e2[var] = 0
            coeffs[j].terms[tuple(e2)] = c
        return coeffs

    def to_univariate(self) -> Tuple[int, List[GaussianRational]]:
        """For a polynomial depending on at most one variable, return
        (var_index, dense coefficient list low->high)."""
        used = [k for k in range(self.nvars) if self.depends_on(k)]
        if len(used) > 1:
            raise ValueError("polynomial is not univariate")
        var = used[0] if used else 0
        deg = self.degree_in(var) if not self.is_zero() else 0
        coeffs = [QI_ZERO] * (deg + 1)
        for e, c in self.terms.items():
            coeffs[e[var]] = c
        return var, coeffs

    @staticmethod
    def from_univariate(nvars: int, var: int, coeffs: Sequence[GaussianRational]) -> "MultiPoly":
        terms: Dict[Exponent, GaussianRational] = {}
        for j, c in enumerate(coeffs):
            c = GaussianRational.from_any(c)
            if c.is_zero():
                continue
            e = [0] * nvars
            e[var] = j
            terms[tuple(e)] = c
        return MultiPoly(nvars, terms)

    def substitute(self, var: int, value: GaussianRational) -> "MultiPoly":
        """Exact substitution z_{var+1} := value."""
        value = GaussianRational.from_any(value)
        out = MultiPoly.zero(self.nvars)
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[var]
            e2[var] = 0
            coef = c * value**k if k else c
            if coef.is_zero():
                continue
            key = tuple(e2)
            s = out.terms.get(key, QI_ZERO) + coef
            if s.is_zero():
                out.terms.pop(key, None)
            else:
                out.terms[key] = s
        return out

    def swap_vars(self) -> "MultiPoly":
        """Exchange z1 and z2 (bivariate only)."""
        if self.nvars != 2:
            raise ValueError("swap_vars requires nvars = 2")
        out = MultiPoly.zero(2)
        out.terms = {(e[1], e[0]): c for e, c in self.terms.items()}
        return out

    # -- formatting --------------------------------------------------------

    def __str__(self) -> str:
        from .parsing import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {{{', '.join(f'{e}: {c}' for e, c in self.sorted_terms())}}})"


@dataclass(frozen=True)
class SymmetryResult:
    """Outcome of the essential-symmetry test.

    When symmetric, tau is the exact unimodular constant with
    reflect(p) == tau * p; otherwise mismatch_exponent witnesses a term
    where no constant ratio can hold.
    """

    symmetric: bool
    tau: Optional[GaussianRational]
    mismatch_exponent: Optional[Exponent]
