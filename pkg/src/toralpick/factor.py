"""Exact polynomial factorization, gcd, and resultants over Q(i).

Layers, bottom up:
  * dense univariate arithmetic over Q(i) (lists, low -> high degree);
  * dense arithmetic mod p and Berlekamp factorization over F_p;
  * Zassenhaus factorization over Z/Q (Berlekamp + monic multifactor Hensel
    lifting + subset recombination with a Mignotte bound);
  * univariate factorization over Q(i) by norm reduction to Q;
  * bivariate factorization: coordinate/content split, Yun square-free
    decomposition, monicization, specialization at a lucky point, power
    series Hensel lifting in (z1 - a), recombination by exact division.

Every factorization is verified by exact re-expansion before being
returned; an internal inconsistency raises FactorizationError rather than
returning a wrong answer.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import MultiPoly, NonDivisibilityError, grlex_key
from .scalars import GaussianRational, QI_ONE, QI_ZERO

UPoly = List[GaussianRational]  # dense univariate over Q(i), low -> high


class FactorizationError(ArithmeticError):
    """Internal factorization failure; never a silently wrong answer."""


# ---------------------------------------------------------------------------
# dense univariate arithmetic over Q(i)
# ---------------------------------------------------------------------------


def uni_trim(f: Sequence[GaussianRational]) -> UPoly:
    f = list(f)
    while f and f[-1].is_zero():
        f.pop()
    return f


def uni_deg(f: UPoly) -> int:
    return len(f) - 1


def uni_is_zero(f: UPoly) -> bool:
    return not f


def uni_add(f: UPoly, g: UPoly) -> UPoly:
    n = max(len(f), len(g))
    out = []
    for k in range(n):
        a = f[k] if k < len(f) else QI_ZERO
        b = g[k] if k < len(g) else QI_ZERO
        out.append(a + b)
    return uni_trim(out)


def uni_neg(f: UPoly) -> UPoly:
    return [-c for c in f]


def uni_sub(f: UPoly, g: UPoly) -> UPoly:
    return uni_add(f, uni_neg(g))


def uni_scale(f: UPoly, c: GaussianRational) -> UPoly:
    if c.is_zero():
        return []
    return [a * c for a in f]


def uni_mul(f: UPoly, g: UPoly) -> UPoly:
    if not f or not g:
        return []
    out = [QI_ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a.is_zero():
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return uni_trim(out)


def uni_divmod(f: UPoly, g: UPoly) -> Tuple[UPoly, UPoly]:
    if uni_is_zero(g):
        raise ZeroDivisionError("univariate division by zero")
    f = list(f)
    q = [QI_ZERO] * max(0, len(f) - len(g) + 1)
    inv_lc = g[-1].inverse()
    while len(f) >= len(g) and not uni_is_zero(uni_trim(f)):
        f = uni_trim(f)
        if len(f) < len(g):
            break
        shift = len(f) - len(g)
        c = f[-1] * inv_lc
        q[shift] = c
        for j, b in enumerate(g):
            f[shift + j] = f[shift + j] - c * b
        f.pop()
    return uni_trim(q), uni_trim(f)


def uni_mod(f: UPoly, g: UPoly) -> UPoly:
    return uni_divmod(f, g)[1]


def uni_monic(f: UPoly) -> Tuple[UPoly, GaussianRational]:
    """(monic multiple, leading coefficient) with f == lc * monic."""
    f = uni_trim(f)
    if not f:
        raise ValueError("zero polynomial")
    lc = f[-1]
    return uni_scale(f, lc.inverse()), lc


def uni_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd over the field Q(i)."""
    f, g = uni_trim(f), uni_trim(g)
    while g:
        f, g = g, uni_mod(f, g)
    if not f:
        return []
    return uni_monic(f)[0]


def uni_derivative(f: UPoly) -> UPoly:
    return uni_trim([f[k] * k for k in range(1, len(f))])


def uni_eval(f: UPoly, x: GaussianRational) -> GaussianRational:
    total = GaussianRational(0)
    for c in reversed(f):
        total = total * x + c
    return total


def uni_compose_linear(f: UPoly, a: GaussianRational, b: GaussianRational) -> UPoly:
    """f(a*x + b) by Horner on the linear substitution."""
    out: UPoly = []
    for c in reversed(f):
        out = uni_add(uni_mul(out, [b, a]), [c])
    return uni_trim(out)


def uni_taylor_shift(f: UPoly, b: GaussianRational) -> UPoly:
    """f(x + b)."""
    return uni_compose_linear(f, QI_ONE, b)


def uni_reflect(f: UPoly) -> UPoly:
    """x^deg * conj(f(1/conj(x))): reversed, conjugated coefficients."""
    f = uni_trim(f)
    if not f:
        raise ValueError("reflection of zero polynomial")
    return uni_trim([c.conj() for c in reversed(f)])


def uni_conj(f: UPoly) -> UPoly:
    return [c.conj() for c in f]


def uni_squarefree_decomposition(f: UPoly) -> List[Tuple[UPoly, int]]:
    """Yun's algorithm; returns monic pairwise-coprime parts with
    multiplicities, product(part^mult) == monic(f)."""
    f = uni_monic(f)[0]
    if uni_deg(f) == 0:
        return []
    fp = uni_derivative(f)
    g = uni_gcd(f, fp)
    out: List[Tuple[UPoly, int]] = []
    if uni_deg(g) == 0:
        return [(f, 1)]
    w = uni_divmod(f, g)[0]
    y = uni_divmod(fp, g)[0]
    z = uni_sub(y, uni_derivative(w))
    i = 1
    while not uni_is_zero(z):
        gi = uni_gcd(w, z)
        if uni_deg(gi) > 0:
            out.append((gi, i))
        w = uni_divmod(w, gi)[0]
        y = uni_divmod(z, gi)[0]
        z = uni_sub(y, uni_derivative(w))
        i += 1
    if uni_deg(w) > 0:
        out.append((w, i))
    return out


def uni_squarefree_part(f: UPoly) -> UPoly:
    g = uni_gcd(f, uni_derivative(f))
    return uni_divmod(uni_monic(f)[0], g)[0]


def unimodular_candidate_part(f: UPoly) -> UPoly:
    """gcd(f, reflect(f)), monic: contains every unimodular root of f
    (roots whose reflection partner is also a root; a superset screen)."""
    f = uni_trim(f)
    if not f:
        raise ValueError("zero polynomial")
    if uni_deg(f) == 0:
        return [QI_ONE]
    return uni_gcd(f, uni_reflect(f))


# ---------------------------------------------------------------------------
# dense arithmetic over F_p and Berlekamp
# ---------------------------------------------------------------------------

IPoly = List[int]


def _p_trim(f: IPoly, p: int) -> IPoly:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def _p_mul(f: IPoly, g: IPoly, p: int) -> IPoly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return _p_trim(out, p)


def _p_divmod(f: IPoly, g: IPoly, p: int) -> Tuple[IPoly, IPoly]:
    f = list(f)
    if not g:
        raise ZeroDivisionError
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g):
        while f and f[-1] % p == 0:
            f.pop()
        if len(f) < len(g):
            break
        shift = len(f) - len(g)
        c = (f[-1] * inv) % p
        q[shift] = c
        for j, b in enumerate(g):
            f[shift + j] = (f[shift + j] - c * b) % p
        f.pop()
    return _p_trim(q, p), _p_trim(f, p)


def _p_gcd(f: IPoly, g: IPoly, p: int) -> IPoly:
    f, g = _p_trim(f, p), _p_trim(g, p)
    while g:
        f, g = g, _p_divmod(f, g, p)[1]
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [(c * inv) % p for c in f]
    return f


def _p_pow_mod(base: IPoly, e: int, mod: IPoly, p: int) -> IPoly:
    result = [1]
    base = _p_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _p_divmod(_p_mul(result, base, p), mod, p)[1]
        base = _p_divmod(_p_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _p_derivative(f: IPoly, p: int) -> IPoly:
    return _p_trim([(f[k] * k) % p for k in range(1, len(f))], p)


def _nullspace_mod_p(rows: List[List[int]], p: int) -> List[List[int]]:
    """Basis of the right nullspace of the matrix over F_p."""
    n = len(rows)
    m = len(rows[0]) if rows else 0
    a = [list(r) for r in rows]
    pivots: Dict[int, int] = {}
    rank = 0
    for col in range(m):
        piv = None
        for r in range(rank, n):
            if a[r][col] % p:
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        a[rank] = [(x * inv) % p for x in a[rank]]
        for r in range(n):
            if r != rank and a[r][col] % p:
                factor = a[r][col]
                a[r] = [(x - factor * y) % p for x, y in zip(a[r], a[rank])]
        pivots[col] = rank
        rank += 1
    basis = []
    free_cols = [c for c in range(m) if c not in pivots]
    for fc in free_cols:
        v = [0] * m
        v[fc] = 1
        for col, r in pivots.items():
            v[col] = (-a[r][fc]) % p
        basis.append(v)
    return basis


def berlekamp_factor(f: IPoly, p: int) -> List[IPoly]:
    """Monic irreducible factors of a monic square-free f over F_p."""
    f = _p_trim(f, p)
    n = uni_deg(f)
    if n <= 1:
        return [f]
    # Q[i] = x^(i*p) mod f as coefficient rows
    xp = _p_pow_mod([0, 1], p, f, p)
    rows: List[List[int]] = []
    cur = [1]
    for i in range(n):
        row = list(cur) + [0] * (n - len(cur))
        rows.append(row[:n])
        cur = _p_divmod(_p_mul(cur, xp, p), f, p)[1]
    # right nullspace of (Q^T - I): vectors v with v(x)^p = v(x) mod f
    mat = [[(rows[j][i] - (1 if i == j else 0)) % p for j in range(n)] for i in range(n)]
    basis = _nullspace_mod_p(mat, p)
    r = len(basis)
    factors = [f]
    if r == 1:
        return factors
    for v in basis:
        vp = _p_trim(v, p)
        if uni_deg(vp) < 1:
            continue
        new_factors: List[IPoly] = []
        for g in factors:
            if uni_deg(g) <= 1:
                new_factors.append(g)
                continue
            pieces = []
            rest = g
            for c in range(p):
                if uni_deg(rest) < 1:
                    break
                h = _p_gcd(rest, _p_trim([(vp[0] - c) % p] + vp[1:], p), p)
                if 0 < uni_deg(h) <= uni_deg(rest):
                    pieces.append(h)
                    rest = _p_divmod(rest, h, p)[0]
            if uni_deg(rest) > 0:
                pieces.append(rest)
            new_factors.extend(pieces if pieces else [g])
        factors = new_factors
        if len(factors) == r:
            break
    return factors


# ---------------------------------------------------------------------------
# Zassenhaus over Z / Q (monic path)
# ---------------------------------------------------------------------------


def _hensel_lift_monic(F: List[int], factors_p: List[IPoly], p: int, K: int) -> List[List[int]]:
    """Lift a pairwise-coprime monic factorization of monic F from mod p to
    mod p^K by linear steps."""
    s = len(factors_p)
    # Bezout data mod p: beta_i = inverse of prod_{l != i} v_l modulo v_i
    betas = []
    for i in range(s):
        prod = [1]
        for l in range(s):
            if l != i:
                prod = _p_mul(prod, factors_p[l], p)
        prod = _p_divmod(prod, factors_p[i], p)[1]
        # invert modulo factors_p[i] via extended Euclid over F_p
        betas.append(_p_inverse_mod(prod, factors_p[i], p))
    lifted = [[c % p for c in v] for v in factors_p]
    pk = p
    while pk < p**K:
        modulus = pk * p
        prod = [1]
        for v in lifted:
            prod = _mul_int_mod(prod, v, modulus)
        err = [(a - b) % modulus for a, b in _zip_pad(F, prod)]
        err = [(c // pk) % p for c in err]
        err = _p_trim(err, p)
        if err:
            for i in range(s):
                delta = _p_divmod(_p_mul(err, betas[i], p), factors_p[i], p)[1]
                for j, d in enumerate(delta):
                    if j < len(lifted[i]):
                        lifted[i][j] = (lifted[i][j] + pk * d) % modulus
                    else:
                        raise FactorizationError("Hensel degree overflow")
        pk = modulus
    return lifted


def _p_inverse_mod(a: IPoly, m: IPoly, p: int) -> IPoly:
    """Inverse of a modulo m over F_p (extended Euclid)."""
    r0, r1 = _p_trim(m, p), _p_trim(a, p)
    s0, s1 = [], [1]
    while r1:
        q, r = _p_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _p_trim([(x - y) % p for x, y in _zip_pad(s0, _p_mul(q, s1, p))], p)
    if uni_deg(r0) != 0:
        raise FactorizationError("factors not coprime mod p")
    inv = pow(r0[0], p - 2, p)
    return _p_trim([(c * inv) % p for c in s0], p)


def _zip_pad(f, g):
    n = max(len(f), len(g))
    return zip(f + [0] * (n - len(f)), g + [0] * (n - len(g)))


def _mul_int_mod(f: List[int], g: List[int], m: int) -> List[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _int_divmod_monic(f: List[int], g: List[int]) -> Tuple[List[int], List[int]]:
    """Division by a monic integer polynomial."""
    f = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g):
        while f and f[-1] == 0:
            f.pop()
        if len(f) < len(g):
            break
        shift = len(f) - len(g)
        c = f[-1]
        q[shift] = c
        for j, b in enumerate(g):
            f[shift + j] -= c * b
        f.pop()
    while f and f[-1] == 0:
        f.pop()
    return q, f


_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67]


def factor_monic_integer(F: List[int]) -> List[List[int]]:
    """Irreducible monic integer factors of a monic square-free F in Z[x]."""
    n = uni_deg(F)
    if n <= 1:
        return [list(F)]
    best: Optional[List[IPoly]] = None
    best_p = None
    tried = 0
    for p in _PRIMES:
        fp = _p_trim(F, p)
        if uni_deg(fp) != n:
            continue
        if uni_deg(_p_gcd(fp, _p_derivative(fp, p), p)) != 0:
            continue
        facs = berlekamp_factor(fp, p)
        tried += 1
        if best is None or len(facs) < len(best):
            best, best_p = facs, p
        if len(facs) == 1 or tried >= 4:
            break
    if best is None:
        raise FactorizationError("no usable prime found")
    if len(best) == 1:
        return [list(F)]
    p = best_p
    # Mignotte-type coefficient bound for monic factors
    norm2 = math.isqrt(sum(c * c for c in F)) + 1
    B = (1 << (n + 1)) * norm2
    K = 1
    while p**K < 2 * B + 1:
        K += 1
    lifted = _hensel_lift_monic(F, best, p, K)
    pk = p**K

    def symmetric(c: int) -> int:
        c %= pk
        return c - pk if c > pk // 2 else c

    factors: List[List[int]] = []
    pool = list(range(len(lifted)))
    rest = list(F)
    size = 1
    while 2 * size <= len(pool):
        found = False
        for combo in itertools.combinations(pool, size):
            prod = [1]
            for i in combo:
                prod = _mul_int_mod(prod, lifted[i], pk)
            cand = [symmetric(c) for c in prod]
            while cand and cand[-1] == 0:
                cand.pop()
            if not cand or cand[-1] != 1:
                continue
            q, r = _int_divmod_monic(rest, cand)
            if not r:
                factors.append(cand)
                rest = q
                pool = [i for i in pool if i not in combo]
                found = True
                break
        if not found:
            size += 1
    if uni_deg(rest) > 0:
        factors.append(rest)
    # verification by re-expansion
    prod = [Fraction(1)]
    for g in factors:
        prod = _frac_mul(prod, [Fraction(c) for c in g])
    if [Fraction(c) for c in F] != prod:
        raise FactorizationError("integer recombination failed verification")
    return factors


def _frac_mul(f: List[Fraction], g: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    while out and out[-1] == 0:
        out.pop()
    return out


def factor_rational(f: List[Fraction]) -> List[List[Fraction]]:
    """Monic irreducible factors over Q of a square-free rational polynomial."""
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    n = len(f) - 1
    if n < 1:
        return []
    lc = f[-1]
    monic = [c / lc for c in f]
    den = 1
    for c in monic:
        den = den * c.denominator // math.gcd(den, c.denominator)
    # monicize over Z: F(x) = den^n * monic(x / den)
    F = [int(monic[k] * den ** (n - k)) for k in range(n + 1)]
    factors_z = factor_monic_integer(F)
    out: List[List[Fraction]] = []
    for g in factors_z:
        m = len(g) - 1
        h = [Fraction(g[k]) * Fraction(den) ** k / Fraction(den) ** m for k in range(m + 1)]
        out.append(h)
    return out


# ---------------------------------------------------------------------------
# univariate factorization over Q(i) (norm reduction)
# ---------------------------------------------------------------------------


def _trager_factor(f: UPoly) -> List[UPoly]:
    """Monic irreducible factors of a monic square-free f over Q(i)."""
    n = uni_deg(f)
    if n <= 1:
        return [f]
    i_unit = GaussianRational(0, 1)
    for s in range(0, 8 * n + 8):
        shift = GaussianRational(0, -s)
        g = uni_taylor_shift(f, shift)  # f(x - s*i)
        norm = uni_mul(g, uni_conj(g))
        if any(c.im != 0 for c in norm):
            raise FactorizationError("norm is not rational")
        nq = [c.re for c in norm]
        d = uni_gcd(
            [GaussianRational(c) for c in nq],
            uni_derivative([GaussianRational(c) for c in nq]),
        )
        if uni_deg(d) == 0:
            rational_factors = factor_rational(nq)
            out: List[UPoly] = []
            for h in rational_factors:
                hq = [GaussianRational(c) for c in h]
                w = uni_gcd(g, hq)
                if uni_deg(w) >= 1:
                    out.append(uni_taylor_shift(w, GaussianRational(0, s)))
            prod: UPoly = [QI_ONE]
            for w in out:
                prod = uni_mul(prod, w)
            if prod != uni_trim(f):
                raise FactorizationError("norm reduction failed verification")
            return out
    raise FactorizationError("no square-free norm shift found")


def factor_univariate_qi(f: UPoly) -> Tuple[GaussianRational, List[Tuple[UPoly, int]]]:
    """Factor over Q(i): returns (unit, [(monic irreducible, multiplicity)]),
    including x^k for roots at the origin."""
    f = uni_trim(f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    v = 0
    while f[v].is_zero():
        v += 1
    shifted = f[v:]
    monic, unit = uni_monic(shifted)
    factors: List[Tuple[UPoly, int]] = []
    if v:
        factors.append(([QI_ZERO, QI_ONE], v))
    if uni_deg(monic) >= 1:
        for part, mult in uni_squarefree_decomposition(monic):
            for irr in _trager_factor(part):
                factors.append((irr, mult))
    return unit, factors


# ---------------------------------------------------------------------------
# bivariate machinery
# ---------------------------------------------------------------------------


def _coeff_upolys(p: MultiPoly, main: int) -> List[UPoly]:
    """p as a dense polynomial in variable `main`, coefficients dense
    univariate in the other variable (bivariate only)."""
    other = 1 - main
    deg_main = p.degree_in(main)
    deg_other = p.degree_in(other) if p.depends_on(other) else 0
    out = [[QI_ZERO] * (deg_other + 1) for _ in range(deg_main + 1)]
    for e, c in p.terms.items():
        out[e[main]][e[other]] = c
    return [uni_trim(row) for row in out]


def _from_coeff_upolys(coeffs: List[UPoly], main: int, nvars: int = 2) -> MultiPoly:
    other = 1 - main
    terms = {}
    for j, row in enumerate(coeffs):
        for k, c in enumerate(row):
            if c.is_zero():
                continue
            e = [0, 0]
            e[main] = j
            e[other] = k
            terms[tuple(e)] = c
    return MultiPoly(nvars, terms)


def content_in(p: MultiPoly, main: int) -> Tuple[MultiPoly, MultiPoly]:
    """Split p = content * primitive wrt variable `main`: the content is the
    monic gcd (in the other variable) of the coefficient polynomials."""
    rows = _coeff_upolys(p, main)
    g: UPoly = []
    for row in rows:
        if uni_is_zero(row):
            continue
        g = uni_gcd(g, row) if g else uni_monic(row)[0]
        if uni_deg(g) == 0:
            break
    other = 1 - main
    if not g or uni_deg(g) == 0:
        return MultiPoly.constant(p.nvars, 1), p
    cont = MultiPoly.from_univariate(p.nvars, other, g)
    prim = p.exact_divide(cont)
    return cont, prim


def _pseudo_rem(f: List[UPoly], g: List[UPoly]) -> List[UPoly]:
    """Pseudo-remainder of dense main-variable polynomials with UPoly
    coefficients: lc(g)^(df-dg+1) * f = q*g + r."""
    f = [list(c) for c in f]
    dg = len(g) - 1
    lc = g[-1]
    while len(f) - 1 >= dg and any(not uni_is_zero(c) for c in f):
        while f and uni_is_zero(f[-1]):
            f.pop()
        if len(f) - 1 < dg:
            break
        shift = len(f) - 1 - dg
        top = f[-1]
        f = [uni_mul(c, lc) for c in f]
        for j in range(dg + 1):
            f[shift + j] = uni_sub(f[shift + j], uni_mul(top, g[j]))
        f.pop()
    while f and uni_is_zero(f[-1]):
        f.pop()
    return f


def _primitive_rows(rows: List[UPoly]) -> List[UPoly]:
    g: UPoly = []
    for row in rows:
        if uni_is_zero(row):
            continue
        g = uni_gcd(g, row) if g else uni_monic(row)[0]
        if uni_deg(g) == 0:
            g = [QI_ONE]
            break
    if not g:
        return rows
    return [uni_divmod(row, g)[0] if not uni_is_zero(row) else [] for row in rows]


def gcd_multipoly(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """A gcd in Q(i)[z1,z2] (nvars <= 2), normalized to graded-lex leading
    coefficient 1."""
    if p.nvars != q.nvars:
        raise ValueError("operands in different rings")
    if p.nvars > 2:
        raise ValueError("gcd supported for nvars <= 2 only")
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) undefined")
    if p.is_zero():
        return q.monic()[0]
    if q.is_zero():
        return p.monic()[0]
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(p.nvars, 1)
    if p.nvars == 1 or (not p.depends_on(1) and not q.depends_on(1)):
        # effectively univariate in z1
        var, cf = p.to_univariate()
        var2, cg = q.to_univariate()
        g = uni_gcd(cf, cg)
        return MultiPoly.from_univariate(p.nvars, var, g).monic()[0]
    if not p.depends_on(0) and not q.depends_on(0):
        var, cf = p.to_univariate()
        _, cg = q.to_univariate()
        g = uni_gcd(cf, cg)
        return MultiPoly.from_univariate(p.nvars, var, g).monic()[0]
    main = 1  # treat z2 as the main variable
    cont_p, prim_p = content_in(p, main)
    cont_q, prim_q = content_in(q, main)
    cont_gcd = gcd_multipoly(cont_p, cont_q)
    a = _coeff_upolys(prim_p, main)
    b = _coeff_upolys(prim_q, main)
    if len(a) < len(b):
        a, b = b, a
    while True:
        if all(uni_is_zero(c) for c in b) or not b:
            gcd_pp = _from_coeff_upolys(a, main)
            break
        if len(b) == 1:
            # main-degree 0: common factor can only sit in the content
            gcd_pp = MultiPoly.constant(p.nvars, 1)
            break
        r = _pseudo_rem(a, b)
        if not r or all(uni_is_zero(c) for c in r):
            gcd_pp = _from_coeff_upolys(b, main)
            break
        a, b = b, _primitive_rows(r)
    g = cont_gcd * _primitive_part_wrt(gcd_pp, main)
    return g.monic()[0]


def _primitive_part_wrt(p: MultiPoly, main: int) -> MultiPoly:
    if p.is_constant():
        return MultiPoly.constant(p.nvars, 1) if not p.is_zero() else p
    return content_in(p, main)[1]


# -- resultant ---------------------------------------------------------------


def _sylvester_det(f: UPoly, g: UPoly) -> GaussianRational:
    """Resultant of univariate polynomials via Gaussian elimination on the
    Sylvester matrix (exact field arithmetic)."""
    m, n = uni_deg(f), uni_deg(g)
    if m < 0 or n < 0:
        return QI_ZERO
    size = m + n
    if size == 0:
        return QI_ONE
    mat: List[List[GaussianRational]] = []
    frow = list(reversed(f))
    grow = list(reversed(g))
    for i in range(n):
        mat.append([QI_ZERO] * i + frow + [QI_ZERO] * (size - i - m - 1))
    for i in range(m):
        mat.append([QI_ZERO] * i + grow + [QI_ZERO] * (size - i - n - 1))
    det = QI_ONE
    for col in range(size):
        piv = None
        for r in range(col, size):
            if not mat[r][col].is_zero():
                piv = r
                break
        if piv is None:
            return QI_ZERO
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        pivot = mat[col][col]
        det = det * pivot
        inv = pivot.inverse()
        for r in range(col + 1, size):
            if mat[r][col].is_zero():
                continue
            factor = mat[r][col] * inv
            mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    return det


def resultant_multipoly(p: MultiPoly, q: MultiPoly, var: int) -> MultiPoly:
    """Res_var(p, q) for bivariate p, q, exact, by evaluation/interpolation.

    Both inputs must have positive degree in `var`; the result is a
    polynomial in the other variable (embedded with the same nvars).
    """
    if p.nvars != 2 or q.nvars != 2:
        raise ValueError("resultant requires nvars = 2")
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    if p.degree_in(var) < 1 or q.degree_in(var) < 1:
        raise ValueError("resultant requires positive degree in the chosen variable")
    other = 1 - var
    dp_v, dq_v = p.degree_in(var), q.degree_in(var)
    dp_o = p.degree_in(other) if p.depends_on(other) else 0
    dq_o = q.degree_in(other) if q.depends_on(other) else 0
    bound = dp_o * dq_v + dq_o * dp_v
    p_rows = _coeff_upolys(p, var)
    q_rows = _coeff_upolys(q, var)
    lc_p, lc_q = p_rows[-1], q_rows[-1]
    points: List[GaussianRational] = []
    values: List[GaussianRational] = []
    k = 0
    while len(points) < bound + 1:
        a = _sample_point(k)
        k += 1
        if not uni_eval(lc_p, a).is_zero() and not uni_eval(lc_q, a).is_zero():
            fa = uni_trim([uni_eval(c, a) for c in p_rows])
            ga = uni_trim([uni_eval(c, a) for c in q_rows])
            points.append(a)
            values.append(_sylvester_det(fa, ga))
    res_coeffs = _lagrange_interpolate(points, values)
    return MultiPoly.from_univariate(2, other, res_coeffs)


def _sample_point(k: int) -> GaussianRational:
    if k == 0:
        return GaussianRational(0)
    j = (k + 1) // 2
    return GaussianRational(j if k % 2 == 1 else -j)


def _lagrange_interpolate(points: List[GaussianRational], values: List[GaussianRational]) -> UPoly:
    total: UPoly = []
    for t, (a, v) in enumerate(zip(points, values)):
        if v.is_zero():
            continue
        basis: UPoly = [QI_ONE]
        denom = QI_ONE
        for s, b in enumerate(points):
            if s == t:
                continue
            basis = uni_mul(basis, [-b, QI_ONE])
            denom = denom * (a - b)
        total = uni_add(total, uni_scale(basis, v / denom))
    return total


# ---------------------------------------------------------------------------
# bivariate factorization
# ---------------------------------------------------------------------------

TPoly = List[UPoly]  # polynomial in y whose coefficients are truncated series in t


def _tp_mul(f: TPoly, g: TPoly, K: int) -> TPoly:
    out: TPoly = [[] for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if uni_is_zero(a):
            continue
        for j, b in enumerate(g):
            if uni_is_zero(b):
                continue
            prod = uni_mul(a, b)[:K]
            out[i + j] = uni_add(out[i + j], prod)
    while out and uni_is_zero(out[-1]):
        out.pop()
    return out


def _series_hensel(Pshift: TPoly, base: List[UPoly], K: int) -> List[TPoly]:
    """Lift the pairwise-coprime monic factorization base of Pshift|_{t=0}
    to a factorization of Pshift modulo t^K (all factors monic in y)."""
    s = len(base)
    betas: List[UPoly] = []
    for i in range(s):
        prod: UPoly = [QI_ONE]
        for l in range(s):
            if l != i:
                prod = uni_mul(prod, base[l])
        betas.append(_qi_inverse_mod(uni_mod(prod, base[i]), base[i]))
    lifted: List[TPoly] = [[[c] for c in v] for v in base]
    for j in range(1, K):
        prod: TPoly = [[QI_ONE]]
        for w in lifted:
            prod = _tp_mul(prod, w, j + 1)
        # error coefficient at t^j, as a polynomial in y
        err: UPoly = []
        deg = max(len(Pshift), len(prod))
        err_y: List[GaussianRational] = []
        for ydeg in range(deg):
            a = Pshift[ydeg] if ydeg < len(Pshift) else []
            b = prod[ydeg] if ydeg < len(prod) else []
            ca = a[j] if j < len(a) else QI_ZERO
            cb = b[j] if j < len(b) else QI_ZERO
            err_y.append(ca - cb)
        err = uni_trim(err_y)
        if uni_is_zero(err):
            continue
        for i in range(s):
            delta = uni_mod(uni_mul(err, betas[i]), base[i])
            for ydeg, d in enumerate(delta):
                if d.is_zero():
                    continue
                row = lifted[i][ydeg]
                while len(row) <= j:
                    row.append(QI_ZERO)
                row[j] = row[j] + d
    return lifted


def _qi_inverse_mod(a: UPoly, m: UPoly) -> UPoly:
    r0, r1 = uni_trim(m), uni_trim(a)
    s0: UPoly = []
    s1: UPoly = [QI_ONE]
    while r1:
        q, r = uni_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, uni_sub(s0, uni_mul(q, s1))
    if uni_deg(r0) != 0:
        raise FactorizationError("inverse does not exist (factors not coprime)")
    return uni_trim(uni_scale(s0, r0[0].inverse()))


_SPECIALIZATION_STREAM = [
    GaussianRational(0),
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(2),
    GaussianRational(-2),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
    GaussianRational(1, 1),
    GaussianRational(1, -1),
    GaussianRational(3),
    GaussianRational(-3),
    GaussianRational(2, 1),
    GaussianRational(4),
    GaussianRational(-4),
    GaussianRational(5),
    GaussianRational(Fraction(1, 2)),
    GaussianRational(Fraction(-1, 2)),
]


def _factor_squarefree_bivariate(P: MultiPoly) -> List[MultiPoly]:
    """Irreducible factors (each graded-lex monic) of a square-free P that is
    primitive in z2 with positive z2-degree and no coordinate divisors."""
    m = P.degree_in(1)
    if P.total_degree() == 1:
        return [P.monic()[0]]
    rows = _coeff_upolys(P, 1)  # index: z2-degree; entries: UPoly in z1
    L = rows[-1]
    # monicize: P1(z1, y) = L^(m-1) * P(z1, y/L) has coefficients
    # a_j * L^(m-1-j) for j < m and exactly 1 on y^m
    p1_rows: List[UPoly] = []
    for j, a in enumerate(rows[:-1]):
        power: UPoly = [QI_ONE]
        for _ in range(m - 1 - j):
            power = uni_mul(power, L)
        p1_rows.append(uni_mul(a, power) if not uni_is_zero(a) else [])
    p1_rows.append([QI_ONE])
    P1 = _from_coeff_upolys([list(r) for r in p1_rows], 1)
    D1 = P1.degree_in(0) if P1.depends_on(0) else 0
    K = D1 + 1
    # lucky specialization
    spec: Optional[GaussianRational] = None
    u: UPoly = []
    for a in _SPECIALIZATION_STREAM:
        u = uni_trim([uni_eval(row, a) for row in p1_rows])
        if uni_deg(u) != m:
            continue
        if uni_deg(uni_gcd(u, uni_derivative(u))) == 0:
            spec = a
            break
    if spec is None:
        raise FactorizationError("no lucky specialization point found")
    base = _trager_factor(uni_monic(u)[0])
    if len(base) == 1:
        return [P.monic()[0]]
    # shift: Pshift(t, y) = P1(spec + t, y)
    Pshift: TPoly = [uni_taylor_shift(row, spec) if not uni_is_zero(row) else [] for row in p1_rows]
    lifted = _series_hensel(Pshift, base, K)

    def candidate_to_factor(combo: Tuple[int, ...]) -> MultiPoly:
        prod: TPoly = [[QI_ONE]]
        for i in combo:
            prod = _tp_mul(prod, lifted[i], K)
        # shift back t -> z1 - spec, de-monicize y -> L*z2
        rows_f = [uni_taylor_shift(c, -spec) if not uni_is_zero(c) else [] for c in prod]
        terms = {}
        deg_y = len(rows_f) - 1
        for ydeg, c_t in enumerate(rows_f):
            # coefficient of y^ydeg times L^ydeg after y -> L*z2
            lcpow: UPoly = [QI_ONE]
            for _ in range(ydeg):
                lcpow = uni_mul(lcpow, L)
            c_final = uni_mul(c_t, lcpow) if not uni_is_zero(c_t) else []
            for z1deg, coef in enumerate(c_final):
                if coef.is_zero():
                    continue
                key = (z1deg, ydeg)
                terms[key] = terms.get(key, QI_ZERO) + coef
        G = MultiPoly(2, terms)
        if G.is_zero():
            return G
        return _primitive_part_wrt(G, 1)

    factors: List[MultiPoly] = []
    pool = list(range(len(lifted)))
    rest = P
    size = 1
    while 2 * size <= len(pool):
        found = False
        for combo in itertools.combinations(pool, size):
            G = candidate_to_factor(combo)
            if G.is_zero() or G.is_constant():
                continue
            try:
                quotient = rest.exact_divide(G)
            except NonDivisibilityError:
                continue
            factors.append(G.monic()[0])
            rest = quotient
            pool = [i for i in pool if i not in combo]
            found = True
            break
        if not found:
            size += 1
    if not rest.is_constant():
        factors.append(rest.monic()[0])
    return factors


def _bivariate_squarefree_decomposition(P: MultiPoly) -> List[Tuple[MultiPoly, int]]:
    """Yun's algorithm with respect to z2 for a z2-primitive bivariate P."""
    out: List[Tuple[MultiPoly, int]] = []
    f = P
    fp = f.derivative(1)
    g = gcd_multipoly(f, fp)
    if g.is_constant():
        return [(P.monic()[0], 1)]
    w = f.exact_divide(g)
    y = fp.exact_divide(g)
    z = y - w.derivative(1)
    i = 1
    while not z.is_zero():
        gi = gcd_multipoly(w, z)
        if not gi.is_constant():
            out.append((gi, i))
        w = w.exact_divide(gi)
        y = z.exact_divide(gi)
        z = y - w.derivative(1)
        i += 1
    if not w.is_constant():
        out.append((w.monic()[0], i))
    return out


def _factor_key(p: MultiPoly):
    return (
        p.total_degree(),
        len(p.terms),
        sorted((e, str(c)) for e, c in p.terms.items()),
    )


def factor_multipoly(p: MultiPoly) -> Tuple[GaussianRational, List[Tuple[MultiPoly, int]]]:
    """Complete irreducible factorization over Q(i) for nvars <= 2.

    Returns (unit, [(factor, multiplicity)]) with every factor graded-lex
    monic and irreducible, deterministically ordered, and the identity
    p == unit * prod(factor^mult) verified exactly before returning.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.nvars > 2:
        raise ValueError("factorization supported for nvars <= 2 only")
    factors: List[Tuple[MultiPoly, int]] = []
    work = p
    if p.is_constant():
        return p.constant_value(), []
    # coordinate monomial divisors
    for var in range(p.nvars):
        k = work.min_degree_in(var)
        if k > 0:
            mono = MultiPoly.variable(p.nvars, var)
            factors.append((mono, k))
            work = work.exact_divide(mono**k)
    if work.is_constant():
        unit = work.constant_value()
    elif p.nvars == 1 or not work.depends_on(1):
        var, coeffs = work.to_univariate()
        unit, uni_factors = factor_univariate_qi(coeffs)
        for f, mult in uni_factors:
            mp = MultiPoly.from_univariate(p.nvars, var, f)
            mp, extra = mp.monic()
            unit = unit * extra
            factors.append((mp, mult))
    elif not work.depends_on(0):
        var, coeffs = work.to_univariate()
        unit, uni_factors = factor_univariate_qi(coeffs)
        for f, mult in uni_factors:
            mp = MultiPoly.from_univariate(p.nvars, var, f)
            mp, extra = mp.monic()
            unit = unit * extra
            factors.append((mp, mult))
    else:
        cont, prim = content_in(work, 1)
        unit = QI_ONE
        if not cont.is_constant():
            _, c_coeffs = cont.to_univariate()
            u2, cont_factors = factor_univariate_qi(c_coeffs)
            unit = unit * u2
            for f, mult in cont_factors:
                mp = MultiPoly.from_univariate(p.nvars, 0, f)
                mp, extra = mp.monic()
                unit = unit * extra
                factors.append((mp, mult))
        else:
            unit = unit * cont.constant_value()
        for part, mult in _bivariate_squarefree_decomposition(prim):
            for irr in _factor_squarefree_bivariate(part):
                factors.append((irr, mult))
    # order deterministically, merge duplicates
    merged: Dict = {}
    order: List[MultiPoly] = []
    for f, mult in factors:
        key = (f.nvars, frozenset(f.terms.items()))
        if key in merged:
            merged[key] = (merged[key][0], merged[key][1] + mult)
        else:
            merged[key] = (f, mult)
            order.append(f)
    result = sorted(merged.values(), key=lambda t: _factor_key(t[0]))
    # recover the exact unit and verify round trip
    prod = MultiPoly.constant(p.nvars, 1)
    for f, mult in result:
        prod = prod * f**mult
    try:
        unit_poly = p.exact_divide(prod)
    except NonDivisibilityError as exc:
        raise FactorizationError("factorization failed round-trip verification") from exc
    if not unit_poly.is_constant():
        raise FactorizationError("factorization failed round-trip verification")
    unit = unit_poly.constant_value()
    if (prod.scale(unit)) != p:
        raise FactorizationError("factorization failed round-trip verification")
    return unit, result


def square_free_part(p: MultiPoly) -> MultiPoly:
    """Radical of p (product of distinct irreducible factors), monic."""
    _, factors = factor_multipoly(p)
    out = MultiPoly.constant(p.nvars, 1)
    for f, _ in factors:
        out = out * f
    return out
