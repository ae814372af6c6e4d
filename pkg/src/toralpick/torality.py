"""Toral/atoral classification of bivariate polynomials with replayable
certificates.

A variety is toral when the two-torus is determining for it. The decision
procedure for an irreducible bivariate p:

  1. If p is not essentially symmetric (reflect(p) != tau*p for every
     unimodular tau), p is atoral; the torus trace is finite, contained in
     the common zeros of p and its reflection.
  2. If p is univariate in one variable, verdict follows from the exact
     unit-circle position of its roots.
  3. Otherwise sample torus fibers, one arc of the breakpoint decomposition
     at a time. A certified unimodular fiber root with nonvanishing
     z2-derivative is a regular torus point and the trace is 1-dimensional:
     toral. If every arc shows zero unimodular roots, the trace is finite
     (gradient must vanish on it) and its certified superset is returned.

Verdicts are never guessed: precision exhaustion raises instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .ball import ComplexBall, ball_from_qi, torus_point
from .factor import (
    factor_multipoly,
    gcd_multipoly,
    resultant_multipoly,
    uni_deg,
    uni_gcd,
    uni_trim,
)
from .fibers import (
    ArcDecomposition,
    FiberReport,
    fiber_coefficients,
    fiber_unimodular_roots,
    torus_breakpoints,
)
from .poly import MultiPoly
from .rootfind import (
    CertifiedRoot,
    PrecisionExhausted,
    circle_split_exact,
    roots_certified,
    unimodular_roots_exact,
)
from .scalars import GaussianRational

TWO_PI = 2.0 * math.pi

TORAL = "Toral"
ATORAL = "Atoral"
MIXED = "Mixed"

ON_CURVE_TOL = 1e-10


class MixedComponentsError(ArithmeticError):
    """A Q(i)-irreducible univariate factor has roots both on and off the
    unit circle, so its C-components split both ways and no binary verdict
    exists for the factor as a whole."""


@dataclass
class CertifiedPoint:
    """A point of C^2 with certified coordinate enclosures; exact Gaussian
    rational coordinates recorded when available."""

    z1: ComplexBall
    z2: ComplexBall
    z1_exact: Optional[GaussianRational] = None
    z2_exact: Optional[GaussianRational] = None
    on_torus_certified: bool = False

    def midpoints(self) -> Tuple[complex, complex]:
        return self.z1.midpoint(), self.z2.midpoint()

    def overlaps(self, other: "CertifiedPoint") -> bool:
        return self.z1.overlaps(other.z1) and self.z2.overlaps(other.z2)

    @staticmethod
    def from_exact(a: GaussianRational, b: GaussianRational) -> "CertifiedPoint":
        cert = a.is_unimodular() and b.is_unimodular()
        return CertifiedPoint(ball_from_qi(a), ball_from_qi(b), a, b, cert)


@dataclass
class ToralityCertificate:
    """Verdict plus independently replayable evidence."""

    verdict: str
    evidence_kind: str  # NotSymmetric | RegularTorusPoint | FiniteTrace |
    #                     BidiskDisjoint | UnivariateUnimodular
    data: Dict = field(default_factory=dict)


@dataclass
class SetClassification:
    factors: List[Tuple[MultiPoly, int, ToralityCertificate]]
    set_verdict: str
    isolated_points: List[Tuple[GaussianRational, GaussianRational]] = field(default_factory=list)


@dataclass
class DisjointnessReport:
    status: str  # "True" | "False" | "Unknown"
    witness: Optional[CertifiedPoint] = None
    witness_domain: Optional[str] = None  # "bidisk" | "exterior"
    certificate: Dict = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)


@dataclass
class TorusIntersectionReport:
    kind: str  # "Finite" | "OneDimensional"
    points: List[CertifiedPoint] = field(default_factory=list)
    samples: Dict[str, List[CertifiedPoint]] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# exact sample grid (Gaussian-rational points of the open disk / circle)
# ---------------------------------------------------------------------------


def _unimodular_directions() -> List[GaussianRational]:
    f = Fraction
    return [
        GaussianRational(1),
        GaussianRational(-1),
        GaussianRational(0, 1),
        GaussianRational(0, -1),
        GaussianRational(f(3, 5), f(4, 5)),
        GaussianRational(f(3, 5), f(-4, 5)),
        GaussianRational(f(-3, 5), f(4, 5)),
        GaussianRational(f(-4, 5), f(3, 5)),
        GaussianRational(f(5, 13), f(12, 13)),
        GaussianRational(f(-5, 13), f(-12, 13)),
    ]


def disk_sample_grid(include_zero: bool = True) -> List[GaussianRational]:
    radii = [Fraction(1, 2), Fraction(1, 4), Fraction(3, 4), Fraction(7, 8), Fraction(1, 8)]
    out: List[GaussianRational] = []
    if include_zero:
        out.append(GaussianRational(0))
    for r in radii:
        for d in _unimodular_directions():
            out.append(d * GaussianRational(r))
    return out


# ---------------------------------------------------------------------------
# fiber helpers on exact points
# ---------------------------------------------------------------------------


def _exact_fiber(p: MultiPoly, var: int, a: GaussianRational) -> List[GaussianRational]:
    """Dense coefficients of p with z_{var+1} := a, as a univariate in the
    other variable."""
    spec = p.substitute(var, a)
    if spec.is_zero():
        return []
    _, coeffs = spec.to_univariate()
    return coeffs


def _trace_candidates_nonsymmetric(p: MultiPoly, max_precision: int = 480) -> List[CertifiedPoint]:
    """Certified superset of Z_p ∩ T^2 for p coprime to its reflection:
    common unimodular zeros of p and reflect(p)."""
    refl = p.reflect()
    if not p.depends_on(1) or not refl.depends_on(1):
        # univariate trace handled by the univariate classifier
        return []
    res = resultant_multipoly(p, refl, 1)
    if res.is_zero():
        raise ArithmeticError("polynomial shares a factor with its reflection")
    points: List[CertifiedPoint] = []
    if res.is_constant():
        return points
    _, res_uni = res.to_univariate()
    for root, _m in unimodular_roots_exact(res_uni, max_precision=max_precision):
        if root.exact is not None:
            a = root.exact
            f1 = _exact_fiber(p, 0, a)
            f2 = _exact_fiber(refl, 0, a)
            if uni_deg(uni_trim(f1)) < 0 or uni_deg(uni_trim(f2)) < 0:
                continue
            g = uni_gcd(f1, f2)
            if uni_deg(g) < 1:
                continue
            for w, _wm in circle_split_exact(g, max_precision=max_precision).on_circle:
                points.append(
                    CertifiedPoint(ball_from_qi(a), w.value, a, w.exact, True)
                )
        else:
            # non-exact unimodular z1: intersect the two certified root sets
            theta = math.atan2(root.midpoint().imag, root.midpoint().real)
            try:
                rep_p = roots_certified(fiber_coefficients(p, theta, 113), precision=113)
                rep_r = roots_certified(fiber_coefficients(refl, theta, 113), precision=113)
            except PrecisionExhausted:
                continue
            for w in rep_p:
                if w.value.mod_one_distance() > 1e-6:
                    continue
                if any(w.value.separation_lower(u.value) == 0.0 for u in rep_r):
                    points.append(
                        CertifiedPoint(torus_point(theta, 113), w.value, None, None, False)
                    )
    return _dedupe_points(points)


def _dedupe_points(points: List[CertifiedPoint]) -> List[CertifiedPoint]:
    out: List[CertifiedPoint] = []
    for pt in points:
        if not any(pt.overlaps(q) for q in out):
            out.append(pt)
    out.sort(key=lambda q: (q.midpoints()[0].real, q.midpoints()[0].imag, q.midpoints()[1].real, q.midpoints()[1].imag))
    return out


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _classify_univariate(p: MultiPoly) -> ToralityCertificate:
    var, coeffs = p.to_univariate()
    split = circle_split_exact(coeffs)
    on, off = split.count_on(), split.count_inside() + split.count_outside()
    if on and off:
        raise MixedComponentsError(
            "irreducible univariate factor has roots on and off the unit circle"
        )
    if on:
        roots = [
            {
                "variable": var + 1,
                "root": r.value,
                "exact": r.exact,
            }
            for r, _ in split.on_circle
        ]
        return ToralityCertificate(TORAL, "UnivariateUnimodular", {"roots": roots, "variable": var + 1})
    return ToralityCertificate(ATORAL, "FiniteTrace", {"points": [], "variable": var + 1})


def _derivative_ball_at(p: MultiPoly, z1b: ComplexBall, z2b: ComplexBall) -> ComplexBall:
    return p.derivative(1).eval_ball([z1b, z2b])


def _finite_trace_symmetric(p: MultiPoly, max_precision: int = 480) -> List[CertifiedPoint]:
    """Certified superset of the (finite) torus trace of a symmetric atoral
    bivariate p: unimodular solutions of {p = 0, dp/dz2 = 0} plus
    breakpoint-fiber candidates."""
    points: List[CertifiedPoint] = []
    dp = p.derivative(1)
    work = p
    # bilinear special case: the gradient system is a single rational point
    if p.degree_in(1) == 1 and p.degree_in(0) == 1:
        d1 = p.derivative(0)
        # dp/dz2 = a*z1 + c, dp/dz1 = a*z2 + b with a the z1*z2 coefficient
        a = p.terms.get((1, 1))
        if a is not None:
            c = p.terms.get((0, 1), GaussianRational(0))
            b = p.terms.get((1, 0), GaussianRational(0))
            zz1 = -c / a
            zz2 = -b / a
            if p.eval_exact([zz1, zz2]).is_zero() and zz1.is_unimodular() and zz2.is_unimodular():
                points.append(CertifiedPoint.from_exact(zz1, zz2))
        return _dedupe_points(points)
    if p.degree_in(1) >= 2:
        sys_p, sys_d, fiber_var = p, dp, 0
    else:
        sw = p.swap_vars()
        sys_p, sys_d, fiber_var = sw, sw.derivative(1), 0
    res = resultant_multipoly(sys_p, sys_d, 1)
    candidates_z1: List[CertifiedRoot] = []
    if not res.is_constant() and not res.is_zero():
        _, res_uni = res.to_univariate()
        candidates_z1 = [r for r, _ in unimodular_roots_exact(res_uni, max_precision=max_precision)]
    swapped = sys_p is not p
    for root in candidates_z1:
        if root.exact is not None:
            a = root.exact
            fib = _exact_fiber(sys_p, 0, a)
            if uni_deg(uni_trim(fib)) < 1:
                continue
            for w, _wm in circle_split_exact(fib, max_precision=max_precision).on_circle:
                if swapped:
                    points.append(CertifiedPoint(w.value, ball_from_qi(a), w.exact, a, True))
                else:
                    points.append(CertifiedPoint(ball_from_qi(a), w.value, a, w.exact, True))
        else:
            theta = math.atan2(root.midpoint().imag, root.midpoint().real)
            try:
                roots = roots_certified(fiber_coefficients(sys_p, theta, 113), precision=113)
            except PrecisionExhausted:
                continue
            zb = torus_point(theta, 113)
            for w in roots:
                if w.value.mod_one_distance() > 1e-6:
                    continue
                if swapped:
                    points.append(CertifiedPoint(w.value, zb, None, None, False))
                else:
                    points.append(CertifiedPoint(zb, w.value, None, None, False))
    return _dedupe_points(points)


def _sample_arcs(
    p: MultiPoly,
    decomposition: ArcDecomposition,
    per_arc: int = 3,
) -> List[List[FiberReport]]:
    """Fiber reports at per_arc angles inside every arc; a disagreement in
    (unimodular, inside, outside) counts within one arc is a hard failure."""
    out: List[List[FiberReport]] = []
    for angles in decomposition.sample_angles(per_arc=per_arc):
        reports = [
            fiber_unimodular_roots(p, t, breakpoints=decomposition, symmetric=True)
            for t in angles
        ]
        signature = {(r.unimodular_count, r.inside_count, r.outside_count) for r in reports}
        if len(signature) != 1:
            raise ArithmeticError(
                "fiber structure disagreed within one arc; implementation error"
            )
        out.append(reports)
    return out


def classify_irreducible(p: MultiPoly, max_precision: int = 480) -> ToralityCertificate:
    """Torality certificate for an irreducible nonconstant p (nvars = 2)."""
    if p.nvars != 2:
        raise ValueError("classification requires nvars = 2")
    if p.is_zero() or p.is_constant():
        raise ValueError("classification requires a nonconstant polynomial")
    sym = p.essential_symmetry()
    if not sym.symmetric:
        trace = (
            _trace_candidates_nonsymmetric(p, max_precision)
            if (p.depends_on(0) and p.depends_on(1))
            else []
        )
        return ToralityCertificate(
            ATORAL,
            "NotSymmetric",
            {
                "mismatch_exponent": sym.mismatch_exponent,
                "trace": trace,
            },
        )
    if not (p.depends_on(0) and p.depends_on(1)):
        return _classify_univariate(p)
    decomposition = torus_breakpoints(p)
    arc_reports = _sample_arcs(p, decomposition)
    for reports in arc_reports:
        report = reports[0]
        if report.unimodular_count > 0:
            idx = next(i for i in range(len(report.roots)) if report.pairing[i] == i)
            root = report.roots[idx]
            for prec in (53, 113, 237):
                zb = torus_point(report.theta, prec)
                wb = root.value.to_prec(prec) if prec > root.value.prec else root.value
                deriv = _derivative_ball_at(p, zb, wb)
                if deriv.excludes_zero():
                    point = CertifiedPoint(zb, root.value, None, None, True)
                    return ToralityCertificate(
                        TORAL,
                        "RegularTorusPoint",
                        {
                            "theta": report.theta,
                            "point": point,
                            "derivative": deriv,
                            "tau": sym.tau,
                        },
                    )
                if prec < 237:
                    try:
                        refined = fiber_unimodular_roots(
                            p, report.theta, breakpoints=decomposition, symmetric=True
                        )
                        idx2 = next(
                            i for i in range(len(refined.roots)) if refined.pairing[i] == i
                        )
                        root = refined.roots[idx2]
                    except (PrecisionExhausted, StopIteration):
                        pass
            raise PrecisionExhausted(
                "could not certify a nonvanishing derivative at the torus point"
            )
    trace = _finite_trace_symmetric(p, max_precision)
    # breakpoint fibers contribute candidates too
    for theta, exact in zip(decomposition.breakpoints, decomposition.exact_points):
        if exact is not None:
            fib = _exact_fiber(p, 0, exact)
            if uni_deg(uni_trim(fib)) >= 1:
                for w, _m in circle_split_exact(fib, max_precision=max_precision).on_circle:
                    trace.append(CertifiedPoint(ball_from_qi(exact), w.value, exact, w.exact, True))
        else:
            try:
                roots = roots_certified(fiber_coefficients(p, theta, 113), precision=113)
            except PrecisionExhausted:
                continue
            zb = torus_point(theta, 113)
            for w in roots:
                if w.value.mod_one_distance() <= 1e-6:
                    trace.append(CertifiedPoint(zb, w.value, None, None, False))
    trace = _dedupe_points(trace)
    trace = [pt for pt in trace if p.eval_ball([pt.z1, pt.z2]).abs_upper() <= ON_CURVE_TOL or not pt.on_torus_certified]
    return ToralityCertificate(ATORAL, "FiniteTrace", {"points": trace, "tau": sym.tau})


def classify(p: MultiPoly, max_precision: int = 480) -> SetClassification:
    """Factor p and classify every irreducible factor; verdicts are computed
    on the square-free part (multiplicities do not affect zero sets)."""
    if p.nvars != 2:
        raise ValueError("classification requires nvars = 2")
    if p.is_zero() or p.is_constant():
        raise ValueError("classification requires a nonconstant polynomial")
    _, factors = factor_multipoly(p)
    out: List[Tuple[MultiPoly, int, ToralityCertificate]] = []
    verdicts = set()
    for f, mult in factors:
        cert = classify_irreducible(f, max_precision=max_precision)
        verdicts.add(cert.verdict)
        out.append((f, mult, cert))
    if verdicts == {TORAL}:
        set_verdict = TORAL
    elif verdicts == {ATORAL}:
        set_verdict = ATORAL
    else:
        set_verdict = MIXED
    return SetClassification(out, set_verdict)


def classify_algebraic_set(
    p: Optional[MultiPoly],
    isolated_points: Sequence[Tuple[GaussianRational, GaussianRational]] = (),
) -> SetClassification:
    """Classification of an algebraic set given as Z_p together with finitely
    many isolated points (exact coordinates). The set is toral iff p is
    toral and every isolated point lies on T^2; atoral iff p is atoral and
    no isolated point touches T^2."""
    points = [(GaussianRational.from_any(a), GaussianRational.from_any(b)) for a, b in isolated_points]
    on_torus = [a.is_unimodular() and b.is_unimodular() for a, b in points]
    if p is None or p.is_constant():
        if not points:
            verdict = TORAL  # empty set: vacuously both; report toral
        elif all(on_torus):
            verdict = TORAL
        elif not any(on_torus):
            verdict = ATORAL
        else:
            verdict = MIXED
        return SetClassification([], verdict, points)
    base = classify(p)
    verdict = base.set_verdict
    if points:
        if verdict == TORAL and not all(on_torus):
            verdict = MIXED
        if verdict == ATORAL and any(on_torus):
            verdict = MIXED
    return SetClassification(base.factors, verdict, points)


def toral_atoral_split(p: MultiPoly) -> Tuple[MultiPoly, MultiPoly, GaussianRational]:
    """p = unit * q * r with q the product of toral factors and r the
    product of atoral factors (multiplicities kept, both normalized)."""
    cls = classify(p)
    q = MultiPoly.constant(p.nvars, 1)
    r = MultiPoly.constant(p.nvars, 1)
    for f, mult, cert in cls.factors:
        if cert.verdict == TORAL:
            q = q * f**mult
        else:
            r = r * f**mult
    unit_poly = p.exact_divide(q * r)
    if not unit_poly.is_constant():
        raise ArithmeticError("split does not recompose; implementation error")
    return q, r, unit_poly.constant_value()


# ---------------------------------------------------------------------------
# torus intersection
# ---------------------------------------------------------------------------


def torus_intersection(p: MultiPoly, samples_per_arc: int = 8) -> TorusIntersectionReport:
    """Z_p ∩ T^2: a finite certified point list when every factor is atoral,
    or per-factor on-curve torus samples when a toral factor makes the
    intersection one-dimensional."""
    cls = classify(p)
    finite_points: List[CertifiedPoint] = []
    samples: Dict[str, List[CertifiedPoint]] = {}
    has_toral = False
    for f, _mult, cert in cls.factors:
        if cert.verdict == ATORAL:
            if cert.evidence_kind == "NotSymmetric":
                finite_points.extend(cert.data.get("trace", []))
            elif cert.evidence_kind == "FiniteTrace":
                finite_points.extend(cert.data.get("points", []))
            continue
        has_toral = True
        key = str(f)
        pts: List[CertifiedPoint] = []
        if not (f.depends_on(0) and f.depends_on(1)):
            var, coeffs = f.to_univariate()
            for root, _m in circle_split_exact(coeffs).on_circle:
                for k in range(samples_per_arc):
                    phi = TWO_PI * k / samples_per_arc
                    other = torus_point(phi)
                    if var == 0:
                        pts.append(CertifiedPoint(root.value, other, root.exact, None, True))
                    else:
                        pts.append(CertifiedPoint(other, root.value, None, root.exact, True))
        else:
            decomposition = torus_breakpoints(f)
            for angles in decomposition.sample_angles(per_arc=samples_per_arc):
                for t in angles:
                    rep = fiber_unimodular_roots(f, t, breakpoints=decomposition, symmetric=True)
                    zb = torus_point(t)
                    for i, root in enumerate(rep.roots):
                        if rep.pairing[i] == i:
                            pts.append(CertifiedPoint(zb, root.value, None, None, True))
        samples[key] = pts
    finite_points = _dedupe_points(finite_points)
    if has_toral:
        return TorusIntersectionReport("OneDimensional", finite_points, samples)
    return TorusIntersectionReport("Finite", finite_points, {})
