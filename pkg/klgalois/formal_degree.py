"""
Formal degrees of Iwahori-spherical discrete series.

The inverse formal degree at a torus point s is

    q^dim(B) * sum_J 1/P_J(q) * sum_{lambda in Lambda_J} |M(lambda, s)|^2,
    M(lambda, s) = sum_w w(lambda * prod_{alpha > 0} (1 - q^-1 alpha) / (1 - alpha))(s),

with Lambda_J the dominant weights whose stabilizer is W_J. The sums over
Lambda_J are truncated by height.

Exact engine: put every Weyl term over D = prod_{beta in Phi} (1 - beta(s)).
The numerator of term w is (w lambda)(s) * Q_w with

    Q_w = prod_{alpha > 0} (1 - v^-2 (w alpha)(s)) (1 - (-w alpha)(s)),

and (w lambda)(s) = zeta^(k_w(lambda)) v^(e_w(lambda)) for integer linear
functionals k_w, e_w. So sum_lambda |M|^2 * D * conj(D) is
sum_{w, w'} Q_w conj(Q_w') S_{w,w'} where S_{w,w'} only needs the functionals.
Those products are dense convolutions in Z[mu_n][v, 1/v] and go through numpy.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, pi, sqrt
from typing import TYPE_CHECKING, Any

import numpy as np

from .const import (
    _LOGGER,
    _LOGGER_SPAM_LESS,
    DEFAULT_MAX_DECAY_RATIO,
    DEFAULT_TOLERANCE,
    HEIGHT_NOTION,
    ORACLE_RTOL,
)
from .exact_field import CyclotomicLaurent, GaloisAutomorphism, RatFun, convolve_sum
from .exceptions import EngineDefect, InvalidParameter, NonRegularParameter, NotDominant, NotSemisimple, PoleError
from .hecke_bernstein import same_orbit
from .kl_parameters import KLParameter, project_to_semisimple
from .laurent import IntLaurent, WeightPolynomial
from .root_datum import RootDatum, all_subsets, enumerate_lambda, poincare_polynomial, weight_stabilizer
from .util import format_decimal, fraction_to_str, parse_fraction

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from .torus import TorusPoint

Weight = tuple[int, ...]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b, strict=True))


def trivial_root(rd: RootDatum, point: TorusPoint) -> Weight | None:
    """A positive root that is identically 1 at the point, if there is one."""
    for root in rd.positive_roots:
        if point.is_trivial_on(root):
            return root
    return None


def is_regular(rd: RootDatum, point: TorusPoint) -> bool:
    return trivial_root(rd, point) is None


def _require_semisimple(rd: RootDatum) -> None:
    if not rd.is_semisimple:
        msg = f"{rd.label} is not semisimple; project the parameter to the semisimple quotient first"
        raise NotSemisimple(msg)


@dataclass
class _PointData:
    """Everything about (rd, s) the exact engine needs, computed once."""

    level: int
    functionals: list[tuple[tuple[int, ...], tuple[int, ...]]]
    weights: list[CyclotomicLaurent]
    denominator: CyclotomicLaurent


@lru_cache(256)
def _point_data(rd: RootDatum, point: TorusPoint) -> _PointData:
    level = point.level
    one = CyclotomicLaurent.one(level)
    functionals = []
    weights = []
    for w in rd.weyl_elements():
        action = w.action
        # k_w(lambda) = level <w lambda, a>, e_w(lambda) = 2 <w lambda, m>
        k = tuple(int(level * sum(action[r][i] * point.torsion[r] for r in range(rd.rank))) for i in range(rd.rank))
        e = tuple(int(2 * sum(action[r][i] * point.qexp[r] for r in range(rd.rank))) for i in range(rd.rank))
        functionals.append((k, e))
        q_w = one
        for root in rd.positive_roots:
            image = w.apply(root)
            z, exp = point.monomial(image, level)
            q_w = q_w * (one - CyclotomicLaurent.monomial(level, z, exp - 2))
            q_w = q_w * (one - CyclotomicLaurent.monomial(level, -z, -exp))
            if q_w.is_zero():
                break
        weights.append(q_w)
    denominator = one
    for root in rd.all_roots:
        denominator = denominator * (one - point.character(root, level))
    return _PointData(level, functionals, weights, denominator)


def _lambda_monomial(functional: tuple[tuple[int, ...], tuple[int, ...]], weight: Weight, level: int) -> tuple[int, int]:
    k, e = functional
    return _dot(k, weight) % level, _dot(e, weight)


@lru_cache(4096)
def symbolic_m(rd: RootDatum, weight: Weight) -> WeightPolynomial:
    """
    M(lambda, .) as a Laurent polynomial on the torus, valid at every point.

    The Weyl symmetrization of x^lambda prod_{alpha > 0} (1 - v^-2 x^alpha)(1 - x^-alpha),
    divided exactly by (1 - x^beta) for every root beta.
    """
    base = WeightPolynomial.monomial(weight)
    inverse_q = IntLaurent({-2: 1})
    for root in rd.positive_roots:
        base = base * WeightPolynomial.binomial(root, inverse_q)
        base = base * WeightPolynomial.binomial(tuple(-x for x in root))
    total = WeightPolynomial(rd.rank)
    for w in rd.weyl_elements():
        total = total + base.weyl_apply(w)
    for root in rd.all_roots:
        total = total.divide_by_binomial(root)
    return total


def _numerator(rd: RootDatum, weight: Weight, point: TorusPoint, *, fallback: bool) -> tuple[CyclotomicLaurent, CyclotomicLaurent]:
    """(N, D) with M(lambda, s) = N / D."""
    root = trivial_root(rd, point)
    if root is not None:
        if not fallback:
            raise NonRegularParameter(root)
        level = point.level
        return symbolic_m(rd, weight).evaluate(point, level), CyclotomicLaurent.one(level)
    data = _point_data(rd, point)
    total = CyclotomicLaurent(data.level)
    for functional, q_w in zip(data.functionals, data.weights, strict=True):
        if q_w.is_zero():
            continue
        z, e = _lambda_monomial(functional, weight, data.level)
        total = total + q_w * CyclotomicLaurent.monomial(data.level, z, e)
    return total, data.denominator


def _check_dominant(rd: RootDatum, weight: Sequence[int]) -> Weight:
    weight = rd.check_weight(weight)
    if not rd.is_dominant(weight):
        msg = f"{weight} is not dominant for {rd.label}"
        raise NotDominant(msg)
    return weight


def m_function(rd: RootDatum, weight: Sequence[int], point: TorusPoint, *, fallback: bool = False) -> RatFun:
    """M(lambda, s) exactly. Non-regular points need fallback=True."""
    _require_semisimple(rd)
    weight = _check_dominant(rd, weight)
    numerator, denominator = _numerator(rd, weight, point, fallback=fallback)
    return numerator.to_ratfun(denominator)


@dataclass
class MSquaredTerm:
    weight: Weight
    subset: frozenset[int]
    value: RatFun

    def to_dict(self) -> dict[str, Any]:
        return {"lambda": list(self.weight), "J": sorted(self.subset), "value": self.value.to_dict()}


def m_squared(rd: RootDatum, weight: Sequence[int], point: TorusPoint, *, fallback: bool = False) -> MSquaredTerm:
    """|M(lambda, s)|^2; conjugation inverts roots of unity and fixes v."""
    value = m_function(rd, weight, point, fallback=fallback)
    weight = tuple(weight)
    return MSquaredTerm(weight, weight_stabilizer(rd, weight), value * value.conjugate())


@lru_cache(64)
def _subset_numerators(
    rd: RootDatum, point: TorusPoint, height_bound: int, fallback: bool
) -> tuple[dict[frozenset[int], CyclotomicLaurent], CyclotomicLaurent]:
    """Per subset J, the numerator of sum_{Lambda_J} |M|^2 over a common denominator."""
    _require_semisimple(rd)
    level = point.level
    root = trivial_root(rd, point)
    out: dict[frozenset[int], CyclotomicLaurent] = {}
    if root is not None:
        if not fallback:
            raise NonRegularParameter(root)
        _LOGGER_SPAM_LESS.debug("fallback", "Using the symbolic M-function at non-regular point %s", point)
        for subset in all_subsets(rd):
            pairs = []
            for weight in enumerate_lambda(rd, subset, height_bound):
                value = symbolic_m(rd, weight).evaluate(point, level)
                pairs.append((value, value.conjugate()))
            out[subset] = convolve_sum(pairs, level)
        return out, CyclotomicLaurent.one(level)

    data = _point_data(rd, point)
    live = [i for i, q_w in enumerate(data.weights) if not q_w.is_zero()]
    products = {(i, j): data.weights[i] * data.weights[j].conjugate() for i in live for j in live}
    for subset in all_subsets(rd):
        weights = enumerate_lambda(rd, subset, height_bound)
        values = {i: [_lambda_monomial(data.functionals[i], weight, level) for weight in weights] for i in live}
        pairs = []
        for i in live:
            for j in live:
                terms: dict[tuple[int, int], int] = defaultdict(int)
                for (z1, e1), (z2, e2) in zip(values[i], values[j], strict=True):
                    terms[((z1 - z2) % level, e1 + e2)] += 1
                pairs.append((products[(i, j)], CyclotomicLaurent(level, terms)))
        out[subset] = convolve_sum(pairs, level)
    return out, data.denominator * data.denominator.conjugate()


def subset_sums(rd: RootDatum, point: TorusPoint, height_bound: int, *, fallback: bool = True) -> dict[frozenset[int], RatFun]:
    """sum_{lambda in Lambda_J, height <= bound} |M(lambda, s)|^2 for every J."""
    numerators, denominator = _subset_numerators(rd, point, height_bound, fallback)
    return {subset: numerator.to_ratfun(denominator) for subset, numerator in numerators.items()}


def partial_degree_inverse(rd: RootDatum, point: TorusPoint, height_bound: int, *, fallback: bool = True) -> RatFun:
    """The truncated inverse formal degree as an element of Q(zeta_n)(v)."""
    numerators, denominator = _subset_numerators(rd, point, height_bound, fallback)
    level = point.level
    full = poincare_polynomial(rd, range(rd.semisimple_rank))
    total = CyclotomicLaurent(level)
    for subset, numerator in numerators.items():
        cofactor = full // poincare_polynomial(rd, subset)
        total = total + numerator * CyclotomicLaurent.from_q_polynomial(level, cofactor.coefficients)
    total = total.shift(2 * rd.dim_flag)
    return total.to_ratfun(denominator * CyclotomicLaurent.from_q_polynomial(level, full.coefficients))


def _check_q(q0) -> Fraction:
    q0 = parse_fraction(q0)
    if q0 <= 1:
        msg = f"q must be a rational number > 1, got {q0}"
        raise InvalidParameter(msg)
    return q0


def height_increments(
    rd: RootDatum, point: TorusPoint, q0, height_bound: int, *, fallback: bool = True
) -> list[float]:
    """Contribution of each exact height h = 0..bound to the inverse degree at q0."""
    _require_semisimple(rd)
    q0 = _check_q(q0)
    v0 = sqrt(float(q0))
    prefactor = float(q0) ** rd.dim_flag
    increments = [0.0] * (height_bound + 1)
    for subset in all_subsets(rd):
        weight_factor = prefactor / float(poincare_polynomial(rd, subset)(q0))
        for weight in enumerate_lambda(rd, subset, height_bound):
            numerator, denominator = _numerator(rd, weight, point, fallback=fallback)
            value = abs(numerator.float_embed(v0)) ** 2 / abs(denominator.float_embed(v0)) ** 2
            increments[rd.height(weight)] += weight_factor * value
    return increments


def tail_estimate(increments: Sequence[float]) -> tuple[float | None, float | None]:
    """
    (last nonzero increment, per-unit-height decay ratio).

    The ratio is the geometric mean, over the later half of the nonzero
    increments, of consecutive ratios normalised by the height gap.
    """
    nonzero = [(h, x) for h, x in enumerate(increments) if x > 0]
    if not nonzero:
        return None, None
    last = nonzero[-1][1]
    if len(nonzero) < 2:
        return last, None
    window = nonzero[len(nonzero) // 2 :]
    if len(window) < 2:
        window = nonzero[-2:]
    logs = []
    for (h1, x1), (h2, x2) in zip(window, window[1:], strict=False):
        logs.append((np.log(x2) - np.log(x1)) / (h2 - h1))
    return last, float(np.exp(np.mean(logs)))


def float_oracle_degree(rd: RootDatum, point: TorusPoint, q0, height_bound: int, rho_dim: int = 1) -> float:
    """
    The truncated formal degree recomputed in complex floating point.

    Shares nothing with the exact engine beyond the root datum and the weight
    enumeration. Terms are summed in (height, lexicographic) order.
    """
    _require_semisimple(rd)
    root = trivial_root(rd, point)
    if root is not None:
        raise NonRegularParameter(root, f"the float oracle needs a regular point; root {root} is trivial")
    q0 = _check_q(q0)
    v0 = sqrt(float(q0))
    level = point.level
    torsion_num = np.array([int(a * level) for a in point.torsion], dtype=np.int64)
    doubled_qexp = np.array([int(2 * m) for m in point.qexp], dtype=np.int64)

    def values(weights: np.ndarray, offset: int = 0) -> np.ndarray:
        # integer phases and exponents, so a value that is exactly 1 comes out as 1.0
        phases = np.mod(weights @ torsion_num, level)
        return np.exp(2j * pi * phases / level) * np.power(v0, (weights @ doubled_qexp + offset).astype(float))

    positive = np.array(rd.positive_roots, dtype=np.int64)
    rows = []
    for subset in all_subsets(rd):
        poincare = float(poincare_polynomial(rd, subset)(q0))
        for weight in enumerate_lambda(rd, subset, height_bound):
            rows.append((rd.height(weight), weight, poincare))
    rows.sort(key=lambda row: (row[0], row[1]))
    if not rows:
        return float("inf")
    lambdas = np.array([row[1] for row in rows], dtype=np.int64)
    totals = np.zeros(len(rows), dtype=complex)
    for w in rd.weyl_elements():
        action = np.array(w.action, dtype=np.int64)
        images = positive @ action.T
        root_values = values(images)
        shifted = values(images, -2)
        factor = complex(np.prod((1 - shifted) / (1 - root_values)))
        if factor == 0:
            continue
        totals += factor * values(lambdas @ action.T)
    weights = np.array([row[2] for row in rows])
    contributions = np.abs(totals) ** 2 / weights
    inverse = float(np.cumsum(contributions)[-1]) * float(q0) ** rd.dim_flag
    return rho_dim / inverse


@dataclass
class GaloisVerdict:
    gamma: GaloisAutomorphism
    twisted_point: TorusPoint
    termwise_exact_equal: bool
    subset_equal: dict[frozenset[int], bool]
    numeric_degree_diff: float | None
    within_tolerance: bool | None
    galois_stable: bool

    @property
    def passed(self) -> bool:
        return self.termwise_exact_equal and self.within_tolerance is not False

    def to_dict(self) -> dict[str, Any]:
        return {
            "gamma": self.gamma.to_dict(),
            "twisted_point": self.twisted_point.to_dict(),
            "termwise_exact_equal": self.termwise_exact_equal,
            "subsets": {",".join(map(str, sorted(j))) or "-": ok for j, ok in self.subset_equal.items()},
            "numeric_degree_diff": format_decimal(self.numeric_degree_diff),
            "within_tolerance": self.within_tolerance,
            "galois_stable": self.galois_stable,
        }


@dataclass
class FormalDegreeReport:
    """Truncated formal degree of one torus point, with diagnostics."""

    root_datum: str
    point: TorusPoint
    height_bound: int
    q: Fraction
    rho_dim: int
    partial_inverse_degree: RatFun
    inverse_value: float
    inverse_value_exact: Fraction | None
    degree: float
    degree_exact: Fraction | None
    last_increment: float | None
    tail_ratio: float | None
    converged: bool
    oracle_degree: float | None = None
    oracle_relative_diff: float | None = None
    galois_verdicts: list[GaloisVerdict] = field(default_factory=list)
    height_notion: str = HEIGHT_NOTION

    @property
    def oracle_agrees(self) -> bool | None:
        if self.oracle_relative_diff is None:
            return None
        return self.oracle_relative_diff <= ORACLE_RTOL

    def to_dict(self) -> dict[str, Any]:
        return {
            "root_datum": self.root_datum,
            "point": self.point.to_dict(),
            "height_bound": self.height_bound,
            "height_notion": self.height_notion,
            "q": fraction_to_str(self.q),
            "rho_dim": self.rho_dim,
            "partial_inverse_degree": self.partial_inverse_degree.to_dict(),
            "inverse_value_exact": None if self.inverse_value_exact is None else fraction_to_str(self.inverse_value_exact),
            "inverse_value": format_decimal(self.inverse_value),
            "degree_exact": None if self.degree_exact is None else fraction_to_str(self.degree_exact),
            "degree": format_decimal(self.degree),
            "tail": {
                "last_increment": format_decimal(self.last_increment),
                "ratio": format_decimal(self.tail_ratio),
                "converged": self.converged,
            },
            "oracle": {
                "degree": format_decimal(self.oracle_degree),
                "relative_diff": format_decimal(self.oracle_relative_diff),
                "agrees": self.oracle_agrees,
            },
            "galois_verdicts": [verdict.to_dict() for verdict in self.galois_verdicts],
        }


def degree_numeric(
    rd: RootDatum,
    point: TorusPoint,
    q0,
    height_bound: int,
    tol: float = DEFAULT_TOLERANCE,
    *,
    rho_dim: int = 1,
    fallback: bool = True,
    max_decay_ratio: float = DEFAULT_MAX_DECAY_RATIO,
    oracle: bool = True,
) -> FormalDegreeReport:
    """
    Evaluate the truncated degree at q0, scaled by rho_dim.

    Exact when v0 = sqrt(q0) is rational or only even powers of v occur.
    Sums whose increments do not decay are flagged, not raised. A float
    oracle that disagrees with the exact value raises EngineDefect.
    """
    q0 = _check_q(q0)
    inverse = partial_degree_inverse(rd, point, height_bound, fallback=fallback)
    exact = inverse.evaluate_at_q(q0)
    inverse_exact = exact.rational_part() if exact is not None else None
    if inverse_exact is not None:
        inverse_value = float(inverse_exact)
    else:
        inverse_value = inverse.float_embed(sqrt(float(q0))).real
    if inverse_value == 0:
        msg = f"the truncated inverse degree vanishes at q = {q0}"
        raise PoleError(msg)
    degree_exact = Fraction(rho_dim) / inverse_exact if inverse_exact else None
    degree = rho_dim / inverse_value

    last, ratio = tail_estimate(height_increments(rd, point, q0, height_bound, fallback=fallback))
    converged = ratio is not None and ratio < max_decay_ratio
    if not converged:
        _LOGGER_SPAM_LESS.warning(
            f"decay_{rd.label}", "Truncated sum for %s at %s does not decay (ratio %s)", rd.label, point, ratio
        )

    report = FormalDegreeReport(
        root_datum=rd.label,
        point=point,
        height_bound=height_bound,
        q=q0,
        rho_dim=rho_dim,
        partial_inverse_degree=inverse,
        inverse_value=inverse_value,
        inverse_value_exact=inverse_exact,
        degree=degree,
        degree_exact=degree_exact,
        last_increment=last,
        tail_ratio=ratio,
        converged=converged,
    )
    if oracle and is_regular(rd, point):
        report.oracle_degree = float_oracle_degree(rd, point, q0, height_bound, rho_dim)
        report.oracle_relative_diff = abs(report.oracle_degree - degree) / abs(degree)
        if not report.oracle_agrees:
            msg = f"float oracle gives {report.oracle_degree} for {rd.label} at {point}, exact engine gives {degree}"
            raise EngineDefect(msg)
    _LOGGER.debug("Degree of %s at %s, q=%s, bound %d: %s", rd.label, point, q0, height_bound, degree)
    return report


def _extend(gamma: GaloisAutomorphism, level: int) -> GaloisAutomorphism:
    common = level * gamma.level // gcd(level, gamma.level)
    return gamma.extend(common)


def is_galois_stable(rd: RootDatum, point: TorusPoint, gamma: GaloisAutomorphism) -> bool:
    """gamma(s) lies in the W-orbit of s."""
    return same_orbit(rd, point.galois(gamma), point)


def galois_verdict(
    rd: RootDatum,
    point: TorusPoint,
    gamma: GaloisAutomorphism,
    height_bound: int,
    *,
    base_degree: float | None = None,
    twisted_degree: float | None = None,
    tol: float = DEFAULT_TOLERANCE,
    fallback: bool = True,
) -> GaloisVerdict:
    """Compare the truncated sums at gamma(s) with gamma applied to those at s."""
    twisted = point.galois(gamma)
    extended = _extend(gamma, point.level)
    before = subset_sums(rd, point, height_bound, fallback=fallback)
    after = subset_sums(rd, twisted, height_bound, fallback=fallback)
    subset_equal = {subset: after[subset] == before[subset].galois(extended) for subset in before}
    diff = None
    within = None
    if base_degree is not None and twisted_degree is not None:
        diff = abs(base_degree - twisted_degree)
        within = diff < tol
    return GaloisVerdict(
        gamma=gamma,
        twisted_point=twisted,
        termwise_exact_equal=all(subset_equal.values()),
        subset_equal=subset_equal,
        numeric_degree_diff=diff,
        within_tolerance=within,
        galois_stable=is_galois_stable(rd, point, gamma),
    )


def galois_invariance_report(
    rd: RootDatum,
    point: TorusPoint,
    gamma: GaloisAutomorphism | Iterable[GaloisAutomorphism],
    height_bound: int,
    q0,
    tol: float = DEFAULT_TOLERANCE,
    *,
    rho_dim: int = 1,
    fallback: bool = True,
) -> FormalDegreeReport:
    """Degree report for s with one Galois verdict per automorphism."""
    gammas = [gamma] if isinstance(gamma, GaloisAutomorphism) else list(gamma)
    report = degree_numeric(rd, point, q0, height_bound, tol, rho_dim=rho_dim, fallback=fallback)
    for g in gammas:
        twisted = degree_numeric(rd, point.galois(g), q0, height_bound, tol, rho_dim=rho_dim, fallback=fallback, oracle=False)
        report.galois_verdicts.append(
            galois_verdict(
                rd,
                point,
                g,
                height_bound,
                base_degree=report.degree,
                twisted_degree=twisted.degree,
                tol=tol,
                fallback=fallback,
            )
        )
    return report


def parameter_degree(param: KLParameter, q0, height_bound: int, **kwargs) -> FormalDegreeReport | None:
    """Degree of a GL_n parameter through its image in PGL_n. None for GL_1, whose degree is 1."""
    projected = project_to_semisimple(param)
    if projected is None:
        return None
    rd, point = projected
    return degree_numeric(rd, point, q0, height_bound, rho_dim=param.rho_dim, **kwargs)


def tensor_product_degree(factors: Sequence[tuple[KLParameter, int]], q0, height_bound: int, **kwargs) -> float:
    """
    Degree of a tensor product of GL_{m_i} factors, the i-th at parameter q^{f_i}.

    Each factor is evaluated at q0^{f_i}; GL_1 factors contribute 1.
    """
    q0 = _check_q(q0)
    total = 1.0
    for param, exponent in factors:
        report = parameter_degree(param, q0**exponent, height_bound, **kwargs)
        if report is not None:
            total *= report.degree
    return total

