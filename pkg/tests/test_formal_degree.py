"""Tests for truncated formal degrees and their Galois behaviour."""

from __future__ import annotations

import cmath
import logging
from fractions import Fraction
from math import sqrt

import pytest

from klgalois.const import HEIGHT_NOTION
from klgalois.exact_field import GaloisAutomorphism, RatFun, ratfun_galois
from klgalois.exceptions import EngineDefect, InvalidParameter, NonRegularParameter, NotDominant, NotSemisimple
from klgalois.formal_degree import (
    degree_numeric,
    float_oracle_degree,
    galois_invariance_report,
    galois_verdict,
    height_increments,
    is_galois_stable,
    is_regular,
    m_function,
    m_squared,
    parameter_degree,
    partial_degree_inverse,
    subset_sums,
    symbolic_m,
    tail_estimate,
    tensor_product_degree,
)
from klgalois.kl_parameters import build_parameter, enumerate_parameters, is_essentially_discrete
from klgalois.root_datum import build_root_datum, dominant_weights
from klgalois.torus import TorusPoint, steinberg_point

IDENTITY_POINT = TorusPoint.build([0], [0])
FIFTH_ROOT_POINT = TorusPoint.build(["1/5"], [1])


def steinberg_m(m: int) -> RatFun:
    """M(m omega) = v^-m (1 + v^-2) at the Steinberg point of SL2's dual."""
    return RatFun.from_laurent({-m: 1, -m - 2: 1})


def float_m(rd, weight, point: TorusPoint, q: float) -> complex:
    """M(lambda, s) summed over W in complex floats, straight from the definition."""

    def value(mu) -> complex:
        angle = sum((x * a for x, a in zip(mu, point.torsion, strict=True)), Fraction(0))
        exponent = sum((x * m for x, m in zip(mu, point.qexp, strict=True)), Fraction(0))
        return cmath.exp(2j * cmath.pi * float(angle)) * q ** float(exponent)

    total = 0j
    for w in rd.weyl_elements():
        term = value(w.apply(weight))
        for root in rd.positive_roots:
            x = value(w.apply(root))
            term *= (1 - x / q) / (1 - x)
        total += term
    return total


@pytest.fixture
def central_steinberg_a2(a2_sc) -> TorusPoint:
    return steinberg_point(a2_sc, ["1/3", "2/3"])


@pytest.mark.parametrize("m", [0, 1, 2, 5])
def test_m_function_closed_form(a1_sc, steinberg_a1, m):
    assert m_function(a1_sc, (m,), steinberg_a1) == steinberg_m(m)


@pytest.mark.parametrize("m", [0, 1, 3])
def test_symbolic_m_agrees_at_regular_points(a1_sc, steinberg_a1, m):
    symbolic = symbolic_m(a1_sc, (m,)).evaluate(steinberg_a1).to_ratfun()
    assert symbolic == m_function(a1_sc, (m,), steinberg_a1)


def test_symbolic_m_at_a_non_regular_point(a1_sc):
    assert not is_regular(a1_sc, IDENTITY_POINT)
    with pytest.raises(NonRegularParameter) as err:
        m_function(a1_sc, (0,), IDENTITY_POINT)
    assert err.value.root == (2,)
    assert m_function(a1_sc, (0,), IDENTITY_POINT, fallback=True) == RatFun.from_laurent({0: 1, -2: 1})
    assert m_function(a1_sc, (1,), IDENTITY_POINT, fallback=True) == RatFun.from_laurent({-2: 2})


def test_m_function_guards(a1_sc, gl2, steinberg_a1):
    with pytest.raises(NotDominant):
        m_function(a1_sc, (-1,), steinberg_a1)
    with pytest.raises(NotSemisimple):
        m_function(gl2, (0, 0), steinberg_point(gl2))


def test_m_squared(a1_sc, steinberg_a1):
    term = m_squared(a1_sc, (0,), steinberg_a1)
    assert term.subset == frozenset({0})
    assert term.value == RatFun.from_laurent({0: 1, -2: 2, -4: 1})
    assert term.to_dict()["J"] == [0]


def test_m_function_at_a_cube_root_of_unity(a1_sc):
    point = TorusPoint.build(["2/3"], [0])
    x = cmath.exp(2j * cmath.pi / 3)
    assert point.character((2,)).float_embed(1.0) == pytest.approx(x)
    q = 2
    expected = (1 - x / q) / (1 - x) + (1 - 1 / (q * x)) / (1 - 1 / x)
    assert m_function(a1_sc, (0,), point).float_embed(sqrt(q)) == pytest.approx(expected, abs=1e-10)


def test_m_function_is_weyl_invariant(a1_ad, a2_sc, central_steinberg_a2):
    for rd, point, bound in ((a1_ad, FIFTH_ROOT_POINT, 4), (a2_sc, central_steinberg_a2, 2)):
        for weight in dominant_weights(rd, bound):
            expected = m_function(rd, weight, point)
            for w in rd.weyl_elements():
                assert m_function(rd, weight, point.weyl_translate(rd, w)) == expected


def test_m_squared_is_galois_equivariant_term_by_term(a1_ad, a2_sc, central_steinberg_a2):
    cases = (
        (a1_ad, FIFTH_ROOT_POINT, GaloisAutomorphism(5, 2), 4),
        (a1_ad, FIFTH_ROOT_POINT, GaloisAutomorphism(5, 4), 4),
        (a2_sc, central_steinberg_a2, GaloisAutomorphism(3, 2), 2),
    )
    for rd, point, gamma, bound in cases:
        for weight in dominant_weights(rd, bound):
            twisted = m_squared(rd, weight, point.galois(gamma)).value
            assert twisted == ratfun_galois(gamma, m_squared(rd, weight, point).value)


@pytest.mark.parametrize(
    ("label", "torsion", "qexp"),
    [("A1-sc", [0], ["1/2"]), ("A1-sc", ["2/3"], [0]), ("A1-ad", ["1/5"], [1])],
)
def test_m_function_matches_floats_at_q_4(label, torsion, qexp):
    rd = build_root_datum(label)
    point = TorusPoint.build(torsion, qexp)
    for weight in dominant_weights(rd, 6):
        expected = float_m(rd, weight, point, 4.0)
        assert m_function(rd, weight, point).float_embed(2.0) == pytest.approx(expected, rel=1e-9, abs=1e-12)
    assert degree_numeric(rd, point, "4", 6).oracle_agrees


def test_m_function_matches_floats_for_a2(a2_sc, central_steinberg_a2):
    for weight in dominant_weights(a2_sc, 3):
        expected = float_m(a2_sc, weight, central_steinberg_a2, 4.0)
        value = m_function(a2_sc, weight, central_steinberg_a2).float_embed(2.0)
        assert value == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_subset_sums(a1_sc, steinberg_a1):
    sums = subset_sums(a1_sc, steinberg_a1, 3)
    assert sums[frozenset({0})] == RatFun.from_laurent({0: 1, -2: 2, -4: 1})
    assert sums[frozenset()] == RatFun.from_laurent({-2: 1, -4: 3, -6: 4, -8: 3, -10: 1})


def test_partial_inverse_degree_is_exact(a1_sc, steinberg_a1):
    inverse = partial_degree_inverse(a1_sc, steinberg_a1, 10)
    assert inverse.evaluate_at_q(2).rational_part() == Fraction(12279, 2048)


def test_non_regular_points_need_the_fallback(a1_sc):
    with pytest.raises(NonRegularParameter):
        partial_degree_inverse(a1_sc, IDENTITY_POINT, 3, fallback=False)
    assert not partial_degree_inverse(a1_sc, IDENTITY_POINT, 3).is_zero()
    with pytest.raises(NonRegularParameter):
        float_oracle_degree(a1_sc, IDENTITY_POINT, 2, 3)


def test_steinberg_degree_report(a1_sc, steinberg_a1):
    report = degree_numeric(a1_sc, steinberg_a1, "2", 10)
    assert report.inverse_value_exact == Fraction(12279, 2048)
    assert report.degree_exact == Fraction(2048, 12279)
    assert report.degree == pytest.approx(2048 / 12279)
    assert report.tail_ratio == pytest.approx(0.5)
    assert report.last_increment == pytest.approx(4.5 / 1024)
    assert report.converged
    assert report.oracle_agrees
    data = report.to_dict()
    assert data["degree_exact"] == "2048/12279"
    assert data["height_notion"] == HEIGHT_NOTION
    assert data["oracle"]["agrees"] is True


@pytest.mark.parametrize(("q", "rho_dim", "expected"), [("2", 1, 1 / 6), ("3", 1, 1 / 4), ("2", 2, 1 / 3)])
def test_steinberg_degree_limit(a1_sc, steinberg_a1, q, rho_dim, expected):
    # d^-1 = 2 (q + 1) / (q - 1) for the Steinberg representation of SL2
    report = degree_numeric(a1_sc, steinberg_a1, q, 40, rho_dim=rho_dim)
    assert report.degree == pytest.approx(expected, rel=1e-9)


def test_height_increments(a1_sc, steinberg_a1):
    increments = height_increments(a1_sc, steinberg_a1, 2, 3)
    assert increments == pytest.approx([1.5, 2.25, 1.125, 0.5625])
    assert sum(height_increments(a1_sc, steinberg_a1, 2, 10)) == pytest.approx(12279 / 2048)


def test_steinberg_increments_halve(a1_sc, steinberg_a1):
    increments = height_increments(a1_sc, steinberg_a1, 2, 40)
    for h in range(10, 40):
        assert increments[h + 1] <= 0.5 * increments[h] * (1 + 1e-12)


@pytest.mark.parametrize(("point", "q"), [(TorusPoint.build([0], ["1/2"]), 2), (TorusPoint.build(["2/3"], [0]), 3)])
def test_partial_sums_grow_with_the_bound(a1_sc, point, q):
    values = [partial_degree_inverse(a1_sc, point, bound).float_embed(sqrt(q)) for bound in range(9)]
    assert values[0].real > 0
    for previous, current in zip(values, values[1:], strict=False):
        assert current.imag == pytest.approx(0, abs=1e-9 * abs(current))
        assert current.real >= previous.real * (1 - 1e-12)


def test_self_paired_point_has_rational_coefficients(a1_ad):
    point = TorusPoint.build(["1/3"], [0])
    assert is_galois_stable(a1_ad, point, GaloisAutomorphism(3, 2))
    assert partial_degree_inverse(a1_ad, point, 6).has_rational_coefficients()
    assert not is_galois_stable(a1_ad, FIFTH_ROOT_POINT, GaloisAutomorphism(5, 2))


@pytest.mark.parametrize(
    ("increments", "expected"),
    [
        ([1.0, 0.5, 0.25, 0.125], (0.125, 0.5)),
        ([1.0, 0.0, 0.25], (0.25, 0.5)),
        ([0.0, 2.0], (2.0, None)),
        ([0.0, 0.0], (None, None)),
    ],
)
def test_tail_estimate(increments, expected):
    last, ratio = tail_estimate(increments)
    assert last == expected[0]
    if expected[1] is None:
        assert ratio is None
    else:
        assert ratio == pytest.approx(expected[1])


def test_slow_decay_is_flagged(a1_sc, steinberg_a1, caplog):
    with caplog.at_level(logging.WARNING, logger="klgalois"):
        report = degree_numeric(a1_sc, steinberg_a1, 2, 10, max_decay_ratio=0.1)
    assert not report.converged
    assert "does not decay" in caplog.text


@pytest.mark.parametrize("q", [1, "1/2", 0])
def test_q_must_exceed_one(a1_sc, steinberg_a1, q):
    with pytest.raises(InvalidParameter):
        degree_numeric(a1_sc, steinberg_a1, q, 3)


def test_float_oracle_matches_exact_engine(a1_ad):
    point = TorusPoint.build(["1/5"], [1])
    exact = degree_numeric(a1_ad, point, "3", 8, oracle=False)
    assert float_oracle_degree(a1_ad, point, "3", 8) == pytest.approx(exact.degree, rel=1e-9)


def test_oracle_disagreement_is_an_engine_defect(a1_sc, steinberg_a1, monkeypatch):
    monkeypatch.setattr("klgalois.formal_degree.float_oracle_degree", lambda *args: 123.0)
    with pytest.raises(EngineDefect, match="float oracle"):
        degree_numeric(a1_sc, steinberg_a1, "2", 10)
    # without the oracle there is nothing to cross-check
    assert degree_numeric(a1_sc, steinberg_a1, "2", 10, oracle=False).oracle_agrees is None


def test_galois_verdict_is_termwise_exact(a1_ad):
    point = TorusPoint.build(["1/5"], [1])
    gamma = GaloisAutomorphism(5, 2)
    verdict = galois_verdict(a1_ad, point, gamma, 6)
    assert verdict.termwise_exact_equal
    assert all(verdict.subset_equal.values())
    assert verdict.twisted_point == TorusPoint.build(["2/5"], [1])
    assert verdict.within_tolerance is None
    assert not verdict.galois_stable
    assert verdict.passed
    assert verdict.to_dict()["gamma"] == {"n": 5, "k": 2}


def test_galois_stability(a1_sc, steinberg_a1):
    assert is_galois_stable(a1_sc, steinberg_a1, GaloisAutomorphism(5, 2))


def test_central_galois_twist_keeps_the_degree(a2_sc):
    point = steinberg_point(a2_sc, ["1/3", "2/3"])
    report = galois_invariance_report(a2_sc, point, [GaloisAutomorphism(3, 2)], 4, "4")
    (verdict,) = report.galois_verdicts
    assert verdict.termwise_exact_equal
    assert verdict.within_tolerance
    assert verdict.numeric_degree_diff == pytest.approx(0, abs=1e-12)
    assert verdict.passed
    assert len(report.to_dict()["galois_verdicts"]) == 1


def test_parameter_degree():
    steinberg_gl2 = build_parameter(2, (2,), [0, 0])
    # (q - 1) / (q + 1) for the Steinberg representation of PGL2
    assert parameter_degree(steinberg_gl2, 2, 40).degree == pytest.approx(1 / 3, rel=1e-9)
    assert parameter_degree(build_parameter(1, (1,), [0]), 2, 40) is None


def test_tensor_product_degree():
    steinberg_gl2 = build_parameter(2, (2,), [0, 0])
    gl1 = build_parameter(1, (1,), [0])
    value = tensor_product_degree([(steinberg_gl2, 1), (steinberg_gl2, 2), (gl1, 1)], 2, 40)
    assert value == pytest.approx(1 / 3 * 3 / 5, rel=1e-9)


@pytest.mark.slow
def test_a2_steinberg_oracle(a2_sc, steinberg_a2):
    report = degree_numeric(a2_sc, steinberg_a2, "4", 12)
    assert report.oracle_agrees
    assert report.converged


def test_gl_degree_only_sees_the_nilpotent():
    degrees = {
        str(param): parameter_degree(param, "4", 12, oracle=False).degree
        for param in enumerate_parameters(2, 4)
        if is_essentially_discrete(param)
    }
    assert len(degrees) == 4
    assert max(degrees.values()) == pytest.approx(min(degrees.values()), rel=1e-12)


@pytest.mark.slow
def test_central_galois_twist_at_height_40(a2_sc, central_steinberg_a2):
    report = galois_invariance_report(a2_sc, central_steinberg_a2, [GaloisAutomorphism(3, 2)], 40, "2")
    (verdict,) = report.galois_verdicts
    assert verdict.termwise_exact_equal
    assert verdict.numeric_degree_diff < 1e-8
    assert report.oracle_agrees
