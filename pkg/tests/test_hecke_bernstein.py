"""Tests for the Bernstein presentation of the affine Hecke algebra."""

from __future__ import annotations

import pytest

from klgalois.exact_field import GaloisAutomorphism, RatFun
from klgalois.exceptions import DimensionMismatch, InvalidRootDatum, NotInvariant
from klgalois.hecke_bernstein import (
    HeckeElement,
    RegularMatrix,
    RelationReport,
    braid_order,
    central_character,
    central_character_orbit,
    cross_quotient,
    orbit_sum,
    polynomial_action,
    same_orbit,
    verify_relations,
)
from klgalois.laurent import IntLaurent, WeightPolynomial
from klgalois.root_datum import build_root_datum
from klgalois.torus import TorusPoint

Q = IntLaurent.q()
Q_MINUS_ONE = IntLaurent.q_minus_one()


def test_cross_quotient_closed_form(a1_sc):
    assert cross_quotient(a1_sc, 0, (3,)) == (((3,), 1), ((1,), 1), ((-1,), 1))
    assert cross_quotient(a1_sc, 0, (-2,)) == (((0,), -1), ((2,), -1))
    assert cross_quotient(a1_sc, 0, (0,)) == ()


def test_quadratic_relation(a2_sc):
    one = HeckeElement.one(a2_sc)
    for i in range(2):
        t = HeckeElement.T(a2_sc, i)
        assert t * t == t * Q_MINUS_ONE + one * Q


def test_braid_relation(a2_sc):
    t0, t1 = HeckeElement.T(a2_sc, 0), HeckeElement.T(a2_sc, 1)
    assert t0 * t1 * t0 == t1 * t0 * t1
    assert t0 * t1 * t0 == HeckeElement.T(a2_sc, (0, 1, 0))


def test_bernstein_cross_relation(a1_sc):
    t = HeckeElement.T(a1_sc, 0)
    lhs = HeckeElement.theta(a1_sc, (1,)) * t - t * HeckeElement.theta(a1_sc, (-1,))
    assert lhs == HeckeElement.theta(a1_sc, (1,)) * Q_MINUS_ONE


def test_theta_is_additive(b2_sc):
    assert HeckeElement.theta(b2_sc, (1, -2)) * HeckeElement.theta(b2_sc, (0, 3)) == HeckeElement.theta(b2_sc, (1, 1))


def test_orbit_sums_are_central(a2_sc):
    z = HeckeElement.from_weight_polynomial(a2_sc, orbit_sum(a2_sc, (1, 1)))
    for i in range(2):
        t = HeckeElement.T(a2_sc, i)
        assert z * t == t * z


def test_polynomial_representation(a1_sc):
    t = HeckeElement.T(a1_sc, 0)
    one = WeightPolynomial.one(1)
    assert polynomial_action(t, one) == one * Q
    theta = HeckeElement.theta(a1_sc, (1,))
    f = WeightPolynomial.monomial((2,))
    assert polynomial_action(t * theta, f) == polynomial_action(t, polynomial_action(theta, f))


def test_regular_matrix_of_t(a1_sc):
    identity = a1_sc.identity.action
    s = a1_sc.element_from_word((0,)).action
    t = RegularMatrix(HeckeElement.T(a1_sc, 0))
    assert t.column(((0,), identity)) == {((0,), s): IntLaurent.constant(1)}
    assert t.apply(t.column(((0,), identity))) == {((0,), s): Q_MINUS_ONE, ((0,), identity): Q}


def test_regular_matrix_of_theta_shifts_weights(a1_sc):
    s = a1_sc.element_from_word((0,)).action
    theta = RegularMatrix(HeckeElement.theta(a1_sc, (1,)))
    assert theta.column(((0,), s)) == {((1,), s): IntLaurent.constant(1)}


def test_regular_matrices_compose_like_products(a2_sc):
    t0 = HeckeElement.T(a2_sc, 0)
    theta = HeckeElement.theta(a2_sc, (1, 0))
    key = ((0, -1), a2_sc.element_from_word((1,)).action)
    composed = RegularMatrix(t0).apply(RegularMatrix(theta).column(key))
    assert composed == RegularMatrix(t0 * theta).column(key)
    assert composed != RegularMatrix(theta * t0).column(key)


def test_specialization(a1_sc):
    t = HeckeElement.T(a1_sc, 0)
    assert (t * t).specialize() == {((0,), a1_sc.identity.action): 1}


def test_elements_of_different_algebras_do_not_mix(a1_sc, a2_sc):
    with pytest.raises(InvalidRootDatum):
        HeckeElement.one(a1_sc) + HeckeElement.one(a2_sc)


def test_to_list(a1_sc):
    element = HeckeElement.T(a1_sc, 0) + HeckeElement.theta(a1_sc, (1,), Q)
    rows = element.to_list()
    assert rows[0] == {"lambda": [1], "w_word": [], "coeff": [[2, 1]]}
    assert rows[1] == {"lambda": [0], "w_word": [0], "coeff": [[0, 1]]}


@pytest.mark.parametrize(("label", "expected"), [("A2", 3), ("B2", 4), ("G2", 6)])
def test_braid_orders(label, expected):
    assert braid_order(build_root_datum(label), 0, 1) == expected


@pytest.mark.parametrize(("label", "length_bound"), [("A1-sc", 2), ("A1-ad", 2), ("A2-sc", 3), ("GL2", 2)])
def test_verify_relations(label, length_bound):
    report = verify_relations(build_root_datum(label), length_bound)
    assert report.passed, [check.to_dict() for check in report.checks if not check.passed]
    counts = report.counts()
    for relation in (
        "quadratic",
        "cross",
        "centrality",
        "representation_model",
        "regular_representation",
        "specialization",
        "theta_additivity",
    ):
        assert counts[relation]["checked"] > 0
        assert counts[relation]["failed"] == 0
    assert report.to_dict()["passed"] is True


def test_verify_relations_reports_braids(a2_sc):
    counts = verify_relations(a2_sc, 3).counts()
    assert counts["braid"] == {"checked": 1, "failed": 0}
    # m = 3 is above a length bound of 2
    assert "braid" not in verify_relations(a2_sc, 2).counts()


@pytest.mark.slow
def test_verify_relations_b2(b2_sc):
    assert verify_relations(b2_sc, 4).passed


def test_relation_report_keeps_witnesses():
    report = RelationReport("A1-sc", 1)
    report.add("quadratic", "s0", 1, 2)
    assert not report.passed
    assert report.checks[0].witness == "lhs=1 rhs=2"
    assert report.counts() == {"quadratic": {"checked": 1, "failed": 1}}


def test_central_character(a1_sc, steinberg_a1):
    value = central_character(a1_sc, steinberg_a1, orbit_sum(a1_sc, (1,)))
    assert value == RatFun.from_laurent({1: 1, -1: 1})
    with pytest.raises(NotInvariant):
        central_character(a1_sc, steinberg_a1, WeightPolynomial.monomial((1,)))


def test_central_character_orbit(a1_sc, steinberg_a1):
    flipped = TorusPoint.build([0], ["-1/2"])
    assert same_orbit(a1_sc, steinberg_a1, flipped)
    assert central_character_orbit(a1_sc, flipped).representative == steinberg_a1
    assert not same_orbit(a1_sc, steinberg_a1, TorusPoint.build([0], [1]))
    with pytest.raises(DimensionMismatch):
        central_character_orbit(a1_sc, TorusPoint.build([0, 0], [0, 0]))


def test_central_character_orbit_for_gl(gl2):
    point = TorusPoint.build([0, "1/3"], [0, 1])
    representative = central_character_orbit(gl2, point).representative
    assert representative == TorusPoint.build(["1/3", 0], [1, 0])


def test_galois_image_of_central_character(gl2):
    character = central_character_orbit(gl2, TorusPoint.build(["1/5", "2/5"], [0, 0]))
    image = character.galois_image(GaloisAutomorphism(5, 2))
    assert image == central_character_orbit(gl2, TorusPoint.build(["4/5", "2/5"], [0, 0]))
    assert image.to_dict()["representative"]["torsion"] == ["2/5", "4/5"]
