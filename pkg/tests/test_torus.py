"""Tests for torus points."""

from __future__ import annotations

from fractions import Fraction

import pytest

from klgalois.exact_field import GaloisAutomorphism
from klgalois.exceptions import DimensionMismatch, InvalidParameter
from klgalois.root_datum import build_gl
from klgalois.torus import TorusPoint, steinberg_point


def test_coordinates_are_normalized():
    point = TorusPoint.build(["5/4", "-1/3"], [1, "1/2"])
    assert point.torsion == (Fraction(1, 4), Fraction(2, 3))
    assert point.level == 12
    assert TorusPoint.build(qexp=[1]).level == 1


def test_invalid_points():
    with pytest.raises(InvalidParameter):
        TorusPoint.build([0], ["1/3"])
    with pytest.raises(DimensionMismatch):
        TorusPoint.build([0, 0], [0])
    with pytest.raises(TypeError):
        TorusPoint.build([0.5], [0])


def test_monomial():
    point = TorusPoint.build(["1/4", 0], ["1/2", 1])
    assert point.monomial((1, 1)) == (1, 3)
    assert point.monomial((2, 0), level=8) == (4, 2)
    with pytest.raises(InvalidParameter):
        point.monomial((1, 0), level=2)
    with pytest.raises(DimensionMismatch):
        point.monomial((1,))


def test_is_trivial_on():
    point = TorusPoint.build(["1/2"], [0])
    assert point.is_trivial_on((2,))
    assert not point.is_trivial_on((1,))


def test_galois_twists_the_compact_part_only():
    point = TorusPoint.build(["1/5"], ["1/2"])
    twisted = point.galois(GaloisAutomorphism(5, 2))
    assert twisted == TorusPoint.build(["2/5"], ["1/2"])
    # an automorphism of a larger field acts through its restriction
    assert point.galois(GaloisAutomorphism(10, 3)).torsion == (Fraction(3, 5),)


def test_weyl_translate_transports_characters(a2_sc):
    point = TorusPoint.build(["1/3", 0], [1, "1/2"])
    weights = [(1, 0), (0, 1), (2, -1), (-1, 3)]
    for w in a2_sc.weyl_elements():
        moved = point.weyl_translate(a2_sc, w)
        for weight in weights:
            assert moved.monomial(w.apply(weight), point.level) == point.monomial(weight)


def test_steinberg_points(a1_sc, a1_ad, a2_sc):
    assert steinberg_point(a1_sc).qexp == (Fraction(1, 2),)
    assert steinberg_point(a1_ad).qexp == (Fraction(1),)
    assert steinberg_point(a2_sc).qexp == (Fraction(1), Fraction(1))
    for root in a2_sc.simple_roots:
        assert steinberg_point(a2_sc).monomial(root) == (0, 2)


def test_steinberg_point_of_gl_fixes_the_center():
    gl2 = build_gl(2)
    point = steinberg_point(gl2)
    assert point.monomial((1, -1)) == (0, 2)
    assert point.qexp == (Fraction(1), Fraction(0))


def test_steinberg_point_torsion_must_be_central(a1_sc):
    point = steinberg_point(a1_sc, ["1/2"])
    assert point.level == 2
    with pytest.raises(InvalidParameter):
        steinberg_point(a1_sc, ["1/4"])


def test_serialization():
    point = TorusPoint.build(["1/3"], ["1/2"])
    assert str(point) == "s[(1/3, 1/2)]"
    assert point.to_dict() == {"torsion": ["1/3"], "qexp": ["1/2"], "level": 3}
    assert TorusPoint.from_dict(point.to_dict()) == point
    assert point.compact_part() == TorusPoint.build(["1/3"], [0])
