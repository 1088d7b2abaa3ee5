"""Tests for GL_n Kazhdan-Lusztig parameters."""

from __future__ import annotations

import logging
from fractions import Fraction

import pytest

from klgalois.exact_field import GaloisAutomorphism
from klgalois.exceptions import GuardExceeded, InvalidParameter
from klgalois.kl_parameters import (
    KLParameter,
    NilpotentMatrix,
    build_parameter,
    centralizer_dimension,
    enumerate_parameters,
    galois_twist,
    is_discrete_combinatorial,
    is_essentially_discrete,
    jm_cocharacter,
    project_to_semisimple,
    twist_parameter,
)
from klgalois.torus import steinberg_point

from .const import MOCK_PARAMETER


def test_nilpotent_matrix():
    nilpotent = NilpotentMatrix(3, (2, 1))
    assert nilpotent.matrix == ((0, 1, 0), (0, 0, 0), (0, 0, 0))
    assert nilpotent.unit_entries() == [(0, 1)]
    assert [list(block) for block in nilpotent.blocks()] == [[0, 1], [2]]
    assert NilpotentMatrix.from_matrix(nilpotent.matrix) == nilpotent


def test_nilpotent_from_matrix():
    assert NilpotentMatrix.from_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]]).partition == (3,)
    assert NilpotentMatrix.from_matrix([[0, 0], [0, 0]]).partition == (1, 1)
    with pytest.raises(InvalidParameter):
        NilpotentMatrix.from_matrix([[1, 0], [0, 0]])


@pytest.mark.parametrize("partition", [(1, 2), (3,), (2, 0), ()])
def test_bad_partitions(partition):
    with pytest.raises(InvalidParameter):
        NilpotentMatrix(2, partition)


def test_jm_cocharacter():
    assert jm_cocharacter((3, 1)) == (1, 0, -1, 0)
    assert jm_cocharacter((2,)) == (Fraction(1, 2), Fraction(-1, 2))


def test_build_parameter_certificate():
    param = build_parameter(2, (2,), [0, 0])
    assert param.valid
    assert param.violation is None
    broken = build_parameter(2, (2,), [0, "1/2"])
    assert not broken.valid
    assert broken.violation == (1, 2)
    with pytest.raises(InvalidParameter):
        centralizer_dimension(broken)
    with pytest.raises(InvalidParameter):
        build_parameter(2, (2,), [0])
    with pytest.raises(InvalidParameter):
        build_parameter(2, (2,), [0, 0], rho_dim=0)


@pytest.mark.parametrize(
    ("partition", "torsion", "dimension", "discrete"),
    [
        ((2,), [0, 0], 1, True),
        ((1, 1), [0, 0], 4, False),
        ((1, 1), [0, "1/2"], 2, False),
        ((3,), ["1/3"] * 3, 1, True),
        ((2, 1), [0, 0, 0], 2, False),
    ],
)
def test_discreteness(partition, torsion, dimension, discrete):
    param = build_parameter(sum(partition), partition, torsion)
    assert centralizer_dimension(param) == dimension
    assert is_essentially_discrete(param) is discrete
    assert is_discrete_combinatorial(param) is discrete


@pytest.mark.parametrize(("n", "level", "count"), [(1, 1, 1), (2, 1, 2), (1, 3, 3), (2, 2, 5), (3, 1, 3)])
def test_enumerate_parameters(n, level, count):
    params = enumerate_parameters(n, level)
    assert len(params) == count
    assert len(set(params)) == count
    assert all(param.valid for param in params)
    assert sum(is_essentially_discrete(param) for param in params) == level


def test_enumerate_parameters_guards():
    with pytest.raises(GuardExceeded):
        enumerate_parameters(7, 1)
    with pytest.raises(GuardExceeded):
        enumerate_parameters(2, 13)
    with pytest.raises(InvalidParameter):
        enumerate_parameters(0, 1)


def test_normal_form_sorts_strings():
    param = build_parameter(3, (2, 1), ["1/2", "1/2", 0]).normal_form()
    assert param.partition == (2, 1)
    same_length = build_parameter(2, (1, 1), ["1/2", 0]).normal_form()
    assert same_length.torsion == (Fraction(0), Fraction(1, 2))
    assert same_length == build_parameter(2, (1, 1), [0, "1/2"])


def test_parameter_file_format():
    param = KLParameter.from_dict(MOCK_PARAMETER)
    assert param.torsion == (Fraction(1, 3), Fraction(1, 3))
    assert str(param) == "GL2[p=[2], a=(1/3,1/3)]"
    data = param.to_dict()
    assert data["torsion_num"] == [1, 1]
    assert data["torsion_level"] == 3
    assert KLParameter.from_dict(data) == param


@pytest.mark.parametrize(
    "data",
    [
        {"n": 2, "partition": [2], "torsion_level": 3, "torsion_num": [1]},
        {"n": 9, "partition": [9]},
        {"partition": [2]},
        {"n": 2, "partition": [2], "torsion_level": 0},
    ],
)
def test_invalid_parameter_files(data):
    with pytest.raises(InvalidParameter):
        KLParameter.from_dict(data)


def test_galois_twist_preserves_everything():
    param = build_parameter(2, (2,), ["1/5", "1/5"])
    gamma = GaloisAutomorphism(5, 2)
    result = galois_twist(gamma, param)
    assert result.twisted.torsion == (Fraction(2, 5), Fraction(2, 5))
    assert result.all_preserved
    assert result.to_dict()["preserved"] == {
        "validity": True,
        "discreteness": True,
        "central_character_orbit_compatible": True,
    }


def test_galois_twist_of_every_enumerated_parameter():
    for param in enumerate_parameters(2, 5):
        for gamma in GaloisAutomorphism.all_for_level(5):
            assert galois_twist(gamma, param).all_preserved


def test_twist_keeps_an_invalid_certificate_invalid():
    broken = build_parameter(2, (2,), [0, "1/3"])
    twisted = twist_parameter(GaloisAutomorphism(3, 2), broken)
    assert not twisted.valid
    assert galois_twist(GaloisAutomorphism(3, 2), broken).validity_preserved


def test_project_to_semisimple(a1_ad):
    rd, point = project_to_semisimple(build_parameter(2, (2,), [0, 0]))
    assert rd == a1_ad
    assert point == steinberg_point(a1_ad)
    assert project_to_semisimple(build_parameter(1, (1,), [0])) is None


def test_criteria_disagreement_is_logged(caplog, monkeypatch):
    monkeypatch.setattr("klgalois.kl_parameters.is_discrete_combinatorial", lambda param: False)
    with caplog.at_level(logging.WARNING, logger="klgalois"):
        assert is_essentially_discrete(build_parameter(2, (2,), [0, 0]))
    assert "Discreteness criteria disagree" in caplog.text


def test_twists_compose():
    param = build_parameter(3, (2, 1), ["1/7", "1/7", "3/7"])
    a, b = GaloisAutomorphism(7, 3), GaloisAutomorphism(7, 5)
    assert twist_parameter(a, twist_parameter(b, param)) == twist_parameter(a @ b, param)
