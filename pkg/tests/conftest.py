"""Global fixtures for the KL Galois twist verifier tests."""

from __future__ import annotations

import logging

import pytest

from klgalois.const import _LOGGER_SPAM_LESS
from klgalois.root_datum import build_gl, build_root_datum
from klgalois.torus import TorusPoint, steinberg_point


@pytest.fixture
def a1_sc():
    return build_root_datum("A1-sc")


@pytest.fixture
def a1_ad():
    return build_root_datum("A1-ad")


@pytest.fixture
def a2_sc():
    return build_root_datum("A2-sc")


@pytest.fixture
def b2_sc():
    return build_root_datum("B2-sc")


@pytest.fixture
def gl2():
    return build_gl(2)


@pytest.fixture
def steinberg_a1(a1_sc) -> TorusPoint:
    """Every simple root evaluates to q."""
    return steinberg_point(a1_sc)


@pytest.fixture
def steinberg_a2(a2_sc) -> TorusPoint:
    return steinberg_point(a2_sc)


# the rate limiter is module level
@pytest.fixture(autouse=True)
def reset_log_spam():
    _LOGGER_SPAM_LESS.reset()
    yield


@pytest.fixture
def debug_logging(caplog):
    caplog.set_level(logging.DEBUG, logger="klgalois")
    return caplog


@pytest.fixture(autouse=True)
def restore_package_logger():
    """The CLI installs its own handler; put the logger back afterwards."""
    logger = logging.getLogger("klgalois")
    saved = (list(logger.handlers), logger.level, logger.propagate)
    yield
    logger.handlers[:], logger.level, logger.propagate = saved[0], saved[1], saved[2]
