"""Tests for the rate-limited logger."""

from __future__ import annotations

import logging

from klgalois.log_spam_less import KLGaloisLogSpamLess


class FakeClock:
    def __init__(self) -> None:
        self.now = 1000.0

    def __call__(self) -> float:
        return self.now


def test_repeats_are_suppressed_within_interval(caplog):
    caplog.set_level(logging.DEBUG)
    clock = FakeClock()
    spamless = KLGaloisLogSpamLess(logging.getLogger("klgalois.test"), 10, clock=clock)

    spamless.warning("key", "first %s", 1)
    clock.now += 1
    spamless.warning("key", "second %s", 2)
    spamless.warning("key", "third %s", 3)
    clock.now += 20
    spamless.warning("key", "fourth %s", 4)

    messages = [record.getMessage() for record in caplog.records]
    assert messages == ["first 1", "fourth 4 (2 previous messages suppressed)"]


def test_keys_are_independent(caplog):
    caplog.set_level(logging.DEBUG)
    spamless = KLGaloisLogSpamLess(logging.getLogger("klgalois.test"), 10, clock=FakeClock())
    spamless.warning("a", "from a")
    spamless.debug("b", "from b")
    spamless.warning("a", "again from a")
    assert [record.getMessage() for record in caplog.records] == ["from a", "from b"]
    assert [record.levelno for record in caplog.records] == [logging.WARNING, logging.DEBUG]


def test_reset_forgets_every_key(caplog):
    caplog.set_level(logging.DEBUG)
    spamless = KLGaloisLogSpamLess(logging.getLogger("klgalois.test"), 10, clock=FakeClock())
    spamless.log(logging.INFO, "a", "once")
    spamless.log(logging.INFO, "a", "dropped")
    spamless.reset()
    spamless.log(logging.INFO, "a", "twice")
    assert [record.getMessage() for record in caplog.records] == ["once", "twice"]
