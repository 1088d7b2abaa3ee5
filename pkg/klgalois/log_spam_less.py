"""Rate-limited logging for the verification campaigns."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Callable


@dataclass
class _KeyState:
    stamp: float
    suppressed: int = 0


class KLGaloisLogSpamLess:
    """
    Logs at most one message per key and interval.

    Campaigns walk thousands of parameters, and the same complaint (a
    non-regular point, a gamma that is not a unit) comes up for a whole
    family of them in a row. The first message after a quiet interval says
    how many were dropped in between.
    """

    def __init__(self, logger: logging.Logger, spam_interval: float, clock: Callable[[], float] = time.monotonic) -> None:
        self._logger = logger
        self._interval = spam_interval
        self._clock = clock
        self._keys: dict[str, _KeyState] = {}

    def reset(self) -> None:
        self._keys.clear()

    def _admit(self, key: str) -> int | None:
        """Messages dropped since the last one for this key, or None to drop this one too."""
        now = self._clock()
        state = self._keys.get(key)
        if state is None:
            self._keys[key] = _KeyState(now)
            return 0
        if now - state.stamp <= self._interval:
            state.suppressed += 1
            return None
        dropped, state.suppressed, state.stamp = state.suppressed, 0, now
        return dropped

    def log(self, level: int, key: str, msg: str, *args, **kwargs) -> None:
        dropped = self._admit(key)
        if dropped is None:
            return
        if dropped:
            msg = f"{msg} ({dropped} previous messages suppressed)"
        self._logger.log(level, msg, *args, **kwargs)

    def debug(self, key: str, msg: str, *args, **kwargs) -> None:
        self.log(logging.DEBUG, key, msg, *args, **kwargs)

    def warning(self, key: str, msg: str, *args, **kwargs) -> None:
        self.log(logging.WARNING, key, msg, *args, **kwargs)
