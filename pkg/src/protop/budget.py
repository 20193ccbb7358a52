"""Soft wall-clock cap shared by the long-running searches.

``PROTOP_BUDGET_MS`` in the environment sets the cap for the whole process;
searches poll :func:`expired` between batches.
"""

import os
import time

_deadline: float | None = None


def start_from_env() -> None:
    global _deadline
    raw = os.environ.get("PROTOP_BUDGET_MS")
    if raw:
        _deadline = time.monotonic() + int(raw) / 1000.0
    else:
        _deadline = None


def set_deadline_ms(ms: int | None) -> None:
    global _deadline
    _deadline = None if ms is None else time.monotonic() + ms / 1000.0


def expired() -> bool:
    return _deadline is not None and time.monotonic() > _deadline
