"""Environment-driven defaults.

``LCRIG_DISABLE_NUMBA``  set to 1/true/yes to force the pure-numpy kernels.
``LCRIG_TRIALS``         default number of random realizations per rank query.
``LCRIG_BUDGET``         default node budget for exhaustive enumerations.
"""

import os

_TRUTHY = {"1", "true", "yes", "on"}


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from exc


def numba_disabled() -> bool:
    return os.environ.get("LCRIG_DISABLE_NUMBA", "").strip().lower() in _TRUTHY


def default_trials() -> int:
    return max(1, _env_int("LCRIG_TRIALS", 3))


def default_budget() -> int:
    return max(1, _env_int("LCRIG_BUDGET", 10**7))
