# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Global state department.  Don't reload this module or everything breaks.

Holds the schedule constants every run echoes into its report, the pinned
PRNG, and the structured logging setup.
"""

from __future__ import annotations

import os
import sys
import warnings

from fractions import Fraction
from typing import Any, Sequence

import numpy as np
import structlog

from .exceptions import DomainError
from .processors import add_ledger_totals, add_schedule_constants
from .typing import Rng


_BUILTIN_GROWTH_FACTOR = Fraction(8, 7)
_BUILTIN_CUTOFF_MULTIPLIER = 3
_BUILTIN_STATEVECTOR_LIMIT = 2**12
_BUILTIN_BASE_CASE_SIZE = 16
_BUILTIN_K_REPEAT_FACTOR = 10
_BUILTIN_K_REPEAT_ATTEMPTS = 3
_BUILTIN_PRNG = "PCG64"
_BUILTIN_JSON_LOGS = False

_BIT_GENERATORS = {
    "PCG64": np.random.PCG64,
    "PCG64DXSM": np.random.PCG64DXSM,
    "Philox": np.random.Philox,
    "SFC64": np.random.SFC64,
}


class _Configuration:
    """
    Global defaults.
    """

    is_configured: bool = False
    growth_factor: Fraction = _BUILTIN_GROWTH_FACTOR
    cutoff_multiplier: int = _BUILTIN_CUTOFF_MULTIPLIER
    statevector_limit: int = _BUILTIN_STATEVECTOR_LIMIT
    base_case_size: int = _BUILTIN_BASE_CASE_SIZE
    k_repeat_factor: int = _BUILTIN_K_REPEAT_FACTOR
    k_repeat_attempts: int = _BUILTIN_K_REPEAT_ATTEMPTS
    prng: str = _BUILTIN_PRNG
    json_logs: bool = _BUILTIN_JSON_LOGS


_CONFIG = _Configuration()
"""
Global defaults used when an algorithm isn't handed explicit constants.
"""


def is_configured() -> bool:
    """
    Return whether *qclaw* has been configured.

    If `False`, *qclaw* is running with builtin defaults.
    """
    return _CONFIG.is_configured


def get_config() -> dict[str, Any]:
    """
    Get a dictionary with the current configuration.

    .. note::

       Changes to the returned dictionary do *not* affect *qclaw*.
    """
    return {
        "growth_factor": _CONFIG.growth_factor,
        "cutoff_multiplier": _CONFIG.cutoff_multiplier,
        "statevector_limit": _CONFIG.statevector_limit,
        "base_case_size": _CONFIG.base_case_size,
        "k_repeat_factor": _CONFIG.k_repeat_factor,
        "k_repeat_attempts": _CONFIG.k_repeat_attempts,
        "prng": _CONFIG.prng,
        "json_logs": _CONFIG.json_logs,
    }


def schedule_constants() -> dict[str, Any]:
    """
    The constants that, together with a seed, pin a run bit-exactly.

    Echoed into every `qclaw.reports.RunReport`.
    """
    return {
        "growth_factor": str(_CONFIG.growth_factor),
        "cutoff_multiplier": _CONFIG.cutoff_multiplier,
        "base_case_size": _CONFIG.base_case_size,
        "k_repeat_factor": _CONFIG.k_repeat_factor,
        "k_repeat_attempts": _CONFIG.k_repeat_attempts,
        "prng": _CONFIG.prng,
    }


def configure(
    growth_factor: Fraction | float | None = None,
    cutoff_multiplier: int | None = None,
    statevector_limit: int | None = None,
    base_case_size: int | None = None,
    k_repeat_factor: int | None = None,
    k_repeat_attempts: int | None = None,
    prng: str | None = None,
    json_logs: bool | None = None,
) -> None:
    """
    Configures the **global** defaults.

    Can be called several times, keeping an argument at `None` leaves it
    unchanged from the current setting.

    After calling for the first time, `is_configured` starts returning `True`.

    Use `reset_defaults` to undo your changes.

    Args:
        growth_factor:
            The QSearch schedule's ``λ``; must lie in ``(1, 4/3)``.

        cutoff_multiplier:
            Decision problems stop after ``cutoff_multiplier * ⌈√K⌉``
            applications.

        statevector_limit: Largest space the explicit amplitude vector allows.

        base_case_size:
            Both-ordered claw problems of at most this size are solved by a
            classical merge.

        k_repeat_factor: Subdomain factor ``c`` in ``min(N, ⌈cN/k⌉)``.

        k_repeat_attempts: Fresh subdomains tried before giving up.

        prng: Name of the numpy bit generator backing every run.

        json_logs: Render log entries as JSON instead of console columns.

    Raises:
        DomainError: if a constant is out of range.
    """
    if growth_factor is not None:
        growth_factor = Fraction(growth_factor).limit_denominator(10**6)
        if not 1 < growth_factor < Fraction(4, 3):
            msg = f"growth factor must lie in (1, 4/3), got {growth_factor}"
            raise DomainError(msg)
    if prng is not None and prng not in _BIT_GENERATORS:
        msg = f"unknown bit generator {prng!r}; pick one of {sorted(_BIT_GENERATORS)}"
        raise DomainError(msg)
    for name, value in (
        ("cutoff_multiplier", cutoff_multiplier),
        ("statevector_limit", statevector_limit),
        ("base_case_size", base_case_size),
        ("k_repeat_factor", k_repeat_factor),
        ("k_repeat_attempts", k_repeat_attempts),
    ):
        if value is not None and value < 1:
            msg = f"{name} must be positive, got {value}"
            raise DomainError(msg)

    _CONFIG.is_configured = True

    if growth_factor is not None:
        _CONFIG.growth_factor = growth_factor
    if cutoff_multiplier is not None:
        _CONFIG.cutoff_multiplier = cutoff_multiplier
    if statevector_limit is not None:
        _CONFIG.statevector_limit = statevector_limit
    if base_case_size is not None:
        _CONFIG.base_case_size = base_case_size
    if k_repeat_factor is not None:
        _CONFIG.k_repeat_factor = k_repeat_factor
    if k_repeat_attempts is not None:
        _CONFIG.k_repeat_attempts = k_repeat_attempts
    if prng is not None:
        _CONFIG.prng = prng
    if json_logs is not None:
        _CONFIG.json_logs = json_logs
        configure_logging()


def configure_once(**kw: Any) -> None:
    """
    Configures if qclaw isn't configured yet.

    Raises:
        RuntimeWarning: if repeated configuration is attempted.
    """
    if not _CONFIG.is_configured:
        configure(**kw)
    else:
        warnings.warn(
            "Repeated configuration attempted.", RuntimeWarning, stacklevel=2
        )


def reset_defaults() -> None:
    """
    Resets global default values to builtin defaults.

    `is_configured` starts returning `False` afterwards.
    """
    _CONFIG.is_configured = False
    _CONFIG.growth_factor = _BUILTIN_GROWTH_FACTOR
    _CONFIG.cutoff_multiplier = _BUILTIN_CUTOFF_MULTIPLIER
    _CONFIG.statevector_limit = _BUILTIN_STATEVECTOR_LIMIT
    _CONFIG.base_case_size = _BUILTIN_BASE_CASE_SIZE
    _CONFIG.k_repeat_factor = _BUILTIN_K_REPEAT_FACTOR
    _CONFIG.k_repeat_attempts = _BUILTIN_K_REPEAT_ATTEMPTS
    _CONFIG.prng = _BUILTIN_PRNG
    _CONFIG.json_logs = _BUILTIN_JSON_LOGS


def make_rng(seed: int, *keys: int) -> Rng:
    """
    Return an independent generator for ``(seed, *keys)``.

    ``keys`` are typically ``(size, trial)`` so that trials never share a
    stream, whatever order they run in.
    """
    bit_generator = _BIT_GENERATORS[_CONFIG.prng]
    return np.random.Generator(
        bit_generator(np.random.SeedSequence([seed, *keys]))
    )


def _default_processors(json_logs: bool) -> Sequence[Any]:
    renderer: Any
    if json_logs:
        renderer = structlog.processors.JSONRenderer(sort_keys=True)
    else:
        renderer = structlog.dev.ConsoleRenderer(
            colors=os.environ.get("NO_COLOR", "") == ""
            and sys.stderr is not None
            and hasattr(sys.stderr, "isatty")
            and sys.stderr.isatty()
        )

    return [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        add_ledger_totals,
        add_schedule_constants,
        structlog.processors.TimeStamper(fmt="%Y-%m-%d %H:%M:%S", utc=False),
        renderer,
    ]


def configure_logging(level: int | None = None) -> None:
    """
    Install *qclaw*'s processor chain on structlog.

    Logs go to standard error so that reports written to standard output stay
    machine readable.
    """
    structlog.configure(
        processors=_default_processors(_CONFIG.json_logs),
        wrapper_class=structlog.make_filtering_bound_logger(
            level if level is not None else 20
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(*args: Any, **initial_values: Any) -> Any:
    """
    Convenience wrapper around `structlog.get_logger`.
    """
    return structlog.get_logger(*args, **initial_values)
