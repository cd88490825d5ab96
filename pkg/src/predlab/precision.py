"""Working-precision helpers shared by the numerical modules.

All public functions take an explicit ``precision_bits`` argument and run
under a local mpmath working precision; nothing here mutates the global
mpmath context permanently.
"""
from __future__ import annotations

import math
from contextlib import contextmanager

from mpmath import mp, mpf

# Extra bits carried internally beyond the caller-requested precision.
GUARD_BITS = 32

MIN_PRECISION_BITS = 53
MAX_PRECISION_BITS = 4096


class PrecisionBudgetError(ValueError):
    """Requested run needs more precision than the caller allotted."""


@contextmanager
def workprec(bits: int):
    """Local mpmath precision context (bits of mantissa)."""
    with mp.workprec(int(bits)):
        yield


def validate_bits(bits: int) -> int:
    bits = int(bits)
    if not (MIN_PRECISION_BITS <= bits <= MAX_PRECISION_BITS):
        raise ValueError(f"precision_bits must lie in [{MIN_PRECISION_BITS}, {MAX_PRECISION_BITS}], got {bits}")
    return bits


def ulp(bits: int) -> mpf:
    """2**-bits as an exact mpf."""
    return mpf(2) ** (-int(bits))


def default_abs_target(precision_bits: int) -> mpf:
    """Default absolute-error target for covariance generation.

    Leaves GUARD_BITS of headroom below the requested precision so the
    Levinson recursion sees coefficients that are accurate to well below
    its own working resolution.
    """
    return mpf(2) ** (-(int(precision_bits) - GUARD_BITS))


def min_abs_target(precision_bits: int) -> mpf:
    """Tightest target representable at the given working precision."""
    return mpf(2) ** (-(int(precision_bits) - 16))


def required_precision_bits(n_max: int, ratio_limit: float) -> int:
    """Precision needed to resolve ``n_max`` recursion steps.

    For a density whose prediction-error ratio tends to ``ratio_limit``
    (rho < 1), sigma2_n shrinks like rho**n; resolving it needs roughly
    n*log2(1/rho) bits plus headroom.
    """
    rho = float(ratio_limit)
    if not (0.0 < rho <= 1.0):
        raise ValueError("ratio_limit must lie in (0, 1]")
    if rho == 1.0:
        return 64
    return int(math.ceil(n_max * math.log2(1.0 / rho))) + 64
