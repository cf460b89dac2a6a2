"""Runtime knobs, overridable through environment variables."""

from __future__ import annotations

import os

DEFAULT_ORDER_GUARD = 5000
ORDER_GUARD_ENV = "NACENT_MAX_ORDER"

# When set (to anything non-empty), normality checks use the definitional
# all-elements conjugation scan instead of the generating-set fast path.
EXHAUSTIVE_NORMALITY_ENV = "NACENT_EXHAUSTIVE_NORMALITY"


def order_guard() -> int:
    """Maximum group order any constructor will materialize by default."""
    raw = os.environ.get(ORDER_GUARD_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_ORDER_GUARD


def exhaustive_normality() -> bool:
    return bool(os.environ.get(EXHAUSTIVE_NORMALITY_ENV))
