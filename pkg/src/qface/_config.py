"""Runtime switches read from the environment.

``QFACE_DISABLE_JIT=1`` runs every kernel as plain Python over numpy arrays.
``QFACE_EDGE_LIMIT=<n>`` overrides both the exhaustive facet-scan threshold
and the oracle's brute-force guard.
"""

import os

DEFAULT_EXHAUSTIVE_LIMIT = 16
DEFAULT_ORACLE_LIMIT = 14
# bitmask kernels store edge subsets in an int64
MAX_KERNEL_EDGES = 62


def _truthy(value):
    return value.strip().lower() not in ("", "0", "false", "no", "off")


def jit_disabled():
    return _truthy(os.environ.get("QFACE_DISABLE_JIT", ""))


def _edge_limit_override():
    raw = os.environ.get("QFACE_EDGE_LIMIT")
    if raw is None or not raw.strip():
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"QFACE_EDGE_LIMIT must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("QFACE_EDGE_LIMIT must be non-negative")
    return value


def exhaustive_limit():
    override = _edge_limit_override()
    return DEFAULT_EXHAUSTIVE_LIMIT if override is None else override


def oracle_limit():
    override = _edge_limit_override()
    return DEFAULT_ORACLE_LIMIT if override is None else override
