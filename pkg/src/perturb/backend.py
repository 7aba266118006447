"""Kernel backend selection.

The compiled extension is preferred; the pure-Python module is a drop-in
replacement with identical semantics.  Set PERTURB_PURE=1 to force the
fallback (used by the benchmark and the backend-parity tests).
"""

from __future__ import annotations

import os

from perturb import _pure

if os.environ.get("PERTURB_PURE"):
    _impl = _pure
else:
    try:
        from perturb import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND_NAME
EMBED_MAX_N = _impl.EMBED_MAX_N

EMBED_FOUND = _pure.EMBED_FOUND
EMBED_NONE = _pure.EMBED_NONE
EMBED_TIMEOUT = _pure.EMBED_TIMEOUT

anchored_density_scan = _impl.anchored_density_scan


def spanning_embed_search(h_bits, host_bits, deg_ok, order, time_budget, node_budget):
    n = len(order)
    if _impl.EMBED_MAX_N is not None and n > _impl.EMBED_MAX_N:
        return _pure.spanning_embed_search(
            h_bits, host_bits, deg_ok, order, time_budget, node_budget
        )
    return _impl.spanning_embed_search(
        h_bits, host_bits, deg_ok, order, time_budget, node_budget
    )
