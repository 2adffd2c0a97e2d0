"""Trial-kernel backend selection.

The compiled kernel is used when the extension imports; otherwise the NumPy
implementation is. Both produce identical counters for identical draws.
"""
from __future__ import annotations

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

BACKENDS = {"numpy": _pykernel.simulate_block}
if _ckernel is not None:
    BACKENDS["cython"] = _ckernel.simulate_block

DEFAULT_BACKEND = "cython" if "cython" in BACKENDS else "numpy"


def get_kernel(backend: str | None = None):
    name = backend or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
