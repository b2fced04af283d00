"""Kernel selection.

The compiled extension ``koornwinder._kernel`` is used when it imports and
``KOORNWINDER_PURE`` is unset; otherwise the pure-Python twin is used. Both
expose the same functions, so callers never branch on the choice.
"""

import os

from . import _kernel_py

IMPLEMENTATION = "python"
_impl = _kernel_py

if not os.environ.get("KOORNWINDER_PURE"):
    try:
        from . import _kernel as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        IMPLEMENTATION = _compiled.IMPLEMENTATION

add_into = _impl.add_into
mul = _impl.mul
addmul = _impl.addmul
prune = _impl.prune
mul_binomial = _impl.mul_binomial
div_binomial = _impl.div_binomial


def implementations():
    """Map of available kernel implementations, keyed by name."""
    out = {"python": _kernel_py}
    try:
        from . import _kernel as compiled
    except ImportError:
        return out
    out[compiled.IMPLEMENTATION] = compiled
    return out
