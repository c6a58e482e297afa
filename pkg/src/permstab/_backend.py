"""Kernel backend selection.

The compiled Cython module is used when it imports; otherwise the NumPy
fallback takes over. Both expose the same four functions.
"""
from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNEL_NAMES = ("ie_poly_real", "ie_poly_complex", "ie_companion_real", "permanent_ryser")


def available_backends():
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return names


def get_backend(name=None):
    """Return the kernel module called `name` ("compiled" or "python")."""
    if name is None:
        return _active
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; run `pip install -e .`")
        return _compiled
    if name == "python":
        return _pykernels
    raise ValueError(f"unknown backend {name!r}")


def set_backend(name):
    """Switch the process-wide default backend; returns the previous name."""
    global _active
    previous = backend_name()
    _active = get_backend(name)
    return previous


def backend_name(module=None):
    module = _active if module is None else module
    return "compiled" if module is _compiled and _compiled is not None else "python"


_active = _compiled if _compiled is not None else _pykernels
