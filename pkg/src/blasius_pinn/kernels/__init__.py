"""Backend selection for the hot elementwise jet kernels.

The compiled Cython core is used when it built successfully; otherwise the
numpy fallback is selected.  Set BLASIUS_PURE_PYTHON=1 to force the fallback
(used by the benchmark and by tests that compare the two).
"""

import os

from . import _fallback

_impl = _fallback
if os.environ.get("BLASIUS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _corejet as _impl  # type: ignore[no-redef]
    except ImportError:
        pass


def backend_name() -> str:
    return _impl.BACKEND_NAME


def use_backend(name: str) -> None:
    """Switch kernel backend at runtime ('numpy' or 'cython')."""
    global _impl
    if name == "numpy":
        _impl = _fallback
    elif name == "cython":
        from . import _corejet  # raises ImportError if not built
        _impl = _corejet
    else:
        raise ValueError(f"unknown kernel backend: {name!r}")


def tanh_jet_forward(z):
    return _impl.tanh_jet_forward(z)


def tanh_jet_backward(t, z, abar):
    return _impl.tanh_jet_backward(t, z, abar)
