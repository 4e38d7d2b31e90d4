"""Kernel backend selection.

The compiled extension is used when it was built at install time; otherwise
the pure-Python twin takes over with identical semantics.  ``set_backend``
rebinds the module-level functions, so callers must access them through this
module (``kernel.mul_terms(...)``), never ``from``-import them.
"""

from __future__ import annotations

from . import _termops_py as _py

try:
    from . import _termops_cy as _cy  # built by setup.py; absent in pure source runs
except ImportError:
    _cy = None

_FUNCTIONS = (
    "add_terms",
    "sub_terms",
    "neg_terms",
    "scale_terms",
    "mul_terms",
    "mul_into",
    "matmul_terms",
)

_active = _cy if _cy is not None else _py


def available_backends() -> tuple[str, ...]:
    return ("python", "cython") if _cy is not None else ("python",)


def active_backend() -> str:
    return "cython" if _active is _cy else "python"


def get_module(name: str):
    if name == "python":
        return _py
    if name == "cython":
        if _cy is None:
            raise RuntimeError("compiled kernel is not available in this install")
        return _cy
    raise ValueError(f"unknown backend {name!r}")


def set_backend(name: str) -> str:
    """Select 'python', 'cython', or 'auto'; returns the active backend."""
    global _active
    if name == "auto":
        _active = _cy if _cy is not None else _py
    else:
        _active = get_module(name)
    for fn in _FUNCTIONS:
        globals()[fn] = getattr(_active, fn)
    return active_backend()


for _fn in _FUNCTIONS:
    globals()[_fn] = getattr(_active, _fn)
del _fn
