"""Backend selection for the orbit kernels.

The compiled extension is used when it was built; otherwise the numpy
implementation takes over.  Both produce identical results.
"""

from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

_active = "compiled" if _ckernels is not None else "python"


def backend_name() -> str:
    return _active


def use_backend(name: str) -> None:
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable (have {sorted(BACKENDS)})")
    _active = name


def get() -> ModuleType:
    return BACKENDS[_active]
