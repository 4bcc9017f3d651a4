"""Select the compiled kernels when available, else the pure-Python ones."""

from __future__ import annotations

from types import ModuleType

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS: dict[str, ModuleType] = {"python": _fallback}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

DEFAULT = "cython" if _compiled is not None else "python"
kernels: ModuleType = BACKENDS[DEFAULT]


def get(name: str | None = None) -> ModuleType:
    if name is None:
        return kernels
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None
