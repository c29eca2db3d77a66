"""Kernel selection: compiled extension when built, pure Python otherwise.

The environment variable GASP_KERNEL forces a backend: ``c`` (compiled),
``py`` (pure Python), or ``auto`` (the default: compiled when available).
Both backends expose the same functions over the same compiled-program
layout; see pure.py for the reference implementation.
"""

from __future__ import annotations

import os

from . import lowering, pure

try:
    from . import _fast
except ImportError:
    _fast = None


def select(name: str | None = None):
    """Return the kernel module for the requested backend name."""
    name = (name or "auto").lower()
    if name in ("auto", ""):
        return _fast if _fast is not None else pure
    if name in ("py", "pure", "python"):
        return pure
    if name in ("c", "cy", "fast", "compiled"):
        if _fast is None:
            raise RuntimeError(
                "GASP_KERNEL requested the compiled kernel but the extension "
                "is not built; reinstall the package or use GASP_KERNEL=py"
            )
        return _fast
    raise ValueError(f"unknown kernel backend {name!r}")


impl = select(os.environ.get("GASP_KERNEL"))


def backend() -> str:
    """Short name of the active backend: ``c`` or ``py``."""
    return impl.backend_name()
