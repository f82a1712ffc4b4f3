"""Choice between the compiled and pure-Python enumeration kernels.

The compiled kernel is optional: when `algstat._kernel` (built from
_kernel.pyx) is importable it is used by default, otherwise the package
silently runs on the pure-Python twin. Set ALGSTAT_KERNEL=py or =c to
force a backend (forcing "c" without the extension is an error).
"""

from __future__ import annotations

import os

from . import _pykernel
from .machine import Condition

try:
    from . import _kernel as _compiled  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on build environment
    _compiled = None

HAVE_COMPILED = _compiled is not None


def get_backend(name: str | None = None):
    """Return the kernel module to use ("auto"/"c"/"py")."""
    name = name or os.environ.get("ALGSTAT_KERNEL", "auto")
    if name == "auto":
        return _compiled if HAVE_COMPILED else _pykernel
    if name in ("c", "compiled"):
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernel requested but algstat._kernel is not built")
        return _compiled
    if name in ("py", "python"):
        return _pykernel
    raise ValueError(f"unknown kernel backend {name!r}")


def backend_name(name: str | None = None) -> str:
    return "c" if get_backend(name) is _compiled and _compiled is not None else "py"


def compile_condition(cond: Condition) -> tuple[int, str, tuple[str, ...], tuple[str, ...]]:
    """Flatten a Condition into the picklable form both kernels take."""
    if cond.kind == Condition.NONE_KIND:
        return _pykernel.COND_NONE, "", (), ()
    if cond.kind == Condition.STR_KIND:
        return _pykernel.COND_STR, cond.bits, (), ()
    book, _ = cond.sf_book()
    pairs = sorted(book.items(), key=lambda kv: (len(kv[0]), kv[0]))
    codes = tuple(cw for cw, _ in pairs)
    elems = tuple(elem for _, elem in pairs)
    return _pykernel.COND_MODEL, "", codes, elems
