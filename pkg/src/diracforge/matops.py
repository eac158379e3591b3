"""Kernel backend selection.

A compiled Cython module ``_matops_c`` is built when the extension was
compiled at install time; otherwise the pure-Python kernels are used.  Both
expose the same three functions with identical semantics, so everything
above this layer is backend-agnostic.  Set DIRACFORGE_BACKEND=py to force
the interpreter kernels (useful for timing and for debugging the compiled
ones), or =c to insist on the extension.
"""

import os

_forced = os.environ.get("DIRACFORGE_BACKEND", "").strip().lower()

if _forced in ("py", "python"):
    from . import _matops_py as _impl
elif _forced == "c":
    from . import _matops_c as _impl  # ImportError here is deliberate
else:
    try:
        from . import _matops_c as _impl
    except ImportError:
        from . import _matops_py as _impl

BACKEND_NAME = _impl.BACKEND_NAME
mul_real = _impl.mul_real
mul_cplx = _impl.mul_cplx
rref_cplx = _impl.rref_cplx
