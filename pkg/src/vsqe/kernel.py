"""Kernel backend selection.

The compiled ``_ckernel`` extension is used when it was built; otherwise the
pure-Python ``_pykernel`` takes over.  Setting ``VSQE_PURE_PYTHON=1`` forces
the fallback.
"""

import os

if os.environ.get("VSQE_PURE_PYTHON", "").strip() not in ("", "0"):
    from vsqe import _pykernel as _impl
else:
    try:
        from vsqe import _ckernel as _impl
    except ImportError:
        from vsqe import _pykernel as _impl

BACKEND: str = _impl.BACKEND

mono_mul = _impl.mono_mul
add_terms = _impl.add_terms
scale_terms = _impl.scale_terms
mul_terms = _impl.mul_terms
eval_terms = _impl.eval_terms
degree_terms = _impl.degree_terms
min_exponent = _impl.min_exponent
isolate_terms = _impl.isolate_terms
decompose_terms = _impl.decompose_terms
shift_terms = _impl.shift_terms
derivative_terms = _impl.derivative_terms

__all__ = [
    "BACKEND",
    "mono_mul",
    "add_terms",
    "scale_terms",
    "mul_terms",
    "eval_terms",
    "degree_terms",
    "min_exponent",
    "isolate_terms",
    "decompose_terms",
    "shift_terms",
    "derivative_terms",
]
