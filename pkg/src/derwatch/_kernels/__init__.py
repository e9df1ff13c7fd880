"""Kernel backend selection.

The compiled Cython extension is preferred; the numpy fallback is used when
the extension was not built or when DERWATCH_PURE_PYTHON is set (non-empty).
Both expose the same API with bit-identical results; see
benchmarks/bench_kernels.py for the speed comparison.
"""

import os

from . import _pytree

if os.environ.get("DERWATCH_PURE_PYTHON"):
    _impl = _pytree
else:
    try:
        from . import _ctree as _impl
    except ImportError:
        _impl = _pytree

IS_COMPILED = _impl.IS_COMPILED
predict_weighted_sum = _impl.predict_weighted_sum
predict_matrix = _impl.predict_matrix


def backend_name() -> str:
    return "compiled" if IS_COMPILED else "pure-python"
