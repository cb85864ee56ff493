"""Backend selection for the pair-sum kernels.

The compiled extension is used when it was built; set ``HOPFLAMBDA_PURE_PYTHON=1``
to force the numpy fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
if os.environ.get("HOPFLAMBDA_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    else:
        BACKEND = "cython"
else:
    _compiled = None

_impl = _compiled if _compiled is not None else _kernels_py

gauss_linking_sum = _impl.gauss_linking_sum
helicity_pair_sums = _impl.helicity_pair_sums

__all__ = ["BACKEND", "gauss_linking_sum", "helicity_pair_sums"]
