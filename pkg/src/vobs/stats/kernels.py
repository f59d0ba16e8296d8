"""Backend selection for the null-distribution kernels.

The compiled extension is used when it was built; otherwise the pure-Python
fallback is imported. ``BACKEND`` names the active one.
"""

from __future__ import annotations

from . import _kernels_py as python_backend

try:
    from . import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

_active = compiled_backend or python_backend
BACKEND = "compiled" if compiled_backend is not None else "python"

rank_sum_counts = _active.rank_sum_counts
signed_rank_counts = _active.signed_rank_counts
