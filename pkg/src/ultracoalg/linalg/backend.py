"""Selects the elimination backend at import time.

The compiled dense kernel is used when it imports and the modulus fits in a
machine word; otherwise the sparse pure-Python kernel runs.  Setting
``ULTRACOALG_BACKEND=python`` forces the fallback.
"""

from __future__ import annotations

import array
import os

from ..errors import PrecisionExhausted
from . import _reduce_py

try:
    from . import _reduce as _compiled
except ImportError:  # extension not built
    _compiled = None

if os.environ.get("ULTRACOALG_BACKEND", "").lower() == "python":
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
WORD_LIMIT = 1 << 62
# Dense storage only pays off once the matrix is not tiny.
DENSE_MIN_ENTRIES = 64


def fits_word(p: int, L: int) -> bool:
    return p ** L < WORD_LIMIT


def minval_reduce(rows: list, prec: list, ncols: int, p: int, L: int, need: int,
                  backend: str | None = None) -> list:
    """Run full-pivoting Gauss-Jordan on integer rows known modulo ``p^prec[r] <= p^L``.

    ``rows`` holds dicts ``column index -> residue``; it is replaced in place
    by the reduced rows.  ``backend`` may force ``"python"`` or ``"cython"``.
    """
    use = backend or BACKEND
    if use == "cython" and (_compiled is None or not fits_word(p, L)):
        use = "python"
    if use == "cython" and backend is None and len(rows) * ncols < DENSE_MIN_ENTRIES:
        use = "python"
    if use == "python":
        return _reduce_py.minval_reduce(rows, prec, p, need)
    nrows = len(rows)
    flat = array.array("q", bytes(8 * nrows * ncols))
    for r, row in enumerate(rows):
        base = r * ncols
        for c, x in row.items():
            flat[base + c] = x
    pr = array.array("q", prec)
    pivots = _compiled.minval_reduce_dense(flat, nrows, ncols, pr, p, L, need)
    if pivots is None:
        raise PrecisionExhausted(f"pivot valuation exhausted the {L}-digit budget ({need} required)")
    for r in range(nrows):
        base = r * ncols
        rows[r] = {c: flat[base + c] for c in range(ncols) if flat[base + c]}
        prec[r] = pr[r]
    return pivots
