"""Selects the reduction backend at import time.

The compiled extension ``flipred._ckernel`` is used when it was built; set
``FLIPRED_PURE_PYTHON=1`` to force the pure-Python loop.
"""

from __future__ import annotations

import os
from array import array
from typing import Sequence

from .triangulation import LabeledTriangulation, Setting

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

BACKEND = "compiled" if _ckernel is not None and not os.environ.get("FLIPRED_PURE_PYTHON") else "python"

_MODES = {Setting.CONVEX: 0, Setting.GEOMETRIC: 1, Setting.COMBINATORIAL: 2}
# keeps every orientation product inside a signed 64-bit integer
_COORD_LIMIT = 1 << 30


def compiled_available() -> bool:
    return _ckernel is not None


def compiled_supports(T: LabeledTriangulation) -> bool:
    if _ckernel is None:
        return False
    if T.setting is Setting.GEOMETRIC:
        return all(abs(x) < _COORD_LIMIT and abs(y) < _COORD_LIMIT for x, y in T.coords)
    return True


def reduce_compiled(seq: Sequence[int], T: LabeledTriangulation) -> tuple[list[int], dict[str, int]]:
    """Run the compiled reduction loop; falls back to Python for huge coordinates."""
    if not compiled_supports(T):
        if _ckernel is None:
            raise RuntimeError("the compiled kernel is not available")
        from .reducer import reduce_python

        return reduce_python(seq, T)
    if T.setting is Setting.GEOMETRIC:
        xs = array("q", (x for x, _ in T.coords))
        ys = array("q", (y for _, y in T.coords))
    else:
        xs = ys = array("q")
    slot = T._slot
    slots = array("i", (slot[lab] for lab in seq))
    out, counts = _ckernel.reduce_slots(
        array("i", T.org), array("i", T.nxt), xs, ys, _MODES[T.setting], slots
    )
    labels = T.labels
    return [labels[s] for s in out], counts
