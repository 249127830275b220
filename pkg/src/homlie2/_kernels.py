"""Backend selection for the row-reduction kernel.

The compiled extension is used when it was built; setting
HOMLIE2_PURE_PYTHON=1 forces the pure-Python path.
"""

import os

from . import _pykernels

BACKEND = "python"
rref_rows = _pykernels.rref_rows

if os.environ.get("HOMLIE2_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        rref_rows = _ckernels.rref_rows
