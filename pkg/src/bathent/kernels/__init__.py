"""Hot-loop kernels with an optional compiled fast path.

The Cython extension is selected at import when it is present; set
``BATHENT_KERNELS=pure`` to force the numpy fallback.
"""

import os

from . import _pure

_BACKEND = "pure"
scan_pairs = _pure.scan_pairs

if os.environ.get("BATHENT_KERNELS", "").lower() != "pure":
    try:
        from . import _fast

        scan_pairs = _fast.scan_pairs
        _BACKEND = "compiled"
    except ImportError:
        pass


def backend() -> str:
    """Name of the kernel backend in use: ``"compiled"`` or ``"pure"``."""
    return _BACKEND
