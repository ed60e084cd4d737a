"""Select the word-kernel backend at import time.

The compiled extension is preferred; the pure-Python twin is the fallback.
Set COXRUINS_PURE=1 to force the fallback (used by the benchmark and the
twin-parity tests).
"""

import os

if os.environ.get("COXRUINS_PURE"):
    from . import _wordcore_py as _impl
else:
    try:
        from . import _wordcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _wordcore_py as _impl

WordKernel = _impl.WordKernel
BACKEND = _impl.BACKEND
