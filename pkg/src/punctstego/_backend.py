"""Select the compiled kernels when available, else the pure-Python twin.

Set PUNCTSTEGO_BACKEND=python to force the fallback (the benchmark uses
this to compare both).  ``py_kernels`` is always importable; it is also
used directly for code lengths beyond the compiled kernels' 64-bit words.
"""

from __future__ import annotations

import os

from . import _kernels_py as py_kernels

_forced = os.environ.get("PUNCTSTEGO_BACKEND", "").lower()

if _forced == "python":
    kernels = py_kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = py_kernels

BACKEND = kernels.BACKEND_NAME
