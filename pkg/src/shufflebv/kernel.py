"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``SHUFFLEBV_PURE=1`` in the environment to force the pure-Python kernel
(used by the benchmark and by tests that compare the two backends).
"""

from __future__ import annotations

import os

if os.environ.get("SHUFFLEBV_PURE") == "1":
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

BACKEND = _impl.BACKEND
koszul_parity = _impl.koszul_parity
merge_scaled = _impl.merge_scaled
shuffle_signed = _impl.shuffle_signed
