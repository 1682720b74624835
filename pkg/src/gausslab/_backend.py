"""Kernel backend selection: compiled extension if importable, numpy fallback
otherwise.  GAUSSLAB_BACKEND={auto,c,py} overrides (c fails hard if the
extension is missing; py forces the fallback, e.g. for benchmarking)."""

from __future__ import annotations

import os

from . import _kernels_py

_choice = os.environ.get("GAUSSLAB_BACKEND", "auto").lower()

if _choice == "py":
    _impl = _kernels_py
    HAVE_COMPILED = False
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        HAVE_COMPILED = True
    except ImportError:
        if _choice == "c":
            raise
        _impl = _kernels_py
        HAVE_COMPILED = False

BACKEND_NAME = "c" if HAVE_COMPILED else "py"

char_scan_counts = _impl.char_scan_counts
pair_sum_hist = _impl.pair_sum_hist
pair_mul_hist = _impl.pair_mul_hist
