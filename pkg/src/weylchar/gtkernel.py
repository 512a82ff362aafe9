"""Kernel selection: compiled `_gtcore` when built, pure Python otherwise.

Set WEYLCHAR_PURE=1 to force the pure implementation (used by the benchmark
and by tests that cross-check the two).
"""

from __future__ import annotations

import os

from weylchar import _gtpure

if os.environ.get("WEYLCHAR_PURE"):
    _impl = _gtpure
else:
    try:
        from weylchar import _gtcore as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _gtpure

IMPLEMENTATION: str = _impl.IMPLEMENTATION
group_counts = _impl.group_counts


def available_implementations():
    """Names of the kernel implementations importable in this environment."""
    names = [_gtpure.IMPLEMENTATION]
    try:
        from weylchar import _gtcore

        names.append(_gtcore.IMPLEMENTATION)
    except ImportError:
        pass
    return names
