"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``GRAPHENT_BACKEND=python`` to force the fallback.  Graphs above 64
vertices always take the Python path since the compiled kernels use 64-bit
words.
"""

from __future__ import annotations

import os

from graphent import _pykernels

_ckernels = None
if os.environ.get("GRAPHENT_BACKEND", "").lower() != "python":
    try:
        from graphent import _ckernels  # type: ignore[no-redef]
    except ImportError:
        _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

WORD_BITS = 64


def _impl(n: int):
    if _ckernels is not None and n <= WORD_BITS:
        return _ckernels
    return _pykernels


def gf2_rank(rows: list[int], width: int | None = None) -> int:
    if width is None:
        width = max((r.bit_length() for r in rows), default=0)
    if len(rows) > WORD_BITS:
        return _pykernels.gf2_rank(list(rows))
    return _impl(width).gf2_rank(list(rows))


def cut_rank(adj: list[int], n: int, mask: int) -> int:
    return _impl(n).cut_rank(adj, n, mask)


def max_cut_rank(adj: list[int], n: int, ceiling: int) -> tuple[int, int]:
    return _impl(n).max_cut_rank(adj, n, ceiling)


def mis_search(
    adj: list[int], n: int, lower: int, stop_at: int, budget: int
) -> tuple[int, int, int, bool]:
    return _impl(n).mis_search(adj, n, lower, stop_at, budget)
