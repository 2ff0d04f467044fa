"""Exact Hadamard/regularity verification and the counting constraints behind it.

Everything here is integer arithmetic. The gram product is the ground-truth
oracle; the periodic autocorrelation view of circulants is a fast equivalent
route that the tests cross-check against it rather than trust.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .groupring import as_sign_array


def gram(m) -> np.ndarray:
    """M * M^T over exact integers."""
    arr = as_sign_array(m)
    return arr @ arr.T


@dataclass
class GramReport:
    size: int
    is_hadamard: bool
    diagonal_values: set[int]
    max_off_diagonal: int
    row_sums: list[int] = field(repr=False)
    col_sums: list[int] = field(repr=False)
    negatives_per_row: list[int] = field(repr=False)


def is_hadamard(m) -> GramReport:
    """Full gram report; the flag is true iff M M^T equals size * identity."""
    arr = as_sign_array(m)
    n = arr.shape[0]
    g = arr @ arr.T
    off = g[~np.eye(n, dtype=bool)]
    max_off = int(np.abs(off).max()) if off.size else 0
    diag = set(int(x) for x in np.unique(np.diagonal(g)))
    return GramReport(
        size=n,
        is_hadamard=(diag == {n} and max_off == 0),
        diagonal_values=diag,
        max_off_diagonal=max_off,
        row_sums=[int(x) for x in arr.sum(axis=1)],
        col_sums=[int(x) for x in arr.sum(axis=0)],
        negatives_per_row=[int(x) for x in (arr == -1).sum(axis=1)],
    )


def paf(row) -> np.ndarray:
    """Periodic autocorrelation: paf[s] = sum_k row[k]*row[(k+s) mod m].

    paf[0] = m, and the circulant built on the row is Hadamard iff every other
    entry is zero.
    """
    row = np.asarray(row, dtype=np.int64)
    if not np.all(np.abs(row) == 1):
        raise ValueError("row entries must all be +1 or -1")
    m = row.size
    return np.array([int(np.dot(row, np.roll(row, -s))) for s in range(m)], dtype=np.int64)


def paf_is_flat(row) -> bool:
    p = paf(row)
    return bool(np.all(p[1:] == 0))


def admissible_negative_counts(m: int) -> set[int]:
    """Possible per-row negative counts for a regular orthogonal-row sign matrix.

    Row/column regularity plus orthogonality force r = (m +- sqrt(m)) / 2, so the
    set is empty unless m is a perfect square. For m = 4n this is {2n - sqrt(n),
    2n + sqrt(n)}.
    """
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    root = math.isqrt(m)
    if root * root != m:
        return set()
    counts = set()
    for sign in (-1, 1):
        num = m + sign * root
        if num % 2 == 0:
            counts.add(num // 2)
    return counts


def is_regular(m) -> bool:
    """True iff all row sums and all column sums share one common value."""
    arr = as_sign_array(m)
    sums = np.concatenate([arr.sum(axis=1), arr.sum(axis=0)])
    return bool(np.all(sums == sums[0]))
