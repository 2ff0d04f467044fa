"""Pure-Python enumeration kernel; the reference twin of the compiled one.

Rows of length m are bitmasks: bit (m-1-i) is set when row[i] is -1, so
lexicographic order on rows equals numeric order on masks. A subtree is the set
of masks sharing their top `depth` bits. The scan recursively assigns row
entries left to right, keeping incremental autocorrelation sums, a negative
count and block balance counters, and prunes with bounds that are monotone
along prefixes (so results do not depend on how the space is partitioned).
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_HASH_MULT = 0x9E3779B97F4A7C15
_U64 = (1 << 64) - 1


def crosscheck_selected(mask: int, threshold: int) -> bool:
    """Deterministic per-mask sampling rule shared by both kernels."""
    return ((mask * _HASH_MULT) & _U64) >> 32 < threshold


def scan_subtree(
    m: int,
    prefix: int,
    depth: int,
    row_sum_on: bool,
    adm_mask: int,
    balance_on: bool,
    paf_prefix_on: bool,
    cc_threshold: int,
):
    """Enumerate the masks under (prefix, depth).

    Returns (reached, found_masks, crosschecked, mismatches):
      reached      rows passing the enabled row_sum/balance filters and not
                   removed by the (enabled) incremental autocorrelation bound
      found_masks  masks among those whose full autocorrelation is flat
      crosschecked rows sampled for the gram cross-check
      mismatches   gram verdicts disagreeing with the flat-autocorrelation one
    """
    half = m // 2
    nshift = half
    track_balance = balance_on and m % 4 == 0
    quota = m // 4

    r = [0] * m
    partial = [0] * (nshift + 1)
    reached = 0
    found: list[int] = []
    cc_masks: list[int] = []

    def assign(k: int, negative: bool) -> None:
        r[k] = -1 if negative else 1
        for s in range(1, min(k, nshift) + 1):
            partial[s] += r[k - s] * r[k]

    def unassign(k: int) -> None:
        for s in range(1, min(k, nshift) + 1):
            partial[s] -= r[k - s] * r[k]

    def leaf(mask: int, negs: int, evens: int, odds: int) -> None:
        nonlocal reached
        if row_sum_on and not (adm_mask >> negs) & 1:
            return
        if track_balance and evens != odds:
            return
        reached += 1
        flat = True
        for s in range(1, nshift + 1):
            total = partial[s]
            for i in range(m - s, m):
                total += r[i] * r[i + s - m]
            if total != 0:
                flat = False
                break
        if cc_threshold and crosscheck_selected(mask, cc_threshold):
            cc_masks.append(mask)
        if flat:
            found.append(mask)

    def descend(k: int, mask: int, negs: int, evens: int, odds: int) -> None:
        if k == m:
            leaf(mask, negs, evens, odds)
            return
        for bit in (0, 1):
            negs2 = negs + bit
            if row_sum_on:
                window = (adm_mask >> negs2) & ((1 << (m - k)) - 1)
                if not window:
                    continue
            assign(k, bool(bit))
            evens2, odds2 = evens, odds
            if track_balance and k >= half:
                if r[k - half] == r[k]:
                    evens2 += 1
                else:
                    odds2 += 1
                if evens2 > quota or odds2 > quota:
                    unassign(k)
                    continue
            if paf_prefix_on and _bound_violated(partial, k, m, nshift):
                unassign(k)
                continue
            descend(k + 1, (mask << 1) | bit, negs2, evens2, odds2)
            unassign(k)

    # Install the fixed prefix without prune checks; the bounds are monotone, so
    # any violation inside the prefix still prunes every descendant below it.
    evens = odds = negs = 0
    for k in range(depth):
        bit = (prefix >> (depth - 1 - k)) & 1
        assign(k, bool(bit))
        negs += bit
        if track_balance and k >= half:
            if r[k - half] == r[k]:
                evens += 1
            else:
                odds += 1
    if depth == m:
        leaf(prefix, negs, evens, odds)
    else:
        descend(depth, prefix, negs, evens, odds)

    crosschecked = len(cc_masks)
    mismatches = 0
    if crosschecked:
        flat_set = set(found)
        verdicts = gram_hadamard_batch(np.array(cc_masks, dtype=np.uint64), m)
        for mask, gram_ok in zip(cc_masks, verdicts):
            if bool(gram_ok) != (mask in flat_set):
                mismatches += 1
    return reached, found, crosschecked, mismatches


def _bound_violated(partial, k, m, nshift) -> bool:
    # After assigning index k, shift s has k+1-s settled products of the m total;
    # a flat autocorrelation is impossible once |partial| exceeds what is left.
    for s in range(1, min(k, nshift) + 1):
        p = partial[s]
        remaining = m - (k + 1 - s)
        if p > remaining or -p > remaining:
            return True
    return False


def masks_to_rows(masks: np.ndarray, m: int) -> np.ndarray:
    """Sign matrix (len(masks) x m) from row bitmasks."""
    shifts = np.arange(m - 1, -1, -1, dtype=np.uint64)
    bits = (masks[:, None] >> shifts[None, :]) & 1
    return 1 - 2 * bits.astype(np.int64)


def gram_hadamard_batch(masks: np.ndarray, m: int, chunk: int = 4096) -> np.ndarray:
    """Ground-truth gram verdict for each mask: circulant M satisfies MM^T = mI.

    Builds the actual circulant and multiplies it out; deliberately never uses
    the autocorrelation shortcut it is meant to check.
    """
    verdicts = np.empty(len(masks), dtype=bool)
    circ_idx = (np.arange(m)[None, :] - np.arange(m)[:, None]) % m
    target = m * np.eye(m, dtype=np.int64)
    for start in range(0, len(masks), chunk):
        rows = masks_to_rows(masks[start : start + chunk], m)
        circs = rows[:, circ_idx]
        grams = circs @ circs.transpose(0, 2, 1)
        verdicts[start : start + len(rows)] = np.all(grams == target, axis=(1, 2))
    return verdicts
