"""Exhaustive, filter-pruned enumeration of circulant Hadamard candidate rows.

The pipeline stages are, in order: row_sum (negative count must be admissible
for a regular orthogonal-row matrix), balance (equal even/odd block counts,
orders divisible by 4 only), paf_prefix (incremental autocorrelation pruning
during enumeration) and the final flat-autocorrelation check, optionally
cross-checked row by row against the direct gram oracle on a sampled fraction.

Stage counts refer to the full 2^m row space. The row_sum and balance counts
have exact closed forms and are computed without enumeration; the enumeration
normally fixes row[0] = +1 and doubles its counts (global negation is a
symmetry of every stage predicate). All counts are independent of worker
count and partition depth: the pruning bound is monotone along prefixes.

The inner scan runs on a compiled kernel when the extension is importable and
on a pure-Python twin otherwise; `KERNEL_BACKEND` names the one in use.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import CapacityError
from ..hadamard import admissible_negative_counts
from . import _pykernel


def _select_kernel():
    forced = os.environ.get("CIRCHAD_KERNEL", "").lower()
    if forced == "python":
        return _pykernel
    if forced == "cython":
        from . import _ckernel  # noqa: PLC0415 - deliberate import-time selection

        return _ckernel
    if forced:
        raise ValueError(f"CIRCHAD_KERNEL must be 'python' or 'cython', got {forced!r}")
    try:
        from . import _ckernel

        return _ckernel
    except ImportError:
        return _pykernel


_kernel = _select_kernel()
KERNEL_BACKEND: str = _kernel.BACKEND

RAW_ENUMERATION_LIMIT = 28
KERNEL_ORDER_LIMIT = 32


@dataclass
class SearchConfig:
    order: int
    row_sum: bool = True
    balance: bool = True
    paf_prefix: bool = True
    crosscheck_fraction: float = 0.0
    canonicalization: str = "rotation+negation"  # or "none"
    partition_depth: int | None = None
    workers: int = 1
    fix_first: bool = True
    allow_large: bool = False
    checkpoint_path: str | Path | None = None

    def validate(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        if not 0.0 <= self.crosscheck_fraction <= 1.0:
            raise ValueError(f"crosscheck fraction must lie in [0, 1], got {self.crosscheck_fraction}")
        if self.canonicalization not in ("rotation+negation", "none"):
            raise ValueError(f"unknown canonicalization mode {self.canonicalization!r}")
        if self.workers < 1:
            raise ValueError(f"worker count must be positive, got {self.workers}")
        if self.partition_depth is not None and self.partition_depth < 0:
            raise ValueError("partition depth cannot be negative")


@dataclass
class SearchResult:
    order: int
    total_rows: int
    stage_counts: dict[str, int]
    found: list[str]
    found_raw_count: int
    canonicalization: str
    crosscheck: dict[str, int]
    timings: dict[str, float] = field(default_factory=dict)
    meta: dict[str, object] = field(default_factory=dict)

    def deterministic_payload(self) -> dict:
        """Everything that must be bit-identical across worker counts."""
        return {
            "order": self.order,
            "total_rows": self.total_rows,
            "stage_counts": dict(self.stage_counts),
            "found": list(self.found),
            "found_raw_count": self.found_raw_count,
            "canonicalization": self.canonicalization,
            "crosscheck": dict(self.crosscheck),
        }


def mask_to_signs(mask: int, m: int) -> np.ndarray:
    return np.array([-1 if (mask >> (m - 1 - i)) & 1 else 1 for i in range(m)], dtype=np.int64)


def signs_to_mask(row) -> tuple[int, int]:
    row = np.asarray(row, dtype=np.int64)
    if not np.all(np.abs(row) == 1):
        raise ValueError("row entries must all be +1 or -1")
    m = int(row.size)
    mask = 0
    for value in row:
        mask = (mask << 1) | (1 if value == -1 else 0)
    return mask, m


def mask_to_string(mask: int, m: int) -> str:
    return "".join("-" if (mask >> (m - 1 - i)) & 1 else "+" for i in range(m))


def _canonical_mask(mask: int, m: int) -> int:
    full = (1 << m) - 1
    best = mask
    for base in (mask, mask ^ full):
        for k in range(m):
            rotated = ((base << k) | (base >> (m - k))) & full if k else base
            if rotated < best:
                best = rotated
    return best


def canonicalize(row) -> np.ndarray:
    """Lexicographically smallest vector over all rotations and global negations.

    Ordering treats +1 as smaller than -1, so the all-plus row is canonical in
    its orbit. Idempotent by construction.
    """
    mask, m = signs_to_mask(row)
    return mask_to_signs(_canonical_mask(mask, m), m)


def _admissible_mask(order: int) -> tuple[set[int], int]:
    counts = admissible_negative_counts(order)
    mask = 0
    for r in counts:
        mask |= 1 << r
    return counts, mask


def _row_sum_count(order: int, counts: set[int]) -> int:
    return sum(math.comb(order, r) for r in counts)


def _balance_count(order: int, counts: set[int] | None) -> int:
    """Rows with equally many even and odd blocks, optionally with an admissible
    negative count. Each odd block contributes one negative, each all-minus even
    block two, so r = n + 2t with t the all-minus even blocks."""
    blocks = order // 2
    n = order // 4
    placements = math.comb(blocks, n)
    odd_signs = 1 << n
    if counts is None:
        return placements * odd_signs * (1 << n)
    span = sum(math.comb(n, t) for t in range(n + 1) if (n + 2 * t) in counts)
    return placements * odd_signs * span


def _auto_partition_depth(available_bits: int, config: SearchConfig) -> int:
    if config.partition_depth is not None:
        return min(config.partition_depth, available_bits)
    if config.workers == 1 and config.checkpoint_path is None:
        return 0
    return min(available_bits, 6)


def _config_fingerprint(config: SearchConfig, depth: int) -> str:
    payload = json.dumps(
        {
            "order": config.order,
            "row_sum": config.row_sum,
            "balance": config.balance,
            "paf_prefix": config.paf_prefix,
            "crosscheck_fraction": config.crosscheck_fraction,
            "fix_first": config.fix_first,
            "partition_depth": depth,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


@dataclass
class _PartitionOutcome:
    reached: int
    found_masks: list[int]
    crosschecked: int
    mismatches: int


def _read_checkpoint(path: Path, fingerprint: str) -> dict[int, _PartitionOutcome]:
    done: dict[int, _PartitionOutcome] = {}
    if not path.exists():
        return done
    lines = path.read_text().splitlines()
    if not lines:
        return done
    header = lines[0]
    if not header.startswith("# circhad-checkpoint v1 "):
        raise ValueError(f"{path}: not a checkpoint file")
    if f"fingerprint={fingerprint}" not in header:
        raise ValueError(f"{path}: checkpoint was written for a different search configuration")
    for line in lines[1:]:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = dict(part.split("=", 1) for part in line.split())
        masks = [int(x, 16) for x in fields.get("masks", "").split(",") if x]
        done[int(fields["prefix"], 16)] = _PartitionOutcome(
            reached=int(fields["reached"]),
            found_masks=masks,
            crosschecked=int(fields["crosschecked"]),
            mismatches=int(fields["mismatches"]),
        )
    return done


def _checkpoint_line(prefix: int, outcome: _PartitionOutcome) -> str:
    masks = ",".join(f"0x{mask:x}" for mask in outcome.found_masks)
    return (
        f"prefix=0x{prefix:x} survivors={len(outcome.found_masks)} "
        f"reached={outcome.reached} crosschecked={outcome.crosschecked} "
        f"mismatches={outcome.mismatches} masks={masks}"
    )


def search(config: SearchConfig) -> SearchResult:
    """Run the staged enumeration described in the module docstring."""
    config.validate()
    m = config.order
    t0 = time.perf_counter()

    counts, adm_mask = _admissible_mask(m)
    if m > RAW_ENUMERATION_LIMIT:
        if not config.row_sum:
            raise CapacityError(
                f"raw enumeration is limited to order {RAW_ENUMERATION_LIMIT}; "
                f"order {m} needs the row_sum filter enabled"
            )
        if counts and not config.allow_large:
            raise CapacityError(
                f"order {m} leaves {_row_sum_count(m, counts)} row-sum survivors; "
                "pass allow_large to run anyway"
            )
    total = 1 << m

    stage_counts: dict[str, int] = {}
    stage_counts["row_sum"] = _row_sum_count(m, counts) if config.row_sum else total
    if config.balance and m % 4 == 0:
        stage_counts["balance"] = _balance_count(m, counts if config.row_sum else None)
    else:
        stage_counts["balance"] = stage_counts["row_sum"]

    must_enumerate = stage_counts["balance"] > 0
    if must_enumerate and m > KERNEL_ORDER_LIMIT:
        raise CapacityError(f"enumeration kernels support orders up to {KERNEL_ORDER_LIMIT}")

    scale = 2 if config.fix_first and m >= 1 else 1
    available_bits = m - 1 if config.fix_first else m
    depth_extra = 1 if config.fix_first else 0
    pdepth = _auto_partition_depth(available_bits, config)
    cc_threshold = min(1 << 32, round(config.crosscheck_fraction * (1 << 32)))

    t_analytic = time.perf_counter() - t0
    t1 = time.perf_counter()

    outcomes: dict[int, _PartitionOutcome] = {}
    checkpoint = None
    if config.checkpoint_path is not None:
        checkpoint = Path(config.checkpoint_path)
        fingerprint = _config_fingerprint(config, pdepth)
        outcomes.update(_read_checkpoint(checkpoint, fingerprint))
        if not checkpoint.exists() or not checkpoint.read_text().strip():
            checkpoint.write_text(f"# circhad-checkpoint v1 fingerprint={fingerprint} order={m}\n")
    if must_enumerate:
        prefixes = list(range(1 << pdepth))
        depth = pdepth + depth_extra
        todo = [p for p in prefixes if p not in outcomes]

        def run_partition(prefix: int) -> tuple[int, _PartitionOutcome]:
            reached, found_masks, crosschecked, mismatches = _kernel.scan_subtree(
                m,
                prefix,
                depth,
                config.row_sum,
                adm_mask,
                config.balance,
                config.paf_prefix,
                cc_threshold,
            )
            return prefix, _PartitionOutcome(
                reached=int(reached),
                found_masks=sorted(int(x) for x in found_masks),
                crosschecked=int(crosschecked),
                mismatches=int(mismatches),
            )

        if config.workers == 1 or len(todo) <= 1:
            completed = map(run_partition, todo)
            for prefix, outcome in completed:
                outcomes[prefix] = outcome
                if checkpoint is not None:
                    with checkpoint.open("a") as fh:
                        fh.write(_checkpoint_line(prefix, outcome) + "\n")
        else:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                for prefix, outcome in pool.map(run_partition, todo):
                    outcomes[prefix] = outcome
                    if checkpoint is not None:
                        with checkpoint.open("a") as fh:
                            fh.write(_checkpoint_line(prefix, outcome) + "\n")

    t_enumeration = time.perf_counter() - t1
    t2 = time.perf_counter()

    reached = sum(outcomes[p].reached for p in outcomes) * scale
    crosschecked = sum(o.crosschecked for o in outcomes.values())
    mismatches = sum(o.mismatches for o in outcomes.values())
    if mismatches:
        raise RuntimeError(
            f"gram cross-check disagreed with the autocorrelation verdict on {mismatches} rows"
        )

    found_masks: list[int] = []
    for prefix in sorted(outcomes):
        found_masks.extend(outcomes[prefix].found_masks)
    if config.fix_first:
        full = (1 << m) - 1
        raw_masks = sorted(found_masks + [mask ^ full for mask in found_masks])
    else:
        raw_masks = sorted(found_masks)

    if raw_masks:
        verdicts = _pykernel.gram_hadamard_batch(np.array(raw_masks, dtype=np.uint64), m)
        if not bool(np.all(verdicts)):
            raise RuntimeError("a found row failed the gram oracle; enumeration kernel is faulty")

    stage_counts["paf_prefix"] = reached
    stage_counts["paf"] = len(raw_masks)
    if must_enumerate and not config.paf_prefix and reached != stage_counts["balance"]:
        raise RuntimeError(
            f"stage accounting mismatch: enumerated {reached} rows past the filters, "
            f"closed form says {stage_counts['balance']}"
        )

    if config.canonicalization == "rotation+negation":
        canon = sorted({_canonical_mask(mask, m) for mask in raw_masks})
        found_strings = [mask_to_string(mask, m) for mask in canon]
    else:
        found_strings = [mask_to_string(mask, m) for mask in raw_masks]

    t_finalize = time.perf_counter() - t2
    return SearchResult(
        order=m,
        total_rows=total,
        stage_counts=stage_counts,
        found=found_strings,
        found_raw_count=len(raw_masks),
        canonicalization=config.canonicalization,
        crosscheck={"checked": crosschecked, "mismatches": mismatches},
        timings={
            "analytic": t_analytic,
            "enumeration": t_enumeration,
            "finalize": t_finalize,
        },
        meta={
            "backend": _kernel.BACKEND,
            "workers": config.workers,
            "partition_depth": pdepth,
            "fix_first": config.fix_first,
            "enumerated_masks": (1 << available_bits) if must_enumerate else 0,
        },
    )
