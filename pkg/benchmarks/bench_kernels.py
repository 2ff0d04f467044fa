"""Benchmark the compiled enumeration kernel against the pure-Python twin.

Runs identical scan workloads on every available backend, verifies that their
results agree, and reports throughput. Usage:

    python benchmarks/bench_kernels.py            # default workload set
    python benchmarks/bench_kernels.py --full     # adds the order-24 scan
    python benchmarks/bench_kernels.py --repeat 5
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from circhad.hadamard import admissible_negative_counts
from circhad.searchengine import _pykernel

BACKENDS = {"python": _pykernel}
try:
    from circhad.searchengine import _ckernel

    BACKENDS["cython"] = _ckernel
except ImportError:
    pass


@dataclass
class Workload:
    label: str
    order: int
    row_sum: bool
    balance: bool
    paf_prefix: bool
    crosscheck: float = 0.0

    def run(self, kernel):
        adm_mask = 0
        for r in admissible_negative_counts(self.order):
            adm_mask |= 1 << r
        threshold = min(1 << 32, round(self.crosscheck * (1 << 32)))
        # half space with row[0] fixed positive, exactly like the search engine
        return kernel.scan_subtree(
            self.order, 0, 1, self.row_sum, adm_mask, self.balance, self.paf_prefix, threshold
        )

    @property
    def masks(self) -> int:
        return 1 << (self.order - 1)


DEFAULT_WORKLOADS = [
    Workload("order 16, full pipeline", 16, True, True, True),
    Workload("order 16, sweep + gram crosscheck", 16, False, False, False, crosscheck=1.0),
    Workload("order 20, balance+paf only", 20, False, True, True),
]

FULL_WORKLOADS = DEFAULT_WORKLOADS + [
    Workload("order 24, balance+paf only", 24, False, True, True),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions (best wins)")
    parser.add_argument("--full", action="store_true", help="include the order-24 workload")
    args = parser.parse_args()

    workloads = FULL_WORKLOADS if args.full else DEFAULT_WORKLOADS
    print(f"backends: {', '.join(BACKENDS)}")
    if len(BACKENDS) == 1:
        print("note: compiled kernel not built; run `python setup.py build_ext --inplace`")
    print()
    header = f"{'workload':38s} {'backend':8s} {'best time':>10s} {'masks/s':>12s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))

    for workload in workloads:
        timings: dict[str, float] = {}
        results: dict[str, tuple] = {}
        for name, kernel in BACKENDS.items():
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                out = workload.run(kernel)
                best = min(best, time.perf_counter() - start)
            timings[name] = best
            results[name] = (out[0], sorted(out[1]), out[2], out[3])
        reference = results["python"]
        for name, got in results.items():
            if got != reference:
                raise SystemExit(f"backend {name} disagrees with python on {workload.label!r}")
        base = timings["python"]
        for name in BACKENDS:
            rate = workload.masks / timings[name]
            speedup = f"{base / timings[name]:6.1f}x" if name != "python" else "     1x"
            print(f"{workload.label:38s} {name:8s} {timings[name]:9.3f}s {rate:12.0f} {speedup:>8s}")
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
