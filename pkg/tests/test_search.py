import json
import math

import numpy as np
import pytest

import circhad.searchengine as engine
from circhad import CapacityError, SearchConfig, canonicalize, search
from circhad.searchengine import _pykernel, mask_to_signs, mask_to_string, signs_to_mask

KERNELS = [_pykernel]
try:
    from circhad.searchengine import _ckernel

    KERNELS.append(_ckernel)
except ImportError:
    pass


@pytest.fixture(params=[k.BACKEND for k in KERNELS])
def kernel(request, monkeypatch):
    module = next(k for k in KERNELS if k.BACKEND == request.param)
    monkeypatch.setattr(engine, "_kernel", module)
    return request.param


def gram_oracle_rows(m):
    # independent sweep: every row whose circulant satisfies M M^T = mI
    eye = m * np.eye(m, dtype=np.int64)
    hits = []
    for mask in range(1 << m):
        row = mask_to_signs(mask, m)
        circ = np.stack([np.roll(row, r) for r in range(m)])
        if np.array_equal(circ @ circ.T, eye):
            hits.append(mask_to_string(mask, m))
    return sorted(hits)


def test_order_4_census(kernel):
    result = search(SearchConfig(order=4, canonicalization="none"))
    assert result.found == gram_oracle_rows(4)
    assert result.found_raw_count == 8
    assert result.total_rows == 16
    canon = search(SearchConfig(order=4))
    assert canon.found == ["+++-"]
    assert canon.found_raw_count == 8


def test_order_8_empty_with_zero_row_sum_stage(kernel):
    result = search(SearchConfig(order=8))
    assert result.stage_counts["row_sum"] == 0
    assert result.found == []
    assert gram_oracle_rows(8) == []


@pytest.mark.parametrize("m", [4, 8, 12])
def test_filter_soundness_filtered_vs_sweep(kernel, m):
    filtered = search(SearchConfig(order=m, canonicalization="none"))
    sweep = search(
        SearchConfig(order=m, row_sum=False, balance=False, paf_prefix=False,
                     fix_first=False, canonicalization="none")
    )
    assert filtered.found == sweep.found
    assert sweep.found == gram_oracle_rows(m)


def test_stage_counts_match_direct_enumeration(kernel):
    # closed-form row_sum/balance stage counts against a literal count
    for m in (4, 8, 12):
        result = search(SearchConfig(order=m))
        admissible = {r for r in range(m + 1) if (m - 2 * r) ** 2 == m}
        rows = np.array([mask_to_signs(mask, m) for mask in range(1 << m)])
        negs = (rows == -1).sum(axis=1)
        row_sum_pass = np.isin(negs, sorted(admissible))
        assert result.stage_counts["row_sum"] == int(row_sum_pass.sum())
        half = m // 2
        evens = (rows[:, : half] == rows[:, half:]).sum(axis=1)
        balance_pass = row_sum_pass & (evens == m // 4)
        assert result.stage_counts["balance"] == int(balance_pass.sum())


def test_stage_counts_non_increasing(kernel):
    for config in (
        SearchConfig(order=16),
        SearchConfig(order=16, row_sum=False),
        SearchConfig(order=12, balance=False),
        SearchConfig(order=8, paf_prefix=False),
    ):
        result = search(config)
        counts = list(result.stage_counts.values())
        assert counts == sorted(counts, reverse=True)
        assert result.total_rows >= counts[0]


def test_paf_prefix_disabled_matches_closed_form(kernel):
    result = search(SearchConfig(order=12, row_sum=False, paf_prefix=False))
    assert result.stage_counts["paf_prefix"] == result.stage_counts["balance"]


def test_fix_first_and_full_space_agree(kernel):
    for m in (4, 8, 12):
        fixed = search(SearchConfig(order=m)).deterministic_payload()
        full = search(SearchConfig(order=m, fix_first=False)).deterministic_payload()
        fixed.pop("crosscheck")
        full.pop("crosscheck")
        assert fixed == full


def test_kernels_agree():
    if len(KERNELS) < 2:
        pytest.skip("compiled kernel not built")
    payloads = []
    for module in KERNELS:
        args = (12, 0, 1, False, 0, True, True, 1 << 32)
        reached, found, checked, mismatches = module.scan_subtree(*args)
        payloads.append((reached, sorted(found), checked, mismatches))
    assert payloads[0] == payloads[1]


def test_kernels_agree_through_search(monkeypatch):
    if len(KERNELS) < 2:
        pytest.skip("compiled kernel not built")
    results = []
    for module in KERNELS:
        monkeypatch.setattr(engine, "_kernel", module)
        results.append(search(SearchConfig(order=16)).deterministic_payload())
    assert results[0] == results[1]


def test_determinism_across_workers_and_partitions():
    payloads = [
        search(SearchConfig(order=12, row_sum=False, workers=w, partition_depth=d)).deterministic_payload()
        for w, d in ((1, None), (2, None), (8, None), (1, 0), (3, 5), (8, 8))
    ]
    assert all(p == payloads[0] for p in payloads)


def test_crosscheck_runs_and_agrees(kernel):
    full = search(SearchConfig(order=12, row_sum=False, crosscheck_fraction=1.0))
    assert full.crosscheck["checked"] == full.stage_counts["paf_prefix"] // 2
    assert full.crosscheck["mismatches"] == 0
    sampled = search(SearchConfig(order=12, row_sum=False, crosscheck_fraction=0.5))
    assert 0 < sampled.crosscheck["checked"] < full.crosscheck["checked"]
    assert sampled.crosscheck["mismatches"] == 0


def test_capacity_rules():
    with pytest.raises(CapacityError):
        search(SearchConfig(order=36))
    with pytest.raises(CapacityError):
        search(SearchConfig(order=36, row_sum=False))
    with pytest.raises(CapacityError):
        search(SearchConfig(order=100))
    # the override lifts the survivor-count refusal but not the kernel's order cap
    with pytest.raises(CapacityError):
        search(SearchConfig(order=36, allow_large=True))
    # non-square orders above the raw limit are emptied by the row-sum filter
    result = search(SearchConfig(order=40))
    assert result.stage_counts["row_sum"] == 0
    assert result.found == []


def test_config_validation():
    with pytest.raises(ValueError):
        search(SearchConfig(order=0))
    with pytest.raises(ValueError):
        search(SearchConfig(order=4, crosscheck_fraction=1.5))
    with pytest.raises(ValueError):
        search(SearchConfig(order=4, canonicalization="reversal"))
    with pytest.raises(ValueError):
        search(SearchConfig(order=4, workers=0))


def test_order_one_and_two(kernel):
    one = search(SearchConfig(order=1))
    assert one.found == ["+"]
    assert one.found_raw_count == 2
    two = search(SearchConfig(order=2))
    assert two.found == []


def test_canonicalize_orbit_of_eq1_row():
    base = np.array([1, 1, 1, -1])
    expected = canonicalize(base)
    orbit = []
    for k in range(4):
        rotated = np.roll(base, k)
        orbit.append(rotated)
        orbit.append(-rotated)
    assert len({signs_to_mask(r)[0] for r in orbit}) == 8
    for member in orbit:
        assert np.array_equal(canonicalize(member), expected)
    assert np.array_equal(expected, base)


def test_canonicalize_all_plus_fixed_point():
    row = np.ones(6, dtype=np.int64)
    assert np.array_equal(canonicalize(row), row)
    assert np.array_equal(canonicalize(-row), row)


def test_canonicalize_idempotent():
    rng = np.random.default_rng(59)
    for _ in range(50):
        row = rng.choice([1, -1], int(rng.integers(1, 20)))
        once = canonicalize(row)
        assert np.array_equal(canonicalize(once), once)


def test_checkpoint_roundtrip(tmp_path):
    path = tmp_path / "search.ckpt"
    config = SearchConfig(order=12, row_sum=False, checkpoint_path=path, partition_depth=4)
    first = search(config)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# circhad-checkpoint v1 ")
    body = [line for line in lines[1:] if line.strip()]
    assert len(body) == 16
    for line in body:
        assert line.startswith("prefix=0x")
        assert " survivors=" in line
    # resuming with every partition done must not change anything
    resumed = search(config)
    assert resumed.deterministic_payload() == first.deterministic_payload()
    # drop half the partitions and resume
    path.write_text("\n".join(lines[:1] + body[:8]) + "\n")
    partial = search(config)
    assert partial.deterministic_payload() == first.deterministic_payload()


def test_checkpoint_rejects_other_config(tmp_path):
    path = tmp_path / "search.ckpt"
    search(SearchConfig(order=12, row_sum=False, checkpoint_path=path, partition_depth=4))
    with pytest.raises(ValueError):
        search(SearchConfig(order=12, row_sum=False, balance=False,
                            checkpoint_path=path, partition_depth=4))


def test_found_rows_sorted_lexicographically(kernel):
    result = search(SearchConfig(order=4, canonicalization="none"))
    assert result.found == sorted(result.found)


def test_total_rows_and_meta():
    result = search(SearchConfig(order=16, workers=2))
    assert result.total_rows == 1 << 16
    assert result.meta["backend"] == engine.KERNEL_BACKEND
    assert result.meta["workers"] == 2
    assert set(result.timings) == {"analytic", "enumeration", "finalize"}


def test_row_sum_stage_is_binomial_sum():
    result = search(SearchConfig(order=16))
    assert result.stage_counts["row_sum"] == math.comb(16, 6) + math.comb(16, 10)


def test_deterministic_payload_serializes_stably():
    a = search(SearchConfig(order=12))
    b = search(SearchConfig(order=12))
    assert json.dumps(a.deterministic_payload(), sort_keys=True) == json.dumps(
        b.deterministic_payload(), sort_keys=True
    )
