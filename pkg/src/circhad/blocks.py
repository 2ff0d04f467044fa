"""Two-by-two block systems of paired-listed circulant rows and their combinatorics.

A length-4n sign row, read against the paired listing, tiles its matrix into 2n
blocks of the shape [[a, b], [b, a]]. Blocks are classified even (a == b) or odd
(a != b) with a sign, and the orthogonality of the full matrix translates into
finite conditions on block differences, pair signs and matchings. This module
implements those conditions as exact, reportable checkers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groupring import Provenance, SignMatrix

Pair = tuple[int, int]


@dataclass(frozen=True)
class Block2:
    """Block [[first, second], [second, first]] with entries +-1."""

    first: int
    second: int

    def __post_init__(self):
        if self.first not in (-1, 1) or self.second not in (-1, 1):
            raise ValueError("block entries must be +1 or -1")

    @property
    def kind(self) -> str:
        return "even" if self.first == self.second else "odd"

    @property
    def sign(self) -> int:
        # even: all-plus -> +1, all-minus -> -1; odd: (+,-) -> +1, (-,+) -> -1
        return self.first if self.kind == "even" else (1 if self.first == 1 else -1)

    @property
    def entries(self) -> np.ndarray:
        return np.array([[self.first, self.second], [self.second, self.first]], dtype=np.int64)


def twist(block: Block2) -> Block2:
    """Column-swapped block: identity on even blocks, negation on odd ones."""
    return Block2(block.second, block.first)


@dataclass(frozen=True)
class BlockSystem:
    """The 2n blocks induced by a length-4n row (natural coefficient order)."""

    n: int
    blocks: tuple[Block2, ...]
    source_row: tuple[int, ...]

    @property
    def block_count(self) -> int:
        return 2 * self.n

    def kind_positions(self, kind: str) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if b.kind == kind]

    def partner(self, i: int) -> int | None:
        """Same-kind block at cyclic distance n from block i, when present."""
        j = (i + self.n) % (2 * self.n)
        return j if self.blocks[j].kind == self.blocks[i].kind else None


def block_system(row, layout: str = "natural") -> BlockSystem:
    """Break a sign row of length 4n into its 2n classified blocks.

    layout="natural": row holds coefficients in natural order; block k pairs
    row[k] with row[2n+k]. layout="paired": row is a row of the already-blocked
    matrix, so consecutive entries form the blocks.
    """
    row = np.asarray(row, dtype=np.int64)
    if row.ndim != 1 or row.size % 4 != 0 or row.size == 0:
        raise ValueError(f"row length must be a positive multiple of 4, got {row.size}")
    if not np.all(np.abs(row) == 1):
        raise ValueError("row entries must all be +1 or -1")
    if layout not in ("natural", "paired"):
        raise ValueError(f"unknown layout {layout!r}")
    half = row.size // 2
    if layout == "paired":
        natural = np.empty_like(row)
        natural[:half] = row[0::2]
        natural[half:] = row[1::2]
        row = natural
    blocks = tuple(Block2(int(row[k]), int(row[half + k])) for k in range(half))
    return BlockSystem(n=row.size // 4, blocks=blocks, source_row=tuple(int(x) for x in row))


def row_from_blocks(kinds, signs) -> np.ndarray:
    """Natural-order row whose block system has the given kinds and signs."""
    if len(kinds) != len(signs) or len(kinds) % 2 != 0:
        raise ValueError("need an even number of (kind, sign) pairs")
    half = len(kinds)
    row = np.empty(2 * half, dtype=np.int64)
    for k, (kind, sign) in enumerate(zip(kinds, signs)):
        if kind == "even":
            row[k], row[half + k] = sign, sign
        elif kind == "odd":
            row[k], row[half + k] = sign, -sign
        else:
            raise ValueError(f"unknown block kind {kind!r}")
    return row


def assemble_block_matrix(system: BlockSystem) -> SignMatrix:
    """Rebuild the full 4n x 4n matrix from the block system.

    Block-row r holds blocks B[(c-r) mod 2n]; blocks that wrap around from the
    end of one block-row to the start of the next appear twisted.
    """
    m2 = system.block_count
    out = np.empty((2 * m2, 2 * m2), dtype=np.int64)
    for r in range(m2):
        for c in range(m2):
            block = system.blocks[(c - r) % m2]
            if c < r:
                block = twist(block)
            out[2 * r : 2 * r + 2, 2 * c : 2 * c + 2] = block.entries
    return SignMatrix(out, Provenance(source="assemble_block_matrix"))


@dataclass(frozen=True)
class PairInfo:
    i: int
    j: int
    kind: str
    difference: int
    conjugate_difference: int
    sign: int


def pair_info(system: BlockSystem, i: int, j: int) -> PairInfo:
    """Difference and sign of the ordered same-kind pair (i, j)."""
    if i == j:
        raise ValueError("pair indices must be distinct")
    bi, bj = system.blocks[i], system.blocks[j]
    if bi.kind != bj.kind:
        raise ValueError(f"blocks {i} ({bi.kind}) and {j} ({bj.kind}) are of different kinds")
    m2 = system.block_count
    d = (j - i) % m2
    if bi.kind == "even":
        sign = bi.sign * bj.sign
    else:
        sign = bi.sign * bj.sign if i < j else -(bi.sign * bj.sign)
    return PairInfo(i=i, j=j, kind=bi.kind, difference=d, conjugate_difference=m2 - d, sign=sign)


@dataclass
class ConditionsReport:
    block_count: int
    even_count: int
    odd_count: int
    balance_ok: bool
    differences: dict[str, dict[int, int]]
    parity_ok: dict[str, bool]
    symmetric_partner: list[int | None] = field(repr=False)
    all_symmetric: dict[str, bool] = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return self.balance_ok and all(self.parity_ok.values())


def conditions_report(system: BlockSystem) -> ConditionsReport:
    """Balance, difference-parity and symmetry conditions of a block system."""
    evens = system.kind_positions("even")
    odds = system.kind_positions("odd")
    differences: dict[str, dict[int, int]] = {}
    parity_ok: dict[str, bool] = {}
    for kind, positions in (("even", evens), ("odd", odds)):
        counts: dict[int, int] = {}
        for i in positions:
            for j in positions:
                if i != j:
                    d = pair_info(system, i, j).difference
                    counts[d] = counts.get(d, 0) + 1
        differences[kind] = dict(sorted(counts.items()))
        parity_ok[kind] = all(c % 2 == 0 for c in counts.values())
    partners = [system.partner(i) for i in range(system.block_count)]
    all_symmetric = {
        kind: all(partners[i] is not None for i in positions)
        for kind, positions in (("even", evens), ("odd", odds))
    }
    return ConditionsReport(
        block_count=system.block_count,
        even_count=len(evens),
        odd_count=len(odds),
        balance_ok=len(evens) == len(odds),
        differences=differences,
        parity_ok=parity_ok,
        symmetric_partner=partners,
        all_symmetric=all_symmetric,
    )


@dataclass
class MatchReport:
    kind: str
    perfect_matching_found: bool
    matching: list[tuple[Pair, Pair]]
    failure_certificate: Pair | None = None


def matching_report(system: BlockSystem, kind: str) -> MatchReport:
    """Decide whether all ordered same-kind pairs split into matching couples.

    Two pairs match when they have equal difference and opposite sign, and
    matching (i,j) with (k,l) forces the conjugates (j,i) and (l,k) onto each
    other. Matches never leave a difference class, and conjugation links class d
    with class 2n-d, so the search backtracks inside each class (with a memo of
    failed states) and mirrors the result onto the conjugate class.
    """
    if kind not in ("even", "odd"):
        raise ValueError(f"unknown block kind {kind!r}")
    positions = system.kind_positions(kind)
    m2 = system.block_count
    half = m2 // 2
    classes: dict[int, list[Pair]] = {}
    for i in positions:
        for j in positions:
            if i != j:
                classes.setdefault((j - i) % m2, []).append((i, j))

    def pair_sign(p: Pair) -> int:
        return pair_info(system, p[0], p[1]).sign

    def conjugate(p: Pair) -> Pair:
        return (p[1], p[0])

    matching: list[tuple[Pair, Pair]] = []
    for d in sorted(classes):
        if d > half:
            continue  # handled as the mirror of class 2n-d
        members = sorted(classes[d])
        couple_within = d * 2 == m2
        found = _match_class(members, pair_sign, conjugate, couple_within)
        if found is None:
            return MatchReport(
                kind=kind,
                perfect_matching_found=False,
                matching=[],
                failure_certificate=members[0],
            )
        matching.extend(found)
        if not couple_within:
            matching.extend((conjugate(p), conjugate(q)) for p, q in found)
    return MatchReport(kind=kind, perfect_matching_found=True, matching=matching)


def _match_class(members, pair_sign, conjugate, couple_within):
    """Exact backtracking perfect matching on one difference class.

    Elements may be matched when their signs are opposite. When the class is its
    own conjugate (difference n), matching p with q also consumes the conjugates.
    """
    failed: set[frozenset] = set()

    def backtrack(remaining: frozenset):
        if not remaining:
            return []
        if remaining in failed:
            return None
        ordered = sorted(remaining)
        p = ordered[0]
        sp = pair_sign(p)
        for q in ordered[1:]:
            if pair_sign(q) != -sp:
                continue
            consumed = {p, q}
            forced = []
            if couple_within:
                cp, cq = conjugate(p), conjugate(q)
                if {cp, cq} != consumed:
                    if cp not in remaining or cq not in remaining or cp in consumed or cq in consumed:
                        continue
                    consumed |= {cp, cq}
                    forced = [(cp, cq)]
            result = backtrack(remaining - frozenset(consumed))
            if result is not None:
                return [(p, q)] + forced + result
        failed.add(remaining)
        return None

    return backtrack(frozenset(members))


@dataclass
class QuadrupleRemainders:
    """Match structure inside one symmetric odd quadruple {i, j, i', j'}."""

    quadruple: tuple[int, int, int, int]
    cross_matched: bool  # (i,j) ~ (i',j') when true, else (j,i') ~ (j',i)
    remainders: tuple[Pair, Pair]
    remainder_conjugates: tuple[Pair, Pair]


def quadruple_remainders(system: BlockSystem, i: int, j: int) -> QuadrupleRemainders:
    """Remainder pairs of the quadruple built from two symmetric odd blocks.

    The self-conjugate pairs (i,i') and (j,j') always match; of the two diagonal
    couples exactly one matches, and the other, with its conjugates, remains.
    """
    if not i < j:
        raise ValueError("need i < j")
    for idx in (i, j):
        if system.blocks[idx].kind != "odd":
            raise ValueError(f"block {idx} is not odd")
        if system.partner(idx) is None:
            raise ValueError(f"block {idx} is not symmetric (no same-kind partner at distance n)")
    ip = (i + system.n) % system.block_count
    jp = (j + system.n) % system.block_count
    if len({i, j, ip, jp}) != 4:
        raise ValueError("the four blocks of the quadruple are not distinct")

    def matches(p: Pair, q: Pair) -> bool:
        a, b = pair_info(system, *p), pair_info(system, *q)
        return a.difference == b.difference and a.sign == -b.sign

    cross = matches((i, j), (ip, jp))
    other = matches((j, ip), (jp, i))
    if cross == other:
        raise RuntimeError(
            f"quadruple dichotomy violated for blocks {i},{j}: both branches {cross}"
        )
    if cross:
        remainders = ((j, ip), (jp, i))
    else:
        remainders = ((i, j), (ip, jp))
    conj = tuple((b, a) for a, b in remainders)
    return QuadrupleRemainders(
        quadruple=(i, j, ip, jp),
        cross_matched=cross,
        remainders=remainders,
        remainder_conjugates=conj,
    )
