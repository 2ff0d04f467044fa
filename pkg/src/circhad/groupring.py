"""Group-ring elements over the integers and their matrices relative to a listing.

An element w = sum of coeff[g]*g maps to the square matrix whose (r, c) entry is
coeff[perm[r]^-1 * perm[c]]; this is a ring embedding. For the cyclic group under
the natural listing the image is exactly the circulant with first row = coeffs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import Group, Listing, cyclic_group, natural_listing


class GroupRingElement:
    """Integer-coefficient formal sum over a group's elements."""

    def __init__(self, group: Group, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != (group.order,):
            raise ValueError(
                f"coefficient vector has length {coeffs.shape}, group order is {group.order}"
            )
        self.group = group
        self.coeffs = coeffs
        coeffs.setflags(write=False)

    @classmethod
    def from_signs(cls, group: Group, signs) -> "GroupRingElement":
        """Constructor restricted to +-1 coefficients (Hadamard candidates)."""
        elem = cls(group, signs)
        if not np.all(np.abs(elem.coeffs) == 1):
            raise ValueError("coefficients must all be +1 or -1")
        return elem

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if self.group != other.group:
            raise ValueError("cannot multiply elements of different group rings")
        mul = self.group.mul_table
        out = np.zeros(self.group.order, dtype=np.int64)
        for a, ca in enumerate(self.coeffs):
            if ca:
                np.add.at(out, mul[a], ca * other.coeffs)
        return GroupRingElement(self.group, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self) -> str:
        return f"GroupRingElement({self.group.name}, {self.coeffs.tolist()})"


@dataclass(frozen=True)
class Provenance:
    group: str | None = None
    listing: tuple[int, ...] | None = None
    source: str | None = None


class SignMatrix:
    """Dense square matrix with entries +1/-1 and optional provenance."""

    def __init__(self, entries, provenance: Provenance | None = None):
        entries = np.asarray(entries, dtype=np.int64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {entries.shape}")
        if not np.all(np.abs(entries) == 1):
            raise ValueError("matrix entries must all be +1 or -1")
        self.entries = entries
        self.size = int(entries.shape[0])
        self.provenance = provenance
        entries.setflags(write=False)

    def __eq__(self, other) -> bool:
        if isinstance(other, SignMatrix):
            other = other.entries
        return np.array_equal(self.entries, other)

    def __repr__(self) -> str:
        return f"SignMatrix(size={self.size})"


def as_sign_array(m) -> np.ndarray:
    """Coerce a SignMatrix/array-like to a validated +-1 integer ndarray."""
    if isinstance(m, SignMatrix):
        return m.entries
    arr = np.asarray(m, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.abs(arr) == 1):
        raise ValueError("matrix entries must all be +1 or -1")
    return arr


def _pattern_index(group: Group, listing: Listing) -> np.ndarray:
    """idx[r, c] = perm[r]^-1 * perm[c]; the element whose coefficient sits at (r, c)."""
    perm = np.asarray(listing.perm, dtype=np.int32)
    rows = group.inv_table[perm]
    return group.mul_table[rows[:, None], perm[None, :]]


def rg_matrix(w: GroupRingElement, listing: Listing) -> np.ndarray:
    """Matrix of w relative to the listing, as a plain integer array.

    Entry (r, c) is w's coefficient on perm[r]^-1 * perm[c]. Valid for arbitrary
    integer coefficients; use :func:`rg_sign_matrix` for the +-1 wrapped form.
    """
    if listing.group != w.group:
        raise ValueError("listing and element belong to different groups")
    return w.coeffs[_pattern_index(w.group, listing)]


def rg_sign_matrix(w: GroupRingElement, listing: Listing) -> SignMatrix:
    return SignMatrix(
        rg_matrix(w, listing),
        Provenance(group=w.group.name, listing=listing.perm, source="group-ring element"),
    )


def circulant_from_row(row) -> GroupRingElement:
    """Element of Z[C_m] whose natural-listing matrix is the circulant with this first row."""
    row = np.asarray(row, dtype=np.int64)
    if row.ndim != 1 or row.size < 1:
        raise ValueError("first row must be a nonempty vector")
    if not np.all(np.abs(row) == 1):
        raise ValueError("first row entries must all be +1 or -1")
    return GroupRingElement.from_signs(cyclic_group(row.size), row)


def circulant_sign_matrix(row) -> SignMatrix:
    w = circulant_from_row(row)
    return rg_sign_matrix(w, natural_listing(w.group))


def relist(m: SignMatrix, from_listing: Listing, to_listing: Listing) -> SignMatrix:
    """The same underlying element's matrix under another listing.

    Equivalent to simultaneously permuting rows and columns: position p of the new
    listing is found at position sigma(p) of the old one.
    """
    if from_listing.group != to_listing.group:
        raise ValueError("listings belong to different groups")
    if len(from_listing.perm) != m.size:
        raise ValueError(f"matrix size {m.size} does not match listing length {len(from_listing.perm)}")
    sigma = np.array([from_listing.position_of(e) for e in to_listing.perm])
    return SignMatrix(
        m.entries[np.ix_(sigma, sigma)],
        Provenance(group=to_listing.group.name, listing=to_listing.perm, source="relist"),
    )


def is_rg_matrix(m, group: Group, listing: Listing) -> bool:
    """True iff every entry depends only on perm[r]^-1 * perm[c].

    Checks that some coefficient vector reproduces the whole matrix; the vector is
    read off the first row and then verified everywhere.
    """
    arr = m.entries if isinstance(m, SignMatrix) else np.asarray(m, dtype=np.int64)
    if arr.shape != (group.order, group.order):
        raise ValueError(f"matrix shape {arr.shape} does not match group order {group.order}")
    if listing.group != group:
        raise ValueError("listing belongs to a different group")
    idx = _pattern_index(group, listing)
    coeffs = np.empty(group.order, dtype=np.int64)
    coeffs[idx[0]] = arr[0]
    return bool(np.array_equal(coeffs[idx], arr))


def recover_listing(m, group: Group) -> Listing | None:
    """Search for a listing (with the identity first) that makes m an RG-matrix.

    Backtracks over positions left to right, keeping the partially learned
    coefficient vector consistent; returns the first listing in lexicographic
    order of assignments, or None when no listing works.
    """
    arr = m.entries if isinstance(m, SignMatrix) else np.asarray(m, dtype=np.int64)
    n = group.order
    if arr.shape != (n, n):
        raise ValueError(f"matrix shape {arr.shape} does not match group order {n}")
    mul = group.mul_table
    inv = group.inv_table

    UNKNOWN = np.iinfo(np.int64).min
    coeffs = np.full(n, UNKNOWN, dtype=np.int64)
    perm = [0]
    used = [False] * n
    used[0] = True
    coeffs[0] = arr[0, 0]

    def consistent(p: int, e: int, learned: list[int]) -> bool:
        # New entries visible once position p holds element e: row p and column p
        # against every already assigned position q (including q == p).
        for q in range(p + 1):
            f = perm[q] if q < p else e
            g_rc = mul[inv[f], e]   # entry (q, p)
            g_cr = mul[inv[e], f]   # entry (p, q)
            for g, val in ((g_rc, arr[q, p]), (g_cr, arr[p, q])):
                known = coeffs[g]
                if known == UNKNOWN:
                    coeffs[g] = val
                    learned.append(g)
                elif known != val:
                    return False
        return True

    def extend(p: int) -> bool:
        if p == n:
            return True
        for e in range(n):
            if used[e]:
                continue
            learned: list[int] = []
            if consistent(p, e, learned):
                perm.append(e)
                used[e] = True
                if extend(p + 1):
                    return True
                used[e] = False
                perm.pop()
            for g in learned:
                coeffs[g] = UNKNOWN
        return False

    if extend(1):
        return Listing(group, perm)
    return None
