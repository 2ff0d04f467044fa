import numpy as np
import pytest

from circhad import (
    GroupRingElement,
    Listing,
    SignMatrix,
    circulant_from_row,
    circulant_sign_matrix,
    cyclic_group,
    direct_product,
    is_hadamard,
    is_rg_matrix,
    natural_listing,
    paired_listing,
    quaternion_group,
    recover_listing,
    relist,
    rg_matrix,
    rg_sign_matrix,
)

EQ1 = np.array([[1, 1, 1, -1], [-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1]])
BLOCKED = np.array([[1, 1, 1, -1], [1, 1, -1, 1], [-1, 1, 1, 1], [1, -1, 1, 1]])


def test_rg_matrix_of_w_is_the_circulant():
    w = circulant_from_row([1, 1, 1, -1])
    assert np.array_equal(rg_matrix(w, natural_listing(w.group)), EQ1)


def test_rg_matrix_under_paired_listing_is_the_blocked_display():
    w = circulant_from_row([1, 1, 1, -1])
    assert np.array_equal(rg_matrix(w, paired_listing(4)), BLOCKED)


def test_identity_element_maps_to_identity_matrix():
    g = cyclic_group(5)
    w = GroupRingElement(g, [1, 0, 0, 0, 0])
    for listing in (natural_listing(g), Listing(g, [0, 3, 1, 4, 2])):
        assert np.array_equal(rg_matrix(w, listing), np.eye(5, dtype=np.int64))


def test_listing_group_mismatch_rejected():
    w = circulant_from_row([1, 1, 1, -1])
    with pytest.raises(ValueError):
        rg_matrix(w, natural_listing(cyclic_group(5)))


def test_sign_restricted_constructor():
    g = cyclic_group(3)
    with pytest.raises(ValueError):
        GroupRingElement.from_signs(g, [1, 0, -1])
    elem = GroupRingElement.from_signs(g, [1, -1, -1])
    assert elem.coeffs.tolist() == [1, -1, -1]


def test_circulant_from_row_order_one_and_two():
    assert np.array_equal(circulant_sign_matrix([1]).entries, [[1]])
    # oracle: circ[r][c] = row[(c-r) mod m]
    row = np.array([1, -1])
    expected = np.array([[row[(c - r) % 2] for c in range(2)] for r in range(2)])
    assert np.array_equal(circulant_sign_matrix(row).entries, expected)
    assert expected.tolist() == [[1, -1], [-1, 1]]


def test_circulant_from_row_rejects_non_signs():
    with pytest.raises(ValueError):
        circulant_from_row([1, 2, 1, 1])


def test_relist_natural_to_paired_gives_blocked_display():
    w = circulant_from_row([1, 1, 1, -1])
    m = rg_sign_matrix(w, natural_listing(w.group))
    relisted = relist(m, natural_listing(w.group), Listing(w.group, [0, 2, 1, 3]))
    assert np.array_equal(relisted.entries, BLOCKED)


def test_relist_identity_and_involution():
    rng = np.random.default_rng(7)
    g = cyclic_group(6)
    w = GroupRingElement.from_signs(g, rng.choice([1, -1], 6))
    nat = natural_listing(g)
    m = rg_sign_matrix(w, nat)
    assert np.array_equal(relist(m, nat, nat).entries, m.entries)
    swapped = Listing(g, [0, 2, 1, 3, 4, 5])
    once = relist(m, nat, swapped)
    # relisting back along the transposition restores the original
    assert np.array_equal(relist(once, swapped, nat).entries, m.entries)


def test_relist_agrees_with_rg_matrix_for_random_listings():
    rng = np.random.default_rng(11)
    g = direct_product(cyclic_group(2), cyclic_group(4))
    w = GroupRingElement.from_signs(g, rng.choice([1, -1], g.order))
    nat = natural_listing(g)
    m = rg_sign_matrix(w, nat)
    for _ in range(25):
        target = Listing(g, rng.permutation(g.order))
        assert np.array_equal(relist(m, nat, target).entries, rg_matrix(w, target))


@pytest.mark.parametrize(
    "group_factory",
    [
        lambda: cyclic_group(4),
        lambda: cyclic_group(9),
        lambda: quaternion_group(),
        lambda: direct_product(cyclic_group(2), cyclic_group(8)),
    ],
)
def test_ring_embedding_property(group_factory):
    # matrix of a product equals the product of the matrices
    rng = np.random.default_rng(13)
    g = group_factory()
    listing = Listing(g, rng.permutation(g.order))
    for _ in range(10):
        u = GroupRingElement(g, rng.integers(-4, 5, g.order))
        v = GroupRingElement(g, rng.integers(-4, 5, g.order))
        lhs = rg_matrix(u * v, listing)
        rhs = rg_matrix(u, listing) @ rg_matrix(v, listing)
        assert np.array_equal(lhs, rhs)


def test_hadamard_is_listing_invariant():
    rng = np.random.default_rng(17)
    w = circulant_from_row([1, 1, 1, -1])
    not_had = circulant_from_row([1, 1, 1, 1])
    for _ in range(100):
        listing = Listing(w.group, rng.permutation(4))
        assert is_hadamard(rg_sign_matrix(w, listing)).is_hadamard
        assert not is_hadamard(rg_sign_matrix(not_had, listing)).is_hadamard


def test_is_rg_matrix_true_by_construction():
    rng = np.random.default_rng(19)
    for factory in (lambda: cyclic_group(6), lambda: quaternion_group()):
        g = factory()
        for _ in range(10):
            w = GroupRingElement.from_signs(g, rng.choice([1, -1], g.order))
            listing = Listing(g, rng.permutation(g.order))
            assert is_rg_matrix(rg_sign_matrix(w, listing), g, listing)


def test_is_rg_matrix_detects_single_flip():
    g = cyclic_group(4)
    entries = EQ1.copy()
    entries[2, 3] = -entries[2, 3]
    assert not is_rg_matrix(SignMatrix(entries), g, natural_listing(g))


def test_is_rg_matrix_all_ones():
    g = cyclic_group(4)
    assert is_rg_matrix(SignMatrix(np.ones((4, 4), dtype=int)), g, natural_listing(g))


def test_is_rg_matrix_size_mismatch():
    g = cyclic_group(4)
    with pytest.raises(ValueError):
        is_rg_matrix(SignMatrix(np.ones((5, 5), dtype=int)), g, natural_listing(g))


def test_recover_listing_natural_first():
    g = cyclic_group(4)
    assert recover_listing(SignMatrix(EQ1), g).perm == (0, 1, 2, 3)


def test_recover_listing_blocked_display():
    g = cyclic_group(4)
    assert recover_listing(SignMatrix(BLOCKED), g).perm == (0, 2, 1, 3)


def test_recover_listing_not_found_on_broken_pattern():
    g = cyclic_group(4)
    entries = EQ1.copy()
    entries[3, 0] = -entries[3, 0]
    assert recover_listing(SignMatrix(entries), g) is None


def test_recover_listing_soundness_on_random_rg_matrices():
    rng = np.random.default_rng(23)
    for factory in (
        lambda: cyclic_group(8),
        lambda: direct_product(cyclic_group(2), cyclic_group(4)),
        lambda: quaternion_group(),
    ):
        g = factory()
        for _ in range(5):
            w = GroupRingElement.from_signs(g, rng.choice([1, -1], g.order))
            hidden = Listing(g, np.concatenate([[0], 1 + rng.permutation(g.order - 1)]))
            matrix = rg_sign_matrix(w, hidden)
            found = recover_listing(matrix, g)
            assert found is not None
            assert is_rg_matrix(matrix, g, found)


def test_sign_matrix_validation():
    with pytest.raises(ValueError):
        SignMatrix([[1, 2], [1, 1]])
    with pytest.raises(ValueError):
        SignMatrix([[1, 1, 1], [1, 1, -1]])
