import itertools

from hypothesis import given, strategies as st

from operadic.signs import (
    parity,
    sign,
    scalar_product,
    koszul_permutation_sign,
    binom2_parity,
    tilde_sign,
    vertical_tilde_sign,
    eta_sign,
    susp_mu_sign,
    tot_gamma_sign,
    star_sign,
    mu_sign,
    mu_inverse_sign,
    inftymorphism_sign,
    derived_epsilon,
    mij_prefactor,
    mi1_pairing,
)


def test_parity_and_sign():
    assert [parity(n) for n in (-3, -2, -1, 0, 1, 2)] == [1, 0, 1, 0, 1, 0]
    assert sign(0) == 1 and sign(1) == -1 and sign(2) == 1 and sign(-1) == -1


def test_scalar_product_single_and_bigraded():
    assert scalar_product(3, 5) == 1
    assert scalar_product(2, 5) == 0
    assert scalar_product(-1, 1) == 1
    assert scalar_product((1, 0), (1, 1)) == 1
    assert scalar_product((1, 1), (1, 1)) == 0
    assert scalar_product((0, 3), (2, 1)) == 1


def test_koszul_permutation_basics():
    assert koszul_permutation_sign((0, 1, 2), [1, 1, 1]) == 0
    # swapping two odd factors costs a sign
    assert koszul_permutation_sign((1, 0), [1, 1]) == 1
    assert koszul_permutation_sign((1, 0), [1, 2]) == 0
    # bigraded degrees ride through the pairing
    assert koszul_permutation_sign((1, 0), [(1, 0), (0, 1)]) == 0
    assert koszul_permutation_sign((1, 0), [(1, 1), (1, 0)]) == 1


@given(
    st.integers(2, 7).flatmap(
        lambda n: st.tuples(
            st.permutations(range(n)),
            st.permutations(range(n)),
            st.lists(st.integers(-3, 3), min_size=n, max_size=n),
        )
    )
)
def test_koszul_permutation_is_a_homomorphism(data):
    first, second, degs = data
    composite = tuple(first[i] for i in second)
    after_first = [degs[i] for i in first]
    lhs = koszul_permutation_sign(composite, degs)
    rhs = (koszul_permutation_sign(first, degs)
           + koszul_permutation_sign(second, after_first)) % 2
    assert lhs == rhs


def test_binom2_parity_pattern():
    assert [binom2_parity(n) for n in range(8)] == [0, 0, 1, 1, 0, 0, 1, 1]
    assert binom2_parity(-1) == 1
    assert binom2_parity(-2) == 1
    assert binom2_parity(-3) == 0


def test_binom2_splice_identity():
    # quadratic refinement across a splice of arities, any sign of inputs
    for n in range(-50, 51):
        for m in range(-50, 51):
            lhs = (binom2_parity(n + m - 1) + binom2_parity(n)
                   + binom2_parity(m)) % 2
            assert lhs == ((n - 1) * (m - 1)) % 2


def test_tilde_reproduces_classical_structure_sign():
    # inserting an arity s, degree 2-s factor into slot r+1 of an arity
    # r+1+t, degree 1-r-t one must cost exactly rs+t
    for r in range(7):
        for t in range(7):
            for s in range(1, 7):
                got = tilde_sign(r + 1 + t, s, r + 1, 2 - s)
                assert got == (r * s + t) % 2, (r, s, t)


def test_vertical_tilde_matches_single_graded_form():
    for n in range(1, 6):
        for m in range(6):
            for r in range(n):
                for q in range(-3, 4):
                    assert (vertical_tilde_sign(n, m, r, q)
                            == tilde_sign(n, m, r + 1, q))


def test_eta_known_values():
    assert eta_sign([2], [0], [0, 1]) == 1
    assert eta_sign([2], [0], [1, 0]) == 0


def test_eta_single_insertion_reduces_to_tilde():
    for big_n in range(1, 7):
        for m in range(7):
            for i in range(1, big_n + 1):
                for q in range(-3, 4):
                    got = eta_sign([m], [q], [i - 1, big_n - i])
                    assert got == tilde_sign(big_n, m, i, q), (big_n, m, i, q)


def test_eta_rejects_mismatched_lengths():
    try:
        eta_sign([2, 1], [0], [0, 0])
    except ValueError:
        pass
    else:
        raise AssertionError("length mismatch accepted")


def test_susp_mu_on_morphism_degrees_gives_block_sign():
    # factors of natural degree zero have internal degree 1 - arity, and
    # the gap-free composition sign collapses to the block split sign
    for arities in itertools.product(range(1, 4), repeat=3):
        degs = [1 - a for a in arities]
        assert susp_mu_sign(arities, degs) == inftymorphism_sign(arities)


def test_tot_gamma_known_value():
    assert tot_gamma_sign([1, 1], [1, 1, 0]) == 1
    assert tot_gamma_sign([], [0]) == 0
    assert tot_gamma_sign([5], [0, 7]) == 0


def test_star_known_values():
    assert star_sign(2, 2, 0, 1, 0, 1) == 0
    assert star_sign(2, 2, 1, 2, 1, 0) == 1


def test_mu_signs():
    assert mu_sign(1, 1) == 1
    assert mu_sign(2, 1) == 0
    assert mu_inverse_sign([1, 1, 0], [0, 1, 1]) == 1
    assert mu_inverse_sign([0, 0], [4, 4]) == 0
    # single factors never pick up a sign
    assert mu_inverse_sign([3], [5]) == 0


def test_block_split_sign():
    assert inftymorphism_sign([1, 2]) == 1
    assert inftymorphism_sign([2, 1]) == 0
    assert inftymorphism_sign([1]) == 0
    assert inftymorphism_sign([1, 1, 1]) == 0


def test_derived_epsilon_classical_slice():
    # with no horizontal weight the derived sign collapses to the block
    # split sign of the arities
    for qs in itertools.product(range(1, 4), repeat=3):
        assert (derived_epsilon(0, [0, 0, 0], list(qs))
                == inftymorphism_sign(list(qs)))
    assert derived_epsilon(1, [0], [1]) == 1
    assert derived_epsilon(0, [1, 0], [1, 1]) == 1


def test_mij_prefactor_known_value():
    assert mij_prefactor([1, 0], [0, 0]) == 1
    assert mij_prefactor([3], [1]) == 0


def test_mi1_pairing_values():
    # horizontal weight zero pairs against the shifted vertical degree
    assert mi1_pairing(0, 0, 2) == 1
    assert mi1_pairing(0, 1, 2) == 0
    # horizontal weight one pairs against the column
    assert mi1_pairing(1, 1, 2) == 1
    assert mi1_pairing(1, 0, 5) == 0


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_mi1_pairing_is_bilinear_shape(i, k, d):
    assert mi1_pairing(i, k, d) == (i * k + (1 - i) * (d - 1 - k)) % 2
