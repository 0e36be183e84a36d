"""Suspension layer: sign operad axioms, twisted inserts, shift maps."""

import itertools
import random

from helpers import graded_module, random_end_map
from operadic.signs import (
    binom2_parity, eta_sign, lambda_insert_parity, sign, tilde_sign,
)
from operadic.gmod import map_tensor_eval, materialize
from operadic.operad import EndOps, FreeOperad, random_tree
from operadic.suspension import (
    LambdaOperad, SuspOps, shift_inv_map, shift_map, sigma_bar_inv_map,
    sigma_bar_map, sigma_bar_parity, suspend_module,
)


A = graded_module()
SA = suspend_module(A)


def lambda_axioms(lam, top):
    for n, m, k in itertools.product(range(1, top + 1), repeat=3):
        x, y, z = (n, 1), (m, 1), (k, 1)
        for i in range(1, n + 1):
            for j in range(1, m + 1):
                lhs = lam.insert(lam.insert(x, i, y), i - 1 + j, z)
                rhs = lam.insert(x, i, lam.insert(y, j, z))
                assert lhs == rhs, (n, m, k, i, j)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                lhs = lam.insert(lam.insert(x, j, y), i, z)
                a, c = lam.insert(x, i, z)
                a, c = lam.insert((a, c), j + k - 1, y)
                eps = sign(lam.degree(m) * lam.degree(k))
                assert lhs == (a, eps * c), (n, m, k, i, j)
        for i in range(1, n + 1):
            assert lam.insert(x, i, lam.unit()) == x
        assert lam.insert(lam.unit(), 1, x) == x


def test_lambda_operad_axioms_exhaustive():
    lambda_axioms(LambdaOperad(), 5)
    lambda_axioms(LambdaOperad(inverse=True), 5)


def test_lambda_insert_frozen_values():
    lam = LambdaOperad()
    assert lam.insert((2, 1), 1, (2, 1)) == (3, -1)
    assert lam.insert((2, 1), 2, (2, 1)) == (3, 1)
    assert lam.degree(3) == 2
    assert LambdaOperad(inverse=True).degree(3) == -2


def test_tilde_matches_diagonal_composition():
    # twisted insertion == interchange past the inner factor, then the
    # sign operad insertion
    for n in range(1, 6):
        for m in range(1, 6):
            for i in range(1, n + 1):
                for q in range(-2, 3):
                    assert tilde_sign(n, m, i, q) == \
                        ((n - 1) * q + lambda_insert_parity(n, i, m)) % 2


def test_susp_ops_on_trees():
    fo = FreeOperad({"a": (2, 1), "b": (1, 1), "c": (2, 0)})
    sfo = SuspOps(fo)
    rng = random.Random(13)
    for _ in range(30):
        x = {random_tree(fo, rng, rng.randint(0, 2)): 1}
        y = {random_tree(fo, rng, rng.randint(0, 2)): 1}
        n = fo.el_arity(x)
        if n == 0:
            continue
        i = rng.randint(1, n)
        got = sfo.tilde_insert(x, i, y)
        q = fo.el_degree(y)
        m = fo.el_arity(y)
        want = fo.el_scale(sign(tilde_sign(n, m, i, q)), fo.el_insert(x, i, y))
        assert fo.el_eq(got, want)
        assert sfo.natural_degree(x) == fo.el_degree(x) + n - 1


def test_sigma_bar_is_operad_morphism():
    # conjugating an insertion equals the twisted insertion of the
    # conjugates, realized on the shifted module
    rng = random.Random(31)
    ops = EndOps(A)
    for _ in range(30):
        n = rng.randint(1, 3)
        m = rng.randint(1, 3)
        x = random_end_map(A, rng, n, rng.choice((0, 1)))
        y = random_end_map(A, rng, m, rng.choice((0, 1)))
        i = rng.randint(1, n)
        lhs = sigma_bar_map(ops.el_insert(x, i, y), SA)
        X = sigma_bar_map(x, SA)
        Y = sigma_bar_map(y, SA)
        par = tilde_sign(n, m, i, Y.degree)
        rhs = EndOps(SA).el_scale(sign(par), EndOps(SA).el_insert(X, i, Y))
        assert materialize(lhs).canonical() == materialize(rhs).canonical()


def test_sigma_bar_round_trip():
    rng = random.Random(7)
    for _ in range(10):
        n = rng.randint(1, 3)
        f = random_end_map(A, rng, n, rng.choice((0, 1)))
        back = sigma_bar_inv_map(sigma_bar_map(f, SA), A)
        assert materialize(back).canonical() == f.canonical()
        assert back.degree == f.degree


def test_sigma_bar_degree_bookkeeping():
    rng = random.Random(9)
    f = random_end_map(A, rng, 3, 1)
    F = sigma_bar_map(f, SA)
    assert F.degree == f.degree + 1 - 3
    # natural degree in the suspension equals the unshifted degree
    assert F.degree + 3 - 1 == f.degree


def test_shift_square_sign():
    # collapsing N inverse shifts against N shifts costs binom(N, 2)
    S = shift_map(A, SA)
    Sinv = shift_inv_map(SA, A)
    rng = random.Random(3)
    for N in range(5):
        words = A.words(N) if N <= 2 else [tuple(rng.choice(A.symbols())
                                                 for _ in range(N))] * 3
        for w in words:
            mid = map_tensor_eval([S] * N, w)
            out = {}
            for v, c in mid.items():
                for u, d in map_tensor_eval([Sinv] * N, v).items():
                    out[u] = out.get(u, 0) + c * d
            out = {u: c for u, c in out.items() if c}
            assert out == {w: sign(binom2_parity(N))}, (N, w)


def test_sigma_bar_parity_values():
    assert sigma_bar_parity(A, ("x",)) == 0
    assert sigma_bar_parity(A, ("x", "one")) == 1
    assert sigma_bar_parity(A, ("one", "x")) == 0
    assert sigma_bar_parity(A, ("x", "y", "z")) == 1


def test_gamma_tilde_matches_eta_route():
    fo = FreeOperad({"a": (2, 1), "b": (1, 1), "c": (2, 0), "e": (1, -1)})
    sfo = SuspOps(fo)
    rng = random.Random(19)
    for _ in range(40):
        x = {random_tree(fo, rng, rng.randint(0, 1)): 1}
        n = fo.el_arity(x)
        if n == 0:
            continue
        ys = [{random_tree(fo, rng, rng.randint(0, 1)): 1} for _ in range(n)]
        got = sfo.gamma_tilde(x, ys)
        arities = [fo.el_arity(y) for y in ys]
        degs = [fo.el_degree(y) for y in ys]
        eta = eta_sign(arities, degs, [0] * (n + 1))
        want = fo.el_scale(sign(eta), fo.gamma(x, ys))
        assert fo.el_eq(got, want), (arities, degs)
