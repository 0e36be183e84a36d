"""Braces: route agreement, the conjugation oracle, the brace relation."""

import random

import pytest

from helpers import graded_module, random_end_map
from operadic.signs import eta_sign, scalar_product, sign
from operadic.gmod import GradedModule, identity_map, map_add, materialize
from operadic.operad import EndOps, FreeOperad, compose_maps, random_tree
from operadic.suspension import SuspOps
from operadic.braces import (
    block_choices, brace, brace_conjugation_oracle, brace_raw,
    brace_relation_residual, eta_oracle_draw, gap_tuples, insertion_slots,
    lie_bracket,
)


A = graded_module()
SE = SuspOps(EndOps(A))


def test_gap_tuples_and_slots():
    assert list(gap_tuples(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(gap_tuples(0, 1)) == [(0,)]
    assert list(gap_tuples(1, 0)) == []
    # two factors of arities 2 and 1 around gaps (1, 0, 1)
    assert insertion_slots((1, 0, 1), (2, 1)) == [2, 4]


def test_brace_trivial_cases():
    rng = random.Random(1)
    f = random_end_map(A, rng, 2, 0)
    assert brace(SE, f, []) is f
    g = random_end_map(A, rng, 1, 1)
    h = random_end_map(A, rng, 2, 1)
    vanished = brace(SE, g, [h, h])
    assert materialize(vanished).is_zero()


def test_unary_brace_is_twisted_insertion_sum():
    rng = random.Random(5)
    for _ in range(10):
        f = random_end_map(A, rng, rng.randint(1, 3), rng.choice((0, 1)))
        g = random_end_map(A, rng, rng.randint(1, 2), rng.choice((0, 1)))
        got = materialize(brace(SE, f, [g]))
        want = materialize(SE.tilde_insert_sum(f, g))
        assert got.canonical() == want.canonical()


def test_brace_routes_agree_end():
    rng = random.Random(9)
    for _ in range(15):
        f = random_end_map(A, rng, rng.randint(1, 3), rng.choice((0, 1)))
        n = rng.randint(1, min(2, f.arity))
        gs = [random_end_map(A, rng, rng.randint(0, 2), rng.choice((0, 1)))
              for _ in range(n)]
        via_eta = materialize(brace(SE, f, gs, route="eta"))
        via_tilde = materialize(brace(SE, f, gs, route="tilde"))
        assert via_eta.canonical() == via_tilde.canonical()


def test_brace_routes_agree_free():
    fo = FreeOperad({"a": (2, 1), "b": (1, 1), "c": (2, 0), "e": (1, -1)})
    sfo = SuspOps(fo)
    rng = random.Random(13)
    for _ in range(40):
        x = {random_tree(fo, rng, rng.randint(0, 2)): 1}
        n = rng.randint(1, 2)
        if fo.el_arity(x) < n:
            continue
        ys = [{random_tree(fo, rng, rng.randint(0, 1)): 1} for _ in range(n)]
        lhs = brace(sfo, x, ys, route="eta")
        rhs = brace(sfo, x, ys, route="tilde")
        assert fo.el_eq(lhs, rhs)


def test_brace_against_conjugation_oracle():
    rng = random.Random(21)
    for _ in range(12):
        f = random_end_map(A, rng, rng.randint(1, 3), rng.choice((0, 1)))
        n = rng.randint(0, min(2, f.arity))
        gs = [random_end_map(A, rng, rng.randint(1, 2), rng.choice((0, 1)))
              for _ in range(n)]
        got = materialize(brace(SE, f, gs))
        want = materialize(brace_conjugation_oracle(f, gs))
        assert got.canonical() == want.canonical()


def test_eta_oracle_draws():
    rng = random.Random(2024)
    for _ in range(250):
        n = rng.randint(0, 3)
        arities = [rng.randint(0, 3) for _ in range(n)]
        degs = [rng.randint(-3, 3) for _ in range(n)]
        outer_extra = rng.randint(0, 2)
        gaps = [0] * (n + 1)
        for _ in range(outer_extra):
            gaps[rng.randint(0, n)] += 1
        in_degs = [rng.randint(-3, 3)
                   for _ in range(sum(gaps) + sum(arities))]
        got = eta_oracle_draw(arities, degs, tuple(gaps), in_degs,
                              f_extra=rng.randint(-2, 2))
        assert got == eta_sign(arities, degs, gaps), \
            (arities, degs, gaps, in_degs)


def test_brace_raw_matches_tensor_route():
    rng = random.Random(3)
    ops = EndOps(A)
    for _ in range(10):
        f = random_end_map(A, rng, rng.randint(1, 3), rng.choice((0, 1)))
        n = rng.randint(1, min(2, f.arity))
        gs = [random_end_map(A, rng, rng.randint(1, 2), rng.choice((0, 1)))
              for _ in range(n)]
        got = materialize(brace_raw(ops, f, gs))
        want = None
        one = identity_map(A)
        for gaps in gap_tuples(f.arity - n, n + 1):
            factors = [one] * gaps[0]
            for j, g in enumerate(gs):
                factors.append(g)
                factors.extend([one] * gaps[j + 1])
            term = compose_maps(f, factors)
            want = term if want is None else map_add(want, term)
        assert got.canonical() == materialize(want).canonical()


def test_lie_bracket_antisymmetry():
    rng = random.Random(7)
    for _ in range(10):
        f = random_end_map(A, rng, rng.randint(1, 3), rng.choice((0, 1)))
        g = random_end_map(A, rng, rng.randint(1, 3), rng.choice((0, 1)))
        par = scalar_product(SE.natural_degree(f), SE.natural_degree(g))
        lhs = materialize(lie_bracket(SE, f, g))
        rhs = materialize(SE.base.el_scale(-sign(par), lie_bracket(SE, g, f)))
        assert lhs.canonical() == rhs.canonical()


R2 = GradedModule({"a": 0, "b": 1}, name="R2")
SR2 = SuspOps(EndOps(R2))


def relation_instance(rng, n, m):
    x = random_end_map(R2, rng, rng.randint(max(n, 1), 3),
                       rng.choice((0, 1)))
    xs = [random_end_map(R2, rng, rng.randint(1, 2), rng.choice((0, 1)))
          for _ in range(n)]
    ys = [random_end_map(R2, rng, rng.randint(1, 2), rng.choice((0, 1)))
          for _ in range(m)]
    return x, xs, ys


def test_brace_relation_holds():
    rng = random.Random(101)
    for _ in range(40):
        n = rng.randint(1, 2)
        m = rng.randint(1, 2)
        x, xs, ys = relation_instance(rng, n, m)
        res = brace_relation_residual(SR2, x, xs, ys)
        assert materialize(res).is_zero(), (n, m)


def relation_mutations():
    def pair(a, b):
        return scalar_product(a, b)

    return [
        lambda xn, yn, ch: 0,
        lambda xn, yn, ch: 1,
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) for p, (i, _)
                               in enumerate(ch) for q in range(i)) + 1,
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) for p, (i, _)
                               in enumerate(ch) for q in range(max(i - 1, 0))),
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) for p, (i, _)
                               in enumerate(ch) for q in range(i, len(yn))),
        lambda xn, yn, ch: sum((xn[p] + 1) * sum(yn[:i]) for p, (i, _)
                               in enumerate(ch)) % 2,
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) + i for p, (i, _)
                               in enumerate(ch) for q in range(i)),
        lambda xn, yn, ch: sum(i for i, _ in ch),
        lambda xn, yn, ch: sum(j for _, j in ch),
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) for p, (i, j)
                               in enumerate(ch) for q in range(i + j)),
        lambda xn, yn, ch: sum(pair(xn[p], sum(yn)) for p in range(len(xn))),
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) for p, (i, _)
                               in enumerate(ch) for q in range(i)) + len(ch),
        lambda xn, yn, ch: sum(pair(xn[p] + 1, yn[q]) for p, (i, _)
                               in enumerate(ch) for q in range(i)),
        lambda xn, yn, ch: sum(pair(xn[p], yn[q] + 1) for p, (i, _)
                               in enumerate(ch) for q in range(i)),
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) * (q + 1) for p, (i, _)
                               in enumerate(ch) for q in range(i)),
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) for p, (i, _)
                               in enumerate(ch) for q in range(i))
        + sum(pair(xn[p], xn[r]) for p in range(len(xn))
              for r in range(p)),
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) for p, (i, _)
                               in enumerate(ch) for q in range(i))
        + sum(j * xn[p] for p, (_, j) in enumerate(ch)),
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) for p, (i, _)
                               in enumerate(ch) for q in range(i))
        + sum(i * xn[p] for p, (i, _) in enumerate(ch)),
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) for p, (i, _)
                               in enumerate(ch) for q in range(i))
        + len(xn) * len(yn),
        lambda xn, yn, ch: sum(pair(xn[p], yn[q]) for p, (i, _)
                               in enumerate(ch) for q in range(i))
        + sum(yn) % 2,
    ]


def test_brace_relation_mutations_are_killed():
    rng = random.Random(303)
    instances = []
    while len(instances) < 12:
        n = rng.randint(1, 2)
        m = rng.randint(1, 2)
        x, xs, ys = relation_instance(rng, n, m)
        if not materialize(brace(SR2, brace(SR2, x, xs), ys)).is_zero():
            instances.append((x, xs, ys))
    killed = 0
    mutations = relation_mutations()
    for eps_fn in mutations:
        for x, xs, ys in instances:
            res = brace_relation_residual(SR2, x, xs, ys, eps_fn=eps_fn)
            if not materialize(res).is_zero():
                killed += 1
                break
    assert killed >= 0.95 * len(mutations), killed
