"""Module and map layer: degrees, elements, Koszul bookkeeping."""

import random

import pytest

from operadic.gmod import (
    GradedModule, MultiMap, LazyMap, deg_add, deg_zero, vdeg, hdeg,
    total_deg, el_add, el_scale, el_sub, el_eq, el_is_zero, el_items,
    element_degree, random_homogeneous, identity_map, materialize,
    zero_map, map_tensor_eval, hom_compose, map_sub, shift_tensor_parity,
)


@pytest.fixture
def A():
    return GradedModule({"one": 0, "x": 1, "y": 1, "z": 2}, name="A")


@pytest.fixture
def B():
    return GradedModule({"p": (0, 0), "q": (1, 0), "r": (0, 1)}, name="B")


def test_degrees_and_words(A, B):
    assert A.degree("z") == 2
    assert A.word_degree(("x", "y", "one")) == 2
    assert B.word_degree(("q", "r")) == (1, 1)
    assert not A.bigraded and B.bigraded
    assert A.words(0) == [()]
    assert len(A.words(2)) == 16
    assert A.words(1) == sorted(A.words(1))


def test_shifted_module(A, B):
    SA = A.shifted(1)
    assert SA.degree("x") == 2
    SB = B.shifted((0, 1))
    assert SB.degree("q") == (1, 1)
    assert vdeg(SB.degree("q")) == 1 and hdeg(SB.degree("q")) == 1
    assert total_deg((2, -1)) == 1


def test_element_helpers():
    a = {"x": 2, "y": -1}
    b = {"y": 1, "z": 3}
    assert el_add(a, b) == {"x": 2, "z": 3}
    assert el_sub(a, a) == {}
    assert el_is_zero(el_scale(0, a))
    assert el_eq({"x": 1, "y": 0}, {"x": 1})
    assert el_items({"y": 1, "x": 2}) == [("x", 2), ("y", 1)]


def test_element_degree(A):
    assert element_degree(A, {"x": 1, "y": -2}) == 1
    assert element_degree(A, {}) is None
    with pytest.raises(ValueError):
        element_degree(A, {"x": 1, "z": 1})


def test_random_homogeneous_is_homogeneous(A):
    rng = random.Random(7)
    for _ in range(50):
        el = random_homogeneous(A, A.symbols(), rng, terms=2)
        element_degree(A, el)
    rng1, rng2 = random.Random(3), random.Random(3)
    seq1 = [random_homogeneous(A, A.symbols(), rng1) for _ in range(5)]
    seq2 = [random_homogeneous(A, A.symbols(), rng2) for _ in range(5)]
    assert seq1 == seq2


def mk_mult(A):
    """Commutative product with one*u = u, x*y = z."""
    table = {}
    for s in A.symbols():
        table[("one", s)] = {s: 1}
        if s != "one":
            table[(s, "one")] = {s: 1}
    table[("x", "y")] = {"z": 1}
    table[("y", "x")] = {"z": 1}
    return MultiMap(A, A, 2, 0, table)


def test_multimap_apply_is_multilinear(A):
    m = mk_mult(A)
    a = {"x": 2, "one": 1}
    b = {"y": 3}
    c = {"x": -1}
    lhs = m.apply([el_add(a, c), b])
    rhs = el_add(m.apply([a, b]), m.apply([c, b]))
    assert el_eq(lhs, rhs)
    assert el_eq(m.apply([el_scale(5, a), b]), el_scale(5, m.apply([a, b])))
    assert m.apply([{"x": 1}, {"y": 1}]) == {"z": 1}
    assert m.eval_word(("z", "z")) == {}


def test_multimap_algebra(A):
    m = mk_mult(A)
    twice = m.plus(m)
    assert twice.eval_word(("x", "y")) == {"z": 2}
    assert m.plus(m.scaled(-1)).is_zero()
    assert m == MultiMap(A, A, 2, 0, dict(m.table))
    assert zero_map(A, A, 2, 0).is_zero()
    with pytest.raises(ValueError):
        m.plus(MultiMap(A, A, 1, 0, {}))


def test_identity_and_materialize(A):
    i = identity_map(A)
    assert i.eval_word(("x",)) == {"x": 1}
    m = materialize(hom_compose(mk_mult(A), 1, i))
    assert m == mk_mult(A)


def mk_odd(A, name_out):
    """Degree 1 map sending one to a chosen odd symbol and x to z."""
    return MultiMap(A, A, 1, 1, {("one",): {name_out: 1}, ("x",): {"z": 1}})


def test_tensor_eval_koszul_sign(A):
    # (f (x) g)(x1 (x) x2) picks up (-1)^{deg g * deg x1}
    f = identity_map(A)
    g = mk_odd(A, "x")
    assert map_tensor_eval([f, g], ("x", "one")) == {("x", "x"): -1}
    assert map_tensor_eval([f, g], ("one", "one")) == {("one", "x"): 1}
    assert map_tensor_eval([g, f], ("one", "x")) == {("x", "x"): 1}


def test_tensor_interchange_law(A):
    # (f (x) g)(h (x) k) = (-1)^{deg g deg h} (fh (x) gk)
    f = mk_odd(A, "x")
    g = mk_odd(A, "y")
    h = mk_odd(A, "y")
    k = identity_map(A)
    for w in A.words(2):
        lhs = {}
        for mid, c in map_tensor_eval([h, k], w).items():
            for out, d in map_tensor_eval([f, g], mid).items():
                lhs[out] = lhs.get(out, 0) + c * d
        fh = materialize(hom_compose(f, 1, h))
        gk = materialize(hom_compose(g, 1, k))
        rhs = {out: -c for out, c in map_tensor_eval([fh, gk], w).items()}
        lhs = {o: c for o, c in lhs.items() if c}
        rhs = {o: c for o, c in rhs.items() if c}
        assert lhs == rhs, w


def test_hom_compose_prefix_sign(A):
    m = mk_mult(A)
    g = mk_odd(A, "x")
    comp = hom_compose(m, 2, g)
    # inserting the odd g past the odd y costs a sign
    assert comp.eval_word(("y", "one")) == {"z": -1}
    assert comp.eval_word(("one", "one")) == {"x": 1}
    assert comp.degree == 1 and comp.arity == 2


def test_hom_compose_matches_tensor_route(A):
    rng = random.Random(11)
    syms = A.symbols()
    for _ in range(20):
        table_f = {}
        for w in A.words(2):
            if rng.random() < 0.4:
                table_f[w] = {rng.choice(syms): rng.randint(-2, 2)}
        f = MultiMap(A, A, 2, 1, table_f)
        table_g = {}
        for w in A.words(2):
            if rng.random() < 0.4:
                table_g[w] = {rng.choice(syms): rng.randint(-2, 2)}
        g = MultiMap(A, A, 2, 1, table_g)
        slot = rng.randint(1, 2)
        direct = materialize(hom_compose(f, slot, g))
        factors = [identity_map(A)] * (slot - 1) + [g] \
            + [identity_map(A)] * (2 - slot)
        table = {}
        for w in A.words(3):
            out = {}
            for mid, c in map_tensor_eval(factors, w).items():
                out = el_add(out, el_scale(c, f.eval_word(mid)))
            if out:
                table[w] = out
        via_tensor = MultiMap(A, A, 3, 2, table)
        assert direct.canonical() == via_tensor.canonical()


def test_hom_compose_disjoint_slots_koszul(A):
    # (f o_2 g) o_1 h = (-1)^{deg g deg h} (f o_1 h) o_{1 + a(h)} g
    rng = random.Random(5)
    syms = A.symbols()
    for _ in range(10):
        table_f = {w: {rng.choice(syms): 1} for w in A.words(2)
                   if rng.random() < 0.5}
        f = MultiMap(A, A, 2, 0, table_f)
        g = mk_odd(A, "x")
        h = mk_odd(A, "y")
        lhs = materialize(hom_compose(hom_compose(f, 2, g), 1, h))
        rhs = materialize(hom_compose(hom_compose(f, 1, h), 2, g)).scaled(-1)
        assert lhs.canonical() == rhs.canonical()


def test_map_sub(A):
    m = mk_mult(A)
    assert map_sub(m, m).is_zero()
    assert not map_sub(m, zero_map(A, A, 2, 0)).is_zero()


def test_shift_tensor_parity():
    assert shift_tensor_parity([1]) == 0
    assert shift_tensor_parity([1, 1]) == 1
    assert shift_tensor_parity([1, 0, 1]) == 0
    assert shift_tensor_parity([2, 1]) == 0
    assert shift_tensor_parity([]) == 0


def test_lazy_map_caches(A):
    calls = []

    def fn(w):
        calls.append(w)
        return {w[0]: 1}

    f = LazyMap(A, A, 1, 0, fn)
    f.eval_word(("x",))
    f.eval_word(("x",))
    assert len(calls) == 1
    assert el_eq(f.apply([{"x": 2, "y": 1}]), {"x": 2, "y": 1})


def test_deg_helpers():
    assert deg_add(1, 2) == 3
    assert deg_add((1, 0), (0, 2)) == (1, 2)
    assert deg_zero(True) == (0, 0) and deg_zero(False) == 0
    assert vdeg(3) == 3 and hdeg(3) == 0
