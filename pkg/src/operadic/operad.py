"""Nonsymmetric operads: endomorphism backend and free planar trees.

Both backends expose the same element-level interface (el_add, el_scale,
el_insert, ...), so the brace and suspension layers run unchanged over
either.  Endomorphism elements are multilinear maps from gmod; free
elements are integer combinations of planar trees.
"""

from .signs import scalar_product, sign
from .gmod import (
    LazyMap, MultiMap, deg_add, deg_zero, el_add, el_scale, el_is_zero,
    hom_compose, identity_map, map_add, map_scale, map_tensor_eval,
    materialize,
)


def compose_maps(f, gs):
    """The composite f(g_1 (x) ... (x) g_n), Koszul signs included."""
    if f.arity != len(gs):
        raise ValueError("need one inner map per input of the outer map")
    arity = sum(g.arity for g in gs)
    degree = f.degree
    for g in gs:
        degree = deg_add(degree, g.degree)
    source = gs[0].source if gs else f.source

    def fn(word):
        out = {}
        for mid, c in map_tensor_eval(gs, word).items():
            out = el_add(out, el_scale(c, f.eval_word(mid)))
        return out

    return LazyMap(source, f.target, arity, degree, fn)


class EndOps:
    """Operad of multilinear operations on a single module."""

    def __init__(self, module):
        self.module = module
        self.bigraded = module.bigraded

    def unit(self):
        return identity_map(self.module)

    def el_arity(self, f):
        return f.arity

    def el_degree(self, f):
        return f.degree

    def el_add(self, f, g):
        return map_add(f, g)

    def el_scale(self, c, f):
        return map_scale(c, f)

    def el_zero(self, arity, degree):
        return MultiMap(self.module, self.module, arity, degree, {})

    def el_insert(self, f, i, g):
        return hom_compose(f, i, g)

    def el_is_zero(self, f):
        return materialize(f).is_zero()

    def el_eq(self, f, g):
        return materialize(f).canonical() == materialize(g).canonical()

    def gamma(self, f, gs):
        """Total composition by inserting left to right."""
        out = f
        slot = 1
        for g in gs:
            out = self.el_insert(out, slot, g)
            slot += g.arity
        return out

    def gamma_direct(self, f, gs):
        """Same composite built through the tensor product of the g's."""
        return compose_maps(f, gs)


LEAF = "*"


class FreeOperad:
    """Free nonsymmetric operad on graded generators, planar tree basis.

    A tree is the leaf marker or a tuple (generator, child, ...).  The
    sign of grafting pairs the incoming tree's degree with the degrees
    of the generators that sit after the grafted leaf in preorder.
    """

    def __init__(self, generators, bigraded=False):
        for name, (arity, degree) in generators.items():
            if arity < 0:
                raise ValueError("negative arity generator %r" % name)
        self.generators = dict(generators)
        self.bigraded = bigraded

    def gen_tree(self, name):
        arity, _ = self.generators[name]
        return (name,) + (LEAF,) * arity

    def gen_el(self, name):
        return {self.gen_tree(name): 1}

    def unit(self):
        return {LEAF: 1}

    def tree_arity(self, t):
        if t == LEAF:
            return 1
        return sum(self.tree_arity(c) for c in t[1:])

    def tree_degree(self, t):
        if t == LEAF:
            return deg_zero(self.bigraded)
        d = self.generators[t[0]][1]
        for c in t[1:]:
            d = deg_add(d, self.tree_degree(c))
        return d

    def _splice(self, t, i, s):
        """Replace the i-th leaf of t by s.

        Returns (tree, tail) where tail is the total degree of the
        generators of t after that leaf in preorder.
        """
        if t == LEAF:
            if i != 1:
                raise ValueError("leaf index out of range")
            return s, deg_zero(self.bigraded)
        seen = 0
        for pos, c in enumerate(t[1:], start=1):
            a = self.tree_arity(c)
            if i <= seen + a:
                new_c, tail = self._splice(c, i - seen, s)
                for rest in t[pos + 1:]:
                    tail = deg_add(tail, self.tree_degree(rest))
                return t[:pos] + (new_c,) + t[pos + 1:], tail
            seen += a
        raise ValueError("leaf index out of range")

    def insert_tree(self, t, i, s):
        """Graft s into the i-th leaf of t; returns (tree, coefficient)."""
        if not 1 <= i <= self.tree_arity(t):
            raise ValueError("leaf index out of range")
        new_t, tail = self._splice(t, i, s)
        return new_t, sign(scalar_product(self.tree_degree(s), tail))

    # element level

    def el_arity(self, x):
        arities = {self.tree_arity(t) for t in x}
        if len(arities) != 1:
            raise ValueError("element does not have a single arity")
        return arities.pop()

    def el_degree(self, x):
        degs = {self.tree_degree(t) for t in x}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def el_add(self, x, y):
        return el_add(x, y)

    def el_scale(self, c, x):
        return el_scale(c, x)

    def el_zero(self, arity, degree):
        return {}

    def el_insert(self, x, i, y):
        out = {}
        for t, c in x.items():
            for s, d in y.items():
                tree, eps = self.insert_tree(t, i, s)
                out = el_add(out, {tree: c * d * eps})
        return out

    def el_is_zero(self, x):
        return el_is_zero(x)

    def el_eq(self, x, y):
        return el_is_zero(el_add(x, el_scale(-1, y)))

    def gamma(self, x, ys):
        out = x
        slot = 1
        for y in ys:
            out = self.el_insert(out, slot, y)
            slot += self.el_arity(y)
        return out


def random_tree(fo, rng, grafts=2):
    """Deterministic random monomial built by repeated grafting."""
    names = sorted(fo.generators)
    t = fo.gen_tree(rng.choice(names))
    for _ in range(grafts):
        n = fo.tree_arity(t)
        if n == 0:
            break
        s = fo.gen_tree(rng.choice(names))
        t, _ = fo._splice(t, rng.randint(1, n), s)
    return t


def tree_to_obj(t):
    """JSON friendly nested lists."""
    if t == LEAF:
        return LEAF
    return [t[0]] + [tree_to_obj(c) for c in t[1:]]


def tree_from_obj(o):
    if o == LEAF:
        return LEAF
    return (o[0],) + tuple(tree_from_obj(c) for c in o[1:])
