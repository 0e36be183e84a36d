"""Graded and bigraded modules over the integers, with sparse maps.

A module is a set of named basis symbols with a degree attached to each;
degrees are integers or (horizontal, vertical) pairs.  Elements are
dictionaries mapping symbols to nonzero integer coefficients, and words
(tuples of symbols) name the basis of a tensor power.

Multilinear maps come in two interchangeable flavors: table backed
(:class:`MultiMap`) and callable backed (:class:`LazyMap`).  Evaluating
one map on a word never produces a sign; all Koszul bookkeeping happens
when maps are tensored or substituted into each other, so each sign is
written exactly once.
"""

import itertools

from .signs import scalar_product, sign


# degree arithmetic, agnostic between int and (horizontal, vertical)

def deg_add(d, e):
    if isinstance(d, tuple):
        return (d[0] + e[0], d[1] + e[1])
    return d + e


def deg_neg(d):
    if isinstance(d, tuple):
        return (-d[0], -d[1])
    return -d


def deg_zero(bigraded):
    return (0, 0) if bigraded else 0


def vdeg(d):
    """Vertical component of a degree; the identity on integers."""
    return d[1] if isinstance(d, tuple) else d


def hdeg(d):
    """Horizontal component of a degree; zero on integers."""
    return d[0] if isinstance(d, tuple) else 0


def total_deg(d):
    return d[0] + d[1] if isinstance(d, tuple) else d


class GradedModule:
    """Free module with a named, graded basis.

    Pass a degrees dict for a finite basis, or degree_fn for a basis too
    large to enumerate (the symbols are then whatever strings the caller
    feeds in, and words() is unavailable).
    """

    def __init__(self, degrees=None, degree_fn=None, bigraded=None, name="A"):
        if (degrees is None) == (degree_fn is None):
            raise ValueError("pass exactly one of degrees, degree_fn")
        self.name = name
        self._degrees = dict(degrees) if degrees is not None else None
        self._degree_fn = degree_fn
        if bigraded is None:
            if not degrees:
                raise ValueError("bigraded flag required for a lazy basis")
            bigraded = isinstance(next(iter(degrees.values())), tuple)
        self.bigraded = bigraded

    @property
    def finite(self):
        return self._degrees is not None

    def degree(self, symbol):
        if self._degrees is not None:
            return self._degrees[symbol]
        return self._degree_fn(symbol)

    def word_degree(self, word):
        d = deg_zero(self.bigraded)
        for s in word:
            d = deg_add(d, self.degree(s))
        return d

    def symbols(self):
        if self._degrees is None:
            raise ValueError("lazy basis cannot be enumerated")
        return sorted(self._degrees)

    def words(self, n):
        return list(itertools.product(self.symbols(), repeat=n))

    def shifted(self, by):
        """Same basis with every degree moved by the given amount."""
        if self.finite:
            degs = {s: deg_add(d, by) for s, d in self._degrees.items()}
            return GradedModule(degrees=degs, bigraded=self.bigraded,
                                name="S" + self.name)
        base = self._degree_fn
        return GradedModule(degree_fn=lambda s: deg_add(base(s), by),
                            bigraded=self.bigraded, name="S" + self.name)


# elements: dict symbol -> nonzero int

def el_norm(a):
    return {s: c for s, c in a.items() if c}

def el_add(a, b):
    out = dict(a)
    for s, c in b.items():
        out[s] = out.get(s, 0) + c
        if not out[s]:
            del out[s]
    return out

def el_scale(c, a):
    if not c:
        return {}
    return {s: c * v for s, v in a.items()}

def el_sub(a, b):
    return el_add(a, el_scale(-1, b))

def el_is_zero(a):
    return not el_norm(a)

def el_eq(a, b):
    return el_norm(a) == el_norm(b)

def el_items(a):
    """Deterministic iteration order for reports and serialization."""
    return sorted(el_norm(a).items())


def element_degree(module, a):
    """Common degree of a homogeneous element, None for zero."""
    degs = {module.degree(s) for s in el_norm(a)}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("element is not homogeneous: %r" % (sorted(degs),))
    return degs.pop()


def random_homogeneous(module, pool, rng, terms=2, max_coeff=2):
    """Small random homogeneous element supported on the given pool."""
    by_deg = {}
    for s in pool:
        by_deg.setdefault(module.degree(s), []).append(s)
    degree = rng.choice(sorted(by_deg))
    syms = by_deg[degree]
    picked = rng.sample(syms, min(terms, len(syms)))
    out = {}
    for s in picked:
        c = rng.randint(1, max_coeff) * rng.choice((1, -1))
        out[s] = c
    return out


# multilinear maps

class MultiMap:
    """Table backed multilinear map between tensor powers.

    table maps input words (tuples of source symbols, length == arity)
    to sparse output elements.  Missing words map to zero.
    """

    def __init__(self, source, target, arity, degree, table=None):
        self.source = source
        self.target = target
        self.arity = arity
        self.degree = degree
        self.table = {}
        if table:
            for w, out in table.items():
                out = el_norm(out)
                if out:
                    self.table[tuple(w)] = out

    def eval_word(self, word):
        return dict(self.table.get(tuple(word), {}))

    def apply(self, args):
        """Evaluate on a tuple of elements by multilinear expansion."""
        if len(args) != self.arity:
            raise ValueError("arity mismatch")
        out = {}
        for word, c in _word_expansion(args):
            hit = self.table.get(word)
            if hit:
                out = el_add(out, el_scale(c, hit))
        return out

    def is_zero(self):
        return all(el_is_zero(v) for v in self.table.values())

    def scaled(self, c):
        return MultiMap(self.source, self.target, self.arity, self.degree,
                        {w: el_scale(c, out) for w, out in self.table.items()})

    def plus(self, other):
        if (other.arity != self.arity or other.degree != self.degree):
            raise ValueError("can only add maps of equal arity and degree")
        table = {w: dict(out) for w, out in self.table.items()}
        for w, out in other.table.items():
            table[w] = el_add(table.get(w, {}), out)
        return MultiMap(self.source, self.target, self.arity, self.degree,
                        table)

    def canonical(self):
        """Deterministic nested-tuple form, used for report hashes."""
        rows = []
        for w in sorted(self.table):
            out = el_items(self.table[w])
            if out:
                rows.append((w, tuple(out)))
        return tuple(rows)

    def __eq__(self, other):
        return (isinstance(other, MultiMap)
                and self.arity == other.arity
                and self.degree == other.degree
                and self.canonical() == other.canonical())

    def __hash__(self):
        return hash((self.arity, self.degree, self.canonical()))

    def __repr__(self):
        return "MultiMap(arity=%d, degree=%r, %d rows)" % (
            self.arity, self.degree, len(self.table))


class LazyMap:
    """Callable backed multilinear map; fn(word) returns an element."""

    def __init__(self, source, target, arity, degree, fn):
        self.source = source
        self.target = target
        self.arity = arity
        self.degree = degree
        self.fn = fn
        self._cache = {}

    def eval_word(self, word):
        word = tuple(word)
        if word not in self._cache:
            self._cache[word] = el_norm(self.fn(word))
        return dict(self._cache[word])

    def apply(self, args):
        if len(args) != self.arity:
            raise ValueError("arity mismatch")
        out = {}
        for word, c in _word_expansion(args):
            out = el_add(out, el_scale(c, self.eval_word(word)))
        return out


def _word_expansion(args):
    """Words and coefficients in the expansion of a tuple of elements.

    Coefficients are central, so no sign appears here.
    """
    supports = [sorted(el_norm(a).items()) for a in args]
    for combo in itertools.product(*supports):
        word = tuple(s for s, _ in combo)
        c = 1
        for _, v in combo:
            c *= v
        yield word, c


def identity_map(module):
    return LazyMap(module, module, 1, deg_zero(module.bigraded),
                   lambda w: {w[0]: 1})


def materialize(mapping):
    """Turn any map over a finite source into a MultiMap."""
    table = {}
    for w in mapping.source.words(mapping.arity):
        out = mapping.eval_word(w)
        if out:
            table[w] = out
    return MultiMap(mapping.source, mapping.target, mapping.arity,
                    mapping.degree, table)


def zero_map(source, target, arity, degree):
    return MultiMap(source, target, arity, degree, {})


def map_tensor_eval(maps, word):
    """Evaluate f_1 (x) ... (x) f_k on a word, with the Koszul sign.

    Moving f_j past the inputs consumed by the earlier factors costs the
    pairing of its degree with theirs.  Returns a dict over output words
    of length k.
    """
    out_words = {(): 1}
    consumed = None
    pos = 0
    for f in maps:
        seg = word[pos:pos + f.arity]
        pos += f.arity
        par = scalar_product(f.degree, consumed) if consumed is not None else 0
        seg_deg = f.source.word_degree(seg)
        consumed = seg_deg if consumed is None else deg_add(consumed, seg_deg)
        hit = f.eval_word(seg)
        if not hit:
            return {}
        step = {}
        for w, c in out_words.items():
            for s, v in hit.items():
                step[w + (s,)] = step.get(w + (s,), 0) + c * v * sign(par)
        out_words = {w: c for w, c in step.items() if c}
        if not out_words:
            return {}
    if pos != len(word):
        raise ValueError("word length does not match total arity")
    return out_words


def hom_compose(f, slot, g):
    """Substitute g into input slot of f (1-based), with the Koszul sign.

    The sign is the pairing of g's degree with the inputs it jumps over.
    """
    if not 1 <= slot <= f.arity:
        raise ValueError("slot out of range")
    arity = f.arity + g.arity - 1
    degree = deg_add(f.degree, g.degree)

    def fn(word):
        prefix = word[:slot - 1]
        seg = word[slot - 1:slot - 1 + g.arity]
        suffix = word[slot - 1 + g.arity:]
        par = scalar_product(g.degree, g.source.word_degree(prefix)) \
            if prefix else 0
        inner = g.eval_word(seg)
        out = {}
        for s, c in inner.items():
            hit = f.eval_word(prefix + (s,) + suffix)
            out = el_add(out, el_scale(c * sign(par), hit))
        return out

    return LazyMap(g.source, f.target, arity, degree, fn)


def map_add(f, g):
    """Sum of two maps of equal arity and degree, lazily if needed."""
    if f.arity != g.arity or f.degree != g.degree:
        raise ValueError("can only add maps of equal arity and degree")
    if isinstance(f, MultiMap) and isinstance(g, MultiMap):
        return f.plus(g)
    return LazyMap(f.source, f.target, f.arity, f.degree,
                   lambda w: el_add(f.eval_word(w), g.eval_word(w)))


def map_scale(c, f):
    if isinstance(f, MultiMap):
        return f.scaled(c)
    return LazyMap(f.source, f.target, f.arity, f.degree,
                   lambda w: el_scale(c, f.eval_word(w)))


def map_sub(f, g):
    """Table difference of two maps over a finite source."""
    fm = f if isinstance(f, MultiMap) else materialize(f)
    gm = g if isinstance(g, MultiMap) else materialize(g)
    return fm.plus(gm.scaled(-1))


def shift_tensor_parity(degrees):
    """Parity of applying an inverse shift in every slot of a word.

    degrees lists the degrees of the word the shifts act on; slot i
    contributes (n - i) times its degree.  For bigraded vertical shifts
    pass the vertical components.
    """
    n = len(degrees)
    return sum((n - i - 1) * d for i, d in enumerate(degrees)) % 2
