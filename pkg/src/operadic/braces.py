"""Brace operations on an operadic suspension.

The brace b_n(x; x_1..x_n) inserts the x_j into x in order, in all
order-preserving ways, with the suspension signs.  Two routes compute
it: scaling bare insertions by the closed-form eta parity, and iterating
twisted insertions; they must agree and the tests compare them.

brace_conjugation_oracle rebuilds the brace a third way, by explicit
shift conjugation with the orientation where the shift lowers degree.
It shares no sign formulas with the other routes, only the generic
Koszul machinery of gmod, which is what makes it an oracle.
"""

from .signs import binom2_parity, eta_sign, scalar_product, sign, tot_gamma_sign
from .gmod import (
    LazyMap, deg_add, identity_map, map_add, map_scale, vdeg, zero_map,
)
from .operad import compose_maps
from .gmod import hom_compose
from .totalization import TotEl, column_picks


def gap_tuples(total, parts):
    """Compositions of total into parts nonnegative integers, lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in gap_tuples(total - first, parts - 1):
            yield (first,) + rest


def insertion_slots(gaps, arities):
    """1-based slots for inserting the factors left to right.

    gaps has one more entry than arities; slot j accounts for the
    arities of the factors already inserted before it.
    """
    slots = []
    shift = 0
    pos = 0
    for j, a in enumerate(arities):
        pos += gaps[j] + 1
        slots.append(pos + shift)
        shift += a - 1
    return slots


def brace(sops, x, xs, route="eta"):
    """The brace b_n(x; x_1..x_n) over a suspension backend.

    Vanishes when n exceeds the arity of x; b_0 is the identity.
    """
    base = sops.base
    n = len(xs)
    if n == 0:
        return x
    N = base.el_arity(x)
    arities = [base.el_arity(y) for y in xs]
    degree = base.el_degree(x)
    for y in xs:
        degree = deg_add(degree, base.el_degree(y))
    out_arity = N - n + sum(arities)
    if n > N:
        return base.el_zero(out_arity, degree)
    qs = [vdeg(base.el_degree(y)) for y in xs]
    out = base.el_zero(out_arity, degree)
    for gaps in gap_tuples(N - n, n + 1):
        slots = insertion_slots(gaps, arities)
        if route == "eta":
            term = x
            for slot, y in zip(slots, xs):
                term = base.el_insert(term, slot, y)
            eps = eta_sign(arities, qs, list(gaps))
            term = base.el_scale(sign(eps), term)
        elif route == "tilde":
            term = x
            for slot, y in zip(slots, xs):
                term = sops.tilde_insert(term, slot, y)
        else:
            raise ValueError("unknown route %r" % route)
        out = base.el_add(out, term)
    return out


def brace_raw(ops, x, xs):
    """Gap-sum of bare insertions, no suspension signs."""
    n = len(xs)
    if n == 0:
        return x
    N = ops.el_arity(x)
    arities = [ops.el_arity(y) for y in xs]
    degree = ops.el_degree(x)
    for y in xs:
        degree = deg_add(degree, ops.el_degree(y))
    out_arity = N - n + sum(arities)
    out = ops.el_zero(out_arity, degree)
    if n > N:
        return out
    for gaps in gap_tuples(N - n, n + 1):
        term = x
        for slot, y in zip(insertion_slots(gaps, arities), xs):
            term = ops.el_insert(term, slot, y)
        out = ops.el_add(out, term)
    return out


def lie_bracket(sops, f, g):
    """Commutator of unary braces; degrees are the natural ones."""
    par = scalar_product(sops.natural_degree(f), sops.natural_degree(g))
    return sops.base.el_add(
        brace(sops, f, [g]),
        sops.base.el_scale(-sign(par), brace(sops, g, [f])))


def brace_star(tops, x, xs, route="eta"):
    """The brace over a totalized suspension backend.

    Elements are column tuples and the output column is the sum of the
    chosen input columns.  The eta route prices each choice with the
    suspension parity of the pieces' vertical degrees plus the column
    layer parity, then composes bare pieces; the star route iterates
    the twisted insertions of the backend.
    """
    n = len(xs)
    if n == 0:
        return x
    N = tops.el_arity(x)
    arities = [tops.el_arity(y) for y in xs]
    degree = tops.el_degree(x) + sum(tops.el_degree(y) for y in xs)
    out_arity = N - n + sum(arities)
    out = tops.el_zero(out_arity, degree)
    if n > N:
        return out
    base = tops.base
    degs = [tops.el_degree(y) for y in xs]
    for gaps in gap_tuples(N - n, n + 1):
        slots = insertion_slots(gaps, arities)
        if route == "star":
            term = x
            for slot, y in zip(slots, xs):
                term = tops.star_insert(term, slot, y)
            out = tops.el_add(out, term)
        elif route == "eta":
            for k0, p in sorted(x.cols.items()):
                for picks in column_picks([y.cols for y in xs]):
                    ks = [k for k, _ in picks]
                    qs = [vdeg(base.el_degree(piece)) for _, piece in picks]
                    eps = eta_sign(arities, qs, list(gaps))
                    eps += tot_gamma_sign(degs, [k0] + ks)
                    term = p
                    for slot, (_, piece) in zip(slots, picks):
                        term = base.el_insert(term, slot, piece)
                    term = base.el_scale(sign(eps), term)
                    out = tops.el_add(
                        out,
                        TotEl(out_arity, degree, {k0 + sum(ks): term}))
        else:
            raise ValueError("unknown route %r" % route)
    return out


def lie_bracket_star(tops, f, g):
    """Commutator of unary totalized braces; degrees are total ones."""
    par = tops.el_degree(f) * tops.el_degree(g)
    return tops.el_add(
        brace_star(tops, f, [g]),
        tops.el_scale(-sign(par), brace_star(tops, g, [f])))


def block_choices(m, n):
    """Placements of n blocks inside m arguments.

    Yields tuples of (i_p, j_p): block p consumes arguments i_p+1 to
    i_p+j_p, blocks in order and disjoint.
    """
    def rec(start, p):
        if p == n:
            yield ()
            return
        for i in range(start, m + 1):
            for j in range(0, m - i + 1):
                for rest in rec(i + j, p + 1):
                    yield ((i, j),) + rest
    yield from rec(0, 0)


def brace_relation_residual(sops, x, xs, ys, eps_fn=None):
    """Left minus right hand side of the brace relation.

    Composing two braces equals the sum over placements of the inner
    factors among the outer arguments, each term signed by the natural
    degrees the factors jump over.  eps_fn replaces the term parity;
    the mutation battery in the tests uses it to check the default is
    forced.
    """
    base = sops.base
    n = len(xs)
    m = len(ys)
    lhs = brace(sops, brace(sops, x, xs), ys)
    x_nat = [sops.natural_degree(y) for y in xs]
    y_nat = [sops.natural_degree(y) for y in ys]
    rhs = None
    for choice in block_choices(m, n):
        if any(j > base.el_arity(xs[p]) for p, (_, j) in enumerate(choice)):
            continue
        eps = 0
        args = []
        pos = 0
        for p, (i, j) in enumerate(choice):
            args.extend(ys[pos:i])
            args.append(brace(sops, xs[p], ys[i:i + j]))
            pos = i + j
            for q in range(i):
                eps += scalar_product(x_nat[p], y_nat[q])
        args.extend(ys[pos:])
        if eps_fn is not None:
            eps = eps_fn(x_nat, y_nat, choice)
        term = base.el_scale(sign(eps), brace(sops, x, args))
        rhs = term if rhs is None else base.el_add(rhs, term)
    return base.el_add(lhs, base.el_scale(-1, rhs))


def brace_conjugation_oracle(f, gs):
    """The brace on endomorphisms, rebuilt by shift conjugation.

    Conjugates every map to the module shifted downward, takes the
    bare gap-sum composite there, and conjugates back with the binomial
    prefactor of the inverse.  All signs arise from generic Koszul
    evaluation, none from the brace formulas.
    """
    A = f.source
    SA = A.shifted(-1)
    down = (0, -1) if A.bigraded else -1
    up = (0, 1) if A.bigraded else 1
    S = LazyMap(A, SA, 1, down, lambda w: {w[0]: 1})
    Sinv = LazyMap(SA, A, 1, up, lambda w: {w[0]: 1})

    def conj(h):
        return hom_compose(S, 1, compose_maps(h, [Sinv] * h.arity))

    F = conj(f)
    Gs = [conj(g) for g in gs]
    N = f.arity
    n = len(gs)
    out_arity = N - n + sum(g.arity for g in gs)
    degree = f.degree
    for g in gs:
        degree = deg_add(degree, g.degree)
    if n > N:
        return zero_map(A, A, out_arity, degree)
    one = identity_map(SA)
    total = None
    for gaps in gap_tuples(N - n, n + 1):
        factors = [one] * gaps[0]
        for j, G in enumerate(Gs):
            factors.append(G)
            factors.extend([one] * gaps[j + 1])
        term = compose_maps(F, factors)
        total = term if total is None else map_add(total, term)
    back = hom_compose(Sinv, 1, compose_maps(total, [S] * out_arity))
    return map_scale(sign(binom2_parity(out_arity)), back)


def eta_oracle_draw(arities, degs, gaps, in_degs, f_extra=0):
    """Parity of the conjugation-route brace on one synthetic instance.

    Realizes blocks of the given arities and internal degrees, with
    gap inputs and block inputs of the chosen degrees, as one-entry
    endomorphisms; returns the parity of the oracle coefficient against
    the bare insertion chain on the distinguished word.
    """
    from .gmod import GradedModule, MultiMap
    from .operad import EndOps

    n = len(arities)
    gap_in = list(in_degs[:sum(gaps)])
    block_in = in_degs[sum(gaps):]
    degrees = {}
    for t, d in enumerate(gap_in):
        degrees["u%d" % t] = d
    blocks = []
    pos = 0
    for j, a in enumerate(arities):
        syms = []
        for t in range(a):
            s = "w%d_%d" % (j, t)
            degrees[s] = block_in[pos]
            syms.append(s)
            pos += 1
        out = "y%d" % j
        degrees[out] = sum(block_in[pos - a:pos]) + degs[j]
        blocks.append((tuple(syms), out))
    # the distinguished word and the row f keys on
    word = []
    f_row = []
    u = 0
    for j in range(n + 1):
        for _ in range(gaps[j]):
            word.append("u%d" % u)
            f_row.append("u%d" % u)
            u += 1
        if j < n:
            word.extend(blocks[j][0])
            f_row.append(blocks[j][1])
    degrees["out"] = sum(degrees[s] for s in f_row) + f_extra
    A = GradedModule(degrees, name="probe")
    f = MultiMap(A, A, len(f_row), f_extra, {tuple(f_row): {"out": 1}})
    gmaps = [MultiMap(A, A, arities[j], degs[j],
                      {blocks[j][0]: {blocks[j][1]: 1}})
             for j in range(n)]
    word = tuple(word)
    got = brace_conjugation_oracle(f, gmaps).eval_word(word)
    ops = EndOps(A)
    bare = f
    for slot, g in zip(insertion_slots(gaps, arities), gmaps):
        bare = ops.el_insert(bare, slot, g)
    ref = bare.eval_word(word)
    if set(got) != {"out"} or set(ref) != {"out"}:
        raise ValueError("oracle instance did not produce a single term")
    ratio = got["out"] // ref["out"]
    if ratio not in (1, -1):
        raise ValueError("oracle coefficients are not units")
    return 0 if ratio == 1 else 1
