"""A-infinity structures: residuals, morphisms, induced brace towers.

Everything here is exact over the integers and checked two or three
independent ways.  The structure equation has a twisted-insertion
route, a classical signed route, and a shift-conjugation route; the
morphism equation has a classical and a suspended route; the induced
structure on the shifted suspension feeds the extensional comparison
checks at the next level.
"""

import itertools

from .signs import (
    binom2_parity, inftymorphism_sign, scalar_product, sign, susp_mu_sign,
    tilde_sign,
)
from .gmod import (
    GradedModule, MultiMap, LazyMap, deg_add, deg_neg, el_add, el_scale,
    hom_compose, map_add, map_scale, materialize, vdeg,
)
from .operad import EndOps, compose_maps
from .suspension import (
    SuspOps, shift_inv_map, shift_map, sigma_bar_parity, suspend_module,
)
from .braces import brace


class AInftyAlgebra:
    """Carrier module with structure maps of arity n and degree 2-n."""

    def __init__(self, module, maps):
        if module.bigraded:
            raise ValueError("carrier must be single graded")
        for n, f in maps.items():
            if n < 1 or f.arity != n:
                raise ValueError("structure map keyed by wrong arity")
            if f.degree != 2 - n:
                raise ValueError(
                    "structure map of arity %d must have degree %d"
                    % (n, 2 - n))
        self.module = module
        self.maps = {n: maps[n] for n in sorted(maps)}

    def max_arity(self):
        return max(self.maps) if self.maps else 0


def _accumulate(out, n, term):
    out[n] = map_add(out[n], term) if n in out else term


def ainfty_residual_tilde(alg):
    """Twisted square of the structure collection, per output arity."""
    sops = SuspOps(EndOps(alg.module))
    out = {}
    for j, mj in alg.maps.items():
        for k, mk in alg.maps.items():
            for i in range(1, j + 1):
                _accumulate(out, j + k - 1, sops.tilde_insert(mj, i, mk))
    return {n: materialize(f) for n, f in sorted(out.items())}


def ainfty_residual_classical(alg):
    """The signed sum of bare insertions, per output arity."""
    out = {}
    for j, mj in alg.maps.items():
        for k, mk in alg.maps.items():
            for r in range(j):
                t = j - 1 - r
                term = map_scale(sign((r * k + t) % 2),
                                 hom_compose(mj, r + 1, mk))
                _accumulate(out, j + k - 1, term)
    return {n: materialize(f) for n, f in sorted(out.items())}


def plain_shift_conjugate(f, S, Sinv):
    """S after f after inverse shifts in every slot, generic signs."""
    return hom_compose(S, 1, compose_maps(f, [Sinv] * f.arity))


def plain_shift_conjugate_inv(F, S, Sinv):
    """Inverse of the plain conjugation, with the binomial prefactor."""
    back = hom_compose(Sinv, 1, compose_maps(F, [S] * F.arity))
    return map_scale(sign(binom2_parity(F.arity)), back)


def ainfty_residual_sigma(alg):
    """Conjugate to the shifted module, square bare, conjugate back.

    The plain shift conjugation turns suspended insertions into bare
    ones, so every sign on this route comes out of generic Koszul
    evaluation and none from the suspension formulas.
    """
    A = alg.module
    SA = suspend_module(A)
    S = shift_map(A, SA)
    Sinv = shift_inv_map(SA, A)
    conj = {n: plain_shift_conjugate(f, S, Sinv)
            for n, f in alg.maps.items()}
    out = {}
    for j, mj in conj.items():
        for k, mk in conj.items():
            for i in range(1, j + 1):
                term = plain_shift_conjugate_inv(
                    hom_compose(mj, i, mk), S, Sinv)
                _accumulate(out, j + k - 1, term)
    return {n: materialize(f) for n, f in sorted(out.items())}


def _first_witness(tables):
    for n in sorted(tables):
        table = tables[n]
        if not table.is_zero():
            word = sorted(table.table)[0]
            return {"arity": n, "word": list(word),
                    "value": sorted(table.table[word].items())}
    return None


def check_ainfty(alg):
    """Run all residual routes; they must agree and vanish."""
    routes = {
        "tilde": ainfty_residual_tilde(alg),
        "classical": ainfty_residual_classical(alg),
        "sigma": ainfty_residual_sigma(alg),
    }
    names = sorted(routes)
    arities = set()
    for r in routes.values():
        arities.update(r)
    agree = True
    for n in sorted(arities):
        forms = []
        for name in names:
            f = routes[name].get(n)
            forms.append(f.canonical() if f is not None else ())
        if len(set(forms)) > 1:
            agree = False
            break
    vanish = all(f.is_zero() for r in routes.values() for f in r.values())
    return {
        "check": "ainfty",
        "pass": bool(agree and vanish),
        "routes_agree": bool(agree),
        "vanishes": bool(vanish),
        "witness": _first_witness(routes["classical"]),
    }


def compositions_pos(n, k):
    """Ways to write n as an ordered sum of k positive integers."""
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - k + 2):
        for rest in compositions_pos(n - first, k - 1):
            yield (first,) + rest


def validate_morphism_degrees(fmaps):
    for n, f in fmaps.items():
        if n < 1 or f.arity != n:
            raise ValueError("morphism component keyed by wrong arity")
        if f.degree != 1 - n:
            raise ValueError(
                "morphism component of arity %d must have degree %d"
                % (n, 1 - n))


def infty_morphism_residual(fmaps, alg_a, alg_b, route="classical"):
    """Left minus right hand side of the morphism equation, per arity.

    The suspended route reads every sign off the suspension machinery
    instead of the classical exponents.
    """
    validate_morphism_degrees(fmaps)
    out = {}
    for n_out, fn in fmaps.items():
        for s, ms in alg_a.maps.items():
            for r in range(n_out):
                t = n_out - 1 - r
                if route == "classical":
                    par = (r * s + t) % 2
                else:
                    par = tilde_sign(n_out, s, r + 1, ms.degree)
                term = map_scale(sign(par), hom_compose(fn, r + 1, ms))
                _accumulate(out, n_out + s - 1, term)
    for k, mk in alg_b.maps.items():
        top = max(fmaps) * k
        for n in range(k, top + 1):
            for parts in compositions_pos(n, k):
                if any(p not in fmaps for p in parts):
                    continue
                if route == "classical":
                    par = inftymorphism_sign(list(parts))
                else:
                    par = susp_mu_sign(list(parts),
                                       [fmaps[p].degree for p in parts])
                term = map_scale(-sign(par),
                                 compose_maps(mk, [fmaps[p] for p in parts]))
                _accumulate(out, n, term)
    return {n: materialize(f) for n, f in sorted(out.items())}


def check_infty_morphism(fmaps, alg_a, alg_b):
    classical = infty_morphism_residual(fmaps, alg_a, alg_b, "classical")
    suspended = infty_morphism_residual(fmaps, alg_a, alg_b, "suspended")
    agree = all(classical[n].canonical() == suspended[n].canonical()
                for n in classical)
    vanish = all(f.is_zero() for f in classical.values())
    return {
        "check": "infty_morphism",
        "pass": bool(agree and vanish),
        "routes_agree": bool(agree),
        "vanishes": bool(vanish),
        "witness": _first_witness(classical),
    }


def compose_infty_morphisms(gmaps, fmaps, route="classical"):
    """Composite family of two morphism families."""
    validate_morphism_degrees(fmaps)
    validate_morphism_degrees(gmaps)
    out = {}
    top = max(fmaps) * max(gmaps)
    for r, gr in gmaps.items():
        for n in range(r, top + 1):
            for parts in compositions_pos(n, r):
                if any(p not in fmaps for p in parts):
                    continue
                if route == "classical":
                    par = inftymorphism_sign(list(parts))
                else:
                    par = susp_mu_sign(list(parts),
                                       [fmaps[p].degree for p in parts])
                term = map_scale(sign(par),
                                 compose_maps(gr, [fmaps[p] for p in parts]))
                _accumulate(out, n, term)
    return {n: materialize(f) for n, f in sorted(out.items())}


# collections: arity-indexed families of operations on one carrier

def coll_from_maps(maps):
    return {f.arity: f for f in maps}


def coll_add(ops, c1, c2):
    out = dict(c1)
    for n, f in c2.items():
        out[n] = ops.el_add(out[n], f) if n in out else f
    return out


def coll_scale(ops, c, coll):
    return {n: ops.el_scale(c, f) for n, f in coll.items()}


def coll_materialize(coll):
    return {n: materialize(f) for n, f in coll.items()}


def coll_is_zero(coll):
    return all(materialize(f).is_zero() for f in coll.values())


def coll_sub(ops, c1, c2):
    return coll_add(ops, c1, coll_scale(ops, -1, c2))


def coll_natural_degree(sops, coll):
    degs = {sops.natural_degree(f) for f in coll.values()}
    if len(degs) != 1:
        raise ValueError("collection is not homogeneous: %r" % sorted(degs))
    return degs.pop()


def coll_brace(sops, x_coll, arg_colls):
    """Brace of collections, expanded multilinearly over components.

    Vanished terms whose formal arity went negative are dropped; a
    collection with no surviving components comes back empty.
    """
    out = {}
    for x in x_coll.values():
        for combo in itertools.product(*[sorted(c.items())
                                         for c in arg_colls]):
            args = [f for _, f in combo]
            if len(args) > x.arity:
                continue
            term = brace(sops, x, args)
            n = term.arity
            out[n] = sops.base.el_add(out[n], term) if n in out else term
    return out


def coll_commutator(sops, a_coll, b_coll):
    """Unary brace commutator of collections, natural degrees."""
    if not a_coll or not b_coll:
        return {}
    da = coll_natural_degree(sops, a_coll)
    db = coll_natural_degree(sops, b_coll)
    par = scalar_product(da, db)
    lhs = coll_brace(sops, a_coll, [b_coll])
    rhs = coll_brace(sops, b_coll, [a_coll])
    return coll_add(sops.base, lhs, coll_scale(sops.base, -sign(par), rhs))


def structure_on_shifted(sops, m_coll, args):
    """Apply the induced structure map to shifted collections.

    args are the unshifted collections; the result is the unshifted
    collection under the outer shift.  Arity one is the commutator
    with the structure; higher arities are the braces with the shift
    conjugation parity on the natural degrees.
    """
    j = len(args)
    if j == 0:
        raise ValueError("structure maps start at arity one")
    if j == 1:
        return coll_commutator(sops, m_coll, args[0])
    if any(not c for c in args):
        return {}
    nats = [vdeg(coll_natural_degree(sops, c)) for c in args]
    par = sum((j - i - 1) * d for i, d in enumerate(nats)) % 2
    return coll_scale(sops.base, sign(par), coll_brace(sops, m_coll, args))


# the module of elementary operations, used for the next-level checks

class SuspendedEndModule:
    """Symbols naming the elementary operations on a carrier.

    A symbol "a,b->c" stands for the operation supported on the single
    input word (a, b) with output c; its degree is the natural degree
    of that operation in the suspended endomorphism operad.  shifted
    is the same basis one degree up, the home of the induced structure
    maps.
    """

    def __init__(self, carrier):
        self.carrier = carrier
        self.W = GradedModule(degree_fn=self._degree,
                              bigraded=carrier.bigraded, name="W")
        self.V = self.W.shifted((0, 1) if carrier.bigraded else 1)

    def sym(self, word, out):
        return ",".join(word) + "->" + out

    def parse(self, symbol):
        word, out = symbol.split("->")
        return (tuple(word.split(",")) if word else (), out)

    def _degree(self, symbol):
        word, out = self.parse(symbol)
        d = deg_add(self.carrier.degree(out),
                    deg_neg(self.carrier.word_degree(word)))
        n = len(word)
        if self.carrier.bigraded:
            return (d[0], d[1] + n - 1)
        return d + n - 1

    def decode(self, symbol):
        word, out = self.parse(symbol)
        degree = deg_add(self.carrier.degree(out),
                         deg_neg(self.carrier.word_degree(word)))
        return MultiMap(self.carrier, self.carrier, len(word), degree,
                        {word: {out: 1}})

    def encode_map(self, f):
        """Element of the symbol module matching a materialized map."""
        out = {}
        for w, val in f.table.items():
            for s, c in val.items():
                key = self.sym(w, s)
                out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}

    def encode_collection(self, coll):
        out = {}
        for f in coll.values():
            out = el_add(out, self.encode_map(materialize(f)))
        return out


def build_M(bridge, m_coll, j):
    """The arity-j structure map induced on the shifted symbol module."""
    sops = SuspOps(EndOps(bridge.carrier))
    V = bridge.V
    W = bridge.W

    def fn(word):
        xs = [bridge.decode(s) for s in word]
        if j == 1:
            res = coll_commutator(sops, m_coll, {xs[0].arity: xs[0]})
            return bridge.encode_collection(res)
        par = sigma_bar_parity(W, word)
        res = coll_brace(sops, m_coll, [{x.arity: x} for x in xs])
        return el_scale(sign(par), bridge.encode_collection(res))

    degree = (0, 2 - j) if bridge.carrier.bigraded else 2 - j
    return LazyMap(V, V, j, degree, fn)


def phi_component(bridge, v_el, n):
    """Arity-n component of the brace expansion of a shifted element.

    The arity-0 component is the element itself; general components
    brace the underlying operation with the decoded arguments, with
    the shift conjugation parity.
    """
    sops = SuspOps(EndOps(bridge.carrier))
    W = bridge.W
    degs = {deg_add(W.degree(s), (0, 1) if W.bigraded else 1)
            for s in v_el}
    if len(degs) != 1:
        raise ValueError("shifted element is not homogeneous")
    d = degs.pop()
    if W.bigraded:
        degree = (d[0], d[1] - n)
    else:
        degree = d - n

    def fn(word):
        par = sigma_bar_parity(W, word)
        ts = [bridge.decode(s) for s in word]
        out = {}
        for symbol, c in v_el.items():
            x = bridge.decode(symbol)
            if len(ts) > x.arity:
                continue
            res = brace(sops, x, ts)
            enc = bridge.encode_map(materialize(res))
            out = el_add(out, el_scale(c * sign(par), enc))
        return out

    return LazyMap(bridge.V, bridge.V, n, degree, fn)


def _level2_brace_components(bridge, m_coll, g_comps, j, n, smax):
    """Terms of the level-two brace of the structure with j factors.

    g_comps[i] is a dict arity -> map on the shifted symbol module.
    Yields the summands of output arity n.
    """
    sops2 = SuspOps(EndOps(bridge.V))
    for l in range(1, smax + 1):
        Ml = build_M(bridge, m_coll, l)
        need = n + j - l
        if need < 0:
            continue
        for parts in itertools.product(*[sorted(g) for g in g_comps]):
            if sum(parts) != need:
                continue
            args = [g_comps[i][k] for i, k in enumerate(parts)]
            yield brace(sops2, Ml, args)


def theorem_tower_probe(bridge, m_coll, vs, n, ts, smax):
    """One extensional probe of the comparison identity.

    vs and ts are symbol words; compares the expansion of the induced
    structure applied to vs against the induced structure one level up
    applied to the expansions, both evaluated at arity n on ts.
    """
    j = len(vs)
    W = bridge.W
    V = bridge.V
    Mj = build_M(bridge, m_coll, j)
    lhs_src = Mj.eval_word(tuple(vs))
    lhs = {}
    for symbol, c in lhs_src.items():
        part = phi_component(bridge, {symbol: 1}, n).eval_word(tuple(ts))
        lhs = el_add(lhs, el_scale(c, part))

    g_comps = []
    for v in vs:
        comps = {k: phi_component(bridge, {v: 1}, k) for k in range(n + j)}
        g_comps.append(comps)
    rhs = {}
    if j == 1:
        d = deg_add(W.degree(vs[0]), (0, 1) if W.bigraded else 1)
        sops2 = SuspOps(EndOps(V))
        for l in range(1, smax + 1):
            Ml = build_M(bridge, m_coll, l)
            k = n + 1 - l
            if k < 0:
                continue
            G = g_comps[0][k]
            t1 = brace(sops2, Ml, [G]).eval_word(tuple(ts))
            rhs = el_add(rhs, t1)
            t2 = brace(sops2, G, [Ml]).eval_word(tuple(ts))
            rhs = el_add(rhs, el_scale(-sign(vdeg(d) - 1), t2))
    else:
        ds = [deg_add(W.degree(v), (0, 1) if W.bigraded else 1) for v in vs]
        par = sum((j - i - 1) * (vdeg(d) - 1) for i, d in enumerate(ds)) % 2
        for term in _level2_brace_components(bridge, m_coll, g_comps,
                                             j, n, smax):
            rhs = el_add(rhs, el_scale(sign(par), term.eval_word(tuple(ts))))
    return lhs, rhs


def check_phi(alg, probes, arity_cap=3):
    """Extensional comparison check over a probe battery.

    probes is a list of (vs, n, ts) symbol tuples; returns the verdict
    with the first mismatch as witness.
    """
    bridge = SuspendedEndModule(alg.module)
    m_coll = dict(alg.maps)
    smax = max(m_coll)
    failures = 0
    nonzero = 0
    witness = None
    for vs, n, ts in probes:
        lhs, rhs = theorem_tower_probe(bridge, m_coll, vs, n, ts, smax)
        if lhs:
            nonzero += 1
        if el_add(lhs, el_scale(-1, rhs)):
            failures += 1
            if witness is None:
                witness = {"vs": list(vs), "arity": n, "ts": list(ts),
                           "lhs": sorted(lhs.items()),
                           "rhs": sorted(rhs.items())}
    return {
        "check": "phi",
        "pass": failures == 0,
        "probes": len(probes),
        "nonzero": nonzero,
        "failures": failures,
        "witness": witness,
    }


def symbol_pool(bridge, max_arity=2, include_nullary=True):
    """Every symbol of the bridge up to the given operation arity."""
    A = bridge.carrier
    out = []
    for n in range(0 if include_nullary else 1, max_arity + 1):
        for w in A.words(n):
            for s in A.symbols():
                out.append(bridge.sym(w, s))
    return sorted(out)


def phi_probe_battery(bridge, rng, count, j_cap=3, n_cap=3, max_arity=2):
    """Seeded probe tuples for check_phi, replayable from the rng."""
    pool = symbol_pool(bridge, max_arity=max_arity)
    probes = []
    for _ in range(count):
        j = rng.randint(1, j_cap)
        vs = tuple(rng.choice(pool) for _ in range(j))
        n = rng.randint(0, n_cap)
        ts = tuple(rng.choice(pool) for _ in range(n))
        probes.append((vs, n, ts))
    return probes


# brace compatibility identities for the induced structure maps

def _nat(sops, f):
    return vdeg(sops.natural_degree(f))


def _single(f):
    return {f.arity: f}


def homotopy_g_residual_i(sops, m_coll, x1, x2, ys):
    """Binary compatibility: braces distribute over the induced product.

    Requires a strictly binary structure.  Returns the residual
    collection of the identity at n = len(ys).
    """
    n = len(ys)
    w = structure_on_shifted(sops, m_coll, [_single(x1), _single(x2)])
    lhs = coll_brace(sops, w, [_single(y) for y in ys])
    rhs = {}
    n2 = _nat(sops, x2)
    for k in range(n + 1):
        par = (n2 + 1) * sum(_nat(sops, y) for y in ys[:k])
        u = coll_brace(sops, _single(x1), [_single(y) for y in ys[:k]])
        v = coll_brace(sops, _single(x2), [_single(y) for y in ys[k:]])
        term = structure_on_shifted(sops, m_coll, [u, v])
        rhs = coll_add(sops.base, rhs, coll_scale(sops.base, sign(par), term))
    return coll_materialize(coll_sub(sops.base, lhs, rhs))


def homotopy_g_residual_ii(sops, m_coll, x, ys):
    """Unary compatibility for a strictly binary product.

    For a binary structure the arity-one identity closes on the
    differential and the two boundary products alone, so this is the
    arity-one compatibility restricted to that case.
    """
    return j_algebra_unary_residual(sops, m_coll, x, ys)


def j_algebra_unary_residual(sops, m_coll, x, ys):
    """Compatibility of braces with the full arity-one induced map.

    The brace of the differential of x spreads into every way of
    applying one structure map outside or inside the arguments.
    """
    n = len(ys)
    base = sops.base
    nx = _nat(sops, x)
    nys = [_nat(sops, y) for y in ys]
    singles = [_single(y) for y in ys]

    par0 = sum((n - i - 1) * d for i, d in enumerate(nys)) % 2
    dx = structure_on_shifted(sops, m_coll, [_single(x)])
    lhs = coll_scale(base, sign(par0), coll_brace(sops, dx, singles))

    outer = {}
    for k in range(n + 1):
        for i1 in range(1, n - k + 2):
            eps = (nx - k + 1) * sum(nys[:i1 - 1])
            eps += sum(nys[i1 + v - 2] * (k - v) for v in range(1, k + 1))
            eps += (n - k + 1 - i1) * nx
            inner = coll_brace(sops, _single(x),
                               singles[i1 - 1:i1 - 1 + k])
            args = singles[:i1 - 1] + [inner] + singles[i1 - 1 + k:]
            term = structure_on_shifted(sops, m_coll, args)
            outer = coll_add(base, outer,
                             coll_scale(base, sign(eps), term))

    inner_side = {}
    for l in range(1, n + 1):
        k = n - l + 1
        for i1 in range(1, n - l + 2):
            eta = sum((k - v) * nys[v - 1] for v in range(1, i1))
            eta += l * sum(nys[:i1 - 1])
            eta += (k - i1) * sum(nys[i1 - 1:i1 - 1 + l])
            # arguments after the block sit one slot later than their
            # index suggests, hence the shifted weight
            eta += sum((k - v - 1) * nys[v + l - 1]
                       for v in range(i1, n - l + 1))
            block = structure_on_shifted(
                sops, m_coll, singles[i1 - 1:i1 - 1 + l])
            args = singles[:i1 - 1] + [block] + singles[i1 - 1 + l:]
            term = coll_brace(sops, _single(x), args)
            inner_side = coll_add(base, inner_side,
                                  coll_scale(base, sign(eta), term))

    res = coll_sub(base, lhs, outer)
    res = coll_add(base, res,
                   coll_scale(base, sign(nx), inner_side))
    return coll_materialize(res)


def _ordered_blocks(n, j):
    """Placements of j ordered blocks of sizes >= 0 among n arguments.

    Yields tuples (i_1, k_1, .., i_j, k_j) with block t consuming
    arguments i_t..i_t+k_t-1 and i_t + k_t <= i_{t+1}; empty blocks may
    share a position.
    """
    def rec(start, t):
        if t == j:
            yield ()
            return
        for i in range(start, n + 2):
            for k in range(0, n + 2 - i):
                for rest in rec(i + k, t + 1):
                    yield (i, k) + rest
    return rec(1, 0)


def j_algebra_residual(sops, m_coll, xs, ys):
    """Compatibility of braces with an induced map of arity >= 2.

    The sign walks the placement left to right: argument weights inside
    each block, block degrees across later factors, and a crossing sum
    in which the empty boundary position still counts with weight one.
    """
    j = len(xs)
    if j < 2:
        raise ValueError("use j_algebra_unary_residual for arity one")
    n = len(ys)
    base = sops.base
    nxs = [_nat(sops, f) for f in xs]
    nys = [_nat(sops, y) for y in ys]
    singles = [_single(y) for y in ys]

    par0 = sum((n - i - 1) * d for i, d in enumerate(nys)) % 2
    w = structure_on_shifted(sops, m_coll, [_single(f) for f in xs])
    lhs = coll_scale(base, sign(par0), coll_brace(sops, w, singles))

    rhs = {}
    for placement in _ordered_blocks(n, j):
        iis = [0] + [placement[2 * t] for t in range(j)] + [n + 1]
        ks = [0] + [placement[2 * t + 1] for t in range(j)]
        eps = 0
        for t in range(1, j + 1):
            for v in range(1, ks[t] + 1):
                eps += nys[iis[t] + v - 2] * (ks[t] - v)
        for v in range(1, j + 1):
            for l in range(v + 1, j + 1):
                eps += ks[v] * (nxs[l - 1] - ks[l] + 1)
        for v in range(1, j + 1):
            for l in range(v, j + 1):
                eps += nxs[v - 1] * (iis[l + 1] - iis[l] - ks[l])
        for t in range(0, j + 1):
            for l in range(t + 1, j + 1):
                for v in range(iis[t], iis[t + 1]):
                    if v == 0:
                        eps += nxs[l - 1] - ks[l] + 1
                        continue
                    eps += (nys[v - 1] + 1) * (nxs[l - 1] - ks[l] + 1)
        for v in range(0, j + 1):
            for l in range(v + 1, j + 1):
                eps += (iis[v + 1] - iis[v] - ks[v]) * (nxs[l - 1] - ks[l] + 1)

        blocks = []
        for t in range(1, j + 1):
            i_t, k_t = iis[t], ks[t]
            blocks.append((i_t, t - 1, coll_brace(
                sops, _single(xs[t - 1]),
                singles[i_t - 1:i_t - 1 + k_t])))
        consumed = set()
        for t in range(1, j + 1):
            consumed.update(range(iis[t], iis[t] + ks[t]))
        args = []
        for pos in range(1, n + 2):
            for i_t, _, block in blocks:
                if i_t == pos:
                    args.append(block)
            if pos <= n and pos not in consumed:
                args.append(singles[pos - 1])
        term = structure_on_shifted(sops, m_coll, args)
        rhs = coll_add(base, rhs, coll_scale(base, sign(eps), term))
    return coll_materialize(coll_sub(base, lhs, rhs))


def check_j_algebra(alg, probes):
    """Run the arity-one and higher compatibility identities.

    probes is a list of (xs, ys) tuples of maps on the carrier; the
    identity exercised is chosen by len(xs).
    """
    sops = SuspOps(EndOps(alg.module))
    m_coll = dict(alg.maps)
    failures = 0
    witness = None
    for xs, ys in probes:
        if len(xs) == 1:
            res = j_algebra_unary_residual(sops, m_coll, xs[0], ys)
        else:
            res = j_algebra_residual(sops, m_coll, xs, ys)
        if not coll_is_zero(res):
            failures += 1
            if witness is None:
                bad = {k: f for k, f in res.items() if not f.is_zero()}
                k0 = sorted(bad)[0]
                witness = {"j": len(xs), "n": len(ys),
                           "arity": k0,
                           "value": bad[k0].canonical()[:2]}
    return {
        "check": "j_algebra",
        "pass": failures == 0,
        "probes": len(probes),
        "failures": failures,
        "witness": witness,
    }


def check_homotopy_g(alg, probes):
    """Run both binary-structure identities over (kind, args) probes."""
    if sorted(alg.maps) != [2]:
        raise ValueError("binary identities need a strictly binary product")
    sops = SuspOps(EndOps(alg.module))
    m_coll = dict(alg.maps)
    failures = 0
    witness = None
    for probe in probes:
        if probe[0] == "i":
            _, x1, x2, ys = probe
            res = homotopy_g_residual_i(sops, m_coll, x1, x2, ys)
        else:
            _, x, ys = probe
            res = homotopy_g_residual_ii(sops, m_coll, x, ys)
        if not coll_is_zero(res):
            failures += 1
            if witness is None:
                witness = {"kind": probe[0], "n": len(probe[-1])}
    return {
        "check": "homotopy_g",
        "pass": failures == 0,
        "probes": len(probes),
        "failures": failures,
        "witness": witness,
    }
