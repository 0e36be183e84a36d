"""The star calculus and derived structures over bigraded carriers.

The totalized vertical suspension carries an insertion, the star, that
folds the suspension twist of the inserted piece into the column twist
of the collapse.  An element of total natural degree 1 with positive
arities that squares to zero under the star is the same thing as a
derived multiplication, and the explicit structure maps downstream all
expand through it.

Moving between the totalized world and the bigraded one twists every
column by its own parity; the arity-one case of that transport is the
familiar passage from structure maps to twisted-complex layers.  With
the transport in place the star square, the suspended insertion sum
and the bigraded structure equation produce identical terms, and the
engine checks all three against each other rather than trusting any
single expansion.

The conjugation route out of the star goes through extrasign_iso: the
suspended flavor and the suspension of the bare flavor differ by the
column-times-arity checkerboard, and the tests lean on that bridge to
check every star sign against an independently computed insertion.
"""

import itertools

from .signs import (
    derived_epsilon, mi1_pairing, mij_prefactor, scalar_product, sign,
    star_sign,
)
from .gmod import (
    LazyMap, MultiMap, deg_add, el_add, el_scale, hdeg, hom_compose,
    map_add, map_scale, materialize, total_deg, vdeg,
)
from .operad import EndOps, compose_maps
from .suspension import SuspOps
from .braces import brace, brace_star
from .ainfty import (
    SuspendedEndModule, _ordered_blocks, _single, coll_add, coll_brace,
    coll_commutator, coll_is_zero, coll_materialize, coll_scale,
    coll_sub, phi_component, structure_on_shifted,
)
from .totalization import TotEl, TotModule, TwistedComplex, _TotBase


class TotSuspOps(_TotBase):
    """Totalization of the vertical suspension; insertion is the star.

    Degrees are total natural ones: total internal plus arity minus
    one.  The insertion sign stacks the vertical suspension twist of
    the inserted piece on top of the bare column twist.
    """

    def _collapse(self, piece):
        return (total_deg(self.base.el_degree(piece))
                + self.base.el_arity(piece) - 1)

    def star_insert(self, x, i, y):
        n, m, d2 = x.arity, y.arity, y.degree
        cols = {}
        for k1, p in x.cols.items():
            for k2, q in y.cols.items():
                e = star_sign(n, m, i - 1, d2, k1, k2)
                term = self.base.el_scale(sign(e),
                                          self.base.el_insert(p, i, q))
                k = k1 + k2
                cols[k] = term if k not in cols \
                    else self.base.el_add(cols[k], term)
        return TotEl(n + m - 1, x.degree + d2, cols)

    def star_insert_sum(self, x, y):
        """Star over every slot of the outer factor."""
        out = self.el_zero(x.arity + y.arity - 1, x.degree + y.degree)
        for i in range(1, x.arity + 1):
            out = self.el_add(out, self.star_insert(x, i, y))
        return out

    def star_compose(self, x, ys):
        """Total composition by iterated star insertions."""
        out = x
        slot = 1
        for y in ys:
            out = self.star_insert(out, slot, y)
            slot += y.arity
        return out


def extrasign_iso(tops, x):
    """Move an element of the suspended flavor into the suspension of
    the bare flavor: column k picks up (-1)^{k n} and the degree drops
    to the total internal one."""
    n = x.arity
    cols = {k: tops.base.el_scale(sign(k * n), p)
            for k, p in x.cols.items()}
    return TotEl(n, x.degree - (n - 1), cols)


def extrasign_inv(tops, x):
    """Inverse of extrasign_iso; the checkerboard is its own undoing."""
    n = x.arity
    cols = {k: tops.base.el_scale(sign(k * n), p)
            for k, p in x.cols.items()}
    return TotEl(n, x.degree + (n - 1), cols)


class DerivedAInfty:
    """Bigraded carrier with structure maps indexed by column and arity.

    The (i, j) component has arity j and bidegree (i, 2 - i - j); the
    support must be finite with nonnegative columns, which is the
    horizontal boundedness the explicit constructions need.
    """

    def __init__(self, module, maps):
        if not module.bigraded:
            raise ValueError("carrier must be bigraded")
        for (i, j), f in maps.items():
            if i < 0 or j < 1 or f.arity != j:
                raise ValueError("structure map keyed by wrong indices")
            if f.degree != (i, 2 - i - j):
                raise ValueError(
                    "structure map at (%d, %d) must have bidegree %r"
                    % (i, j, (i, 2 - i - j)))
        self.module = module
        self.maps = {key: maps[key] for key in sorted(maps)}

    def column_slice(self, i):
        """The arity-indexed collection sitting in column i."""
        return {j: f for (c, j), f in self.maps.items() if c == i}

    def max_column(self):
        return max((i for i, _ in self.maps), default=0)

    def max_arity(self):
        return max((j for _, j in self.maps), default=0)


def multiplication_element(alg):
    """The structure collection as one totalized element per arity.

    Column i of the arity-j piece carries (-1)^i times the structure
    map: the transport that turns the arity-one column into the layers
    of a twisted complex, and the choice under which the star square
    reproduces the bigraded residuals termwise.
    """
    cols = {}
    for (i, j), f in alg.maps.items():
        cols.setdefault(j, {})[i] = map_scale(sign(i), f)
    return {j: TotEl(j, 1, c) for j, c in sorted(cols.items())}


def _accumulate(out, key, term):
    out[key] = map_add(out[key], term) if key in out else term


def derived_residual_star(alg):
    """Star square of the multiplication element, read per column."""
    tops = TotSuspOps(EndOps(alg.module))
    els = multiplication_element(alg)
    out = {}
    for x in els.values():
        for y in els.values():
            res = tops.star_insert_sum(x, y)
            for u, piece in res.cols.items():
                _accumulate(out, (u, res.arity), piece)
    return {key: materialize(f) for key, f in sorted(out.items())}


def derived_residual_sharp(alg):
    """Signed sum of vertically suspended insertions per column."""
    sops = SuspOps(EndOps(alg.module))
    out = {}
    for (j, l), mjl in alg.maps.items():
        for (i, k), mik in alg.maps.items():
            for r in range(1, l + 1):
                term = map_scale(sign(i), sops.tilde_insert(mjl, r, mik))
                _accumulate(out, (i + j, l + k - 1), term)
    return {key: materialize(f) for key, f in sorted(out.items())}


def derived_residual_classical(alg):
    """The bigraded structure equation expanded with its own signs."""
    out = {}
    for (i, j), mij in alg.maps.items():
        for (p, q), mpq in alg.maps.items():
            for r in range(j):
                t = j - 1 - r
                term = map_scale(sign(r * q + t + p * j),
                                 hom_compose(mij, r + 1, mpq))
                _accumulate(out, (i + p, j + q - 1), term)
    return {key: materialize(f) for key, f in sorted(out.items())}


def _first_bigraded_witness(tables):
    for key in sorted(tables):
        table = tables[key]
        if not table.is_zero():
            word = sorted(table.table)[0]
            return {"column": key[0], "arity": key[1], "word": list(word),
                    "value": sorted(table.table[word].items())}
    return None


def check_derived_multiplication(alg):
    """Run the three square residual routes; they must agree and vanish."""
    routes = {
        "star": derived_residual_star(alg),
        "sharp": derived_residual_sharp(alg),
        "classical": derived_residual_classical(alg),
    }
    keys = set()
    for r in routes.values():
        keys.update(r)
    agree = True
    for key in sorted(keys):
        forms = []
        for name in sorted(routes):
            f = routes[name].get(key)
            forms.append(f.canonical() if f is not None else ())
        if len(set(forms)) > 1:
            agree = False
            break
    vanish = all(f.is_zero() for r in routes.values() for f in r.values())
    return {
        "check": "derived_ainfty",
        "pass": bool(agree and vanish),
        "routes_agree": bool(agree),
        "vanishes": bool(vanish),
        "witness": _first_bigraded_witness(routes["classical"]),
    }


def twisted_from_derived(alg):
    """The arity-one columns as the layers of a twisted complex."""
    layers = {}
    for (i, j), f in alg.maps.items():
        if j == 1:
            layers[i] = map_scale(sign(i), f)
    return TwistedComplex(alg.module, layers)


# the induced structure on the shifted symbol module, one column at a
# time; the collection machinery of the single-graded tower already
# pairs bidegrees correctly, so each column is its own tower

def build_Mij(bridge, alg, i, j):
    """The (i, j) structure map induced on the shifted symbol module.

    Arity one is the commutator with the column slice; higher arities
    shift the brace of the slice by the vertical conjugation prefactor.
    """
    sops = SuspOps(EndOps(bridge.carrier))
    m_coll = alg.column_slice(i)
    W = bridge.W

    def fn(word):
        if j == 1:
            x = bridge.decode(word[0])
            res = coll_commutator(sops, m_coll, {x.arity: x})
            return bridge.encode_collection(res)
        degs = [W.degree(s) for s in word]
        par = mij_prefactor([total_deg(d) for d in degs],
                            [hdeg(d) for d in degs])
        ys = [bridge.decode(s) for s in word]
        res = coll_brace(sops, m_coll, [{y.arity: y} for y in ys])
        return el_scale(sign(par), bridge.encode_collection(res))

    return LazyMap(bridge.V, bridge.V, j, (i, 2 - i - j), fn)


def build_Mi1(bridge, alg, i):
    """The arity-one component straight from the pairing formula.

    Same map as build_Mij at arity one, computed instead from the two
    one-slot braces and the explicit column pairing; the tests compare
    the two routes symbol by symbol.
    """
    sops = SuspOps(EndOps(bridge.carrier))
    m_coll = alg.column_slice(i)
    V = bridge.V

    def fn(word):
        s = word[0]
        x = bridge.decode(s)
        d = total_deg(V.degree(s))
        k = hdeg(V.degree(s))
        pair = mi1_pairing(i, k, d)
        out = {}
        for l, mil in sorted(m_coll.items()):
            lead = bridge.encode_map(materialize(brace(sops, mil, [x])))
            out = el_add(out, lead)
            trail = bridge.encode_map(materialize(brace(sops, x, [mil])))
            out = el_add(out, el_scale(-sign(pair), trail))
        return out

    return LazyMap(V, V, 1, (i, 1 - i), fn)


def eval_on_elements(f, args):
    """Multilinear evaluation of a map on symbol-dict elements."""
    out = {}
    for combo in itertools.product(*[sorted(a.items()) for a in args]):
        word = tuple(s for s, _ in combo)
        c = 1
        for _, coef in combo:
            c *= coef
        out = el_add(out, el_scale(c, f.eval_word(word)))
    return out


def built_structure_residual(bridge, alg, u, v, words):
    """The structure equation of the induced maps at one bidegree.

    Evaluates the (u, v) residual of the built family on each probe
    word and returns the first nonzero value with its word, or None.
    """
    built = {}
    for i in range(u + 1):
        for j in range(1, v + 1):
            built[(i, j)] = build_Mij(bridge, alg, i, j)
    for word in words:
        total = {}
        for p in range(u + 1):
            i = u - p
            for q in range(1, v + 1):
                j = v + 1 - q
                if j < 1:
                    continue
                inner = built[(p, q)]
                outer = built[(i, j)]
                for r in range(j):
                    t = j - 1 - r
                    par = (r * q + t + p * j) % 2
                    val = eval_on_elements(
                        hom_compose(outer, r + 1, inner), [{s: 1}
                                                           for s in word])
                    total = el_add(total, el_scale(sign(par), val))
        if total:
            return {"column": u, "arity": v, "word": list(word),
                    "value": sorted(total.items())}
    return None


def derived_tower_probe(bridge, alg, i, vs, n, ts, lmax):
    """One extensional probe of the derived comparison identity.

    Compares the brace expansion of the induced map applied to the vs
    against the column-i structure one level up applied to the
    expansions, both evaluated at arity n on ts.
    """
    j = len(vs)
    W = bridge.W
    Mj = build_Mij(bridge, alg, i, j)
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
    sops2 = SuspOps(EndOps(bridge.V))
    if j == 1:
        d = deg_add(W.degree(vs[0]), (0, 1))
        pair = scalar_product((i, 1 - i), (hdeg(d), vdeg(d) - 1))
        for l in range(1, lmax + 1):
            Ml = build_Mij(bridge, alg, i, l)
            k = n + 1 - l
            if k < 0:
                continue
            G = g_comps[0][k]
            t1 = brace(sops2, Ml, [G]).eval_word(tuple(ts))
            rhs = el_add(rhs, t1)
            t2 = brace(sops2, G, [Ml]).eval_word(tuple(ts))
            rhs = el_add(rhs, el_scale(-sign(pair), t2))
    else:
        ds = [deg_add(W.degree(v), (0, 1)) for v in vs]
        par = sum((j - w - 1) * (vdeg(d) - 1) for w, d in enumerate(ds)) % 2
        for l in range(1, lmax + 1):
            Ml = build_Mij(bridge, alg, i, l)
            need = n + j - l
            if need < 0:
                continue
            for parts in itertools.product(*[sorted(g) for g in g_comps]):
                if sum(parts) != need:
                    continue
                args = [g_comps[w][k] for w, k in enumerate(parts)]
                term = brace(sops2, Ml, args).eval_word(tuple(ts))
                rhs = el_add(rhs, el_scale(sign(par), term))
    return lhs, rhs


def check_derived_phi(alg, probes, lmax=None):
    """Extensional comparison check over (column, probe) tuples.

    probes is a list of (i, vs, n, ts); lmax caps the arity of the
    structure maps braced on the right hand side and defaults to the
    largest structure arity, past which the induced maps vanish.
    """
    bridge = SuspendedEndModule(alg.module)
    if lmax is None:
        lmax = alg.max_arity()
    failures = 0
    nonzero = 0
    witness = None
    for i, vs, n, ts in probes:
        lhs, rhs = derived_tower_probe(bridge, alg, i, vs, n, ts, lmax)
        if lhs:
            nonzero += 1
        if el_add(lhs, el_scale(-1, rhs)):
            failures += 1
            if witness is None:
                witness = {"column": i, "vs": list(vs), "arity": n,
                           "ts": list(ts), "lhs": sorted(lhs.items()),
                           "rhs": sorted(rhs.items())}
    return {
        "check": "derived_phi",
        "pass": failures == 0,
        "probes": len(probes),
        "nonzero": nonzero,
        "failures": failures,
        "witness": witness,
    }


def derived_phi_probe_battery(bridge, rng, count, i_cap=2, j_cap=3,
                              n_cap=3, max_arity=2):
    """Seeded (column, probe) tuples for check_derived_phi."""
    from .ainfty import symbol_pool
    pool = symbol_pool(bridge, max_arity=max_arity)
    probes = []
    for _ in range(count):
        i = rng.randint(0, i_cap)
        j = rng.randint(1, j_cap)
        vs = tuple(rng.choice(pool) for _ in range(j))
        n = rng.randint(0, n_cap)
        ts = tuple(rng.choice(pool) for _ in range(n))
        probes.append((i, vs, n, ts))
    return probes


# brace compatibility identities for the column structure maps; the
# vertical weights follow the single-graded identities and the
# horizontal ones enter only through the bigraded pairings

def derived_j_unary_residual(sops, alg, i, x, ys):
    """Compatibility of braces with the column-i arity-one map."""
    m_coll = alg.column_slice(i)
    n = len(ys)
    base = sops.base
    natx = sops.natural_degree(x)
    nx, hx = vdeg(natx), hdeg(natx)
    natys = [sops.natural_degree(y) for y in ys]
    nys = [vdeg(d) for d in natys]
    hys = [hdeg(d) for d in natys]
    singles = [_single(y) for y in ys]

    par0 = sum((n - w - 1) * d for w, d in enumerate(nys)) % 2
    dx = structure_on_shifted(sops, m_coll, [_single(x)])
    lhs = coll_scale(base, sign(par0), coll_brace(sops, dx, singles))

    outer = {}
    for k in range(n + 1):
        for i1 in range(1, n - k + 2):
            eps = (nx - k + 1) * sum(nys[:i1 - 1])
            eps += hx * sum(hys[:i1 - 1])
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
            eta += i * sum(hys[:i1 - 1])
            eta += (k - i1) * sum(nys[i1 - 1:i1 - 1 + l])
            eta += sum((k - v - 1) * nys[v + l - 1]
                       for v in range(i1, n - l + 1))
            block = structure_on_shifted(
                sops, m_coll, singles[i1 - 1:i1 - 1 + l])
            args = singles[:i1 - 1] + [block] + singles[i1 - 1 + l:]
            term = coll_brace(sops, _single(x), args)
            inner_side = coll_add(base, inner_side,
                                  coll_scale(base, sign(eta), term))

    pair = (i * hx + (1 - i) * nx) % 2
    res = coll_sub(base, lhs, outer)
    res = coll_add(base, res, coll_scale(base, sign(pair), inner_side))
    return coll_materialize(res)


def derived_j_residual(sops, alg, i, xs, ys):
    """Compatibility of braces with a column map of arity >= 2.

    The vertical weights walk the placement exactly as in the
    single-graded identity; horizontal degrees cross only where a
    shifted argument passes a brace factor.
    """
    j = len(xs)
    if j < 2:
        raise ValueError("use derived_j_unary_residual for arity one")
    m_coll = alg.column_slice(i)
    n = len(ys)
    base = sops.base
    natxs = [sops.natural_degree(f) for f in xs]
    nxs = [vdeg(d) for d in natxs]
    hxs = [hdeg(d) for d in natxs]
    natys = [sops.natural_degree(y) for y in ys]
    nys = [vdeg(d) for d in natys]
    hys = [hdeg(d) for d in natys]
    singles = [_single(y) for y in ys]

    par0 = sum((n - w - 1) * d for w, d in enumerate(nys)) % 2
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
                    eps += hys[v - 1] * hxs[l - 1]
        for v in range(0, j + 1):
            for l in range(v + 1, j + 1):
                eps += (iis[v + 1] - iis[v] - ks[v]) * (nxs[l - 1] - ks[l] + 1)

        blocks = []
        for t in range(1, j + 1):
            i_t, k_t = iis[t], ks[t]
            blocks.append((i_t, coll_brace(
                sops, _single(xs[t - 1]),
                singles[i_t - 1:i_t - 1 + k_t])))
        consumed = set()
        for t in range(1, j + 1):
            consumed.update(range(iis[t], iis[t] + ks[t]))
        args = []
        for pos in range(1, n + 2):
            for i_t, block in blocks:
                if i_t == pos:
                    args.append(block)
            if pos <= n and pos not in consumed:
                args.append(singles[pos - 1])
        term = structure_on_shifted(sops, m_coll, args)
        rhs = coll_add(base, rhs, coll_scale(base, sign(eps), term))
    return coll_materialize(coll_sub(base, lhs, rhs))


def derived_j_algebra_check(alg, probes):
    """Run the column compatibility identities over (i, xs, ys) probes."""
    sops = SuspOps(EndOps(alg.module))
    failures = 0
    witness = None
    for i, xs, ys in probes:
        if len(xs) == 1:
            res = derived_j_unary_residual(sops, alg, i, xs[0], ys)
        else:
            res = derived_j_residual(sops, alg, i, xs, ys)
        if not coll_is_zero(res):
            failures += 1
            if witness is None:
                bad = {k: f for k, f in res.items() if not f.is_zero()}
                k0 = sorted(bad)[0]
                witness = {"column": i, "j": len(xs), "n": len(ys),
                           "arity": k0,
                           "value": bad[k0].canonical()[:2]}
    return {
        "check": "derived_j_algebra",
        "pass": failures == 0,
        "probes": len(probes),
        "failures": failures,
        "witness": witness,
    }


# derived morphism families and their two residual routes

def validate_derived_morphism(fmaps):
    for (s, t), f in fmaps.items():
        if s < 0 or t < 1 or f.arity != t:
            raise ValueError("morphism component keyed by wrong indices")
        if f.degree != (s, 1 - s - t):
            raise ValueError(
                "morphism component at (%d, %d) must have bidegree %r"
                % (s, t, (s, 1 - s - t)))


def derived_morphism_residual(fmaps, alg_a, alg_b):
    """Left minus right hand side of the morphism equation per column."""
    validate_derived_morphism(fmaps)
    out = {}
    for (s, t), f in fmaps.items():
        for (p, q), m in alg_a.maps.items():
            for r in range(t):
                par = r * q + (t - 1 - r) + p * t
                term = map_scale(sign(par), hom_compose(f, r + 1, m))
                _accumulate(out, (s + p, t + q - 1), term)
    for (i, j), m in alg_b.maps.items():
        for combo in itertools.product(sorted(fmaps), repeat=j):
            ps = [c[0] for c in combo]
            qs = [c[1] for c in combo]
            u = i + sum(ps)
            par = derived_epsilon(u, ps, qs)
            term = map_scale(-sign(par),
                             compose_maps(m, [fmaps[c] for c in combo]))
            _accumulate(out, (u, sum(qs)), term)
    return {key: materialize(f) for key, f in sorted(out.items())}


def derived_morphism_residual_star(fmaps, alg_a, alg_b):
    """The same residual through totalized insertions.

    Both sides are assembled with the column transport; the insertion
    signs then reproduce the printed exponents term by term, which is
    the cross-check the verdict relies on.
    """
    validate_derived_morphism(fmaps)
    out = {}
    for (s, t), f in fmaps.items():
        for (p, q), m in alg_a.maps.items():
            for r in range(t):
                par = s + p + star_sign(t, q, r, 1, s, p)
                term = map_scale(sign(par), hom_compose(f, r + 1, m))
                _accumulate(out, (s + p, t + q - 1), term)
    for (i, j), m in alg_b.maps.items():
        for combo in itertools.product(sorted(fmaps), repeat=j):
            par = i + sum(c[0] for c in combo)
            arity, col, slot = j, i, 1
            for sw, tw in combo:
                par += star_sign(arity, tw, slot - 1, 0, col, sw)
                arity += tw - 1
                col += sw
                slot += tw
            term = map_scale(-sign(par),
                             compose_maps(m, [fmaps[c] for c in combo]))
            _accumulate(out, (col, sum(c[1] for c in combo)), term)
    return {key: materialize(f) for key, f in sorted(out.items())}


def check_derived_infty_morphism(fmaps, alg_a, alg_b):
    equation = derived_morphism_residual(fmaps, alg_a, alg_b)
    star = derived_morphism_residual_star(fmaps, alg_a, alg_b)
    keys = set(equation) | set(star)
    agree = True
    for key in sorted(keys):
        fe = equation.get(key)
        fs = star.get(key)
        ce = fe.canonical() if fe is not None else ()
        cs = fs.canonical() if fs is not None else ()
        if ce != cs:
            agree = False
            break
    vanish = all(f.is_zero() for f in equation.values())
    return {
        "check": "derived_infty_morphism",
        "pass": bool(agree and vanish),
        "routes_agree": bool(agree),
        "vanishes": bool(vanish),
        "witness": _first_bigraded_witness(equation),
    }


def compose_derived_morphisms(gmaps, fmaps):
    """Composite family through the totalized insertions.

    The column transports of the factors cancel against the readback
    of the result, leaving the equation sign without its leading
    column term.
    """
    validate_derived_morphism(fmaps)
    validate_derived_morphism(gmaps)
    out = {}
    for (i, j), g in gmaps.items():
        for combo in itertools.product(sorted(fmaps), repeat=j):
            ps = [c[0] for c in combo]
            qs = [c[1] for c in combo]
            u = i + sum(ps)
            par = (derived_epsilon(u, ps, qs) + u) % 2
            term = map_scale(sign(par),
                             compose_maps(g, [fmaps[c] for c in combo]))
            _accumulate(out, (u, sum(qs)), term)
    return {key: materialize(f) for key, f in sorted(out.items())}


def derived_identity_morphism(module):
    """The strict identity family on a bigraded carrier."""
    table = {(s,): {s: 1} for s in module.symbols()}
    return {(0, 1): MultiMap(module, module, 1, (0, 0), table)}


# collapse of the induced structure to the filtered world

def tot_structure(bridge, alg, j):
    """The arity-j structure map on the collapsed symbol module.

    Decodes each symbol into its single-column totalized piece, braces
    through the star with the multiplication element, and encodes the
    output columns back; arity one is the star commutator.  The
    filtration by columns is preserved because every structure column
    is nonnegative.
    """
    tops = TotSuspOps(EndOps(bridge.carrier))
    els = multiplication_element(alg)
    T = TotModule(bridge.V)
    W = bridge.W

    def decode_tot(s):
        d = W.degree(s)
        f = bridge.decode(s)
        return TotEl(f.arity, total_deg(d), {hdeg(d): f})

    def encode_tot(el):
        out = {}
        for piece in el.cols.values():
            enc = bridge.encode_map(materialize(piece))
            out = el_add(out, enc)
        return out

    def fn(word):
        ys = [decode_tot(s) for s in word]
        if j == 1:
            y = ys[0]
            out = {}
            for l, mel in sorted(els.items()):
                lead = brace_star(tops, mel, [y])
                out = el_add(out, encode_tot(lead))
                trail = brace_star(tops, y, [mel])
                out = el_add(out, el_scale(-sign(y.degree),
                                           encode_tot(trail)))
            return out
        par = sum((j - w - 1) * y.degree for w, y in enumerate(ys)) % 2
        out = {}
        for l, mel in sorted(els.items()):
            term = brace_star(tops, mel, ys)
            out = el_add(out, encode_tot(term))
        return el_scale(sign(par), out)

    return LazyMap(T.module, T.module, j, 2 - j, fn)
