import random
import sys
sys.path.insert(0, "src")

from operadic.examples import bicomplex, bidga, dual_numbers
from operadic.derived import (
    DerivedAInfty, check_derived_multiplication, derived_residual_star,
    derived_residual_sharp, derived_residual_classical,
    twisted_from_derived, multiplication_element, TotSuspOps,
    extrasign_iso, extrasign_inv,
)
from operadic.gmod import GradedModule, MultiMap, materialize, map_scale
from operadic.operad import EndOps
from operadic.suspension import SuspOps
from operadic.totalization import check_twisted, TotEl
from operadic.ainfty import AInftyAlgebra, ainfty_residual_classical

A, maps = bicomplex()
alg = DerivedAInfty(A, maps)
rep = check_derived_multiplication(alg)
print("bicomplex:", rep["pass"], rep["routes_agree"], rep["vanishes"])

B, bmaps = bidga()
balg = DerivedAInfty(B, bmaps)
rep = check_derived_multiplication(balg)
print("bidga:", rep["pass"], rep["routes_agree"], rep["vanishes"])

# mutation: single entry flip must fail vanishing but keep routes agreeing
bad = dict(bmaps)
t = dict(bmaps[(1, 2)].table)
t[("a", "r")] = {"q": -1}
bad[(1, 2)] = MultiMap(B, B, 2, (1, -1), t)
rep = check_derived_multiplication(DerivedAInfty(B, bad))
print("mutant:", rep["pass"], rep["routes_agree"], rep["vanishes"],
      rep["witness"])

# classical slice: column-0 structure on a column-0 carrier vs the
# single-graded residuals on the same data
C, cmaps = dual_numbers()
Cb = GradedModule({s: (0, C.degree(s)) for s in C.symbols()}, name="Cb")
lift = {(0, j): MultiMap(Cb, Cb, j, (0, f.degree), f.table)
        for j, f in cmaps.items()}
calg = DerivedAInfty(Cb, lift)
res = derived_residual_classical(calg)
flat = ainfty_residual_classical(AInftyAlgebra(C, cmaps))
for (u, v), f in res.items():
    single = flat[v]
    a = tuple((w, tuple(sorted(val.items()))) for w, val in
              sorted(f.table.items()))
    b = tuple((w, tuple(sorted(val.items()))) for w, val in
              sorted(single.table.items()))
    print("slice", (u, v), "match:", a == b, "u0:", u == 0)

# twisted readout
tc = twisted_from_derived(balg)
print("twisted layers:", tc.support(),
      "d1 == -m11:", materialize(tc.diff(1)).table ==
      materialize(map_scale(-1, bmaps[(1, 1)])).table,
      "d0 == m01:", materialize(tc.diff(0)).table ==
      materialize(bmaps[(0, 1)]).table)
print("check_twisted:", check_twisted(tc)["pass"])

# extrasign round trip and the conjugated-tilde dual route for the star
rng = random.Random(11)
tops = TotSuspOps(EndOps(B))
sops = SuspOps(EndOps(B))

from tests.helpers import random_tot_el
for trial in range(60):
    n = rng.randint(1, 3)
    m = rng.randint(1, 3)
    x = random_tot_el(B, rng, n)
    y = random_tot_el(B, rng, m)
    rt = extrasign_inv(tops, extrasign_iso(tops, x))
    same = rt.cols.keys() == x.cols.keys() and all(
        materialize(rt.cols[k]).table == materialize(x.cols[k]).table
        for k in x.cols)
    if not same:
        print("roundtrip FAIL")
        break
else:
    print("extrasign roundtrip ok")

def tot_el_canon(e):
    return {k: materialize(p).table for k, p in e.cols.items()
            if materialize(p).table}

def tilde_tot_insert(x, i, y):
    # insertion on the suspension of the bare flavor: columns just add,
    # each pair of pieces composes with the vertical tilde sign
    from operadic.gmod import el_add as _
    cols = {}
    for k1, p in x.cols.items():
        for k2, q in y.cols.items():
            term = sops.insert(p, i, q)
            k = k1 + k2
            if k in cols:
                cols[k] = tops.base.el_add(cols[k], term)
            else:
                cols[k] = term
    return TotEl(x.arity + y.arity - 1, x.degree + y.degree, cols)

ok = True
for trial in range(60):
    n = rng.randint(1, 3)
    m = rng.randint(1, 3)
    i = rng.randint(1, n)
    x = random_tot_el(B, rng, n)
    y = random_tot_el(B, rng, m)
    lhs = tops.star_insert(x, i, y)
    # conjugate: move both factors through extrasign, insert with the
    # vertical suspension sign on each column pair, move back
    xi = extrasign_iso(tops, x)
    yi = extrasign_iso(tops, y)
    rhs = extrasign_inv(tops, tilde_tot_insert(xi, i, yi))
    if tot_el_canon(lhs) != tot_el_canon(rhs):
        ok = False
        print("star-vs-conjugated-tilde FAIL", n, m, i)
        break
print("star vs conjugated tilde:", ok)
