"""Scratch: compare the three derived-multiplication residual routes."""
import random
import sys

sys.path.insert(0, "src")

from operadic.gmod import MultiMap, hom_compose, map_add, map_scale, materialize
from operadic.operad import EndOps
from operadic.suspension import SuspOps
from operadic.signs import sign
from operadic.totalization import TotEl
from operadic.derived import TotSuspOps

sys.path.insert(0, "tests")
from helpers import bigraded_module, random_end_map

rng = random.Random(11)
B = bigraded_module()
OPS = EndOps(B)
SOPS = SuspOps(OPS)
TOPS = TotSuspOps(OPS)


def rand_mij(i, j):
    return random_end_map(B, rng, j, (i, 2 - i - j), density=0.9)


def acc(out, key, term):
    out[key] = map_add(out[key], term) if key in out else term


def route_sharp(maps):
    """(b): per u, sum (-1)^i m_jl tilde m_ik, grouped by (u, arity)."""
    out = {}
    for (j, l), mjl in maps.items():
        for (i, k), mik in maps.items():
            u = i + j
            for r in range(l):
                term = map_scale(sign(i), SOPS.tilde_insert(mjl, r + 1, mik))
                acc(out, (u, l + k - 1), term)
    return {key: materialize(f) for key, f in out.items()}


def route_dainfty(maps):
    """(c): per (u,v), sum (-1)^{rq+t+pj} m_ij(1^r x m_pq x 1^t)."""
    out = {}
    for (i, j), mij in maps.items():
        for (p, q), mpq in maps.items():
            u, v = i + p, j + q - 1
            for r in range(j):
                t = j - 1 - r
                par = (r * q + t + p * j) % 2
                term = map_scale(sign(par), hom_compose(mij, r + 1, mpq))
                acc(out, (u, v), term)
    return {key: materialize(f) for key, f in out.items()}


def route_star(maps):
    """(a): assemble per-arity TotEls, m star m, read columns."""
    arities = sorted({j for _, j in maps})
    tot = {}
    for v in arities:
        cols = {i: f for (i, j), f in maps.items() if j == v}
        tot[v] = TotEl(v, 1, cols)
    out = {}
    for l in arities:
        for k in arities:
            res = TOPS.star_insert_sum(tot[l], tot[k])
            for u, piece in res.cols.items():
                acc(out, (u, res.arity), piece)
    return {key: materialize(f) for key, f in out.items()}


maps = {(0, 1): rand_mij(0, 1), (1, 1): rand_mij(1, 1),
        (0, 2): rand_mij(0, 2), (1, 2): rand_mij(1, 2,),
        (0, 3): rand_mij(0, 3)}

rb = route_sharp(maps)
rc = route_dainfty(maps)
ra = route_star(maps)

keys = sorted(set(rb) | set(rc) | set(ra))
for key in keys:
    u, v = key
    fb = rb.get(key)
    fc = rc.get(key)
    fa = ra.get(key)
    cb = fb.canonical() if fb is not None else ()
    cc = fc.canonical() if fc is not None else ()
    ca = fa.canonical() if fa is not None else ()
    flip = materialize(map_scale(sign(u), fa)).canonical() if fa is not None else ()
    print(key,
          "b==c:", cb == cc,
          "a==b:", ca == cb,
          "(-1)^u a==b:", flip == cb,
          "nonzero:", bool(cb))
