"""Shared fixtures for the test suite: modules and random maps."""

from operadic.gmod import GradedModule, MultiMap, deg_add


def graded_module():
    return GradedModule({"one": 0, "x": 1, "y": 1, "z": 2}, name="A")


def bigraded_module():
    return GradedModule({"z": (0, 0), "a": (1, 0), "b": (0, 1),
                         "c": (1, 1), "e": (2, -1)}, name="B")


def random_end_map(module, rng, arity, degree, density=0.8):
    """Random homogeneous multilinear map with the given degree."""
    table = {}
    for w in module.words(arity):
        want = deg_add(module.word_degree(w), degree)
        cands = [s for s in module.symbols() if module.degree(s) == want]
        if cands and rng.random() < density:
            table[w] = {rng.choice(cands): rng.choice((1, -1, 2))}
    return MultiMap(module, module, arity, degree, table)


def random_tot_el(tops, rng, arity, internal, cols, density=0.8):
    """Random totalized-operad element with pieces in the given columns.

    internal is the total internal degree shared by the pieces; the
    flavor's own collapse fixes the element degree.  None when every
    sampled piece came out empty.
    """
    pieces = []
    for k in cols:
        f = random_end_map(tops.base.module, rng, arity,
                           (k, internal - k), density=density)
        if f.table:
            pieces.append(f)
    return tops.element(pieces) if pieces else None


def random_enriched(module, rng, u, v, layers=(0, 1, 2), density=0.7):
    """Random enriched morphism with arity-1 components."""
    from operadic.totalization import EnrichedMorphism
    comps = {}
    for j in layers:
        f = random_end_map(module, rng, 1, (u + j, v - j), density=density)
        if f.table:
            comps[j] = f
    return EnrichedMorphism(module, module, 1, u, v, comps)
