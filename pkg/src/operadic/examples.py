"""Small exactly-checkable fixtures used by the tests and the corpus.

Every structure here is tiny enough to verify by hand and rich enough
to exercise the sign conventions: odd generators, a nonzero ternary
map, tensor-square vanishing.
"""

from .gmod import GradedModule, MultiMap


def dual_numbers():
    """Unital algebra on one even and one odd generator, square zero."""
    A = GradedModule({"one": 0, "x": 1}, name="dual")
    table = {
        ("one", "one"): {"one": 1},
        ("one", "x"): {"x": 1},
        ("x", "one"): {"x": 1},
    }
    m2 = MultiMap(A, A, 2, 0, table)
    return A, {2: m2}


def truncated_poly():
    """Three graded lines with the truncated product and a ternary map.

    The product sends u_i, u_j to u_{i+j} when that line exists; the
    ternary map is supported on the odd generator cubed.  The bracket
    of the two vanishes on this support, so any coefficient works; it
    is frozen at 1.
    """
    A = GradedModule({"u0": 0, "u1": 1, "u2": 2}, name="trunc")
    prod = {}
    for i in range(3):
        for j in range(3):
            if i + j <= 2:
                prod[("u%d" % i, "u%d" % j)] = {"u%d" % (i + j): 1}
    m2 = MultiMap(A, A, 2, 0, prod)
    m3 = MultiMap(A, A, 3, -1, {("u1", "u1", "u1"): {"u2": 1}})
    return A, {2: m2, 3: m3}


def dual_numbers_endomorphism():
    """An infinity-endomorphism of the dual numbers fixture.

    The identity in arity one plus a binary corrector supported on the
    odd square.
    """
    A, _ = dual_numbers()
    f1 = MultiMap(A, A, 1, 0, {("one",): {"one": 1}, ("x",): {"x": 1}})
    f2 = MultiMap(A, A, 2, -1, {("x", "x"): {"x": 1}})
    return {1: f1, 2: f2}


def bicomplex():
    """Four lines forming a square: one horizontal and one vertical map.

    The vertical differential moves z to b and a to c; the horizontal
    structure map moves z to a and b to c.
    """
    A = GradedModule({"z": (0, 0), "a": (1, 0), "b": (0, 1), "c": (1, 1)},
                     name="square")
    m01 = MultiMap(A, A, 1, (0, 1), {("z",): {"b": 1}, ("a",): {"c": 1}})
    m11 = MultiMap(A, A, 1, (1, 0), {("z",): {"a": 1}, ("b",): {"c": 1}})
    return A, {(0, 1): m01, (1, 1): m11}


def bidga():
    """The bicomplex shape with a unital product and a binary corrector.

    The unit e multiplies as expected and every other product of basis
    lines vanishes, which makes both differentials derivations for
    free.  The corrector in column one is forced up to scale by the
    mixed relation against the vertical map; the scale is frozen at 1.
    """
    A = GradedModule({"e": (0, 0), "a": (0, 0), "q": (1, 0),
                      "r": (0, 1), "w": (1, 1)}, name="bidga")
    m01 = MultiMap(A, A, 1, (0, 1), {("a",): {"r": 1}, ("q",): {"w": 1}})
    m11 = MultiMap(A, A, 1, (1, 0), {("a",): {"q": 1}, ("r",): {"w": 1}})
    prod = {("e", "e"): {"e": 1}}
    for s in ("a", "q", "r", "w"):
        prod[("e", s)] = {s: 1}
        prod[(s, "e")] = {s: 1}
    m02 = MultiMap(A, A, 2, (0, 0), prod)
    m12 = MultiMap(A, A, 2, (1, -1),
                   {("a", "r"): {"q": 1}, ("r", "a"): {"q": -1},
                    ("r", "r"): {"w": -1}})
    return A, {(0, 1): m01, (1, 1): m11, (0, 2): m02, (1, 2): m12}


def twisted_triple():
    """Six lines with differentials in three layers, all relations tight.

    The square of the first-order map vanishes termwise, so the order-two
    relation lives entirely in the cancellation between the two mixed
    composites: the zeroth-order map hits the image of the second-order
    one with opposite signs in the two orders.
    """
    A = GradedModule({"p": (0, 0), "q": (1, 0), "r": (2, -1),
                      "p2": (0, 1), "q2": (1, 1), "r2": (2, 0)},
                     name="triple")
    d0 = MultiMap(A, A, 1, (0, 1),
                  {("p",): {"p2": 1}, ("q",): {"q2": 1}, ("r",): {"r2": 1}})
    d1 = MultiMap(A, A, 1, (1, 0),
                  {("p",): {"q": 1}, ("p2",): {"q2": 1}})
    d2 = MultiMap(A, A, 1, (2, -1),
                  {("p",): {"r": 1}, ("p2",): {"r2": -1}})
    return A, {0: d0, 1: d1, 2: d2}
