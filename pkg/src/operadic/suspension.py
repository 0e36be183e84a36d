"""Operadic suspension: sign operads, twisted insertions, shift maps.

The suspension of an operad keeps the same underlying elements and
twists every insertion by a sign depending on arities and the internal
degree of the inserted factor.  Realizing the suspension of an
endomorphism operad on the shifted module is the job of the sigma_bar
conjugations at the bottom.
"""

from .signs import lambda_insert_parity, sign, tilde_sign
from .gmod import LazyMap, el_scale, vdeg


class LambdaOperad:
    """The one dimensional suspension operad, or its inverse.

    Arity n is spanned by a single element of degree n-1 (or 1-n for
    the inverse; the insertion signs are shared).  Elements are
    (arity, coefficient) pairs.
    """

    def __init__(self, inverse=False):
        self.inverse = inverse

    def degree(self, n):
        return 1 - n if self.inverse else n - 1

    def unit(self):
        return (1, 1)

    def insert(self, x, i, y):
        n, c = x
        m, d = y
        if not 1 <= i <= n:
            raise ValueError("slot out of range")
        return (n + m - 1, c * d * sign(lambda_insert_parity(n, i, m)))


class SuspOps:
    """Suspension of a backend operad, acting on the same elements.

    el_degree stays internal; natural_degree adds arity - 1, vertically
    in the bigraded case.  Insertions acquire the suspension sign.
    """

    def __init__(self, base):
        self.base = base
        self.bigraded = base.bigraded

    def unit(self):
        return self.base.unit()

    def el_arity(self, x):
        return self.base.el_arity(x)

    def el_degree(self, x):
        return self.base.el_degree(x)

    def natural_degree(self, x):
        d = self.base.el_degree(x)
        n = self.base.el_arity(x)
        if self.bigraded:
            return (d[0], d[1] + n - 1)
        return d + n - 1

    def el_add(self, x, y):
        return self.base.el_add(x, y)

    def el_scale(self, c, x):
        return self.base.el_scale(c, x)

    def el_zero(self, arity, degree):
        return self.base.el_zero(arity, degree)

    def el_is_zero(self, x):
        return self.base.el_is_zero(x)

    def el_eq(self, x, y):
        return self.base.el_eq(x, y)

    def tilde_insert(self, x, i, y):
        n = self.base.el_arity(x)
        m = self.base.el_arity(y)
        q = vdeg(self.base.el_degree(y))
        par = tilde_sign(n, m, i, q)
        return self.base.el_scale(sign(par), self.base.el_insert(x, i, y))

    def tilde_insert_sum(self, x, y):
        """Sum of x suspended-inserted into y over every slot of x."""
        n = self.base.el_arity(x)
        out = None
        for i in range(1, n + 1):
            term = self.tilde_insert(x, i, y)
            out = term if out is None else self.base.el_add(out, term)
        return out

    def gamma_tilde(self, x, ys):
        """Total suspended composition, inserting left to right."""
        out = x
        slot = 1
        for y in ys:
            out = self.tilde_insert(out, slot, y)
            slot += self.base.el_arity(y)
        return out


def suspend_module(A):
    """The shift of A in the convention where shifting raises degree."""
    return A.shifted((0, 1) if A.bigraded else 1)


def shift_map(A, SA):
    """The degree 1 identity-on-symbols map A -> SA."""
    one = (0, 1) if A.bigraded else 1
    return LazyMap(A, SA, 1, one, lambda w: {w[0]: 1})


def shift_inv_map(SA, A):
    m_one = (0, -1) if A.bigraded else -1
    return LazyMap(SA, A, 1, m_one, lambda w: {w[0]: 1})


def sigma_bar_parity(A, word):
    """Parity of the shift conjugation on a word with degrees from A."""
    degs = [vdeg(A.degree(s)) for s in word]
    n = len(degs)
    return sum((n - i - 1) * d for i, d in enumerate(degs)) % 2


def sigma_bar_map(f, SA):
    """Conjugate a map on A by the shift to a map on SA = A shifted.

    On the suspended word the result is the original value times the
    conjugation parity; the internal degree drops by arity - 1 while
    the natural degree in the suspended operad is preserved.
    """
    A = f.source
    n = f.arity
    if A.bigraded:
        degree = (f.degree[0], f.degree[1] + 1 - n)
    else:
        degree = f.degree + 1 - n

    def fn(word):
        return el_scale(sign(sigma_bar_parity(A, word)), f.eval_word(word))

    return LazyMap(SA, SA, n, degree, fn)


def sigma_bar_inv_map(F, A):
    """Inverse of sigma_bar_map; same parity, degrees move back up."""
    n = F.arity
    if A.bigraded:
        degree = (F.degree[0], F.degree[1] - 1 + n)
    else:
        degree = F.degree - 1 + n

    def fn(word):
        return el_scale(sign(sigma_bar_parity(A, word)), F.eval_word(word))

    return LazyMap(A, A, n, degree, fn)
