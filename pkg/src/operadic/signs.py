"""Sign conventions collected in one place, as mod 2 parities.

Every function returns 0 or 1.  Degrees are plain integers for single
graded objects and (horizontal, vertical) pairs for bigraded ones; the
pairing below accepts both so that callers can stay agnostic.

Keeping the parities separate from the algebra lets the test suite pit
each closed formula against an independently computed route (iterated
insertions, shift conjugation, totalization layer by layer) and report
the first disagreeing tuple.
"""


def parity(n):
    return n % 2


def sign(p):
    """Unit coefficient (-1)**p for a parity or any integer exponent."""
    return -1 if p % 2 else 1


def scalar_product(d, e):
    """Parity of the degree pairing used by the Koszul rule.

    Integers pair by multiplication, bidegrees by the dot product of the
    two pairs.  Mixing the two flavors is a bug in the caller.
    """
    if isinstance(d, tuple):
        return (d[0] * e[0] + d[1] * e[1]) % 2
    return (d * e) % 2


def koszul_permutation_sign(perm, degs):
    """Koszul parity of reordering homogeneous tensor factors.

    perm[i] is the index of the input factor that lands in slot i of the
    output.  Every inverted pair contributes the pairing of its degrees.
    """
    p = 0
    for j in range(len(perm)):
        for i in range(j):
            if perm[i] > perm[j]:
                p += scalar_product(degs[perm[i]], degs[perm[j]])
    return p % 2


def binom2_parity(n):
    """Parity of n(n-1)/2, valid for negative n as well."""
    return (n * (n - 1) // 2) % 2


def lambda_insert_parity(n, i, m):
    """Insertion parity of the one dimensional suspension operad."""
    return ((n - i) * (m - 1)) % 2


def tilde_sign(n, m, i, deg_y):
    """Suspended insertion versus bare insertion, single grading.

    x of arity n receives y of arity m and internal degree deg_y in slot
    i (1-based).
    """
    return ((n - 1) * (m - 1) + (n - 1) * deg_y + (i - 1) * (m - 1)) % 2


def vertical_tilde_sign(n, m, r, q):
    """Bigraded analogue of tilde_sign with the slot written as r+1.

    q is the internal vertical degree of the inserted arity m factor.
    """
    return ((n - 1) * q + (n - 1) * (m - 1) + r * (m - 1)) % 2


def eta_sign(arities, degs, gaps):
    """Suspended gap composition versus the bare one.

    The outer element takes n inserted factors of arities a_1..a_n and
    internal degrees q_1..q_n, separated by identity runs k_0..k_n.  For
    bigraded inputs pass the vertical internal degrees.
    """
    n = len(arities)
    if len(degs) != n or len(gaps) != n + 1:
        raise ValueError("need n arities, n degrees and n+1 gaps")
    a = [0] + list(arities)
    q = [0] + list(degs)
    k = list(gaps)
    e = 0
    for j in range(n + 1):
        for l in range(j + 1, n + 1):
            e += k[j] * q[l]
    for j in range(1, n + 1):
        for l in range(j + 1, n + 1):
            e += a[j] * q[l]
    for j in range(1, n + 1):
        e += (a[j] + q[j] - 1) * (n - j)
    for j in range(1, n + 1):
        for l in range(j, n + 1):
            e += (a[j] + q[j] - 1) * k[l]
    return e % 2


def susp_mu_sign(arities, degs):
    """Gap-free case of eta_sign: the monoidal comparison map.

    This is the sign picked up when a fully loaded suspended composition
    gamma(x; x_1..x_N) is rewritten through the bare composition.
    """
    return eta_sign(arities, degs, [0] * (len(arities) + 1))


def tot_gamma_sign(degrees, columns):
    """Totalized composition layer sign.

    degrees lists the total degrees d_1..d_N of the inserted factors,
    columns the chosen column indices k_0..k_N starting with the outer
    element's column.
    """
    if len(columns) != len(degrees) + 1:
        raise ValueError("need one more column than degrees")
    e = 0
    acc = columns[0]
    for j, d in enumerate(degrees):
        e += d * acc
        acc += columns[j + 1]
    return e % 2


def star_sign(n, m, r, d2, k1, k2):
    """Totalized suspended insertion versus the bare bigraded one.

    The outer factor has arity n and column k1, the inner one arity m,
    total degree d2 and column k2, inserted in slot r+1.
    """
    return ((n - 1) * (d2 - k2 - m + 1) + (n - 1) * (m - 1)
            + r * (m - 1) + k1 * d2) % 2


def mu_sign(k1, n2):
    """Binary interchange of a column k1 past a total degree n2."""
    return (k1 * n2) % 2


def mu_inverse_sign(columns, degrees):
    """Parity of the iterated interchange on an m-fold tensor word.

    columns lists k_1..k_m, degrees the total degrees n_1..n_m.  The
    last column and the first degree never enter.
    """
    if len(columns) != len(degrees):
        raise ValueError("need matching columns and degrees")
    e = 0
    acc = 0
    for j in range(1, len(columns)):
        acc += columns[j - 1]
        e += degrees[j] * acc
    return e % 2


def inftymorphism_sign(arities):
    """Right hand side sign of the morphism equation for a block split.

    arities lists the input arities i_1..i_r consumed by the factors of
    the composite.
    """
    e = 0
    for b in range(len(arities)):
        for a in range(b):
            e += arities[a] * (1 - arities[b])
    return e % 2


def derived_epsilon(u, ps, qs):
    """Right hand side sign of the derived morphism equation.

    u is the total horizontal weight of the identity, ps and qs the
    horizontal weights p_w and arities q_w of the j factors.
    """
    j = len(ps)
    if len(qs) != j:
        raise ValueError("need matching ps and qs")
    e = u
    for l in range(j):
        for w in range(l):
            e += qs[w] * (1 - ps[l] - qs[l])
    for w in range(j):
        e += ps[w] * (j - (w + 1))
    return e % 2


def mij_prefactor(degrees, columns):
    """Vertical shift bookkeeping for the explicit bigraded structure maps.

    degrees lists the total degrees d_1..d_j of the arguments, columns
    their column indices k_1..k_j.
    """
    j = len(degrees)
    if len(columns) != j:
        raise ValueError("need matching degrees and columns")
    e = 0
    for v in range(j):
        e += (j - (v + 1)) * (degrees[v] - columns[v])
    return e % 2


def mi1_pairing(i, k, d):
    """Pairing parity in the arity 1 component of the bigraded structure.

    i is the horizontal weight of the structure component, (k, d-k) the
    bidegree of the shifted argument with total degree d.
    """
    return (i * k + (1 - i) * (d - 1 - k)) % 2
