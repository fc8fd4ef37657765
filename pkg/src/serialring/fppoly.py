"""Dense univariate polynomial arithmetic and factorization over F_p.

Polynomials are 1-d int64 numpy arrays of coefficients in ascending
degree order, reduced mod p, with no trailing zeros (zero polynomial is
the empty array). Factorization is squarefree decomposition +
distinct-degree + randomized equal-degree splitting; the RNG is always
seeded by the caller so runs are reproducible.
"""

from __future__ import annotations

import numpy as np

from .kernels import modinv_int


def trim(f):
    f = np.asarray(f, dtype=np.int64)
    nz = np.nonzero(f)[0]
    if nz.size == 0:
        return np.zeros(0, dtype=np.int64)
    return f[: nz[-1] + 1]


def poly(coeffs, p):
    return trim(np.asarray(coeffs, dtype=np.int64) % p)


def deg(f):
    return len(f) - 1


def is_zero(f):
    return len(f) == 0


def add(f, g, p):
    n = max(len(f), len(g))
    out = np.zeros(n, dtype=np.int64)
    out[: len(f)] += f
    out[: len(g)] += g
    return trim(out % p)


def sub(f, g, p):
    n = max(len(f), len(g))
    out = np.zeros(n, dtype=np.int64)
    out[: len(f)] += f
    out[: len(g)] -= g
    return trim(out % p)


def mul(f, g, p):
    if is_zero(f) or is_zero(g):
        return np.zeros(0, dtype=np.int64)
    return trim(np.convolve(f, g) % p)


def scale(f, c, p):
    return trim((f * (c % p)) % p)


def monic(f, p):
    if is_zero(f):
        return f
    lead = int(f[-1])
    if lead == 1:
        return f
    return scale(f, modinv_int(lead, p), p)


def divmod_poly(f, g, p):
    if is_zero(g):
        raise ZeroDivisionError("polynomial division by zero")
    f = f.copy()
    dg = deg(g)
    if deg(f) < dg:
        return np.zeros(0, dtype=np.int64), trim(f)
    inv = modinv_int(int(g[-1]), p)
    q = np.zeros(deg(f) - dg + 1, dtype=np.int64)
    for k in range(deg(f) - dg, -1, -1):
        c = (f[k + dg] * inv) % p
        if c:
            q[k] = c
            f[k : k + dg + 1] = (f[k : k + dg + 1] - c * g) % p
    return trim(q), trim(f)


def mod_poly(f, g, p):
    return divmod_poly(f, g, p)[1]


def gcd(f, g, p):
    while not is_zero(g):
        f, g = g, mod_poly(f, g, p)
    return monic(f, p)


def lcm(f, g, p):
    if is_zero(f) or is_zero(g):
        return np.zeros(0, dtype=np.int64)
    q, r = divmod_poly(mul(f, g, p), gcd(f, g, p), p)
    assert is_zero(r)
    return monic(q, p)


def powmod(f, e, g, p):
    """f^e mod g."""
    result = poly([1], p)
    base = mod_poly(f, g, p)
    while e > 0:
        if e & 1:
            result = mod_poly(mul(result, base, p), g, p)
        base = mod_poly(mul(base, base, p), g, p)
        e >>= 1
    return result


def evaluate(f, x, p):
    acc = 0
    for c in f[::-1]:
        acc = (acc * x + int(c)) % p
    return acc


def derivative(f, p):
    if len(f) <= 1:
        return np.zeros(0, dtype=np.int64)
    return trim((f[1:] * np.arange(1, len(f), dtype=np.int64)) % p)


def _pth_root(f, p):
    # f(x) = g(x^p) over F_p  =>  g has the stride-p coefficients (Frobenius
    # fixes the prime field, so no coefficient roots are needed).
    return f[::p].copy()


def squarefree_decomposition(f, p):
    """Yu's standard char-p squarefree decomposition.

    Returns a list of (g_i, i) with f = prod g_i^i (up to the leading
    unit), each g_i squarefree, pairwise coprime.
    """
    f = monic(f, p)
    out = []

    def recurse(f, mult):
        if deg(f) < 1:
            return
        d = derivative(f, p)
        if is_zero(d):
            recurse(_pth_root(f, p), mult * p)
            return
        w = gcd(f, d, p)
        v = divmod_poly(f, w, p)[0]  # product of squarefree part
        i = 1
        while deg(v) >= 1:
            y = gcd(v, w, p)
            piece = divmod_poly(v, y, p)[0]
            if deg(piece) >= 1:
                out.append((monic(piece, p), mult * i))
            v = y
            w = divmod_poly(w, y, p)[0]
            i += 1
        if deg(w) >= 1:
            recurse(_pth_root(w, p), mult * p)

    recurse(f, 1)
    return out


def distinct_degree(f, p):
    """Split squarefree monic f into [(product of degree-d irreducibles, d)]."""
    out = []
    x = poly([0, 1], p)
    h = x.copy()
    d = 0
    rem = f.copy()
    while deg(rem) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, rem, p)
        g = gcd(sub(h, x, p), rem, p)
        if deg(g) >= 1:
            out.append((g, d))
            rem = divmod_poly(rem, g, p)[0]
            h = mod_poly(h, rem, p)
    if deg(rem) >= 1:
        out.append((rem, deg(rem)))
    return out


def _equal_degree_split(f, d, p, rng):
    """One Cantor-Zassenhaus split of squarefree f = product of deg-d irreducibles."""
    n = deg(f)
    while True:
        a = poly(rng.integers(0, p, size=n), p)
        if deg(a) < 1:
            continue
        g = gcd(a, f, p)
        if deg(g) >= 1 and deg(g) < n:
            return g
        if p == 2:
            # trace map over F_{2^d}
            t = a.copy()
            c = a.copy()
            for _ in range(d - 1):
                c = powmod(c, 2, f, p)
                t = add(t, c, p)
            g = gcd(t, f, p)
        else:
            e = (p**d - 1) // 2
            b = powmod(a, e, f, p)
            g = gcd(sub(b, poly([1], p), p), f, p)
        if deg(g) >= 1 and deg(g) < n:
            return g


def equal_degree(f, d, p, rng):
    if deg(f) == d:
        return [f]
    g = _equal_degree_split(f, d, p, rng)
    h = divmod_poly(f, g, p)[0]
    return equal_degree(monic(g, p), d, p, rng) + equal_degree(monic(h, p), d, p, rng)


def factor(f, p, rng=None):
    """Full factorization over F_p.

    Returns (unit, [(irreducible monic factor, multiplicity), ...]) sorted
    by (degree, coefficients). Product of factors (with multiplicity)
    times the unit reproduces f exactly.
    """
    f = poly(f, p)
    if is_zero(f):
        raise ValueError("cannot factor the zero polynomial")
    if rng is None:
        rng = np.random.default_rng(0)
    unit = int(f[-1]) % p
    f = monic(f, p)
    factors = []
    for g, mult in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                factors.append((monic(irr, p), mult))
    factors.sort(key=lambda fm: (deg(fm[0]), fm[0].tolist(), fm[1]))
    return unit, factors


def is_irreducible(f, p):
    f = monic(poly(f, p), p)
    if deg(f) < 1:
        return False
    if deg(f) == 1:
        return True
    sf = squarefree_decomposition(f, p)
    if len(sf) != 1 or sf[0][1] != 1:
        return False
    dd = distinct_degree(sf[0][0], p)
    return len(dd) == 1 and dd[0][1] == deg(f)
