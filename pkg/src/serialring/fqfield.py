"""Small extension fields F_q (q = p^k <= 32) and the matrix-group actions
built on them: PSL2(q) on the projective line and SL2(q) on nonzero vectors.

Field elements are encoded as integers in [0, q) whose base-p digits are
the coefficients of the residue polynomial; arithmetic runs off fully
precomputed q x q tables, which is all these desk-scale constructors need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import fppoly


class NotPrimePower(ValueError):
    pass


def factor_prime_power(q):
    """q = p^k with p prime, else NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = None
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            break
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, k


def _first_irreducible(p, k):
    """Lexicographically first monic irreducible of degree k over F_p."""
    if k == 1:
        return fppoly.poly([0, 1], p)
    for tail in range(p**k):
        digits = []
        t = tail
        for _ in range(k):
            digits.append(t % p)
            t //= p
        f = fppoly.poly(digits + [1], p)
        if fppoly.is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")


@dataclass
class FqField:
    """The field with q = p^k elements, arithmetic by lookup tables."""

    p: int
    k: int
    modulus: np.ndarray = field(repr=False)
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    @property
    def q(self):
        return self.p**self.k

    def add(self, a, b):
        return int(self.add_table[a, b])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return self.encode([(-c) % self.p for c in self.digits(a)])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.inv_table[a])

    def digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def encode(self, digits):
        v = 0
        for c in reversed(digits):
            v = v * self.p + (c % self.p)
        return v

    def element_order(self, a):
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n = 1
        x = a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def primitive_element(self):
        for a in range(2, self.q):
            if self.element_order(a) == self.q - 1:
                return a
        if self.q == 2:
            return 1
        raise AssertionError("multiplicative group not cyclic?")


_FIELD_CACHE = {}


def make_field(p, k=None):
    """FqField for q = p^k (pass either (p, k) or a single prime power)."""
    if k is None:
        p, k = factor_prime_power(p)
    if (p, k) in _FIELD_CACHE:
        return _FIELD_CACHE[(p, k)]
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise NotPrimePower(f"{p} is not prime")
    q = p**k
    modulus = _first_irreducible(p, k)
    add_table = np.zeros((q, q), dtype=np.int64)
    mul_table = np.zeros((q, q), dtype=np.int64)
    polys = []
    for a in range(q):
        digits = []
        t = a
        for _ in range(k):
            digits.append(t % p)
            t //= p
        polys.append(fppoly.poly(digits, p))

    def enc(f):
        v = 0
        coeffs = list(f) + [0] * (k - len(f))
        for c in reversed(coeffs[:k]):
            v = v * p + int(c)
        return v

    for a in range(q):
        for b in range(a, q):
            s = enc(fppoly.add(polys[a], polys[b], p))
            add_table[a, b] = s
            add_table[b, a] = s
            m = enc(fppoly.mod_poly(fppoly.mul(polys[a], polys[b], p), modulus, p))
            mul_table[a, b] = m
            mul_table[b, a] = m
    inv_table = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        row = mul_table[a]
        inv_table[a] = int(np.nonzero(row == 1)[0][0])
    fld = FqField(p, k, modulus, add_table, mul_table, inv_table)
    # sanity: multiplicative group is cyclic of order q - 1
    if q <= 64 and q > 2:
        assert fld.element_order(fld.primitive_element()) == q - 1
    _FIELD_CACHE[(p, k)] = fld
    return fld


# ---------------------------------------------------------------------------
# 2x2 matrix helpers over FqField (entries are field codes)
# ---------------------------------------------------------------------------


def mat2_mul(F, A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return (
        (F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h))),
        (F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h))),
    )


def mat2_det(F, A):
    (a, b), (c, d) = A
    return F.sub(F.mul(a, d), F.mul(b, c))


def sl2_generators(F):
    """Transvection generators of SL2(q) (upper unit + lower primitive)."""
    one = 1
    gamma = F.primitive_element() if F.q > 2 else 1
    u = ((one, one), (0, one))
    l = ((one, 0), (gamma, one))
    t = (  # diagonal torus element; redundant for generation but harmless
        (gamma, 0),
        (0, F.inv(gamma)),
    ) if F.q > 3 else None
    gens = [u, l] + ([t] if t is not None else [])
    for g in gens:
        assert mat2_det(F, g) == 1
    return gens


def projective_points(F):
    """Points of P^1(F_q): [x : 1] for x in F_q, then [1 : 0] last."""
    return [(x, 1) for x in range(F.q)] + [(1, 0)]


def _proj_index(F, x, y):
    if y != 0:
        return F.mul(x, F.inv(y))
    return F.q  # the point at infinity


def projective_line_action(q):
    """Permutations (0-based image tuples) of the SL2(q) generators on P^1.

    The image group is PSL2(q) of order q(q^2-1)/gcd(2, q-1) on q+1 points.
    """
    F = make_field(q)
    gens = sl2_generators(F)
    perms = []
    for (a, b), (c, d) in gens:
        images = []
        for (x, y) in projective_points(F):
            nx = F.add(F.mul(a, x), F.mul(b, y))
            ny = F.add(F.mul(c, x), F.mul(d, y))
            images.append(_proj_index(F, nx, ny))
        perms.append(tuple(images))
    order = q * (q * q - 1) // gcd(2, q - 1)
    return perms, order


def sl2_vector_action(q):
    """Permutations of the SL2(q) generators on the q^2-1 nonzero vectors."""
    F = make_field(q)
    gens = sl2_generators(F)
    points = [(x, y) for x in range(F.q) for y in range(F.q) if (x, y) != (0, 0)]
    index = {pt: i for i, pt in enumerate(points)}
    perms = []
    for (a, b), (c, d) in gens:
        images = []
        for (x, y) in points:
            nx = F.add(F.mul(a, x), F.mul(b, y))
            ny = F.add(F.mul(c, x), F.mul(d, y))
            images.append(index[(nx, ny)])
        perms.append(tuple(images))
    return perms, q * (q * q - 1)


def binary_octahedral_action():
    """Double cover of S4 in which transpositions lift to order 4.

    Realized inside SL2(9): the F_3 subgroup SL2(3) extended by
    diag(c, -c) with c^2 = -1; every element has determinant 1, so the
    group has a unique involution (-I), which pins the isoclinism type.
    Acts on the 80 nonzero vectors of F_9^2.
    """
    F = make_field(3, 2)
    # c with c^2 = -1: square of an order-8 element
    gamma = F.primitive_element()
    c = F.mul(gamma, gamma)
    assert F.mul(c, c) == F.neg(1)
    u = ((1, 1), (0, 1))
    l = ((1, 0), (2, 1))
    w = ((c, 0), (0, F.neg(c)))
    for g in (u, l, w):
        assert mat2_det(F, g) == 1
    points = [(x, y) for x in range(9) for y in range(9) if (x, y) != (0, 0)]
    index = {pt: i for i, pt in enumerate(points)}
    perms = []
    for (a, b), (cc, d) in (u, l, w):
        images = []
        for (x, y) in points:
            nx = F.add(F.mul(a, x), F.mul(b, y))
            ny = F.add(F.mul(cc, x), F.mul(d, y))
            images.append(index[(nx, ny)])
        perms.append(tuple(images))
    return perms, 48
