"""Matrices over the prime field F_p: thin exact-arithmetic wrappers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fppoly, kernels
from .kernels import ModulusMismatch


@dataclass(frozen=True)
class FpMatrix:
    """Dense matrix over F_p with entries reduced into [0, p)."""

    p: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", kernels.as_residues(self.entries, self.p))
        if self.entries.ndim != 2:
            raise ValueError("FpMatrix needs a 2-d array")

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def _check(self, other):
        if self.p != other.p:
            raise ModulusMismatch(f"mod {self.p} vs mod {other.p}")

    def __matmul__(self, other):
        self._check(other)
        return FpMatrix(self.p, kernels.modmul(self.entries, other.entries, self.p))

    def __add__(self, other):
        self._check(other)
        return FpMatrix(self.p, (self.entries + other.entries) % self.p)

    def __sub__(self, other):
        self._check(other)
        return FpMatrix(self.p, (self.entries - other.entries) % self.p)

    def __eq__(self, other):
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.entries.shape == other.entries.shape
            and bool((self.entries == other.entries).all())
        )

    @classmethod
    def identity(cls, p, n):
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, p, rows, cols):
        return cls(p, np.zeros((rows, cols), dtype=np.int64))


def rref(M: FpMatrix):
    """(reduced matrix, rank)."""
    R, piv = kernels.rref(M.entries, M.p)
    full = np.zeros_like(M.entries)
    full[: R.shape[0]] = R
    return FpMatrix(M.p, full), R.shape[0]


def rank(M: FpMatrix) -> int:
    return rref(M)[1]


def nullspace(M: FpMatrix):
    """List of basis vectors v (1-d arrays) with M @ v = 0."""
    basis = kernels.nullspace(M.entries, M.p)
    return [basis[i] for i in range(basis.shape[0])]


def solve(M: FpMatrix, b):
    """A solution of M x = b, or None."""
    return kernels.solve(M.entries, b, M.p)


def min_poly(M, p=None):
    """Monic minimal polynomial of a square matrix over F_p.

    Accepts FpMatrix or a raw array plus p. Computed as the lcm of the
    Krylov annihilators of the standard basis vectors; the result is
    asserted to annihilate M.
    """
    if isinstance(M, FpMatrix):
        p = M.p
        A = M.entries
    else:
        A = kernels.as_residues(M, p)
    n = A.shape[0]
    if A.shape[0] != A.shape[1]:
        raise ValueError("min_poly needs a square matrix")
    if n == 0:
        return fppoly.poly([1], p)
    f = fppoly.poly([1], p)
    for start in range(n):
        # skip vectors already annihilated by the current candidate
        if _annihilates_vector(f, A, start, p):
            continue
        g = _krylov_annihilator(A, start, p)
        f = fppoly.lcm(f, g, p)
        if fppoly.deg(f) == n:
            break
    assert not _poly_at_matrix(f, A, p).any(), "minimal polynomial failed to annihilate"
    return f


def _krylov_annihilator(A, start, p):
    n = A.shape[0]
    span = kernels.Span(p, n)
    v = np.zeros(n, dtype=np.int64)
    v[start] = 1
    vecs = [v]
    span.add(v)
    while True:
        w = kernels.modmul(A, vecs[-1][:, None], p)[:, 0]
        if span.contains(w):
            coeffs = _express(w, vecs, p)
            g = np.zeros(len(vecs) + 1, dtype=np.int64)
            g[: len(coeffs)] = (-coeffs) % p
            g[len(vecs)] = 1
            return fppoly.poly(g, p)
        vecs.append(w)
        span.add(w)


def _express(w, vecs, p):
    V = np.stack(vecs, axis=1)
    x = kernels.solve(V, w, p)
    assert x is not None
    return x


def _poly_at_matrix(f, A, p):
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    power = np.eye(n, dtype=np.int64)
    for c in f:
        if c:
            out = (out + int(c) * power) % p
        power = kernels.modmul(power, A, p)
    return out


def _annihilates_vector(f, A, start, p):
    n = A.shape[0]
    v = np.zeros(n, dtype=np.int64)
    v[start] = 1
    acc = np.zeros(n, dtype=np.int64)
    for c in f:
        if c:
            acc = (acc + int(c) * v) % p
        v = kernels.modmul(A, v[:, None], p)[:, 0]
    return not acc.any()


def poly_at_matrix(f, M: FpMatrix):
    return FpMatrix(M.p, _poly_at_matrix(f, M.entries, M.p))


def companion(f, p):
    """Companion matrix of a monic polynomial."""
    f = fppoly.monic(fppoly.poly(f, p), p)
    n = fppoly.deg(f)
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        C[i, i - 1] = 1
    C[:, n - 1] = (-f[:n]) % p
    return FpMatrix(p, C)
