"""Exact mod-p linear algebra kernels.

Two interchangeable backends implement the hot loops:

* ``numba`` (default): ``@njit`` kernels, parallel where it pays off.
* ``numpy``: pure-numpy fallback, selected by setting the environment
  variable ``SERIALRING_PURE_NUMPY=1`` before import (also used
  automatically if numba is unavailable).

All arithmetic is exact residue arithmetic; no tolerances anywhere.
Matrices are int64 arrays with entries reduced into [0, p).
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("SERIALRING_PURE_NUMPY", "").strip() not in ("", "0")

try:  # pragma: no cover - import guard
    if _FORCE_NUMPY:
        raise ImportError("pure-numpy backend forced")
    from numba import njit, prange

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

BACKEND = "numba" if _HAVE_NUMBA else "numpy"


class ModulusMismatch(ValueError):
    """Raised when operands over different prime fields are combined."""


def as_residues(a, p):
    """Copy ``a`` into an int64 array with entries reduced mod p."""
    return np.asarray(a, dtype=np.int64) % p


def modinv_int(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 is not invertible mod {p}")
    return pow(a, p - 2, p)


def modmul(a, b, p):
    """Exact (a @ b) % p.

    Uses float64 BLAS when the accumulated products provably fit in the
    53-bit mantissa, otherwise falls back to int64 matmul (object-free,
    still exact).
    """
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    inner = a.shape[-1]
    if inner == 0:
        shape = a.shape[:-1] + b.shape[1:]
        return np.zeros(shape, dtype=np.int64)
    if (p - 1) * (p - 1) * inner < 2**53:
        c = np.rint(a.astype(np.float64) @ b.astype(np.float64))
        return (c % p).astype(np.int64)
    return (a @ b) % p


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def _modinv_nb(a, p):
        r = 1
        b = a % p
        e = p - 2
        while e > 0:
            if e & 1:
                r = (r * b) % p
            b = (b * b) % p
            e >>= 1
        return r

    @njit(cache=True)
    def _rref_nb(M, p):
        """In-place RREF of M mod p; returns (rank, pivot columns)."""
        rows, cols = M.shape
        piv = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            sel = -1
            for i in range(r, rows):
                if M[i, c] % p != 0:
                    sel = i
                    break
            if sel == -1:
                continue
            if sel != r:
                for j in range(cols):
                    t = M[sel, j]
                    M[sel, j] = M[r, j]
                    M[r, j] = t
            inv = _modinv_nb(M[r, c], p)
            if inv != 1:
                for j in range(cols):
                    M[r, j] = (M[r, j] * inv) % p
            for i in range(rows):
                if i == r:
                    continue
                f = M[i, c] % p
                if f != 0:
                    fm = p - f
                    for j in range(cols):
                        M[i, j] = (M[i, j] + fm * M[r, j]) % p
            piv[r] = c
            r += 1
        return r, piv[:r]

    @njit(cache=True, inline="always")
    def _redc(x, p, pinv):
        # reduction via float reciprocal; valid for 0 <= x < 2^52
        q = np.int64(np.float64(x) * pinv)
        r = x - q * p
        if r < 0:
            r += p
        elif r >= p:
            r -= p
        return r

    @njit(cache=True)
    def _charpoly_one_nb(M, p, out):
        n = M.shape[0]
        pinv = 1.0 / np.float64(p)
        H = M.copy()
        for j in range(n - 2):
            sel = -1
            for r in range(j + 1, n):
                if H[r, j] % p != 0:
                    sel = r
                    break
            if sel == -1:
                continue
            if sel != j + 1:
                for c in range(n):
                    t = H[sel, c]
                    H[sel, c] = H[j + 1, c]
                    H[j + 1, c] = t
                for r in range(n):
                    t = H[r, sel]
                    H[r, sel] = H[r, j + 1]
                    H[r, j + 1] = t
            inv = _modinv_nb(H[j + 1, j], p)
            for r in range(j + 2, n):
                f = (H[r, j] * inv) % p
                if f == 0:
                    continue
                fm = p - f
                for c in range(n):
                    H[r, c] = _redc(H[r, c] + fm * H[j + 1, c], p, pinv)
                for rr in range(n):
                    H[rr, j + 1] = _redc(H[rr, j + 1] + f * H[rr, r], p, pinv)
        # leading-minor recurrence on the Hessenberg form
        polys = np.zeros((n + 1, n + 1), dtype=np.int64)
        polys[0, 0] = 1
        for k in range(1, n + 1):
            a = H[k - 1, k - 1] % p
            for c in range(k):
                polys[k, c + 1] = polys[k - 1, c]
            if a != 0:
                am = p - a
                for c in range(k):
                    polys[k, c] = _redc(polys[k, c] + am * polys[k - 1, c], p, pinv)
            w = 1
            for m in range(k - 1, 0, -1):
                w = (w * H[m, m - 1]) % p
                if w == 0:
                    break
                coef = (H[m - 1, k - 1] * w) % p
                if coef != 0:
                    cm = p - coef
                    for c in range(m):
                        polys[k, c] = _redc(polys[k, c] + cm * polys[m - 1, c], p, pinv)
        for c in range(n + 1):
            out[c] = polys[n, c] % p

    @njit(cache=True, parallel=True)
    def _charpoly_batch_nb(mats, p):
        k = mats.shape[0]
        n = mats.shape[1]
        out = np.zeros((k, n + 1), dtype=np.int64)
        for i in prange(k):
            _charpoly_one_nb(mats[i], p, out[i])
        return out


# ---------------------------------------------------------------------------
# pure-numpy fallbacks (same contracts)
# ---------------------------------------------------------------------------


def _rref_np(M, p):
    rows, cols = M.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = M[r:, c] % p
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        sel = r + int(nz[0])
        if sel != r:
            M[[r, sel]] = M[[sel, r]]
        inv = modinv_int(int(M[r, c]), p)
        if inv != 1:
            M[r] = (M[r] * inv) % p
        f = M[:, c] % p
        f[r] = 0
        mask = f != 0
        if mask.any():
            M[mask] = (M[mask] - np.outer(f[mask], M[r])) % p
        piv.append(c)
        r += 1
    return r, np.array(piv, dtype=np.int64)


def _charpoly_one_np(M, p):
    n = M.shape[0]
    H = M.copy() % p
    for j in range(n - 2):
        col = H[j + 1 :, j]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        sel = j + 1 + int(nz[0])
        if sel != j + 1:
            H[[j + 1, sel]] = H[[sel, j + 1]]
            H[:, [j + 1, sel]] = H[:, [sel, j + 1]]
        inv = modinv_int(int(H[j + 1, j]), p)
        f = (H[j + 2 :, j] * inv) % p
        mask = f != 0
        if mask.any():
            rows = j + 2 + np.nonzero(mask)[0]
            H[rows] = (H[rows] - np.outer(f[mask], H[j + 1])) % p
            H[:, j + 1] = (H[:, j + 1] + H[:, rows] @ f[mask]) % p
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        a = int(H[k - 1, k - 1]) % p
        polys[k, 1 : k + 1] = polys[k - 1, :k]
        polys[k, :k] = (polys[k, :k] - a * polys[k - 1, :k]) % p
        w = 1
        for m in range(k - 1, 0, -1):
            w = (w * int(H[m, m - 1])) % p
            if w == 0:
                break
            coef = (int(H[m - 1, k - 1]) * w) % p
            if coef:
                polys[k, :m] = (polys[k, :m] - coef * polys[m - 1, :m]) % p
    return polys[n] % p


def _charpoly_batch_np(mats, p):
    k, n = mats.shape[0], mats.shape[1]
    out = np.zeros((k, n + 1), dtype=np.int64)
    for i in range(k):
        out[i] = _charpoly_one_np(mats[i], p)
    return out


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------


def rref(M, p):
    """Reduced row echelon form mod p.

    Returns ``(R, pivots)`` where R holds the ``rank`` nonzero rows and
    ``pivots`` their pivot column indices. Idempotent: rref(rref(M)) == rref(M).
    """
    M = as_residues(M, p)
    if M.size == 0:
        return M.reshape(0, M.shape[1] if M.ndim == 2 else 0), np.empty(0, dtype=np.int64)
    work = M.copy()
    if _HAVE_NUMBA:
        rank, piv = _rref_nb(work, p)
    else:
        rank, piv = _rref_np(work, p)
    return work[:rank], piv


def nullspace(M, p):
    """Basis (rows, rref form) of the right nullspace of M mod p."""
    M = as_residues(M, p)
    rows, cols = M.shape
    R, piv = rref(M, p)
    free = [c for c in range(cols) if c not in set(int(x) for x in piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-R[i, c]) % p
    return basis


def solve(A, b, p):
    """One solution x of A x = b mod p, or None if inconsistent."""
    A = as_residues(A, p)
    b = as_residues(b, p).reshape(-1)
    if A.shape[0] != b.shape[0]:
        raise ValueError("shape mismatch")
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, piv = rref(aug, p)
    cols = A.shape[1]
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(piv):
        if c == cols:
            return None
        x[c] = R[i, cols]
    return x


def charpoly_batch(mats, p):
    """Characteristic polynomials of a stack of square matrices mod p.

    mats: (k, n, n). Returns (k, n+1) coefficients of det(xI - M),
    ascending order, monic (out[:, n] == 1).
    """
    mats = as_residues(mats, p)
    if mats.ndim == 2:
        mats = mats[None]
    if _HAVE_NUMBA:
        return _charpoly_batch_nb(np.ascontiguousarray(mats), p)
    return _charpoly_batch_np(mats, p)


def charpoly(M, p):
    return charpoly_batch(np.asarray(M)[None], p)[0]


def reduce_rows(rows, basis, pivots, p):
    """Reduce ``rows`` against an rref ``basis`` (residue of projection)."""
    rows = np.atleast_2d(as_residues(rows, p))
    if basis.shape[0] == 0 or rows.shape[0] == 0:
        return rows
    coef = rows[:, pivots]
    return (rows - modmul(coef, basis, p)) % p


def in_rowspace(rows, basis, pivots, p):
    res = reduce_rows(rows, basis, pivots, p)
    return not res.any()


class Span:
    """Incrementally built row space in rref form over F_p."""

    def __init__(self, p, cols):
        self.p = p
        self.cols = cols
        self.basis = np.zeros((0, cols), dtype=np.int64)
        self.pivots = np.empty(0, dtype=np.int64)

    @property
    def dim(self):
        return self.basis.shape[0]

    def add(self, rows):
        """Add rows to the span; returns True if the dimension grew."""
        rows = as_residues(rows, self.p)
        if rows.ndim == 1:
            rows = rows[None]
        res = reduce_rows(rows, self.basis, self.pivots, self.p)
        res = res[res.any(axis=1)]
        if res.shape[0] == 0:
            return False
        stacked = np.concatenate([self.basis, res], axis=0)
        self.basis, self.pivots = rref(stacked, self.p)
        return True

    def contains(self, rows):
        return in_rowspace(rows, self.basis, self.pivots, self.p)

    def coords(self, rows):
        """Coordinates of rows (must lie in the span) w.r.t. the rref basis."""
        rows = as_residues(rows, self.p)
        if rows.ndim == 1:
            rows = rows[None]
        c = rows[:, self.pivots]
        if not in_rowspace(rows, self.basis, self.pivots, self.p):
            raise ValueError("vector outside span")
        return c
