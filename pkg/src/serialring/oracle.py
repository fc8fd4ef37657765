"""The ground-truth seriality checker for group algebras F_p G.

Pipeline: build the algebra from the group's multiplication table, cut it
into blocks with central idempotents lifted from the (commutative) center,
compute the Jacobson radical of each block by the iterated p-power trace
functionals on the regular representation, certify the result, split the
semisimple quotient into matrix rings over finite fields with a complete
system of primitive idempotents, lift the system, and read off the Loewy
layers of every principal indecomposable.

Every verdict is certificate-backed:

* the returned radical is verified to be a two-sided nilpotent ideal
  (hence contained in the true radical), and
* the quotient is verified semisimple by an explicit Wedderburn
  decomposition (unit-sum central idempotents, field corners, uniform
  Peirce dimensions with invertibility witnesses), hence contains it.

No verdict can silently survive a bug in the radical iteration itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fplinalg, fppoly, kernels
from .kernels import Span, charpoly_batch, modmul, rref
from .permgroup import CapExceeded, PermGroup, is_prime

ORACLE_CAP = 1200
DEFAULT_SEED = 1729
_CHUNK = 32
_BATCH = 32


class NotSemisimple(ValueError):
    pass


class RadicalError(RuntimeError):
    """The radical iteration failed its certificates (internal invariant)."""


# ---------------------------------------------------------------------------
# coordinate algebras
# ---------------------------------------------------------------------------


class CoordAlgebra:
    """A finite-dimensional unital F_p-algebra in explicit coordinates.

    Subclasses provide multiplication and regular-representation
    matrices; everything downstream (radical, splits, layers) is generic.
    ``mult_generators`` is any set of elements whose products span the
    algebra; it powers the cheap two-sided-ideal certificates.
    """

    p: int
    dim: int
    unit: np.ndarray
    mult_generators: list

    def mult(self, x, y):
        raise NotImplementedError

    def regular_matrices(self, rows, side="left"):
        raise NotImplementedError

    def regular_matrix(self, x, side="left"):
        return self.regular_matrices(np.asarray(x)[None], side)[0]

    def generator_matrices(self, side):
        """Cached regular matrices of the multiplicative generators."""
        cache = getattr(self, "_genmat_cache", None)
        if cache is None:
            cache = {}
            self._genmat_cache = cache
        if side not in cache:
            cache[side] = [self.regular_matrix(g, side) for g in self.mult_generators]
        return cache[side]

    def multiply_rows(self, rows, y, side="right"):
        """rows * y (side=right) or y * rows (side=left), vectorized."""
        m = self.regular_matrix(y, "right" if side == "right" else "left")
        return modmul(rows, m.T, self.p)

    def power(self, x, e):
        acc = self.unit.copy()
        base = np.asarray(x)
        while e > 0:
            if e & 1:
                acc = self.mult(acc, base)
            base = self.mult(base, base)
            e >>= 1
        return acc

    def is_commutative(self):
        basis = np.eye(self.dim, dtype=np.int64)
        for start in range(0, self.dim, _BATCH):
            chunk = basis[start : start + _BATCH]
            li = self.regular_matrices(chunk, "left")
            ri = self.regular_matrices(chunk, "right")
            if (li != ri).any():
                return False
        return True

    def as_dense(self, limit=320):
        """Materialize the structure tensor for fast local arithmetic.

        Returns self unchanged when the dimension exceeds ``limit`` (the
        tensor would not pay for itself) or when already dense.
        """
        if self.dim > limit or isinstance(self, DenseAlgebra):
            return self
        basis = np.eye(self.dim, dtype=np.int64)
        mats = []
        for start in range(0, self.dim, _BATCH):
            mats.append(self.regular_matrices(basis[start : start + _BATCH], "left"))
        stack = np.concatenate(mats, axis=0) if mats else \
            np.zeros((0, self.dim, self.dim), dtype=np.int64)
        return DenseAlgebra(self.p, stack, self.unit, self.mult_generators)


class DenseAlgebra(CoordAlgebra):
    """Algebra with an explicit structure tensor (same coordinates as the
    algebra it was densified from); multiplication is one BLAS matmul."""

    def __init__(self, p, left_stack, unit, mult_generators):
        # left_stack[a] is the left-multiplication matrix of basis vector a
        self.p = p
        self.dim = left_stack.shape[0]
        self.unit = unit.copy()
        self.mult_generators = [g.copy() for g in mult_generators]
        d = self.dim
        self._left_flat = left_stack.reshape(d, d * d).astype(np.float64)
        self._right_flat_cache = None

    @property
    def _right_flat(self):
        if self._right_flat_cache is None:
            d = self.dim
            # R_x[c, b] = sum_a x_a T[b][c, a]
            stack = self._left_flat.reshape(d, d, d)
            self._right_flat_cache = np.ascontiguousarray(
                stack.transpose(2, 1, 0)
            ).reshape(d, d * d)
        return self._right_flat_cache

    def functional_slice(self, w, pivot_rows):
        """FW[a, j] = sum_t w[t] * T[a, pivot_rows[t], j] (radical levels)."""
        d = self.dim
        FW = np.zeros((d, d), dtype=np.float64)
        stack = self._left_flat.reshape(d, d, d)
        for t, pv in enumerate(pivot_rows):
            c = int(w[t])
            if c:
                FW += c * stack[:, pv, :]
        return (np.rint(FW) % self.p).astype(np.int64)

    def regular_matrices(self, rows, side="left"):
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64)) % self.p
        flat = self._left_flat if side == "left" else self._right_flat
        prod = np.rint(rows.astype(np.float64) @ flat)
        d = self.dim
        return (prod % self.p).astype(np.int64).reshape(rows.shape[0], d, d)

    def mult(self, x, y):
        lx = self.regular_matrix(x, "left")
        return modmul(lx, np.asarray(y, dtype=np.int64)[:, None] % self.p, self.p)[:, 0]


class GroupAlgebra(CoordAlgebra):
    """F_p G with the group elements as basis (monomial products)."""

    def __init__(self, group: PermGroup, p, cayley, inv):
        self.group = group
        self.p = p
        self.dim = group.order
        self.cayley = cayley
        self.inv = inv
        self.unit = np.zeros(self.dim, dtype=np.int64)
        self.unit[0] = 1
        gens = []
        for g in group.generators:
            v = np.zeros(self.dim, dtype=np.int64)
            v[group.index_of(g)] = 1
            gens.append(v)
        self.mult_generators = gens or [self.unit]

    def mult(self, x, y):
        x = np.asarray(x) % self.p
        y = np.asarray(y) % self.p
        nz = np.nonzero(x)[0]
        if nz.size <= 8:
            out = np.zeros(self.dim, dtype=np.int64)
            for a in nz:
                out[self.cayley[a]] += int(x[a]) * y
            return out % self.p
        return modmul(self.regular_matrix(x, "left"), y[:, None], self.p)[:, 0]

    def regular_matrices(self, rows, side="left"):
        rows = np.asarray(rows, dtype=np.int64) % self.p
        k, n = rows.shape
        out = np.zeros((k, n, n), dtype=np.int64)
        cols = np.arange(n)
        if side == "left":
            # (x * e_b)[cayley[a, b]] += x[a]
            for t in range(k):
                out[t][self.cayley, cols[None, :]] = rows[t][:, None]
        else:
            # (e_b * x)[cayley[b, a]] += x[a]
            for t in range(k):
                out[t][self.cayley, cols[:, None]] = rows[t][None, :]
        return out


class SubAlgebra(CoordAlgebra):
    """A subspace of a parent algebra closed under multiplication,
    with its own unit (e.g. a block cut out by a central idempotent, or
    a corner e A e)."""

    def __init__(self, parent, basis_rows, unit_parent, check=True):
        self.parent = parent
        self.p = parent.p
        basis, piv = rref(basis_rows, self.p)
        self.basis = basis
        self.pivots = piv
        self.dim = basis.shape[0]
        self.unit = self.project(unit_parent[None])[0]
        self.mult_generators = self._make_mult_gens()
        if check:
            assert self.contains(self.embed(self.unit[None])), "unit outside subalgebra"

    def _make_mult_gens(self):
        # u * g * u for the parent's generators stays inside corner-style
        # subalgebras (unit u central or a corner projector); when it does
        # not, fall back to the full basis, which always spans.
        u = self.embed(self.unit[None])[0]
        out = []
        for g in self.parent.mult_generators:
            v = self.parent.mult(self.parent.mult(u, g), u)
            try:
                out.append(self.project(v[None])[0])
            except ValueError:
                return [row for row in np.eye(self.dim, dtype=np.int64)]
        return out

    def contains(self, rows):
        return kernels.in_rowspace(rows, self.basis, self.pivots, self.p)

    def embed(self, coords):
        return modmul(np.atleast_2d(coords), self.basis, self.p)

    def project(self, rows, verify=True):
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64) % self.p)
        coords = rows[:, self.pivots]
        if verify:
            rec = modmul(coords, self.basis, self.p)
            if (rec != rows % self.p).any():
                raise ValueError("vector outside subalgebra")
        return coords

    def mult(self, x, y):
        prod = self.parent.mult(self.embed(x)[0], self.embed(y)[0])
        return self.project(prod[None])[0]

    def regular_matrices(self, rows, side="left"):
        rows = np.atleast_2d(rows)
        embedded = self.embed(rows)
        pm = self.parent.regular_matrices(embedded, side)
        # columns: x * b_j (or b_j * x) in parent coords, then take pivots
        cols = modmul(pm, self.basis.T, self.p)  # (k, pd, m)
        return np.ascontiguousarray(cols[:, self.pivots, :])


class QuotientAlgebra(CoordAlgebra):
    """Parent algebra modulo a two-sided ideal (given as rref rows)."""

    def __init__(self, parent, ideal_rows, ideal_pivots):
        self.parent = parent
        self.p = parent.p
        self.ideal = ideal_rows
        self.ideal_pivots = ideal_pivots
        pivset = set(int(x) for x in ideal_pivots)
        self.positions = np.array(
            [j for j in range(parent.dim) if j not in pivset], dtype=np.int64
        )
        self.dim = parent.dim - ideal_rows.shape[0]
        self.unit = self.project(parent.unit[None])[0]
        self.mult_generators = [self.project(g[None])[0] for g in parent.mult_generators]

    def reduce(self, rows):
        return kernels.reduce_rows(rows, self.ideal, self.ideal_pivots, self.p)

    def project(self, rows):
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64) % self.p)
        return self.reduce(rows)[:, self.positions]

    def embed(self, coords):
        coords = np.atleast_2d(coords)
        out = np.zeros((coords.shape[0], self.parent.dim), dtype=np.int64)
        out[:, self.positions] = coords % self.p
        return out

    def mult(self, x, y):
        prod = self.parent.mult(self.embed(x)[0], self.embed(y)[0])
        return self.project(prod[None])[0]

    def regular_matrices(self, rows, side="left"):
        rows = np.atleast_2d(rows)
        k = rows.shape[0]
        embedded = self.embed(rows)
        pm = self.parent.regular_matrices(embedded, side)
        cols = pm[:, :, self.positions]  # (k, pd, d): x * e_pos_j in parent coords
        flat = np.ascontiguousarray(cols.transpose(0, 2, 1)).reshape(-1, self.parent.dim)
        red = self.reduce(flat)[:, self.positions]
        return np.ascontiguousarray(
            red.reshape(k, self.dim, self.dim).transpose(0, 2, 1)
        )


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def build_algebra(group: PermGroup, p, cap=ORACLE_CAP) -> GroupAlgebra:
    """Group algebra F_p G from the multiplication table (dim = |G|)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if group.order > cap:
        raise CapExceeded(group.order)
    cayley = group.cayley_table()
    inv = np.array([group.inv_idx(i) for i in range(group.order)], dtype=np.int64)
    _check_associativity(cayley)
    return GroupAlgebra(group, p, cayley, inv)


def _check_associativity(cayley, full_limit=200, samples=20000):
    n = cayley.shape[0]
    assert (cayley[0] == np.arange(n)).all() and (cayley[:, 0] == np.arange(n)).all(), \
        "unit fails to act as identity"
    if n <= full_limit:
        ab_c = cayley[cayley.reshape(-1), :].reshape(n, n, n)
        a_bc = cayley[:, cayley.reshape(-1)].reshape(n, n, n)
        assert (ab_c == a_bc).all(), "multiplication table not associative"
    else:
        rng = np.random.default_rng(0)
        i = rng.integers(0, n, samples)
        j = rng.integers(0, n, samples)
        k = rng.integers(0, n, samples)
        assert (cayley[cayley[i, j], k] == cayley[i, cayley[j, k]]).all(), \
            "multiplication table not associative (sampled)"


# ---------------------------------------------------------------------------
# radical of a coordinate algebra
# ---------------------------------------------------------------------------


def _is_two_sided_ideal(alg, rows, pivots):
    if rows.shape[0] == 0:
        return True
    for side in ("left", "right"):
        for gm in alg.generator_matrices(side):
            prods = modmul(rows, gm.T, alg.p)
            if not kernels.in_rowspace(prods, rows, pivots, alg.p):
                return False
    return True


def right_ideal_closure(alg, rows, limit=None):
    """Smallest right ideal containing the span of ``rows``."""
    span = Span(alg.p, alg.dim)
    span.add(rows)
    gens = [gm.T for gm in alg.generator_matrices("right")]
    while True:
        grew = False
        for gt in gens:
            if span.dim == 0:
                break
            prods = modmul(span.basis, gt, alg.p)
            grew |= span.add(prods)
            if limit is not None and span.dim > limit:
                return span.basis
        if not grew:
            return span.basis


def right_ideal_generators(alg, ideal_rows):
    """A short list of rows generating the ideal as a right ideal."""
    target = ideal_rows.shape[0]
    span = Span(alg.p, alg.dim)
    gens = []
    for row in ideal_rows:
        if span.contains(row[None]):
            continue
        gens.append(row)
        closure = right_ideal_closure(alg, np.concatenate([span.basis, row[None]])
                                      if span.dim else row[None])
        span = Span(alg.p, alg.dim)
        span.add(closure)
        if span.dim == target:
            break
    return gens


def _ideal_product(alg, left_rows, right_rows, right_gens=None):
    """Span of products left * right for two two-sided ideals."""
    if left_rows.shape[0] == 0 or right_rows.shape[0] == 0:
        return np.zeros((0, alg.dim), dtype=np.int64)
    if right_gens is None:
        right_gens = right_ideal_generators(alg, right_rows)
    seeds = []
    for r in right_gens:
        rm = alg.regular_matrix(r, "right")
        seeds.append(modmul(left_rows, rm.T, alg.p))
    return right_ideal_closure(alg, np.concatenate(seeds, axis=0))


def _is_nilpotent_ideal(alg, rows):
    cur = rows
    for _ in range(int(np.ceil(np.log2(max(alg.dim, 2)))) + 2):
        if cur.shape[0] == 0:
            return True
        nxt = _ideal_product(alg, cur, cur)
        if nxt.shape[0] >= cur.shape[0]:
            return False
        cur = nxt
    return cur.shape[0] == 0


def radical_basis(alg: CoordAlgebra):
    """Jacobson radical of ``alg`` as rref rows in algebra coordinates.

    Iterated functionals: level i intersects with the kernel of
    x -> (coefficient of lambda^{dim - p^i} of charpoly(L_x)) applied to
    all right translates. Levels run while p^i <= dim. Nilpotent radical
    elements make every such coefficient vanish, so the radical survives
    每 level; the certified exit (two-sided ideal + nilpotent) guarantees
    the result is exactly the radical when it fires.
    """
    p, d = alg.p, alg.dim
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    basis = np.eye(d, dtype=np.int64)
    pivots = np.arange(d, dtype=np.int64)
    level = 0
    pi = 1
    last_failed_dim = -1
    probe_rng = np.random.default_rng(0xC0DE)
    while pi <= d:
        basis, pivots = _radical_level(alg, basis, pivots, d - pi, level)
        if basis.shape[0] == 0:
            return basis
        if basis.shape[0] != last_failed_dim:
            if _probe_nilpotent(alg, basis, probe_rng) and \
                    _is_two_sided_ideal(alg, basis, pivots) and \
                    _is_nilpotent_ideal(alg, basis):
                return basis
            last_failed_dim = basis.shape[0]
        level += 1
        pi *= p
    raise RadicalError(
        f"radical iteration exhausted levels without a nilpotent ideal (dim {d}, p {p})"
    )


def _probe_nilpotent(alg, rows, rng, tries=3):
    """Cheap necessary test: random elements of the span must be nilpotent."""
    steps = int(np.ceil(np.log2(max(alg.dim, 2)))) + 1
    for _ in range(tries):
        coeff = rng.integers(0, alg.p, rows.shape[0])
        x = modmul(coeff[None, :], rows, alg.p)[0]
        for _ in range(steps):
            if not x.any():
                break
            x = alg.mult(x, x)
        if x.any():
            return False
    return True


def _radical_level(alg, basis, pivots, coeff_index, level):
    p, d = alg.p, alg.dim
    m = basis.shape[0]
    w = np.zeros(m, dtype=np.int64)
    # pass 1: functional values on the current basis
    if level == 0 and isinstance(alg, DenseAlgebra):
        stack = alg._left_flat.reshape(d, d, d)
        diag = np.rint(np.einsum("acc->a", stack)).astype(np.int64) % p
        w = modmul(basis, diag[:, None], p)[:, 0]
    else:
        for start in range(0, m, _CHUNK):
            chunk = basis[start : start + _CHUNK]
            mats = alg.regular_matrices(chunk, side="left")
            if level == 0:
                w[start : start + chunk.shape[0]] = (
                    np.trace(mats, axis1=1, axis2=2) % p
                )
            else:
                coeffs = charpoly_batch(mats, p)
                w[start : start + chunk.shape[0]] = coeffs[:, coeff_index]
    if not w.any():
        return basis, pivots  # functional vanishes identically; nothing to cut
    # pass 2: constraints f(x * a_j) = 0 for all algebra basis vectors a_j
    if isinstance(alg, DenseAlgebra):
        FW = alg.functional_slice(w, pivots)
        M = modmul(basis, FW, p).T
    else:
        M = np.zeros((d, m), dtype=np.int64)
        for start in range(0, m, _CHUNK):
            chunk = basis[start : start + _CHUNK]
            mats = alg.regular_matrices(chunk, side="left")
            for t in range(chunk.shape[0]):
                M[:, start + t] = modmul(w[None, :], mats[t][pivots, :], p)[0]
    ns = kernels.nullspace(M, p)
    if ns.shape[0] == m:
        return basis, pivots
    newbasis = modmul(ns, basis, p)
    return rref(newbasis, p)


# ---------------------------------------------------------------------------
# commutative algebras: nilradical, semisimple splitting
# ---------------------------------------------------------------------------


def frobenius_matrix(alg: CoordAlgebra):
    """Matrix of the (linear, since commutative char p) map x -> x^p."""
    cols = []
    basis = np.eye(alg.dim, dtype=np.int64)
    for j in range(alg.dim):
        cols.append(alg.power(basis[j], alg.p))
    return np.stack(cols, axis=1)


def commutative_nilradical(alg: CoordAlgebra):
    """Nilradical of a commutative algebra: kernel of an iterated Frobenius."""
    F = frobenius_matrix(alg)
    e = 1
    pe = alg.p
    while pe < alg.dim:
        pe *= alg.p
        e += 1
    Fe = np.eye(alg.dim, dtype=np.int64)
    for _ in range(e):
        Fe = modmul(F, Fe, alg.p)
    return kernels.nullspace(Fe, alg.p)  # vectors x with x^(p^e) = 0


def split_commutative_semisimple(alg: CoordAlgebra):
    """Primitive idempotents of a commutative semisimple algebra.

    Berlekamp-style: the fixed space of Frobenius is F_p^r (r = number of
    field components); eigen-splitting the fixed-space basis elements
    separates all components deterministically.
    """
    p = alg.p
    F = frobenius_matrix(alg)
    fixed = kernels.nullspace(F - np.eye(alg.dim, dtype=np.int64), p)
    comps = [alg.unit.copy()]
    for b in fixed:
        new = []
        for e in comps:
            c = alg.mult(e, b)
            vals = _eigenvalues_on_component(alg, e, c)
            if len(vals) <= 1:
                new.append(e)
                continue
            for lam in vals:
                proj = e.copy()
                for mu in vals:
                    if mu == lam:
                        continue
                    factor = (c - mu * e) % p
                    proj = alg.mult(proj, (factor * kernels.modinv_int(lam - mu, p)) % p)
                if proj.any():
                    new.append(proj)
        comps = new
    for e in comps:
        assert (alg.mult(e, e) == e).all(), "component projector not idempotent"
    total = np.zeros(alg.dim, dtype=np.int64)
    for e in comps:
        total = (total + e) % p
    assert (total == alg.unit).all(), "component projectors do not sum to 1"
    return comps


def _eigenvalues_on_component(alg, e, c):
    """Roots of the minimal polynomial of c on the component with unit e.

    c lies in the Frobenius-fixed part, so the polynomial splits into
    distinct linear factors over F_p.
    """
    # Krylov span of c within the component: powers c^k (c^0 = e)
    span = Span(alg.p, alg.dim)
    span.add(e)
    vecs = [e]
    cur = e
    while True:
        cur = alg.mult(cur, c)
        if span.contains(cur[None]):
            coords = _express_in(vecs, cur, alg.p)
            g = np.zeros(len(vecs) + 1, dtype=np.int64)
            g[: len(coords)] = (-coords) % alg.p
            g[len(vecs)] = 1
            break
        vecs.append(cur)
        span.add(cur)
    roots = [lam for lam in range(alg.p) if fppoly.evaluate(g, lam, alg.p) == 0]
    assert len(roots) == fppoly.deg(fppoly.poly(g, alg.p)), \
        "component minimal polynomial failed to split"
    return roots


def _express_in(vecs, target, p):
    V = np.stack(vecs, axis=1)
    x = kernels.solve(V, target, p)
    assert x is not None
    return x


# ---------------------------------------------------------------------------
# Wedderburn split of a semisimple algebra
# ---------------------------------------------------------------------------


@dataclass
class WedderburnFactor:
    """One simple factor M_k(D), D a finite field of F_p-degree f."""

    central_idempotent: np.ndarray  # coords in the ambient semisimple algebra
    idempotents: list  # k orthogonal primitive idempotents summing to it
    k: int
    field_degree: int

    @property
    def simple_dim(self):
        return self.k * self.field_degree

    @property
    def factor_dim(self):
        return self.k * self.k * self.field_degree


def _center_basis(alg: CoordAlgebra):
    """Elements commuting with every basis element (iterated intersection)."""
    basis = np.eye(alg.dim, dtype=np.int64)
    sol = np.eye(alg.dim, dtype=np.int64)  # rows span the current candidates
    for j in range(alg.dim):
        if sol.shape[0] == 0:
            break
        lm = alg.regular_matrix(basis[j], "left")
        rm = alg.regular_matrix(basis[j], "right")
        diff = (lm - rm) % alg.p
        cond = modmul(diff, sol.T, alg.p)  # constraint on coefficients
        ns = kernels.nullspace(cond, alg.p)
        sol = modmul(ns, sol, alg.p)
    sol, _ = rref(sol, alg.p)
    return sol


def _corner(alg, e):
    """e * alg * e as a SubAlgebra (unit e)."""
    le = alg.regular_matrix(e, "left")
    re = alg.regular_matrix(e, "right")
    m = modmul(le, re, alg.p)
    return SubAlgebra(alg, m.T, e)


def _split_idempotent_once(corner, rng):
    """Find an idempotent 0 != u != unit inside a corner, or None."""
    p = corner.p
    candidates = [np.eye(corner.dim, dtype=np.int64)[j] for j in range(corner.dim)]
    for _ in range(64):
        for c in candidates:
            mat = corner.regular_matrix(c, "left")
            mp = fplinalg.min_poly(mat, p)
            unit_, factors = fppoly.factor(mp, p, rng)
            if len(factors) >= 2:
                g = _power_poly(factors[0][0], factors[0][1], p)
                h = fppoly.poly([1], p)
                for f2, mult in factors[1:]:
                    h = fppoly.mul(h, _power_poly(f2, mult, p), p)
                u = _crt_idempotent(corner, c, g, h)
                if u is not None:
                    return u
            elif factors[0][1] >= 2:
                g = factors[0][0]
                z = _poly_of_element(corner, c, g)
                if z.any():
                    u = _regularity_idempotent(corner, z)
                    if u is not None:
                        return u
        candidates = [np.asarray(rng.integers(0, p, corner.dim), dtype=np.int64)
                      for _ in range(4)]
    return None


def _power_poly(f, e, p):
    out = fppoly.poly([1], p)
    for _ in range(e):
        out = fppoly.mul(out, f, p)
    return out


def _poly_of_element(alg, c, f):
    """f(c) with the algebra unit as the constant term."""
    acc = np.zeros(alg.dim, dtype=np.int64)
    power = alg.unit.copy()
    for coef in f:
        if coef:
            acc = (acc + int(coef) * power) % alg.p
        power = alg.mult(power, c)
    return acc


def _crt_idempotent(alg, c, g, h):
    """Idempotent th(c) from a coprime split minpoly = g * h."""
    p = alg.p
    d, s, t = _xgcd_poly(g, h, p)
    if fppoly.deg(d) != 0:
        return None
    dinv = kernels.modinv_int(int(d[0]), p)
    th = fppoly.mul(fppoly.scale(t, dinv, p), h, p)
    u = _poly_of_element(alg, c, th)
    if not u.any():
        return None
    if (alg.mult(u, u) != u).any():
        return None
    if (u == alg.unit).all():
        return None
    return u


def _xgcd_poly(f, g, p):
    r0, r1 = f, g
    s0, s1 = fppoly.poly([1], p), fppoly.poly([], p)
    t0, t1 = fppoly.poly([], p), fppoly.poly([1], p)
    while not fppoly.is_zero(r1):
        q, r = fppoly.divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, fppoly.sub(s0, fppoly.mul(q, s1, p), p)
        t0, t1 = t1, fppoly.sub(t0, fppoly.mul(q, t1, p), p)
    return r0, s0, t0


def _regularity_idempotent(alg, z):
    """From z with reducible structure: solve z y z = z, take u = z y."""
    p = alg.p
    lz = alg.regular_matrix(z, "left")
    rz = alg.regular_matrix(z, "right")
    M = modmul(lz, rz, p)
    y = kernels.solve(M, z, p)
    if y is None:
        return None
    u = alg.mult(z, y)
    if not u.any() or (u == alg.unit).all():
        return None
    if (alg.mult(u, u) != u).any():
        return None
    return u


def _certify_field(alg: CoordAlgebra):
    """Certify a commutative algebra is a finite field; returns its degree."""
    if not alg.is_commutative():
        raise NotSemisimple("corner is not commutative")
    # no nilpotents: iterated Frobenius injective
    nil = commutative_nilradical(alg)
    if nil.shape[0]:
        raise NotSemisimple("corner has nilpotents")
    F = frobenius_matrix(alg)
    fixed = kernels.nullspace(F - np.eye(alg.dim, dtype=np.int64), alg.p)
    if fixed.shape[0] != 1:
        raise NotSemisimple("corner splits further")
    return alg.dim


def wedderburn_split(alg: CoordAlgebra, rng):
    """Full certified decomposition of a semisimple algebra.

    Returns a list of WedderburnFactor. Raises NotSemisimple when any
    certificate fails (which happens exactly when the input was not
    semisimple).
    """
    p = alg.p
    center_rows = _center_basis(alg)
    center = SubAlgebra(alg, center_rows, alg.unit)
    cdense = center.as_dense(limit=128)
    if not cdense.is_commutative():
        raise NotSemisimple("center computation failed")
    nil = commutative_nilradical(cdense)
    if nil.shape[0]:
        raise NotSemisimple("center has nilpotents")
    central = split_commutative_semisimple(cdense)
    factors = []
    total_dim = 0
    for z_c in central:
        z = center.embed(z_c)[0]
        idems = []
        work = [z]
        while work:
            e = work.pop()
            corner = _corner(alg, e)
            cd = corner.as_dense(limit=96)
            if cd.is_commutative():
                idems.append(e)
                continue
            u = _split_idempotent_once(cd, rng)
            if u is None:
                raise NotSemisimple("noncommutative corner refused to split")
            u_full = corner.embed(u)[0]
            work.append(u_full)
            work.append((e - u_full) % p)
        # certificates
        f_deg = None
        k = len(idems)
        for e in idems:
            ce = _corner(alg, e)
            ced = ce.as_dense(limit=96)
            if f_deg is None:
                f_deg = _certify_field(ced)
            elif ced.dim != f_deg:
                raise NotSemisimple("corner dimensions disagree")
            else:
                _certify_field(ced)
        total = np.zeros(alg.dim, dtype=np.int64)
        for e in idems:
            total = (total + e) % p
        if (total != z).any():
            raise NotSemisimple("factor idempotents do not sum to the central one")
        _certify_matrix_units(alg, idems, f_deg)
        zdim = rref(alg.regular_matrix(z, "left").T, p)[0].shape[0]
        if zdim != k * k * f_deg:
            raise NotSemisimple("factor dimension mismatch")
        total_dim += zdim
        factors.append(WedderburnFactor(z, idems, k, f_deg))
    if total_dim != alg.dim:
        raise NotSemisimple("factor dimensions do not fill the algebra")
    return factors


def _certify_matrix_units(alg, idems, f_deg):
    """Peirce blocks all of field size, with invertible connectors."""
    p = alg.p
    e1 = idems[0]
    for e in idems[1:]:
        if (alg.mult(e1, e)).any() or (alg.mult(e, e1)).any():
            raise NotSemisimple("idempotents not orthogonal")
        le1 = alg.regular_matrix(e1, "left")
        re = alg.regular_matrix(e, "right")
        peirce = modmul(le1, re, p)  # e1 * A * e
        prows, _ = rref(peirce.T, p)
        if prows.shape[0] != f_deg:
            raise NotSemisimple("Peirce block dimension mismatch")
        u = None
        for cand in prows:
            # look for v in e A e1 with u v = e1
            lu = alg.regular_matrix(cand, "left")
            v = kernels.solve(lu, e1, p)
            if v is not None:
                u = cand
                break
        if u is None:
            raise NotSemisimple("no invertible connector in Peirce block")


# ---------------------------------------------------------------------------
# blocks via the center of the group algebra
# ---------------------------------------------------------------------------


def class_sum_rows(A: GroupAlgebra):
    classes = A.group.conjugacy_classes()
    rows = np.zeros((len(classes), A.dim), dtype=np.int64)
    for i, cls in enumerate(classes):
        rows[i, cls] = 1
    return rows


def central_idempotents(A: GroupAlgebra):
    """Primitive central idempotents of A, lifted inside its center."""
    center = SubAlgebra(A, class_sum_rows(A), A.unit)
    dense = center.as_dense(limit=128)
    nil = commutative_nilradical(dense)
    nilref, nilpiv = rref(nil, A.p)
    if nilref.shape[0] == 0:
        comps = split_commutative_semisimple(dense)
        return [center.embed(c)[0] for c in comps]
    zbar = QuotientAlgebra(dense, nilref, nilpiv)
    comps = split_commutative_semisimple(zbar)
    out = []
    for cbar in comps:
        x = zbar.embed(cbar)[0]  # coords in the center
        e = _newton_idempotent(dense, x)
        out.append(center.embed(e)[0])
    total = np.zeros(A.dim, dtype=np.int64)
    for e in out:
        assert (A.mult(e, e) == e).all()
        total = (total + e) % A.p
    assert (total == A.unit).all(), "central idempotents do not sum to 1"
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            assert not A.mult(out[i], out[j]).any(), "central idempotents overlap"
    return out


def _newton_idempotent(alg, x, max_iter=64):
    for _ in range(max_iter):
        sq = alg.mult(x, x)
        if (sq == x).all():
            return x
        cube = alg.mult(sq, x)
        x = (3 * sq - 2 * cube) % alg.p
    raise RadicalError("idempotent lifting diverged")


# ---------------------------------------------------------------------------
# the full oracle
# ---------------------------------------------------------------------------


@dataclass
class PimReport:
    index: int
    factor: int
    dim: int
    layer_dims: list
    layer_simple: list
    kupisch: int


@dataclass
class LoewyReport:
    group: str
    p: int
    dim: int
    seed: int
    backend: str
    block_dims: list
    loewy_dims: list
    radical_dim: int
    factor_simple_dims: list
    pims: list = field(default_factory=list)
    serial: bool = False
    side: str = "right"

    def to_dict(self):
        return {
            "group": self.group,
            "p": self.p,
            "dim": self.dim,
            "seed": self.seed,
            "backend": self.backend,
            "block_dims": self.block_dims,
            "loewy_dims": self.loewy_dims,
            "radical_dim": self.radical_dim,
            "factor_simple_dims": self.factor_simple_dims,
            "pims": [vars(pr).copy() for pr in self.pims],
            "serial": self.serial,
            "side": self.side,
        }

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["pims"] = [PimReport(**pp) for pp in d["pims"]]
        return cls(**d)


def radical(A: GroupAlgebra, blocks_data=None):
    """Jacobson radical of A as rref rows in group coordinates.

    Computed block by block; certified nilpotent two-sided with
    semisimple quotient (re-checked by running the radical iteration on
    A/J, which must return 0).
    """
    if A.dim % A.p != 0:
        # coprime order: semisimple, and the Wedderburn certificates
        # downstream re-verify it
        return np.zeros((0, A.dim), dtype=np.int64)
    if blocks_data is None:
        blocks_data = central_idempotents(A)
    pieces = []
    for z in blocks_data:
        lz = A.regular_matrix(z, "left")
        block = SubAlgebra(A, lz.T, z, check=False)
        jb = radical_basis(block.as_dense())
        if jb.shape[0]:
            pieces.append(block.embed(jb))
    if pieces:
        J, piv = rref(np.concatenate(pieces, axis=0), A.p)
    else:
        J = np.zeros((0, A.dim), dtype=np.int64)
        piv = np.empty(0, dtype=np.int64)
    assert _is_two_sided_ideal(A, J, piv), "radical is not an ideal"
    if J.shape[0]:
        quot = QuotientAlgebra(A, J, piv)
        # explicit semisimplicity certificate for A/J (raises if it fails)
        wedderburn_split(quot.as_dense(limit=256),
                         np.random.default_rng(DEFAULT_SEED))
    return J


def radical_powers(A: GroupAlgebra, J):
    """[J, J^2, ..., 0] as rref row bases (strictly decreasing dims)."""
    powers = []
    cur = J
    jgens = right_ideal_generators(A, J) if J.shape[0] else []
    guard = 0
    while cur.shape[0]:
        powers.append(cur)
        nxt = _ideal_product(A, cur, J, right_gens=jgens)
        assert nxt.shape[0] < cur.shape[0], "radical power chain stalled"
        cur = nxt
        guard += 1
        assert guard <= A.dim + 1
    powers.append(np.zeros((0, A.dim), dtype=np.int64))
    return powers


def loewy_chain(A: GroupAlgebra, J):
    """Dimensions of A > J > J^2 > ... > 0 (strictly decreasing)."""
    return [A.dim] + [rows.shape[0] for rows in radical_powers(A, J)]




def semisimple_split(A_or_view, rng=None, check_semisimple=True):
    """Wedderburn decomposition of a semisimple algebra (NotSemisimple if not)."""
    if rng is None:
        rng = np.random.default_rng(DEFAULT_SEED)
    alg = A_or_view
    if check_semisimple:
        r = radical_basis(alg)
        if r.shape[0]:
            raise NotSemisimple(f"radical has dimension {r.shape[0]}")
    return wedderburn_split(alg, rng)


@dataclass
class IdempotentSystem:
    idempotents: list  # group-coordinate vectors, orthogonal, sum 1
    factor_of: list  # Wedderburn factor index per idempotent
    simple_dims: list  # simple-module dim per factor
    factor_reps: list  # group-coordinate representatives of the central
    # idempotents of A/J (exact idempotents only modulo J)


def lift_system(A: GroupAlgebra, J, factors, quot: QuotientAlgebra):
    """Lift a complete primitive system of A/J to A (Newton + corners)."""
    p = A.p
    lifted = []
    factor_of = []
    for fi, fac in enumerate(factors):
        for ebar in fac.idempotents:
            x = quot.embed(ebar)[0]
            f = A.unit.copy()
            for e_prev in lifted:
                f = (f - e_prev) % p
            x = A.mult(A.mult(f, x), f)
            e = _newton_idempotent(A, x)
            assert (quot.project(e[None])[0] == ebar % p).all(), \
                "lift does not reduce to the input idempotent"
            lifted.append(e)
            factor_of.append(fi)
    total = np.zeros(A.dim, dtype=np.int64)
    for e in lifted:
        total = (total + e) % p
    assert (total == A.unit).all(), "lifted idempotents do not sum to 1"
    for i in range(len(lifted)):
        assert (A.mult(lifted[i], lifted[i]) == lifted[i]).all()
        for j in range(i + 1, len(lifted)):
            assert not A.mult(lifted[i], lifted[j]).any()
            assert not A.mult(lifted[j], lifted[i]).any()
        # reduction recovers the input system
    simple_dims = [fac.simple_dim for fac in factors]
    factor_reps = [quot.embed(fac.central_idempotent)[0] for fac in factors]
    return IdempotentSystem(lifted, factor_of, simple_dims, factor_reps)


def _span_dims_with(A, base_span_rows, extra_rows):
    span = Span(A.p, A.dim)
    if base_span_rows.shape[0]:
        span.add(base_span_rows)
    before = span.dim
    span.add(extra_rows)
    return before, span.dim


def is_serial(A: GroupAlgebra, seed=DEFAULT_SEED, side="right") -> LoewyReport:
    """Full seriality analysis of the group algebra (the oracle verdict)."""
    rng = np.random.default_rng(seed)
    zs = central_idempotents(A)
    block_dims = sorted(
        rref(A.regular_matrix(z, "left").T, A.p)[0].shape[0] for z in zs
    )
    pieces = []
    if A.dim % A.p == 0:
        for z in zs:
            block = SubAlgebra(A, A.regular_matrix(z, "left").T, z, check=False)
            jb = radical_basis(block.as_dense())
            if jb.shape[0]:
                pieces.append(block.embed(jb))
    if pieces:
        J, piv = rref(np.concatenate(pieces, axis=0), A.p)
    else:
        J = np.zeros((0, A.dim), dtype=np.int64)
        piv = np.empty(0, dtype=np.int64)
    assert _is_two_sided_ideal(A, J, piv), "radical is not an ideal"
    # radical powers once, reused for every principal indecomposable
    powers = [np.eye(A.dim, dtype=np.int64)] + radical_powers(A, J)
    chain = [A.dim] + [rows.shape[0] for rows in powers[1:]]
    quot = QuotientAlgebra(A, J, piv)
    # the Wedderburn split doubles as the quotient-semisimplicity assert
    factors = wedderburn_split(quot.as_dense(limit=256) if J.shape[0] else quot, rng)
    system = lift_system(A, J, factors, quot)

    pims = []
    serial = True
    pim_total = 0
    mult_side = "left" if side == "right" else "right"
    for idx, e in enumerate(system.idempotents):
        espans = []
        for rows in powers:
            if rows.shape[0] == 0:
                espans.append(np.zeros((0, A.dim), dtype=np.int64))
                continue
            prods = A.multiply_rows(rows, e, side=mult_side)
            espans.append(rref(prods, A.p)[0])
        dims = [sp.shape[0] for sp in espans]
        pim_dim = dims[0]
        pim_total += pim_dim
        layer_dims = []
        layer_simple = []
        kup = 0
        for k in range(len(espans) - 1):
            ld = dims[k] - dims[k + 1]
            if ld == 0:
                continue
            layer_dims.append(ld)
            mults = _layer_multiplicities(A, espans[k], espans[k + 1], system, side)
            assert sum(m * d for m, d in zip(mults, system.simple_dims)) == ld, \
                "layer fails to decompose semisimply"
            nsimple = sum(mults)
            layer_simple.append(nsimple == 1)
            kup += nsimple
            if nsimple != 1:
                serial = False
        pims.append(PimReport(idx, system.factor_of[idx], pim_dim,
                              layer_dims, layer_simple, kup))
    assert pim_total == A.dim, "principal indecomposables do not fill the algebra"
    return LoewyReport(
        group=A.group.name or "?",
        p=A.p,
        dim=A.dim,
        seed=seed,
        backend=kernels.BACKEND,
        block_dims=block_dims,
        loewy_dims=chain,
        radical_dim=J.shape[0],
        factor_simple_dims=list(system.simple_dims),
        pims=pims,
        serial=serial,
        side=side,
    )


def _layer_multiplicities(A, upper, lower, system, side):
    """Composition multiplicities of each Wedderburn factor in a layer."""
    out = []
    for z, d in zip(system.factor_reps, system.simple_dims):
        if upper.shape[0] == 0:
            out.append(0)
            continue
        acted = A.multiply_rows(upper, z, side="right" if side == "right" else "left")
        before, after = _span_dims_with(A, lower, acted)
        extra = after - before
        assert extra % d == 0, "isotypic dimension not divisible by simple dim"
        out.append(extra // d)
    return out


def blocks(A: GroupAlgebra):
    """Block dimensions of A (sorted ascending)."""
    zs = central_idempotents(A)
    dims = sorted(rref(A.regular_matrix(z, "left").T, A.p)[0].shape[0] for z in zs)
    assert sum(dims) == A.dim
    return dims
