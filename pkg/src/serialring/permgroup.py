"""Finite permutation groups at desk scale via full element enumeration.

Groups are enumerated breadth-first from their generators into a dense
element table (one row of images per element, identity first). All the
structure theory needed downstream (conjugacy, normalizers, largest
normal p'-subgroup, chief series, quotients, Sylow data) runs on integer
element indices against that table; the Permutation class is the thin
object surface.

The enumeration cap (default 10^5) is a hard error, never a silent
truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

DEFAULT_CAP = 100_000


class CapExceeded(RuntimeError):
    def __init__(self, count):
        super().__init__(f"enumeration exceeded cap ({count} elements so far)")
        self.count = count


class NotNormal(ValueError):
    pass


class NotPrime(ValueError):
    pass


class NoneExists(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int):
    """Prime factorization as a dict {p: exponent}."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


class Permutation:
    """A permutation of {0, ..., degree-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise ValueError("images are not a bijection")
        self.images = images

    @property
    def degree(self):
        return len(self.images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles, degree):
        """Build from 0-based disjoint cycles."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a in seen:
                    raise ValueError(f"point {a} repeated across cycles")
                seen.add(a)
                images[a] = b
        return cls(images)

    def __call__(self, x):
        return self.images[x]

    def __mul__(self, other):
        # apply self first, then other (right-action composition)
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(other.images[i] for i in self.images)

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def cycles(self, skip_fixed=True):
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            if len(cyc) > 1 or not skip_fixed:
                out.append(tuple(cyc))
        return out

    def order(self):
        return reduce(math.lcm, (len(c) for c in self.cycles(skip_fixed=False)), 1)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycle_string(self):
        """1-based disjoint-cycle notation, e.g. ``(1,2,3)(4,5)``."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


class PermGroup:
    """Finite permutation group with a fully enumerated element table."""

    def __init__(self, degree, generators, name=None, cap=DEFAULT_CAP):
        self.degree = int(degree)
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != self.degree:
                raise ValueError("generator degree mismatch")
            if not g.is_identity():
                gens.append(g)
        self.generators = tuple(gens)
        self.name = name
        self.cap = cap
        self._table = None
        self._index = None
        self._inv = None
        self._orders = None
        self._classes = None
        self._class_of = None
        self._cayley = None

    # -- enumeration -------------------------------------------------------

    def _ensure(self):
        if self._table is not None:
            return
        deg = self.degree
        dtype = np.int16 if deg < 2**15 else np.int32
        ident = np.arange(deg, dtype=dtype)
        rows = [ident]
        index = {ident.tobytes(): 0}
        gen_rows = [np.array(g.images, dtype=dtype) for g in self.generators]
        frontier = np.array([ident]) if gen_rows else np.zeros((0, deg), dtype=dtype)
        while frontier.shape[0]:
            new = []
            for g in gen_rows:
                prods = g[frontier]  # (frontier then g)
                for r in prods:
                    key = r.tobytes()
                    if key not in index:
                        index[key] = len(rows) + len(new)
                        new.append(r)
            if not new:
                break
            if len(rows) + len(new) > self.cap:
                raise CapExceeded(len(rows) + len(new))
            frontier = np.array(new, dtype=dtype)
            rows.extend(new)
        self._table = np.ascontiguousarray(np.array(rows, dtype=dtype))
        self._index = index
        inv_rows = np.argsort(self._table, axis=1).astype(dtype)
        self._inv = self.index_of_rows(inv_rows)
        assert (self._inv >= 0).all()

    @property
    def order(self):
        self._ensure()
        return self._table.shape[0]

    @property
    def table(self):
        self._ensure()
        return self._table

    def element(self, idx) -> Permutation:
        self._ensure()
        return Permutation(self._table[idx])

    def elements(self):
        """All elements as Permutation objects (materialized on demand)."""
        self._ensure()
        return [Permutation(row) for row in self._table]

    def index_of(self, perm) -> int:
        self._ensure()
        row = np.asarray(perm.images if isinstance(perm, Permutation) else perm,
                         dtype=self._table.dtype)
        return self._index.get(row.tobytes(), -1)

    def index_of_rows(self, rows):
        self._ensure()
        rows = np.ascontiguousarray(rows, dtype=self._table.dtype)
        idx = np.empty(rows.shape[0], dtype=np.int64)
        get = self._index.get
        for i in range(rows.shape[0]):
            idx[i] = get(rows[i].tobytes(), -1)
        return idx

    # -- products ----------------------------------------------------------

    def mul_idx(self, i, j):
        """Index of element(i) * element(j) (i applied first)."""
        self._ensure()
        row = self._table[j][self._table[i]]
        return self._index[row.tobytes()]

    def mul_rows(self, idxs, j):
        """Indices of element(i) * element(j) for all i in idxs."""
        self._ensure()
        prods = self._table[j][self._table[idxs]]
        return self.index_of_rows(prods)

    def inv_idx(self, i):
        self._ensure()
        return int(self._inv[i])

    def conj_idx(self, x, g):
        """g^-1 x g."""
        return self.mul_idx(self.mul_idx(self.inv_idx(g), x), g)

    def power_idx(self, i, k):
        self._ensure()
        if k < 0:
            i, k = self.inv_idx(i), -k
        acc, base = 0, i
        while k:
            if k & 1:
                acc = self.mul_idx(acc, base)
            base = self.mul_idx(base, base)
            k >>= 1
        return acc

    def element_orders(self):
        self._ensure()
        if self._orders is None:
            n = self.order
            orders = np.empty(n, dtype=np.int64)
            T = self._table
            for i in range(n):
                row = T[i]
                seen = np.zeros(self.degree, dtype=bool)
                o = 1
                for s in range(self.degree):
                    if seen[s]:
                        continue
                    length = 0
                    x = s
                    while not seen[x]:
                        seen[x] = True
                        x = row[x]
                        length += 1
                    o = math.lcm(o, length)
                orders[i] = o
            self._orders = orders
        return self._orders

    def cayley_table(self):
        """Full n x n multiplication table (index of row-elt * col-elt)."""
        self._ensure()
        if self._cayley is None:
            n = self.order
            out = np.empty((n, n), dtype=np.int32)
            for j in range(n):
                prods = self._table[j][self._table]  # all i: (i then j)
                out[:, j] = self.index_of_rows(prods)
            self._cayley = out
        return self._cayley

    # -- conjugacy ---------------------------------------------------------

    def conjugacy_classes(self):
        """Partition of element indices into conjugacy classes."""
        self._ensure()
        if self._classes is None:
            n = self.order
            class_of = np.full(n, -1, dtype=np.int64)
            classes = []
            gen_idx = [self.index_of(g) for g in self.generators]
            gen_pairs = [(g, self.inv_idx(g)) for g in gen_idx]
            for start in range(n):
                if class_of[start] >= 0:
                    continue
                cid = len(classes)
                orbit = [start]
                class_of[start] = cid
                k = 0
                while k < len(orbit):
                    x = orbit[k]
                    k += 1
                    for g, ginv in gen_pairs:
                        y = self.mul_idx(self.mul_idx(ginv, x), g)
                        if class_of[y] < 0:
                            class_of[y] = cid
                            orbit.append(y)
                classes.append(np.array(sorted(orbit), dtype=np.int64))
            self._classes = classes
            self._class_of = class_of
        return self._classes

    def class_of(self, idx):
        self.conjugacy_classes()
        return int(self._class_of[idx])

    # -- subgroups (element-index sets) -------------------------------------

    def closure(self, idxs):
        """Subgroup generated by the given element indices (sorted array)."""
        self._ensure()
        idxs = [int(i) for i in idxs]
        member = np.zeros(self.order, dtype=bool)
        member[0] = True
        out = [0]
        frontier = [0]
        gens = [i for i in idxs if i != 0]
        for g in gens:
            if not member[g]:
                member[g] = True
                out.append(g)
                frontier.append(g)
        frontier = list(out)
        while frontier:
            fr = np.array(frontier, dtype=np.int64)
            frontier = []
            for g in gens:
                prods = self.mul_rows(fr, g)
                for y in prods:
                    if not member[y]:
                        member[y] = True
                        out.append(int(y))
                        frontier.append(int(y))
        return np.array(sorted(out), dtype=np.int64)

    def greedy_generators(self, idxs):
        """A small generating list for the subgroup given by ``idxs``."""
        target = set(int(i) for i in idxs)
        gens = []
        have = {0}
        for i in sorted(target, key=lambda j: -int(self.element_orders()[j])):
            if i in have:
                continue
            gens.append(i)
            have = set(int(x) for x in self.closure(gens))
            if have == target:
                break
        return gens

    def subgroup_as_group(self, idxs, name=None):
        gens = self.greedy_generators(idxs)
        g = PermGroup(self.degree, [self.element(i) for i in gens],
                      name=name, cap=self.cap)
        g._ensure()
        assert g.order == len(idxs)
        return g

    def is_subgroup_set(self, idxs):
        idxs = np.asarray(sorted(int(i) for i in idxs), dtype=np.int64)
        cl = self.closure(idxs)
        return len(cl) == len(idxs) and (cl == idxs).all()

    def is_normal(self, idxs):
        self._ensure()
        member = np.zeros(self.order, dtype=bool)
        member[np.asarray(list(idxs), dtype=np.int64)] = True
        sub_gens = self.greedy_generators(idxs)
        for g in self.generators:
            gi = self.index_of(g)
            for s in sub_gens:
                if not member[self.conj_idx(s, gi)]:
                    return False
        return True

    def normal_closure(self, idxs, extra=()):
        """Smallest normal subgroup containing ``idxs`` (and ``extra``)."""
        self._ensure()
        gen_idx = [self.index_of(g) for g in self.generators]
        current = self.closure(list(idxs) + list(extra))
        while True:
            member = np.zeros(self.order, dtype=bool)
            member[current] = True
            new = []
            for s in self.greedy_generators(current):
                for g in gen_idx:
                    c = self.conj_idx(s, g)
                    if not member[c]:
                        new.append(c)
            if not new:
                return current
            current = self.closure(list(current) + new)

    def centralizer(self, idxs):
        """Indices of elements commuting with every element of ``idxs``."""
        self._ensure()
        n = self.order
        T = self._table
        mask = np.ones(n, dtype=bool)
        gens = self.greedy_generators(idxs) if self.is_subgroup_set(idxs) else [
            int(i) for i in idxs
        ]
        if not gens:
            gens = [0]
        for s in gens:
            s_row = T[s]
            left = s_row[T]          # g then s
            right = T[:, s_row]      # s then g
            mask &= (left == right).all(axis=1)
        return np.nonzero(mask)[0].astype(np.int64)

    def normalizer(self, idxs):
        """Indices of g with g^-1 S g = S (S a subgroup given by indices)."""
        self._ensure()
        n = self.order
        member = np.zeros(n, dtype=bool)
        member[np.asarray(list(idxs), dtype=np.int64)] = True
        gens = self.greedy_generators(idxs)
        if not gens:
            return np.arange(n, dtype=np.int64)
        T = self._table
        mask = np.ones(n, dtype=bool)
        inv_all = self._inv
        for s in gens:
            s_row = T[s]
            a = s_row[T[inv_all]]  # images of (g^-1 then s), one row per g
            rows = np.take_along_axis(T, a.astype(np.int64), axis=1)  # then g
            idx = self.index_of_rows(rows)
            mask &= member[idx]
        return np.nonzero(mask)[0].astype(np.int64)

    # -- normal structure ---------------------------------------------------

    def o_p_prime(self, p):
        """Largest normal subgroup of order coprime to p.

        Join of all normal closures of p'-element classes that stay p'.
        """
        if not is_prime(p):
            raise NotPrime(str(p))
        self._ensure()
        orders = self.element_orders()
        good = []
        for cls in self.conjugacy_classes():
            rep = int(cls[0])
            if rep == 0 or orders[rep] % p == 0:
                continue
            closure = self.normal_closure([rep])
            if len(closure) % p != 0:
                good.append(closure)
        if not good:
            return np.array([0], dtype=np.int64)
        joined = self.closure(np.concatenate(good))
        assert len(joined) % p != 0, "join of normal p'-subgroups must be p'"
        assert self.is_normal(joined)
        return joined

    def least_normal_over(self, over):
        """All minimal normal subgroups strictly containing ``over``."""
        self._ensure()
        over = np.asarray(sorted(int(i) for i in over), dtype=np.int64)
        if len(over) == self.order:
            raise NoneExists("no normal subgroup strictly above the whole group")
        member = np.zeros(self.order, dtype=bool)
        member[over] = True
        candidates = []
        seen_sizes = {}
        for cls in self.conjugacy_classes():
            rep = int(cls[0])
            if member[rep]:
                continue
            n_sub = self.normal_closure([rep], extra=over)
            key = n_sub.tobytes()
            if key not in seen_sizes:
                seen_sizes[key] = n_sub
        subs = sorted(seen_sizes.values(), key=len)
        minimal = []
        for cand in subs:
            cand_set = set(int(x) for x in cand)
            if not any(set(int(x) for x in m) <= cand_set for m in minimal):
                minimal.append(cand)
        return minimal

    def chief_series(self):
        """Ascending chief series; returns (subgroups, factor_orders).

        subgroups[0] = {e}, subgroups[-1] = G; each factor is a minimal
        normal subgroup of the quotient by the previous term.
        """
        self._ensure()
        series = [np.array([0], dtype=np.int64)]
        factors = []
        # work with quotient chain, pulling back through coset maps
        current_group = self
        # maps element-of-self -> element index in current quotient
        to_current = np.arange(self.order, dtype=np.int64)
        while current_group.order > 1:
            minimals = current_group.least_normal_over([0])
            nsub = minimals[0]
            factors.append(len(nsub))
            in_n = np.zeros(current_group.order, dtype=bool)
            in_n[nsub] = True
            pulled = np.nonzero(in_n[to_current])[0].astype(np.int64)
            series.append(pulled)
            if len(nsub) == current_group.order:
                break
            quot, coset_map = current_group.quotient(nsub)
            to_current = coset_map[to_current]
            current_group = quot
        return series, factors

    def quotient(self, nsub):
        """(G/N as a PermGroup on cosets, element->coset index map)."""
        self._ensure()
        nsub = np.asarray(sorted(int(i) for i in nsub), dtype=np.int64)
        if not self.is_normal(nsub):
            raise NotNormal("quotient by a non-normal subgroup")
        n = self.order
        coset_of = np.full(n, -1, dtype=np.int64)
        reps = []
        T = self._table
        for i in range(n):
            if coset_of[i] >= 0:
                continue
            cid = len(reps)
            reps.append(i)
            rows = T[i][T[nsub]]  # n * i for all n in N  (left coset via n then i)
            idx = self.index_of_rows(rows)
            coset_of[idx] = cid
        m = len(reps)
        gen_perms = []
        rep_arr = np.array(reps, dtype=np.int64)
        for g in self.generators:
            gi = self.index_of(g)
            images = coset_of[self.mul_rows(rep_arr, gi)]
            gen_perms.append(Permutation(images))
        qname = f"{self.name}/N" if self.name else None
        quot = PermGroup(m, gen_perms, name=qname, cap=self.cap)
        quot._ensure()
        assert quot.order * len(nsub) == n
        return quot, coset_of

    # -- Sylow ---------------------------------------------------------------

    def sylow(self, p):
        if not is_prime(p):
            raise NotPrime(str(p))
        self._ensure()
        pp = p_part(self.order, p)
        orders = self.element_orders()
        if pp == 1:
            return SylowData(self, p, 1, True, 0, np.array([0], dtype=np.int64))
        max_order_elts = np.nonzero(orders == pp)[0]
        if max_order_elts.size:
            g = int(max_order_elts[0])
            sub = self.closure([g])
            return SylowData(self, p, pp, True, g, sub)
        # non-cyclic: grow a p-subgroup inside successive normalizers
        pelts = np.nonzero(orders == p)[0]
        current = self.closure([int(pelts[0])])
        while len(current) < pp:
            norm = self.normalizer(current)
            grown = False
            in_cur = np.zeros(self.order, dtype=bool)
            in_cur[current] = True
            for y in norm:
                y = int(y)
                if in_cur[y] or p_part(int(orders[y]), p) != orders[y]:
                    continue
                cand = self.closure(list(current) + [y])
                if len(cand) == p_part(len(cand), p):
                    current = cand
                    grown = True
                    break
            assert grown, "Sylow growth stalled"
        return SylowData(self, p, pp, False, None, current)

    # -- predicates ----------------------------------------------------------

    def is_p_nilpotent(self, p):
        """True iff the p'-elements are closed under composition."""
        if not is_prime(p):
            raise NotPrime(str(p))
        self._ensure()
        orders = self.element_orders()
        pprime = np.nonzero(orders % p != 0)[0].astype(np.int64)
        m = self.order // p_part(self.order, p)
        if len(pprime) != m:
            return False
        gens = self.greedy_generators_capped(pprime, m)
        if gens is None:
            return False
        cl = self.closure(gens)
        return len(cl) == m and (cl == pprime).all()

    def greedy_generators_capped(self, idxs, cap):
        target = set(int(i) for i in idxs)
        gens = []
        have = {0}
        for i in sorted(target):
            if i in have:
                continue
            gens.append(i)
            cl = self.closure(gens)
            if len(cl) > cap:
                return None
            have = set(int(x) for x in cl)
            if have == target:
                break
        return gens

    def is_p_solvable(self, p):
        if not is_prime(p):
            raise NotPrime(str(p))
        _, factors = self.chief_series()
        for f in factors:
            if f % p == 0 and p_part(f, p) != f:
                return False
        return True

    def is_simple(self):
        self._ensure()
        if self.order == 1:
            return False
        for cls in self.conjugacy_classes():
            rep = int(cls[0])
            if rep == 0:
                continue
            if len(self.normal_closure([rep])) != self.order:
                return False
        return True

    def is_abelian(self):
        self._ensure()
        gen_idx = [self.index_of(g) for g in self.generators]
        for a in gen_idx:
            for b in gen_idx:
                if self.mul_idx(a, b) != self.mul_idx(b, a):
                    return False
        return True

    def derived_subgroup(self):
        self._ensure()
        gen_idx = [self.index_of(g) for g in self.generators]
        comms = []
        for a in gen_idx:
            for b in gen_idx:
                ab = self.mul_idx(a, b)
                ba = self.mul_idx(b, a)
                comms.append(self.mul_idx(self.inv_idx(ba), ab))
        return self.normal_closure(comms)

    def __repr__(self):
        label = self.name or "PermGroup"
        if self._table is not None:
            return f"<{label}: degree {self.degree}, order {self.order}>"
        return f"<{label}: degree {self.degree}, not enumerated>"


@dataclass
class SylowData:
    """Sylow p-subgroup summary; ``cyclic`` is decided by max-p-order search."""

    group: PermGroup
    p: int
    p_part: int
    cyclic: bool
    generator_idx: int | None
    subgroup_idxs: np.ndarray

    def __post_init__(self):
        assert len(self.subgroup_idxs) == self.p_part

    @property
    def generator(self):
        if self.generator_idx is None or self.p_part == 1:
            return None
        return self.group.element(self.generator_idx)

    @property
    def subgroup_elements(self):
        return {self.group.element(int(i)) for i in self.subgroup_idxs}


def direct_product(a: PermGroup, b: PermGroup, name=None) -> PermGroup:
    """Direct product acting on the disjoint union of the two point sets."""
    deg = a.degree + b.degree
    gens = []
    for g in a.generators:
        gens.append(Permutation(list(g.images) + list(range(a.degree, deg))))
    for g in b.generators:
        gens.append(Permutation(list(range(a.degree)) + [a.degree + x for x in g.images]))
    cap = max(a.cap, b.cap)
    return PermGroup(deg, gens, name=name, cap=cap)
