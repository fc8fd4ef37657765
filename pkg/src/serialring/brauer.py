"""Brauer-tree combinatorics and principal-block numerical data.

Trees are not derived from character data here; the type encodes known
tree shapes and carries the star criterion that characterizes seriality
block by block. The principal-block pair (e0, m0) comes straight from
group data: e0 = |N_G(P) : C_G(P)| and m0 = (|P| - 1)/e0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .permgroup import PermGroup, is_prime


class SylowNotCyclic(ValueError):
    pass


class TrivialSylow(ValueError):
    pass


@dataclass(frozen=True)
class BrauerTree:
    """A finite tree with an optional exceptional vertex (multiplicity m).

    m = 1 is encoded as exceptional=None.
    """

    vertices: tuple
    edges: tuple  # pairs of vertices
    exceptional: object = None
    multiplicity: int = 1

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertices")
        for a, b in self.edges:
            if a not in vs or b not in vs:
                raise ValueError("edge endpoint not a vertex")
        if len(self.edges) != len(self.vertices) - 1:
            raise ValueError("edge count must be vertex count - 1")
        if not self._connected():
            raise ValueError("tree must be connected")
        if self.exceptional is not None and self.exceptional not in vs:
            raise ValueError("exceptional vertex not a vertex")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")
        if self.multiplicity > 1 and self.exceptional is None:
            raise ValueError("multiplicity > 1 needs an exceptional vertex")

    def _connected(self):
        if not self.vertices:
            return False
        adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def valency(self, v):
        return sum(1 for a, b in self.edges if v in (a, b))

    @classmethod
    def star(cls, edges, exceptional_center=False, multiplicity=1):
        """Star with the given number of edges, hub vertex 0."""
        vs = tuple(range(edges + 1))
        es = tuple((0, i) for i in range(1, edges + 1))
        exc = 0 if exceptional_center else None
        if multiplicity > 1 and exc is None:
            exc = 0
        return cls(vs, es, exc, multiplicity)

    @classmethod
    def line(cls, edges, exceptional=None, multiplicity=1):
        """Path with vertices 0..edges."""
        vs = tuple(range(edges + 1))
        es = tuple((i, i + 1) for i in range(edges))
        return cls(vs, es, exceptional, multiplicity)


def is_serial_star(tree: BrauerTree) -> bool:
    """Star shape with the exceptional vertex (if any) at the center.

    At most one vertex may have valency > 1; when an exceptional vertex
    is present it must be that center (any position is fine on a tree
    with at most one edge).
    """
    hubs = [v for v in tree.vertices if tree.valency(v) > 1]
    if len(hubs) > 1:
        return False
    if tree.exceptional is None:
        return True
    if len(tree.edges) <= 1:
        return True
    return bool(hubs) and tree.exceptional == hubs[0]


def principal_block_data(G: PermGroup, p):
    """(e0, m0) for the principal block: edge count and exceptional
    multiplicity, from the Sylow normalizer action."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    syl = G.sylow(p)
    if syl.p_part == 1:
        raise TrivialSylow(f"{p} does not divide |G| = {G.order}")
    if not syl.cyclic:
        raise SylowNotCyclic(f"Sylow {p}-subgroup of order {syl.p_part} is not cyclic")
    n_size = len(G.normalizer(syl.subgroup_idxs))
    c_size = len(G.centralizer(syl.subgroup_idxs))
    assert n_size % c_size == 0
    e0 = n_size // c_size
    assert (syl.p_part - 1) % e0 == 0, "edge count must divide |P| - 1"
    m0 = (syl.p_part - 1) // e0
    return e0, m0
