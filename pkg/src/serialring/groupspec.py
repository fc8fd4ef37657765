"""GroupSpec grammar and the built-in group constructors.

Spec strings
------------
``perm:<degree>:<cycles>;<cycles>;...``
    explicit generators in 1-based cycle notation, e.g.
    ``perm:5:(1,2,3,4,5);(1,2,3)``. An empty generator list gives the
    trivial group of the stated degree.

``name:<catalog-name>``
    built-ins: ``Cn`` (cyclic), ``Dn`` (dihedral of order n, n even),
    ``Sn``/``An`` (symmetric/alternating), ``PSL2(q)`` acting on the
    projective line, ``SL2(q)`` acting on nonzero vectors (prime powers
    q <= 32), ``2.S4-`` (the double cover of S4 with a unique
    involution), ``M11``, and direct products joined with ``x`` (or the
    times sign), e.g. ``C2xA5``.

Generator files for the shipped sporadic/cover groups live in
``data/*.spec`` and hold plain spec strings; they are validated by order
(and simplicity, where it applies) in the test suite.
"""

from __future__ import annotations

import re
from importlib import resources

from .fqfield import (
    binary_octahedral_action,
    factor_prime_power,
    projective_line_action,
    sl2_vector_action,
)
from .permgroup import DEFAULT_CAP, PermGroup, Permutation


class ParseError(ValueError):
    pass


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycles(text, degree):
    text = text.strip()
    if text in ("", "()"):
        return Permutation.identity(degree)
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        if m.start() != pos:
            raise ParseError(f"unexpected characters in cycles: {text!r}")
        pos = m.end()
        body = m.group(1).strip()
        if not body:
            continue
        try:
            pts = [int(x) - 1 for x in body.split(",")]
        except ValueError as e:
            raise ParseError(f"bad cycle {m.group(0)!r}") from e
        if any(x < 0 or x >= degree for x in pts):
            raise ParseError(f"cycle point out of range in {m.group(0)!r}")
        cycles.append(pts)
    if pos != len(text):
        raise ParseError(f"unexpected characters in cycles: {text!r}")
    try:
        return Permutation.from_cycles(cycles, degree)
    except ValueError as e:
        raise ParseError(str(e)) from e


def parse_spec(spec, cap=DEFAULT_CAP):
    """Build a PermGroup from a spec string."""
    spec = spec.strip()
    if spec.startswith("perm:"):
        rest = spec[len("perm:"):]
        head, _, gens_text = rest.partition(":")
        try:
            degree = int(head)
        except ValueError as e:
            raise ParseError(f"bad degree in {spec!r}") from e
        if degree < 1:
            raise ParseError("degree must be >= 1")
        gens = []
        for chunk in gens_text.split(";"):
            chunk = chunk.strip()
            if chunk:
                gens.append(_parse_cycles(chunk, degree))
        return PermGroup(degree, gens, name=spec, cap=cap)
    if spec.startswith("name:"):
        return build_named(spec[len("name:"):], cap=cap)
    raise ParseError(f"unknown spec scheme: {spec!r}")


# ---------------------------------------------------------------------------
# named constructors
# ---------------------------------------------------------------------------


def cyclic_group(n, cap=DEFAULT_CAP):
    if n < 1:
        raise ParseError("Cn needs n >= 1")
    if n == 1:
        return PermGroup(1, [], name="C1", cap=cap)
    return PermGroup(n, [Permutation([(i + 1) % n for i in range(n)])],
                     name=f"C{n}", cap=cap)


def dihedral_group(n, cap=DEFAULT_CAP):
    """Dihedral group of order n (n even)."""
    if n < 2 or n % 2:
        raise ParseError("Dn needs even order n >= 2")
    m = n // 2
    if m == 1:
        return PermGroup(2, [Permutation([1, 0])], name="D2", cap=cap)
    if m == 2:
        return PermGroup(4, [Permutation([1, 0, 2, 3]), Permutation([0, 1, 3, 2])],
                         name="D4", cap=cap)
    rot = Permutation([(i + 1) % m for i in range(m)])
    ref = Permutation([(m - i) % m for i in range(m)])
    return PermGroup(m, [rot, ref], name=f"D{n}", cap=cap)


def symmetric_group(n, cap=DEFAULT_CAP):
    if n < 1:
        raise ParseError("Sn needs n >= 1")
    if n == 1:
        return PermGroup(1, [], name="S1", cap=cap)
    gens = [Permutation([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(Permutation([(i + 1) % n for i in range(n)]))
    return PermGroup(n, gens, name=f"S{n}", cap=cap)


def alternating_group(n, cap=DEFAULT_CAP):
    if n < 3:
        return PermGroup(max(n, 1), [], name=f"A{n}", cap=cap)
    three = Permutation.from_cycles([[0, 1, 2]], n)
    if n == 3:
        gens = [three]
    elif n % 2 == 1:
        gens = [three, Permutation([(i + 1) % n for i in range(n)])]
    else:
        cyc = [0] + [1 + (i + 1) % (n - 1) for i in range(n - 1)]
        gens = [three, Permutation(cyc)]
    return PermGroup(n, gens, name=f"A{n}", cap=cap)


def psl2_group(q, cap=DEFAULT_CAP):
    if q > 32:
        raise ParseError("PSL2(q) constructor supports q <= 32")
    perms, order = projective_line_action(q)
    g = PermGroup(q + 1, [Permutation(p) for p in perms], name=f"PSL2({q})", cap=cap)
    assert g.order == order, f"PSL2({q}) order {g.order} != {order}"
    return g


def sl2_group(q, cap=DEFAULT_CAP):
    if q > 32:
        raise ParseError("SL2(q) constructor supports q <= 32")
    perms, order = sl2_vector_action(q)
    g = PermGroup(q * q - 1, [Permutation(p) for p in perms], name=f"SL2({q})", cap=cap)
    assert g.order == order, f"SL2({q}) order {g.order} != {order}"
    return g


def binary_octahedral_group(cap=DEFAULT_CAP):
    perms, order = binary_octahedral_action()
    g = PermGroup(80, [Permutation(p) for p in perms], name="2.S4-", cap=cap)
    assert g.order == order
    return g


def _load_data_spec(fname, name, cap):
    text = resources.files("serialring.data").joinpath(fname).read_text()
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) != 1:
        raise ParseError(f"data file {fname} must hold one spec line")
    g = parse_spec(lines[0], cap=cap)
    g.name = name
    return g


_NAME_RE = re.compile(
    r"^(?:(?P<cyc>C(?P<cn>\d+))|(?P<dih>D(?P<dn>\d+))|(?P<sym>S(?P<sn>\d+))"
    r"|(?P<alt>A(?P<an>\d+))|(?P<psl>PSL2\((?P<pq>\d+)\))|(?P<sl>SL2\((?P<sq>\d+)\)))$"
)


def build_named(name, cap=DEFAULT_CAP):
    name = name.strip()
    for sep in ("×", "x"):
        if sep in name:
            parts = [p.strip() for p in name.split(sep)]
            if all(parts):
                from .permgroup import direct_product

                groups = [build_named(p, cap=cap) for p in parts]
                out = groups[0]
                for extra in groups[1:]:
                    out = direct_product(out, extra)
                out.name = name
                out.cap = cap
                if out.order > cap:
                    raise ParseError(f"direct product {name} exceeds cap")
                return out
    if name == "2.S4-":
        return binary_octahedral_group(cap=cap)
    if name == "M11":
        return _load_data_spec("m11.spec", "M11", cap)
    m = _NAME_RE.match(name)
    if not m:
        raise ParseError(f"unknown group name {name!r}")
    if m.group("cyc"):
        return cyclic_group(int(m.group("cn")), cap=cap)
    if m.group("dih"):
        return dihedral_group(int(m.group("dn")), cap=cap)
    if m.group("sym"):
        return symmetric_group(int(m.group("sn")), cap=cap)
    if m.group("alt"):
        return alternating_group(int(m.group("an")), cap=cap)
    if m.group("psl"):
        q = int(m.group("pq"))
        factor_prime_power(q)
        return psl2_group(q, cap=cap)
    if m.group("sl"):
        q = int(m.group("sq"))
        factor_prime_power(q)
        return sl2_group(q, cap=cap)
    raise ParseError(f"unknown group name {name!r}")
