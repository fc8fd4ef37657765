"""Identification of simple groups by order, up to order 2*10^4.

Within that range the only order coincidences among simple groups are
honest isomorphisms (order 60 and 168 and 360 coincidences), so the
identification is exact with full alias closure. Above the range (where
the first non-isomorphic coincidence lives, at 20160) the answer is
Unknown (None) rather than a guess.
"""

from __future__ import annotations

from .families import (
    ALTERNATING,
    CYCLIC,
    PSL2,
    PSL3,
    PSU3,
    SPORADIC,
    SimpleId,
)
from .permgroup import is_prime

IDENTIFY_LIMIT = 20_000

_PRIME_POWERS_LE_32 = [4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]


def _build_table():
    table = {}

    def put(sid):
        if sid.order <= IDENTIFY_LIMIT:
            table.setdefault(sid.order, set()).add(sid)

    for q in _PRIME_POWERS_LE_32:
        put(SimpleId(PSL2, (q,)))
    for q in (2, 3):
        put(SimpleId(PSL3, (q,)))
    put(SimpleId(PSU3, (3,)))
    for n in (5, 6, 7):
        put(SimpleId(ALTERNATING, (n,)))
    put(SimpleId(SPORADIC, ("M11",)))
    return {k: frozenset(v) for k, v in table.items()}


_TABLE = _build_table()


def identify_simple(order, group=None):
    """All known simple-group presentations of the given order.

    Returns a frozenset of SimpleId (empty when no simple group of that
    order exists in range), or None for Unknown (order beyond the table).
    The optional group, when provided, is sanity-checked for simplicity.
    """
    order = int(order)
    if group is not None and group.order <= 20000:
        assert group.order == order
        assert group.is_simple(), "identify_simple expects a simple group"
    if is_prime(order):
        return frozenset({SimpleId(CYCLIC, (order,))})
    if order > IDENTIFY_LIMIT:
        return None
    return _TABLE.get(order, frozenset())


def alias_labels(order):
    ids = identify_simple(order)
    if ids is None:
        return None
    return sorted(s.label() for s in ids)
