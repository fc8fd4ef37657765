"""The seriality decision pipeline for a concrete group and prime.

The pipeline applies proven reductions in a fixed order, dropping to the
linear-algebra oracle (or to a conjecture-qualified status) only when
the structural rules run out. A verdict is Serial or NotSerial only when
every step of its reason chain is proven or comes from the oracle; the
unproven lifting direction is reported as SerialUnderConjecture, never
as plain Serial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import oracle as oracle_mod
from .families import theorem_verdict
from .groupspec import parse_spec
from .identify import identify_simple
from .permgroup import CapExceeded, PermGroup, is_prime, p_part

SERIAL = "Serial"
NOT_SERIAL = "NotSerial"
SERIAL_UNDER_CONJECTURE = "SerialUnderConjecture"
UNKNOWN = "Unknown"

# rule registry: fixed ids with provenance tags
RULES = {
    "maschke-semisimple": "proven",
    "sylow-not-cyclic": "proven",
    "cyclic-two-sylow": "proven",
    "normal-p-complement": "proven",
    "p-solvable": "proven",
    "coprime-index-reduction": "proven",
    "simple-group-classification": "proven",
    "simple-quotient-not-serial": "proven",
    "small-three-sylow-lift": "asserted",
    "oracle": "oracle",
    "conjectural-lift": "conjectural",
    "simple-quotient-unidentified": "conjectural",
}


@dataclass(frozen=True)
class ReasonStep:
    rule: str
    detail: str
    provenance: str

    def to_dict(self):
        return {"rule": self.rule, "detail": self.detail, "provenance": self.provenance}


def _step(rule, detail):
    return ReasonStep(rule, detail, RULES[rule])


@dataclass
class SerialityVerdict:
    group: str
    p: int
    status: str
    reasons: list
    snapshot: dict = field(default_factory=dict)
    oracle_report: dict | None = None
    seed: int = oracle_mod.DEFAULT_SEED

    def to_dict(self):
        return {
            "group": self.group,
            "p": self.p,
            "status": self.status,
            "reasons": [r.to_dict() for r in self.reasons],
            "snapshot": self.snapshot,
            "oracle_report": self.oracle_report,
            "seed": self.seed,
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        reasons = [ReasonStep(**r) for r in d["reasons"]]
        return cls(d["group"], d["p"], d["status"], reasons, d["snapshot"],
                   d.get("oracle_report"), d.get("seed", oracle_mod.DEFAULT_SEED))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        return isinstance(other, SerialityVerdict) and self.to_dict() == other.to_dict()


def _oracle_verdict(G, p, seed):
    A = oracle_mod.build_algebra(G, p, cap=10**9)  # cap enforced by caller
    rep = oracle_mod.is_serial(A, seed=seed)
    return rep


def decide(group, p, oracle_mode="auto", oracle_cap=oracle_mod.ORACLE_CAP,
           seed=oracle_mod.DEFAULT_SEED, _depth=0) -> SerialityVerdict:
    """Decide seriality of F_p G with proven-only structural inference.

    oracle_mode: "auto" runs the oracle when |G| fits under oracle_cap and
    the structural rules did not settle the verdict; "force" demands it
    (CapExceeded if too big); "off" never runs it.
    """
    if isinstance(group, str):
        group = parse_spec(group)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    G = group
    name = G.name or f"<degree {G.degree}>"
    n = G.order
    reasons = []
    snapshot = {"order": n, "p": p}

    def verdict(status, oracle_report=None):
        return SerialityVerdict(name, p, status, reasons, snapshot,
                                oracle_report, seed)

    def run_oracle_if(allowed):
        if oracle_mode == "off" or not allowed:
            return None
        if n > oracle_cap:
            if oracle_mode == "force":
                raise CapExceeded(n)
            return None
        rep = _oracle_verdict(G, p, seed)
        return rep

    # (1) coprime order
    if n % p != 0:
        reasons.append(_step("maschke-semisimple",
                             f"p = {p} does not divide |G| = {n}"))
        return verdict(SERIAL)

    syl = G.sylow(p)
    snapshot["sylow_order"] = syl.p_part
    snapshot["sylow_cyclic"] = syl.cyclic

    # (2) non-cyclic Sylow
    if not syl.cyclic:
        reasons.append(_step("sylow-not-cyclic",
                             f"Sylow {p}-subgroup of order {syl.p_part} is not cyclic"))
        return verdict(NOT_SERIAL)

    from .brauer import principal_block_data

    e0, m0 = principal_block_data(G, p)
    snapshot["e0"] = e0
    snapshot["m0"] = m0

    # (3) p = 2 with cyclic Sylow
    if p == 2:
        reasons.append(_step("cyclic-two-sylow",
                             "cyclic Sylow 2-subgroup forces a normal 2-complement"))
        return verdict(SERIAL)

    # (4) normal p-complement
    if G.is_p_nilpotent(p):
        snapshot["p_nilpotent"] = True
        reasons.append(_step("normal-p-complement",
                             f"the {p}'-elements form a normal complement"))
        return verdict(SERIAL)
    snapshot["p_nilpotent"] = False

    # (5) p-solvable
    if G.is_p_solvable(p):
        snapshot["p_solvable"] = True
        reasons.append(_step("p-solvable",
                             f"all chief factors are {p}-groups or {p}'-groups"))
        return verdict(SERIAL)
    snapshot["p_solvable"] = False

    # (6)/(7) the normal series O_{p'} < K <= G
    O = G.o_p_prime(p)
    snapshot["o_p_prime_order"] = len(O)
    minimals = G.least_normal_over(O)
    assert len(minimals) == 1, \
        "least normal subgroup over O_{p'} must be unique when not p-solvable"
    K = minimals[0]
    sylow_in_k = all(int(i) in set(int(x) for x in K) for i in syl.subgroup_idxs)
    assert sylow_in_k, "K must contain the Sylow p-subgroup"

    if len(K) < n:
        reasons.append(_step(
            "coprime-index-reduction",
            f"normal subgroup of order {len(K)} contains the Sylow {p}-subgroup "
            f"with index {n // len(K)} coprime to {p}"))
        assert (n // len(K)) % p != 0
        sub = G.subgroup_as_group(K, name=f"{name}|K")
        inner = decide(sub, p, oracle_mode=oracle_mode, oracle_cap=oracle_cap,
                       seed=seed, _depth=_depth + 1)
        reasons.extend(inner.reasons)
        snapshot["reduced_to_order"] = len(K)
        snapshot.update({k: v for k, v in inner.snapshot.items()
                         if k not in snapshot})
        return verdict(inner.status, inner.oracle_report)

    # K = G: pass to the simple quotient H = G / O_{p'}
    if len(O) == 1:
        H_group = G
        quotient_built = False
    else:
        H_group, _ = G.quotient(O)
        quotient_built = True
    h_order = H_group.order
    assert H_group.is_simple() and not H_group.is_abelian(), \
        "K/O_{p'} must be simple non-abelian"
    ids = identify_simple(h_order)
    snapshot["h_order"] = h_order
    snapshot["h_identified"] = sorted(s.label() for s in ids) if ids else None

    if not ids:
        reasons.append(_step("simple-quotient-unidentified",
                             f"simple quotient of order {h_order} outside the table"))
        rep = run_oracle_if(True)
        if rep is not None:
            reasons.append(_step("oracle", _oracle_detail(rep)))
            return verdict(SERIAL if rep.serial else NOT_SERIAL, rep.to_dict())
        return verdict(UNKNOWN)

    sid = next(iter(ids))
    tv = theorem_verdict(sid, p)
    snapshot["h_rule"] = tv.rule
    snapshot["h_serial"] = tv.serial

    if not quotient_built:
        # G itself is the simple group: the classification applies directly
        reasons.append(_step(
            "simple-group-classification",
            f"{'/'.join(snapshot['h_identified'])}: rule {tv.rule} -> "
            f"{'serial' if tv.serial else 'not serial'}"))
        return verdict(SERIAL if tv.serial else NOT_SERIAL)

    if not tv.serial:
        reasons.append(_step(
            "simple-quotient-not-serial",
            f"F_{p}[{'/'.join(snapshot['h_identified'])}] is not serial and is a "
            f"factor ring of F_{p} G"))
        return verdict(NOT_SERIAL)

    # (8) the asserted small-Sylow lift
    if p == 3 and syl.p_part == 3:
        reasons.append(_step(
            "small-three-sylow-lift",
            "p = 3 with |P| = 3: exceptional multiplicity (3-1)/2 = 1 lifts "
            "seriality from the simple quotient"))
        return verdict(SERIAL)

    # (9) oracle
    rep = run_oracle_if(True)
    if rep is not None:
        reasons.append(_step("oracle", _oracle_detail(rep)))
        return verdict(SERIAL if rep.serial else NOT_SERIAL, rep.to_dict())

    # (10) conjecture-qualified
    reasons.append(_step(
        "conjectural-lift",
        f"F_{p}[{'/'.join(snapshot['h_identified'])}] is serial; lifting along "
        "the normal series is the unproven direction"))
    return verdict(SERIAL_UNDER_CONJECTURE)


def _oracle_detail(rep):
    return (f"dim {rep.dim}: radical dim {rep.radical_dim}, blocks {rep.block_dims}, "
            f"serial={rep.serial} (seed {rep.seed})")


def decide_spec(spec, p, **kw):
    return decide(parse_spec(spec), p, **kw)
