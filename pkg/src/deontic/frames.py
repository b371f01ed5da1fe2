"""Frame conditions on finite neighbourhood frames and schema validity.

Only the frame part of a model (worlds plus the two neighbourhood
functions) is consulted here.  Every condition quantifies its set
variables over *all* subsets of W, so a check costs up to 2^|W| per
variable; the four-variable conditions are restructured internally into
two-variable loops with precomputed subset predicates.  Intended for
|W| <= 5, which covers every bundled fixture.

Schema validity on a finite frame is decided by assigning every
metavariable every subset of W as its truth set and evaluating the
abstracted formula at every world.  This is sound and complete on finite
frames because every subset is the truth set of some atom under some
valuation based on the frame.

The three rule-shaped conditions pair an inference rule with a frame
condition.  Each one restricts its axiom-shaped counterpart: fixing the
auxiliary set variable as the complement of the obligation-side set (or
as the permitted set itself, for the weak-permission guards) recovers
the axiom condition, so a frame satisfying a rule condition always
satisfies the matching axiom condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Iterable

from .formula import (
    And, Atom, Bottom, Formula, Iff, Implies, Not, Obl, Or, PermS, PermW,
    Schema, Top, atoms,
)
from .model import NeighbourhoodModel, WorldSet

__all__ = [
    "FrameProperty", "PropertyWitness", "SchemaViolation",
    "check_property", "recheck_witness", "classify_frame",
    "schema_valid_on_frame", "rule_valid_on_frame", "RULE_PROPERTIES",
    "supplementation_closure", "entailment_closure", "PROPERTY_ENTAILMENTS",
]


class FrameProperty(Enum):
    O_SUPPLEMENTED = "OSupplemented"
    P_SUPPLEMENTED = "PSupplemented"
    PW_COHERENT = "PwCoherent"
    PS_COHERENT = "PsCoherent"
    AFCP_O = "AFCPO"
    AFCP_P = "AFCPP"
    AFCP2_P = "AFCP2P"
    IFCP_O = "IFCPO"
    IFCP_P = "IFCPP"
    IFCP2_P = "IFCP2P"

    @classmethod
    def from_name(cls, text: str) -> "FrameProperty":
        for member in cls:
            if text == member.value or text.upper() == member.name:
                return member
        known = ", ".join(member.value for member in cls)
        raise ValueError(f"unknown frame property {text!r} (known: {known})")


@dataclass(frozen=True)
class PropertyWitness:
    """Concrete sets exhibiting a violation of a frame condition at a world."""

    prop: FrameProperty
    world: str
    x: WorldSet | None = None
    y: WorldSet | None = None
    z: WorldSet | None = None
    q: WorldSet | None = None


@dataclass
class SchemaViolation:
    """Subset assignment to metavariables plus a world falsifying the schema."""

    assignment: dict[str, WorldSet]
    world: str


class _Bits:
    """Bitmask view of a model's frame part; world i is bit i."""

    def __init__(self, m: NeighbourhoodModel):
        self.worlds = m.worlds
        self.n = len(m.worlds)
        self.full = (1 << self.n) - 1
        index = {w: i for i, w in enumerate(m.worlds)}
        self._index = index
        self.n_obl = [
            frozenset(self._mask(s) for s in m.n_obl[w]) for w in m.worlds
        ]
        self.n_perm = [
            frozenset(self._mask(s) for s in m.n_perm[w]) for w in m.worlds
        ]

    def _mask(self, s: WorldSet) -> int:
        mask = 0
        for w in s:
            mask |= 1 << self._index[w]
        return mask

    def set_of(self, mask: int) -> WorldSet:
        return frozenset(w for i, w in enumerate(self.worlds) if mask >> i & 1)


def _pw_subset_witness(b: _Bits, no: frozenset[int]) -> list[int | None]:
    # For each mask X, the first Z <= X with complement(Z) not obligatory, if any.
    out: list[int | None] = []
    for x in range(b.full + 1):
        found = None
        for z in range(x + 1):
            if z & x == z and (b.full ^ z) not in no:
                found = z
                break
        out.append(found)
    return out


def _find_violation(b: _Bits, prop: FrameProperty, wi: int) -> tuple | None:
    no, np = b.n_obl[wi], b.n_perm[wi]
    full = b.full
    masks = range(full + 1)

    if prop is FrameProperty.O_SUPPLEMENTED or prop is FrameProperty.P_SUPPLEMENTED:
        col = no if prop is FrameProperty.O_SUPPLEMENTED else np
        for member in sorted(col):
            for x in masks:
                if x & member == member and x not in col:
                    return (x, member, None, None)
        return None

    if prop is FrameProperty.PW_COHERENT:
        for x in sorted(no):
            if (full ^ x) in no:
                return (x, None, None, None)
        return None

    if prop is FrameProperty.PS_COHERENT:
        for x in sorted(np):
            if (full ^ x) in no:
                return (x, None, None, None)
        return None

    if prop is FrameProperty.AFCP_O:
        for obligatory in sorted(no):
            y = full ^ obligatory
            for x in masks:
                if (x | y) in np and x not in np:
                    return (x, y, None, None)
        return None

    if prop is FrameProperty.AFCP_P:
        for x in masks:
            if (full ^ x) in no:
                continue
            for y in masks:
                if (x | y) in np and (full ^ y) not in no and (x not in np or y not in np):
                    return (x, y, None, None)
        return None

    if prop is FrameProperty.AFCP2_P:
        for x in masks:
            if x in np or (full ^ x) in no:
                continue
            for y in masks:
                if (x | y) in np:
                    return (x, y, None, None)
        return None

    if prop is FrameProperty.IFCP_O:
        if not no:
            return None
        for x in masks:
            if x in np:
                continue
            for y in masks:
                if (x | y) not in np:
                    continue
                for z in sorted(no):
                    if z & y == 0:
                        return (x, y, z, None)
        return None

    if prop is FrameProperty.IFCP_P:
        pw_sub = _pw_subset_witness(b, no)
        for x in masks:
            if pw_sub[x] is None:
                continue
            for y in masks:
                if pw_sub[y] is None:
                    continue
                if (x | y) in np and (x not in np or y not in np):
                    return (x, y, pw_sub[x], pw_sub[y])
        return None

    if prop is FrameProperty.IFCP2_P:
        pw_sub = _pw_subset_witness(b, no)
        for x in masks:
            if x in np or pw_sub[x] is None:
                continue
            for y in masks:
                if (x | y) in np:
                    return (x, y, pw_sub[x], None)
        return None

    raise ValueError(f"unhandled frame property {prop!r}")


def check_property(m: NeighbourhoodModel, prop: FrameProperty) -> PropertyWitness | None:
    """None iff the condition holds at every world; otherwise a concrete witness."""
    b = _Bits(m)
    for wi, w in enumerate(m.worlds):
        hit = _find_violation(b, prop, wi)
        if hit is not None:
            x, y, z, q = hit
            return PropertyWitness(
                prop,
                w,
                b.set_of(x) if x is not None else None,
                b.set_of(y) if y is not None else None,
                b.set_of(z) if z is not None else None,
                b.set_of(q) if q is not None else None,
            )
    return None


def recheck_witness(m: NeighbourhoodModel, wit: PropertyWitness) -> bool:
    """Substitute a witness into the raw condition: antecedent true, consequent false.

    Formulated directly on world sets, independently of the bitmask search.
    """
    w_all = frozenset(m.worlds)
    no = m.n_obl[wit.world]
    np_ = m.n_perm[wit.world]
    x, y, z, q = wit.x, wit.y, wit.z, wit.q

    match wit.prop:
        case FrameProperty.O_SUPPLEMENTED:
            return (x & y) in no and not (x in no and y in no)
        case FrameProperty.P_SUPPLEMENTED:
            return (x & y) in np_ and not (x in np_ and y in np_)
        case FrameProperty.PW_COHERENT:
            return x in no and (w_all - x) in no
        case FrameProperty.PS_COHERENT:
            return x in np_ and (w_all - x) in no
        case FrameProperty.AFCP_O:
            return (x | y) in np_ and (w_all - y) in no and x not in np_
        case FrameProperty.AFCP_P:
            return (
                (x | y) in np_
                and (w_all - x) not in no
                and (w_all - y) not in no
                and not (x in np_ and y in np_)
            )
        case FrameProperty.AFCP2_P:
            return (x | y) in np_ and (w_all - x) not in no and x not in np_
        case FrameProperty.IFCP_O:
            return (x | y) in np_ and z <= (w_all - y) and z in no and x not in np_
        case FrameProperty.IFCP_P:
            return (
                (x | y) in np_
                and z <= x
                and q <= y
                and (w_all - z) not in no
                and (w_all - q) not in no
                and not (x in np_ and y in np_)
            )
        case FrameProperty.IFCP2_P:
            return (
                (x | y) in np_
                and z <= x
                and (w_all - z) not in no
                and x not in np_
            )
    raise ValueError(f"unhandled frame property {wit.prop!r}")


def classify_frame(m: NeighbourhoodModel) -> set[FrameProperty]:
    """Exactly the properties whose condition holds on this frame."""
    return {p for p in FrameProperty if check_property(m, p) is None}


# Provable implications between the conditions, as (premises, conclusion).
# The rule-shaped conditions restrict their axiom-shaped counterparts
# (instantiate the auxiliary variable as the complement of the second set,
# or as the whole first set); P-supplementation closes the gap in the
# other direction because it lets a detached subset be inflated back to
# the set of interest.  Each fact has a direct set-theoretic proof and is
# re-verified exhaustively on small frames in the test suite.
PROPERTY_ENTAILMENTS: tuple[tuple[frozenset[FrameProperty], FrameProperty], ...] = (
    (frozenset({FrameProperty.IFCP_O}), FrameProperty.AFCP_O),
    (frozenset({FrameProperty.IFCP_P}), FrameProperty.AFCP_P),
    (frozenset({FrameProperty.IFCP2_P}), FrameProperty.AFCP2_P),
    (frozenset({FrameProperty.AFCP2_P}), FrameProperty.AFCP_P),
    (frozenset({FrameProperty.IFCP2_P}), FrameProperty.IFCP_P),
    (frozenset({FrameProperty.P_SUPPLEMENTED, FrameProperty.AFCP_O}), FrameProperty.IFCP_O),
    (frozenset({FrameProperty.P_SUPPLEMENTED, FrameProperty.AFCP2_P}), FrameProperty.IFCP2_P),
    (
        frozenset({FrameProperty.P_SUPPLEMENTED, FrameProperty.AFCP_O, FrameProperty.AFCP_P}),
        FrameProperty.IFCP_P,
    ),
)


def entailment_closure(props: Iterable[FrameProperty]) -> frozenset[FrameProperty]:
    """Close a property set under the provable implications between conditions."""
    out = set(props)
    changed = True
    while changed:
        changed = False
        for premises, conclusion in PROPERTY_ENTAILMENTS:
            if conclusion not in out and premises <= out:
                out.add(conclusion)
                changed = True
    return frozenset(out)


def _truth_mask(f: Formula, env: dict[str, int], b: _Bits) -> int:
    match f:
        case Atom(name):
            return env.get(name, 0)
        case Top():
            return b.full
        case Bottom():
            return 0
        case Not(x):
            return b.full ^ _truth_mask(x, env, b)
        case And(l, r):
            return _truth_mask(l, env, b) & _truth_mask(r, env, b)
        case Or(l, r):
            return _truth_mask(l, env, b) | _truth_mask(r, env, b)
        case Implies(l, r):
            return (b.full ^ _truth_mask(l, env, b)) | _truth_mask(r, env, b)
        case Iff(l, r):
            lm, rm = _truth_mask(l, env, b), _truth_mask(r, env, b)
            return b.full ^ (lm ^ rm)
        case Obl(x):
            xm = _truth_mask(x, env, b)
            mask = 0
            for i, col in enumerate(b.n_obl):
                if xm in col:
                    mask |= 1 << i
            return mask
        case PermS(x):
            xm = _truth_mask(x, env, b)
            mask = 0
            for i, col in enumerate(b.n_perm):
                if xm in col:
                    mask |= 1 << i
            return mask
        case PermW(x):
            xm = _truth_mask(x, env, b)
            mask = 0
            for i, col in enumerate(b.n_obl):
                if (b.full ^ xm) not in col:
                    mask |= 1 << i
            return mask
    raise TypeError(f"not a formula: {f!r}")


def schema_valid_on_frame(m: NeighbourhoodModel, s: Schema) -> SchemaViolation | None:
    """Frame validity of a pure schema, by quantifying metavariables over all subsets of W.

    Returns None when valid, otherwise the falsifying subset assignment and world.
    """
    concrete = atoms(s.body) - s.metavars
    if concrete:
        names = ", ".join(sorted(concrete))
        raise ValueError(f"schema contains concrete atoms ({names}); frame validity needs a pure schema")
    b = _Bits(m)
    variables = sorted(s.metavars & atoms(s.body))
    for assignment in product(range(b.full + 1), repeat=len(variables)):
        env = dict(zip(variables, assignment))
        mask = _truth_mask(s.body, env, b)
        if mask != b.full:
            world = next(w for i, w in enumerate(m.worlds) if not mask >> i & 1)
            return SchemaViolation({v: b.set_of(env[v]) for v in variables}, world)
    return None


RULE_PROPERTIES = {
    "IFCP_O": FrameProperty.IFCP_O,
    "IFCP_P": FrameProperty.IFCP_P,
    "IFCP2_P": FrameProperty.IFCP2_P,
}


def rule_valid_on_frame(m: NeighbourhoodModel, rule: str) -> SchemaViolation | None:
    """Validity of a guarded-permission inference rule on a finite frame.

    A rule is valid iff for all subset assignments and worlds: when the
    premise holds at the world and each side-condition implication is true
    at every world under the assignment (a set inclusion), the conclusion
    holds at the world.  This coincides with the matching rule-shaped frame
    condition; a violation is reported as an assignment to the rule's
    schematic letters.
    """
    try:
        prop = RULE_PROPERTIES[rule]
    except KeyError:
        known = ", ".join(sorted(RULE_PROPERTIES))
        raise ValueError(f"unknown rule {rule!r} (known: {known})") from None
    wit = check_property(m, prop)
    if wit is None:
        return None
    if rule == "IFCP_O":
        assignment = {"p": wit.y, "q": wit.x, "r": wit.z}
    elif rule == "IFCP_P":
        assignment = {"p": wit.x, "q": wit.y, "r": wit.z, "s": wit.q}
    else:
        assignment = {"p": wit.x, "q": wit.y, "r": wit.z}
    return SchemaViolation(assignment, wit.world)


def supplementation_closure(m: NeighbourhoodModel, which: str) -> NeighbourhoodModel:
    """Close each neighbourhood of the chosen function under supersets.

    ``which`` is "O" or "Ps".  The result is the smallest superset-closed
    collection containing each N(w); the operation is extensive and
    idempotent.
    """
    if which not in ("O", "Ps"):
        raise ValueError(f"which must be 'O' or 'Ps', got {which!r}")
    w_all = frozenset(m.worlds)

    def close(col):
        out = set()
        for s in col:
            rest = sorted(w_all - s)
            for k in range(len(rest) + 1):
                for extra in combinations(rest, k):
                    out.add(s | frozenset(extra))
        return frozenset(out)

    if which == "O":
        new_obl = {w: close(m.n_obl[w]) for w in m.worlds}
        return NeighbourhoodModel(m.worlds, new_obl, dict(m.n_perm), dict(m.valuation))
    new_perm = {w: close(m.n_perm[w]) for w in m.worlds}
    return NeighbourhoodModel(m.worlds, dict(m.n_obl), new_perm, dict(m.valuation))
