"""Bounded countermodel search and remainder detachment.

Two enumeration regimes share the deterministic ordering "world count
ascending, then candidates in lexicographic order":

* Formula targets walk the full model space: for each world count, all
  valuations over the given atoms in lexicographic bit order, then all
  neighbourhood collections (at most ``max_sets`` subsets each) in
  lexicographic order of sorted subset lists.  Candidates that are not
  canonical under world permutation are skipped when |W| <= 4.  This
  regime is meant for tiny bounds; its cost is the product of all three
  dimensions.

* Schema and rule targets only need frames.  Because every named schema
  and rule has modal depth one, a falsifying subset assignment at a world
  depends only on that world's two neighbourhoods, so the search
  enumerates single-world neighbourhood pairs (same lexicographic order),
  keeps the remaining worlds empty, and synthesises a valuation realising
  the falsifying assignment.  Exhaustion here is still sound: any bounded
  model falsifying the target while meeting the required properties
  contains such a pair.

Every Found result is re-verified through the public evaluator before it
is returned.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

from .formula import (
    And, Atom, Formula, Implies, Not, Obl, Or, PermS, PermW, Schema,
    atoms as formula_atoms, expand_pw, instantiate, is_tautology, modal_depth,
    render,
)
from .model import NeighbourhoodModel, WorldSet, evaluate, truth_set
from .frames import (
    RULE_PROPERTIES, FrameProperty, SchemaViolation, check_property,
    rule_valid_on_frame, schema_valid_on_frame,
)

__all__ = [
    "SearchBounds", "CountermodelReport", "SearchTimeout", "find_countermodel",
    "RemainderResult", "RemainderError", "compute_remainder",
]

HARD_WORLD_CAP = 5


class SearchTimeout(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchBounds:
    max_worlds: int
    max_sets: int
    atoms: tuple[str, ...]

    def __post_init__(self):
        if not 1 <= self.max_worlds <= HARD_WORLD_CAP:
            raise ValueError(f"max_worlds must be between 1 and {HARD_WORLD_CAP}")
        if self.max_sets < 0:
            raise ValueError("max_sets must be non-negative")


@dataclass
class CountermodelReport:
    found: bool
    model: NeighbourhoodModel | None = None
    world: str | None = None
    assignment: dict[str, WorldSet] | None = None
    instance: Formula | None = None
    examined: int = 0
    pruned_by_property: int = 0
    elapsed_secs: float = 0.0

    @property
    def outcome(self) -> str:
        return "Found" if self.found else "ExhaustedUpToBounds"


class _Clock:
    def __init__(self, timeout_secs: float | None):
        self.start = time.monotonic()
        self.deadline = None if timeout_secs is None else self.start + timeout_secs

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchTimeout("countermodel search exceeded the time budget")

    def elapsed(self) -> float:
        return time.monotonic() - self.start


def _collections(n_worlds: int, max_sets: int) -> list[tuple[int, ...]]:
    """All sorted subset lists of size <= max_sets, in lexicographic order."""
    masks = list(range(1 << n_worlds))
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], start: int):
        out.append(tuple(prefix))
        if len(prefix) == max_sets:
            return
        for k in range(start, len(masks)):
            prefix.append(masks[k])
            rec(prefix, k + 1)
            prefix.pop()

    rec([], 0)
    return out


def _remap_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for i, target in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << target
    return out


def _canonical_model(valuation: tuple[int, ...], no: tuple[tuple[int, ...], ...],
                     np_: tuple[tuple[int, ...], ...], n: int) -> bool:
    encoding = (valuation, no, np_)
    for perm in permutations(range(n)):
        remapped_val = tuple(_remap_mask(m, perm) for m in valuation)
        remapped_no = [None] * n
        remapped_np = [None] * n
        for i in range(n):
            remapped_no[perm[i]] = tuple(sorted(_remap_mask(m, perm) for m in no[i]))
            remapped_np[perm[i]] = tuple(sorted(_remap_mask(m, perm) for m in np_[i]))
        if (remapped_val, tuple(remapped_no), tuple(remapped_np)) < encoding:
            return False
    return True


def _canonical_pair(no: tuple[int, ...], np_: tuple[int, ...], n: int) -> bool:
    encoding = (no, np_)
    for perm in permutations(range(n)):
        remapped = (
            tuple(sorted(_remap_mask(m, perm) for m in no)),
            tuple(sorted(_remap_mask(m, perm) for m in np_)),
        )
        if remapped < encoding:
            return False
    return True


def _worlds(n: int) -> tuple[str, ...]:
    return tuple(f"w{i + 1}" for i in range(n))


def _build_model(worlds, val_masks, no_cols, np_cols, atom_names) -> NeighbourhoodModel:
    n = len(worlds)

    def set_of(mask: int) -> WorldSet:
        return frozenset(worlds[i] for i in range(n) if mask >> i & 1)

    valuation = {a: set_of(m) for a, m in zip(atom_names, val_masks)}
    n_obl = {w: frozenset(set_of(m) for m in no_cols[i]) for i, w in enumerate(worlds)}
    n_perm = {w: frozenset(set_of(m) for m in np_cols[i]) for i, w in enumerate(worlds)}
    return NeighbourhoodModel(worlds, n_obl, n_perm, valuation)


def _required_ok(model: NeighbourhoodModel, required: Iterable[FrameProperty]) -> bool:
    return all(check_property(model, p) is None for p in required)


def _superset_closed(col: tuple[int, ...], full: int) -> bool:
    members = set(col)
    for m in col:
        rest = full ^ m
        sub = rest
        while True:
            if (m | sub) not in members:
                return False
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return True


def find_countermodel(
    target: Formula | Schema | str,
    required: Iterable[FrameProperty],
    bounds: SearchBounds,
    timeout_secs: float | None = None,
) -> CountermodelReport:
    """First falsifying (model, world) under the documented order, or exhaustion.

    ``target`` is a concrete formula, a pure schema, or the name of a
    guarded-permission rule.  ``required`` filters the search to frames
    satisfying the given properties.
    """
    required = frozenset(required)
    clock = _Clock(timeout_secs)
    if isinstance(target, str):
        if target not in RULE_PROPERTIES:
            known = ", ".join(sorted(RULE_PROPERTIES))
            raise ValueError(f"unknown rule target {target!r} (known: {known})")
        return _search_frames(target, None, required, bounds, clock)
    if isinstance(target, Schema):
        if modal_depth(target.body) > 1:
            raise ValueError("schema targets with nested modalities are not supported")
        variables = sorted(target.metavars & formula_atoms(target.body))
        if len(variables) > len(bounds.atoms):
            raise ValueError(
                f"target needs {len(variables)} atoms to realise a falsifying valuation, "
                f"bounds provide {len(bounds.atoms)}"
            )
        return _search_frames(None, target, required, bounds, clock)
    if isinstance(target, Formula):
        missing = formula_atoms(target) - set(bounds.atoms)
        if missing:
            names = ", ".join(sorted(missing))
            raise ValueError(f"target atoms not covered by the search bounds: {names}")
        return _search_models(target, required, bounds, clock)
    raise TypeError(f"unsupported target {target!r}")


def _search_models(target, required, bounds, clock) -> CountermodelReport:
    report = CountermodelReport(found=False)
    k = len(bounds.atoms)
    for n in range(1, bounds.max_worlds + 1):
        worlds = _worlds(n)
        cols = _collections(n, bounds.max_sets)
        mask_range = list(range(1 << n))
        for val_masks in product(mask_range, repeat=k):
            clock.check()
            for no_cols in product(cols, repeat=n):
                for np_cols in product(cols, repeat=n):
                    if n <= 4 and not _canonical_model(val_masks, no_cols, np_cols, n):
                        continue
                    report.examined += 1
                    model = _build_model(worlds, val_masks, no_cols, np_cols, bounds.atoms)
                    if not _required_ok(model, required):
                        report.pruned_by_property += 1
                        continue
                    ts = truth_set(model, target)
                    if ts != frozenset(worlds):
                        world = next(w for w in worlds if w not in ts)
                        assert not evaluate(model, world, target)
                        report.found = True
                        report.model = model
                        report.world = world
                        report.instance = target
                        report.elapsed_secs = clock.elapsed()
                        return report
            clock.check()
    report.elapsed_secs = clock.elapsed()
    return report


def _search_frames(rule, schema_target, required, bounds, clock) -> CountermodelReport:
    report = CountermodelReport(found=False)
    supplement_no = FrameProperty.O_SUPPLEMENTED in required
    supplement_np = FrameProperty.P_SUPPLEMENTED in required
    for n in range(1, bounds.max_worlds + 1):
        worlds = _worlds(n)
        full = (1 << n) - 1
        cols = _collections(n, bounds.max_sets)
        no_candidates = [c for c in cols if not supplement_no or _superset_closed(c, full)]
        np_candidates = [c for c in cols if not supplement_np or _superset_closed(c, full)]
        for no_col in no_candidates:
            clock.check()
            for np_col in np_candidates:
                if n <= 4 and not _canonical_pair(no_col, np_col, n):
                    continue
                report.examined += 1
                no_cols = (no_col,) + ((),) * (n - 1)
                np_cols = (np_col,) + ((),) * (n - 1)
                model = _build_model(worlds, (), no_cols, np_cols, ())
                if not _required_ok(model, required):
                    report.pruned_by_property += 1
                    continue
                if rule is not None:
                    violation = rule_valid_on_frame(model, rule)
                else:
                    violation = schema_valid_on_frame(model, schema_target)
                if violation is None:
                    continue
                witness = _realise_violation(model, rule, schema_target, violation, bounds)
                report.found = True
                report.model = witness[0]
                report.world = violation.world
                report.assignment = violation.assignment
                report.instance = witness[1]
                report.elapsed_secs = clock.elapsed()
                return report
    report.elapsed_secs = clock.elapsed()
    return report


def _realise_violation(frame_model, rule, schema_target, violation: SchemaViolation, bounds):
    """Attach a valuation realising the falsifying assignment, then re-verify."""
    variables = sorted(violation.assignment)
    if len(variables) > len(bounds.atoms):
        raise ValueError(
            f"target needs {len(variables)} atoms to realise a falsifying valuation, "
            f"bounds provide {len(bounds.atoms)}"
        )
    var_to_atom = dict(zip(variables, bounds.atoms))
    valuation = {var_to_atom[v]: violation.assignment[v] for v in variables}
    model = NeighbourhoodModel(
        frame_model.worlds, dict(frame_model.n_obl), dict(frame_model.n_perm), valuation
    )
    subst = {v: Atom(var_to_atom[v]) for v in variables}
    w = violation.world
    if rule is None:
        instance = instantiate(schema_target, subst)
        assert not evaluate(model, w, instance), "schema countermodel failed re-verification"
        return model, instance

    p, q = subst["p"], subst["q"]
    r = subst["r"]
    w_all = frozenset(model.worlds)
    if rule == "IFCP_O":
        premise = And(PermS(Or(p, q)), Obl(r))
        side_ok = truth_set(model, r) <= (w_all - truth_set(model, p))
        conclusion = PermS(q)
    elif rule == "IFCP_P":
        s = subst["s"]
        premise = And(And(PermS(Or(p, q)), PermW(r)), PermW(s))
        side_ok = truth_set(model, r) <= truth_set(model, p) and truth_set(
            model, s
        ) <= truth_set(model, q)
        conclusion = And(PermS(p), PermS(q))
    else:  # IFCP2_P
        premise = And(PermS(Or(p, q)), PermW(r))
        side_ok = truth_set(model, r) <= truth_set(model, p)
        conclusion = PermS(p)
    assert evaluate(model, w, premise), "rule countermodel premise failed re-verification"
    assert side_ok, "rule countermodel side condition failed re-verification"
    assert not evaluate(model, w, conclusion), "rule countermodel conclusion re-verified true"
    return model, Implies(premise, conclusion)


# ---------------------------------------------------------------------------
# Remainder detachment

class RemainderError(ValueError):
    """Raised when every disjunct of a disjunctive permission is forbidden."""


@dataclass
class RemainderResult:
    surviving: tuple[Formula, ...]
    eliminated: tuple[tuple[Formula, Formula], ...]  # (disjunct, eliminating obligation)
    detached: tuple[Formula, ...]

    def surviving_disjunction(self) -> Formula | None:
        if not self.surviving:
            return None
        f = self.surviving[0]
        for d in self.surviving[1:]:
            f = Or(f, d)
        return f


def compute_remainder(
    disjuncts: Sequence[Formula],
    obligations: Iterable[Formula],
    weak_permissions: Iterable[Formula] = (),
    use_implication_sides: bool = False,
) -> RemainderResult:
    """Strip forbidden disjuncts from a disjunctive strong permission.

    A disjunct ``d`` is eliminated by an obligation ``O x`` when ``x`` is
    ``~d`` up to the ``Pw``/``~O~`` spelling, mirroring one application of
    the obligation-guarded axiom per disjunct.  With
    ``use_implication_sides`` enabled, ``O r`` also eliminates ``d`` when
    ``r -> ~d`` is a propositional tautology (the rule-shaped variant).

    Detachment of strong permissions happens in exactly two situations:
    a singleton remainder is detached outright, and when nothing was
    eliminated and every disjunct appears among the supplied weak
    permissions, all of them are lifted at once.
    """
    disjuncts = list(disjuncts)
    if not disjuncts:
        raise ValueError("the disjunct list must be non-empty")
    obligations = list(obligations)
    for ob in obligations:
        if not isinstance(expand_pw(ob), Obl):
            raise ValueError(f"not an obligation: {render(ob)}")
    weak = {expand_pw(f) for f in weak_permissions}

    def eliminator(d: Formula) -> Formula | None:
        nd = expand_pw(Not(d))
        for ob in obligations:
            body = expand_pw(ob).operand
            if body == nd:
                return ob
            if use_implication_sides and is_tautology(Implies(body, nd)):
                return ob
        return None

    surviving: list[Formula] = []
    eliminated: list[tuple[Formula, Formula]] = []
    for d in disjuncts:
        ob = eliminator(d)
        if ob is None:
            surviving.append(d)
        else:
            eliminated.append((d, ob))

    if not surviving:
        raise RemainderError(
            "every disjunct is forbidden; the disjunctive permission is inconsistent "
            "with the obligations"
        )

    detached: tuple[Formula, ...] = ()
    if len(surviving) == 1:
        detached = (surviving[0],)
    elif not eliminated and all(expand_pw(d) in weak for d in surviving):
        detached = tuple(surviving)
    return RemainderResult(tuple(surviving), tuple(eliminated), detached)
