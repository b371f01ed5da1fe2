"""Two-tier Hilbert-style proof checking.

A script runs in a named system and carries two kinds of premises:

* local hypotheses (contingent facts; header ``hyp:``), and
* theorem-tier hypotheses (schematic ``|-`` premises used when a script
  demonstrates that an inference rule is derivable; header ``hyp*:``).

Each derivation line earns a tier.  Theorem-tier lines only ever depend
on theorem-tier material; a line citing any local line is local.  The
replacement and monotonicity rules demand theorem-tier inputs: there is
no deduction theorem here, so applying them under a hypothesis would be
unsound.  The guarded-permission rules take their main premise from
either tier and conclude at that tier, while their side conditions must
be theorem-tier lines or tautology certificates.

Weak-permission formulas are interchangeable with their ``~O~`` spelling
everywhere: line formulas are normalised with ``expand_pw`` before any
comparison, so ``Pw p`` and ``~O~p`` justify each other.

Script text format::

    # comment
    system: FCP_2
    hyp: Ps(p | ~p)
    hyp*: r -> p
    goal: Ps q
    1. Ps(p | ~p) ; hyp
    2. Ps(q | (p | ~p)) ; re 1 Ps
    ...

Body-line justifications:

    hyp                     formula is a declared hypothesis
    taut                    propositional tautology under modal abstraction
    ax NAME [{p: f, ...}]   instance of a system axiom (substitution optional)
    mp I J                  modus ponens from two cited lines
    cpl I[,J,...]           tautological consequence of the cited lines
    re I MOD                replacement of equivalents (MOD in O, Ps, Pw):
                            either the strict form (cited theorem line A <-> B,
                            current line [A] <-> [B]) or the applied form
                            (cited line [A], current line [B], with A <-> B a
                            tautology; concludes at the cited line's tier)
    rm I MOD                monotonicity: cited theorem line A -> B, current
                            line [A] -> [B]; needs RM or the M axiom for MOD
    ifcp_o I[,J] side=K|taut
    ifcp_p I[,J] K|taut L|taut
    ifcp2_p I[,J] K|taut    guarded-permission rules; the main premise may be
                            one conjunction line or separate cited lines
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .formula import (
    And, Formula, Iff, Implies, Not, Obl, Or, PermS, Schema,
    expand_pw, instantiate, is_tautology, match_schema, parse, render,
    tautological_consequence,
)
from . import bundled
from .frames import (
    FrameProperty, check_property, entailment_closure, rule_valid_on_frame,
    schema_valid_on_frame,
)
from .systems import (
    SCHEMAS, FixtureCheck, InclusionFact, SystemDef, SystemRegistry,
    frame_class, inclusion_report,
)

__all__ = [
    "Hypothesis", "Justification", "ProofLine", "ProofScript", "ProofResult",
    "parse_proof_script", "check_proof", "scenario_registry",
    "verify_table1", "Table1Report", "SCENARIOS", "run_scenario", "ScenarioResult",
    "verify_inclusions", "InclusionVerification",
]


@dataclass(frozen=True)
class Hypothesis:
    formula: Formula
    theorem: bool = False


@dataclass(frozen=True)
class Justification:
    kind: str
    refs: tuple[int, ...] = ()
    modality: str | None = None
    schema: str | None = None
    subst: tuple[tuple[str, Formula], ...] | None = None
    sides: tuple[object, ...] = ()  # line indices or the marker "taut"


@dataclass(frozen=True)
class ProofLine:
    index: int
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class ProofScript:
    system: str
    hypotheses: tuple[Hypothesis, ...]
    lines: tuple[ProofLine, ...]
    goal: Formula


@dataclass(frozen=True)
class ProofResult:
    valid: bool
    line: int | None = None
    reason: str | None = None
    tiers: dict[int, str] = field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        if self.valid:
            return "Valid"
        where = f"line {self.line}: " if self.line is not None else ""
        return f"Invalid ({where}{self.reason})"


# ---------------------------------------------------------------------------
# Script text format

_BODY_LINE = re.compile(r"^(\d+)\.\s*(.*?)\s*;\s*(.*)$")
_AX = re.compile(r"^(\w+)\s*(\{.*\})?$")
_IFCP_O = re.compile(r"^([\d,\s]+?)\s+side=(taut|\d+)$")
_IFCP_P = re.compile(r"^([\d,\s]+?)\s+(taut|\d+)\s+(taut|\d+)$")
_IFCP2_P = re.compile(r"^([\d,\s]+?)\s+(taut|\d+)$")


def _parse_refs(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.replace(" ", "").split(",") if part)


def _parse_subst(text: str) -> tuple[tuple[str, Formula], ...]:
    inner = text.strip()[1:-1].strip()
    if not inner:
        return ()
    pairs = []
    for chunk in inner.split(","):
        name, _, formula_text = chunk.partition(":")
        if not _:
            raise ValueError(f"malformed substitution entry {chunk!r}")
        pairs.append((name.strip(), parse(formula_text.strip())))
    return tuple(pairs)


def _side(token: str) -> object:
    return "taut" if token == "taut" else int(token)


def _parse_justification(text: str) -> Justification:
    text = text.strip()
    kind, _, rest = text.partition(" ")
    rest = rest.strip()
    if kind == "hyp" and not rest:
        return Justification("hyp")
    if kind == "taut" and not rest:
        return Justification("taut")
    if kind == "ax":
        m = _AX.match(rest)
        if not m:
            raise ValueError(f"malformed axiom justification {text!r}")
        name, subst_text = m.groups()
        subst = _parse_subst(subst_text) if subst_text else None
        return Justification("ax", schema=name, subst=subst)
    if kind == "mp":
        refs = _parse_refs(rest.replace(" ", ","))
        if len(refs) != 2:
            raise ValueError(f"mp needs exactly two line numbers: {text!r}")
        return Justification("mp", refs=refs)
    if kind == "cpl":
        refs = _parse_refs(rest)
        if not refs:
            raise ValueError(f"cpl needs at least one cited line: {text!r}")
        return Justification("cpl", refs=refs)
    if kind in ("re", "rm"):
        parts = rest.split()
        if len(parts) != 2 or parts[1] not in ("O", "Ps", "Pw"):
            raise ValueError(f"{kind} needs a line number and a modality (O, Ps, Pw): {text!r}")
        return Justification(kind, refs=(int(parts[0]),), modality=parts[1])
    if kind == "ifcp_o":
        m = _IFCP_O.match(rest)
        if not m:
            raise ValueError(f"malformed ifcp_o justification {text!r}")
        return Justification("ifcp_o", refs=_parse_refs(m.group(1)), sides=(_side(m.group(2)),))
    if kind == "ifcp_p":
        m = _IFCP_P.match(rest)
        if not m:
            raise ValueError(f"malformed ifcp_p justification {text!r}")
        return Justification(
            "ifcp_p", refs=_parse_refs(m.group(1)), sides=(_side(m.group(2)), _side(m.group(3)))
        )
    if kind == "ifcp2_p":
        m = _IFCP2_P.match(rest)
        if not m:
            raise ValueError(f"malformed ifcp2_p justification {text!r}")
        return Justification("ifcp2_p", refs=_parse_refs(m.group(1)), sides=(_side(m.group(2)),))
    raise ValueError(f"unknown justification {text!r}")


def parse_proof_script(text: str) -> ProofScript:
    system = None
    hypotheses: list[Hypothesis] = []
    goal = None
    lines: list[ProofLine] = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("system:"):
            system = stripped[len("system:"):].strip()
            continue
        if stripped.startswith("hyp*:"):
            hypotheses.append(Hypothesis(parse(stripped[len("hyp*:"):].strip()), theorem=True))
            continue
        if stripped.startswith("hyp:"):
            hypotheses.append(Hypothesis(parse(stripped[len("hyp:"):].strip())))
            continue
        if stripped.startswith("goal:"):
            goal = parse(stripped[len("goal:"):].strip())
            continue
        m = _BODY_LINE.match(stripped)
        if not m:
            raise ValueError(f"malformed script line: {raw!r}")
        index, formula_text, just_text = m.groups()
        lines.append(ProofLine(int(index), parse(formula_text), _parse_justification(just_text)))
    if system is None:
        raise ValueError("script is missing a 'system:' header")
    if goal is None:
        raise ValueError("script is missing a 'goal:' header")
    return ProofScript(system, tuple(hypotheses), tuple(lines), goal)


# ---------------------------------------------------------------------------
# Checking

def _cited(j: Justification) -> tuple[int, ...]:
    extra = tuple(s for s in j.sides if isinstance(s, int))
    return j.refs + extra


def _join_tiers(tiers) -> str:
    return "local" if "local" in tiers else "theorem"


def _mk_box(mod: str, x: Formula) -> Formula:
    if mod == "O":
        return Obl(x)
    if mod == "Ps":
        return PermS(x)
    return Not(Obl(Not(x)))  # Pw, in normalised form


def _box_operand(f: Formula, mod: str) -> Formula | None:
    """Destructure a normalised formula as [mod] applied to an operand."""
    if mod == "O" and isinstance(f, Obl):
        return f.operand
    if mod == "Ps" and isinstance(f, PermS):
        return f.operand
    if (
        mod == "Pw"
        and isinstance(f, Not)
        and isinstance(f.operand, Obl)
        and isinstance(f.operand.operand, Not)
    ):
        return f.operand.operand.operand
    return None


def _flatten_and(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _flatten_and(f.left) + _flatten_and(f.right)
    return [f]


def _pw_operand(f: Formula) -> Formula | None:
    return _box_operand(f, "Pw")


class _Checker:
    def __init__(self, script: ProofScript, system: SystemDef):
        self.script = script
        self.system = system
        self._norm_cache: dict[Formula, Formula] = {}
        self.hyps = [(self.norm(h.formula), h.theorem) for h in script.hypotheses]
        self.forms: dict[int, Formula] = {}
        self.tiers: dict[int, str] = {}

    def norm(self, f: Formula) -> Formula:
        cached = self._norm_cache.get(f)
        if cached is None:
            cached = expand_pw(f)
            self._norm_cache[f] = cached
        return cached

    def check_line(self, line: ProofLine) -> str:
        """Returns the line's tier, or an error message."""
        j = line.justification
        f = self.norm(line.formula)
        handler = getattr(self, f"_check_{j.kind}")
        return handler(line, j, f)

    # --- individual justifications -------------------------------------

    def _check_hyp(self, line, j, f):
        for hf, theorem in self.hyps:
            if hf == f:
                return "theorem" if theorem else "local"
        return "formula is not among the declared hypotheses"

    def _check_taut(self, line, j, f):
        if is_tautology(f):
            return "theorem"
        return "not a propositional tautology under modal abstraction"

    def _check_ax(self, line, j, f):
        name = j.schema
        if name not in SCHEMAS:
            return f"unknown axiom schema {name!r}"
        if name not in self.system.axioms:
            return f"{name} is not an axiom of {self.system.name}"
        sch = SCHEMAS[name]
        if j.subst is not None:
            try:
                inst = instantiate(sch, dict(j.subst))
            except ValueError as exc:
                return str(exc)
            if self.norm(inst) != f:
                return f"line is not the stated instance of {name}"
        else:
            normalised = Schema(self.norm(sch.body), sch.metavars)
            if match_schema(normalised, f) is None:
                return f"line does not match any instance of {name}"
        return "theorem"

    def _check_mp(self, line, j, f):
        i, k = j.refs
        for prem, impl in ((i, k), (k, i)):
            g = self.norm(self.forms[impl])
            if isinstance(g, Implies) and g.left == self.norm(self.forms[prem]) and g.right == f:
                return _join_tiers((self.tiers[i], self.tiers[k]))
        return "modus ponens does not apply to the cited lines"

    def _check_cpl(self, line, j, f):
        premises = [self.norm(self.forms[r]) for r in j.refs]
        if tautological_consequence(premises, f):
            return _join_tiers(self.tiers[r] for r in j.refs)
        return "not a tautological consequence of the cited lines"

    def _check_re(self, line, j, f):
        (i,) = j.refs
        mod = j.modality
        cited = self.norm(self.forms[i])
        if isinstance(cited, Iff):
            expected = Iff(_mk_box(mod, cited.left), _mk_box(mod, cited.right))
            if expected != f:
                return "line is not the boxed form of the cited equivalence"
            if self.tiers[i] != "theorem":
                return "tier violation: replacement of equivalents needs a theorem-tier equivalence"
            return "theorem"
        a = _box_operand(cited, mod)
        if a is None:
            return f"cited line is neither an equivalence nor a {mod} formula"
        b = _box_operand(f, mod)
        if b is None:
            return f"line is not a {mod} formula"
        if not is_tautology(Iff(a, b)):
            return "operands of the cited and current formulas are not tautologically equivalent"
        return self.tiers[i]

    def _check_rm(self, line, j, f):
        (i,) = j.refs
        mod = j.modality
        if not self.system.admits_rm(mod):
            return f"monotonicity for {mod} is not available in {self.system.name}"
        cited = self.norm(self.forms[i])
        if not isinstance(cited, Implies):
            return "cited line is not an implication"
        if self.tiers[i] != "theorem":
            return "tier violation: monotonicity needs a theorem-tier implication"
        expected = Implies(_mk_box(mod, cited.left), _mk_box(mod, cited.right))
        if expected != f:
            return "line is not the boxed form of the cited implication"
        return "theorem"

    def _main_parts(self, j) -> list[Formula]:
        parts: list[Formula] = []
        for r in j.refs:
            parts.extend(_flatten_and(self.norm(self.forms[r])))
        return parts

    def _side_ok(self, side, expected: Formula) -> str | None:
        if side == "taut":
            if is_tautology(expected):
                return None
            return f"side condition {render(expected)} is not a tautology"
        if self.tiers[side] != "theorem":
            return f"tier violation: side condition must cite a theorem-tier line, line {side} is local"
        if self.norm(self.forms[side]) != expected:
            return f"cited side line {side} does not state {render(expected)}"
        return None

    def _rule_available(self, rule: str) -> str | None:
        if rule not in self.system.rules:
            return f"rule {rule} is not part of {self.system.name}"
        return None

    def _check_ifcp_o(self, line, j, f):
        err = self._rule_available("IFCP_O")
        if err:
            return err
        parts = self._main_parts(j)
        if len(parts) != 2 or not (isinstance(parts[0], PermS) and isinstance(parts[0].operand, Or)):
            return "main premise must be Ps(p | q) & O r"
        if not isinstance(parts[1], Obl):
            return "main premise must be Ps(p | q) & O r"
        a, b = parts[0].operand.left, parts[0].operand.right
        r = parts[1].operand
        if f != PermS(b):
            return "conclusion must strongly permit the second disjunct"
        err = self._side_ok(j.sides[0], Implies(r, Not(a)))
        if err:
            return err
        return _join_tiers(self.tiers[i] for i in j.refs)

    def _check_ifcp_p(self, line, j, f):
        err = self._rule_available("IFCP_P")
        if err:
            return err
        parts = self._main_parts(j)
        shape = "main premise must be Ps(p | q) & Pw r & Pw s"
        if len(parts) != 3 or not (isinstance(parts[0], PermS) and isinstance(parts[0].operand, Or)):
            return shape
        r = _pw_operand(parts[1])
        s = _pw_operand(parts[2])
        if r is None or s is None:
            return shape
        a, b = parts[0].operand.left, parts[0].operand.right
        if f != And(PermS(a), PermS(b)):
            return "conclusion must strongly permit both disjuncts"
        err = self._side_ok(j.sides[0], Implies(r, a)) or self._side_ok(j.sides[1], Implies(s, b))
        if err:
            return err
        return _join_tiers(self.tiers[i] for i in j.refs)

    def _check_ifcp2_p(self, line, j, f):
        err = self._rule_available("IFCP2_P")
        if err:
            return err
        parts = self._main_parts(j)
        shape = "main premise must be Ps(p | q) & Pw r"
        if len(parts) != 2 or not (isinstance(parts[0], PermS) and isinstance(parts[0].operand, Or)):
            return shape
        r = _pw_operand(parts[1])
        if r is None:
            return shape
        a = parts[0].operand.left
        if f != PermS(a):
            return "conclusion must strongly permit the first disjunct"
        err = self._side_ok(j.sides[0], Implies(r, a))
        if err:
            return err
        return _join_tiers(self.tiers[i] for i in j.refs)


def check_proof(script: ProofScript, registry: SystemRegistry | None = None) -> ProofResult:
    """Deterministic line-by-line validation; reports the first failing line."""
    registry = registry or SystemRegistry.standard()
    try:
        system = registry.get(script.system)
    except ValueError as exc:
        return ProofResult(False, None, str(exc))
    if not script.lines:
        return ProofResult(False, None, "script has no derivation lines")

    checker = _Checker(script, system)
    for pos, line in enumerate(script.lines, start=1):
        if line.index != pos:
            return ProofResult(False, line.index, f"expected line number {pos}", dict(checker.tiers))
        for r in _cited(line.justification):
            if not 1 <= r < line.index:
                return ProofResult(
                    False, line.index, f"citation of line {r} is out of order", dict(checker.tiers)
                )
        outcome = checker.check_line(line)
        if outcome not in ("theorem", "local"):
            return ProofResult(False, line.index, outcome, dict(checker.tiers))
        checker.tiers[line.index] = outcome
        checker.forms[line.index] = line.formula

    last = script.lines[-1]
    if checker.norm(last.formula) != checker.norm(script.goal):
        return ProofResult(
            False, last.index, "last line does not establish the declared goal", dict(checker.tiers)
        )
    return ProofResult(True, None, None, dict(checker.tiers))


# ---------------------------------------------------------------------------
# Bundled derivability suite

def load_script(name: str) -> ProofScript:
    return parse_proof_script(bundled.fixture_text(f"proofs/{name}"))


def scenario_registry() -> SystemRegistry:
    """Standard systems plus every bundled diagnostic system definition."""
    registry = SystemRegistry.standard()
    for data in bundled.system_definitions():
        registry.define_from_dict(data)
    return registry


TABLE1_DERIVABLES: dict[str, tuple[tuple[str, str | None], ...]] = {
    "Min": (("P_sP_w", "min__ps_pw.proof"),),
    "FCP_1": (
        ("P_sP_w", "fcp1__ps_pw.proof"),
        ("AFCP_O", "fcp1__afcp_o.proof"),
        ("AFCP_P", "fcp1__afcp_p.proof"),
    ),
    "FCP_2": (("P_sP_w", "fcp2__ps_pw.proof"),),
    "FCP_3": (
        ("P_sP_w", "fcp3__ps_pw.proof"),
        ("IFCP_O", "fcp3__ifcp_o.proof"),
        ("IFCP_P", "fcp3__ifcp_p.proof"),
    ),
    "FCP_4": (
        ("P_sP_w", "fcp4__ps_pw.proof"),
        ("AFCP_P", "fcp4__afcp_p.proof"),
    ),
    "FCP_5": (
        ("P_sP_w", "fcp5__ps_pw.proof"),
        ("IFCP_P", "fcp5__ifcp_p.proof"),
        ("AFCP_O", "fcp5__afcp_o.proof"),
        ("AFCP_P", "fcp5__afcp_p.proof"),
        ("AFCP2_P", "fcp5__afcp2_p.proof"),
    ),
    "FCP_6": (
        ("P_sP_w", "fcp6__ps_pw.proof"),
        ("IFCP_P", "fcp6__ifcp_p.proof"),
        ("AFCP_O", "fcp6__afcp_o.proof"),
        ("AFCP_P", "fcp6__afcp_p.proof"),
        ("AFCP2_P", "fcp6__afcp2_p.proof"),
        ("IFCP2_P", "fcp6__ifcp2_p.proof"),
        ("IFCP_O", "fcp6__ifcp_o.proof"),
        # IFCP2_O appears in the source inventory for this system but no rule
        # of that name is defined anywhere; it is excluded from verification.
        ("IFCP2_O", None),
    ),
}


@dataclass
class Table1Entry:
    derivable: str
    script: str | None
    result: ProofResult | None
    note: str = ""


@dataclass
class Table1Report:
    system: str
    entries: list[Table1Entry]

    @property
    def ok(self) -> bool:
        return all(e.result.valid for e in self.entries if e.result is not None)

    def render(self) -> str:
        out = [f"{self.system}:"]
        for e in self.entries:
            if e.result is None:
                out.append(f"  {e.derivable:10s} SKIPPED  {e.note}")
            else:
                status = "ok" if e.result.valid else f"FAIL ({e.result})"
                out.append(f"  {e.derivable:10s} {status}  [{e.script}]")
        return "\n".join(out)


def verify_table1(system: str, registry: SystemRegistry | None = None) -> Table1Report:
    """Check every bundled derivability script for one system."""
    if system not in TABLE1_DERIVABLES:
        known = ", ".join(TABLE1_DERIVABLES)
        raise ValueError(f"no derivability suite for {system!r} (available: {known})")
    registry = registry or scenario_registry()
    entries = []
    for derivable, script_name in TABLE1_DERIVABLES[system]:
        if script_name is None:
            entries.append(
                Table1Entry(derivable, None, None, "no rule of this name is defined; excluded")
            )
            continue
        script = load_script(script_name)
        if script.system != system:
            raise ValueError(f"script {script_name} targets {script.system}, not {system}")
        entries.append(Table1Entry(derivable, script_name, check_proof(script, registry)))
    return Table1Report(system, entries)


# ---------------------------------------------------------------------------
# Scenarios

SCENARIOS: dict[str, tuple[str, ...]] = {
    "explosion": ("explosion.proof",),
    "controlled-explosion": ("controlled_explosion.proof",),
    "etiquette": ("etiquette.proof",),
    "online-return": ("online_return.proof",),
    "five-disjuncts": ("five_disjuncts.proof", "five_disjuncts_extended.proof"),
}


@dataclass
class ScenarioResult:
    name: str
    entries: list[tuple[str, ProofScript, ProofResult]]
    conclusions: list[Formula]

    @property
    def ok(self) -> bool:
        return all(result.valid for _, _, result in self.entries)

    def transcript(self) -> str:
        out = [f"scenario: {self.name}"]
        for script_name, script, result in self.entries:
            out.append(f"-- {script_name} (system {script.system})")
            for h in script.hypotheses:
                marker = "|- " if h.theorem else ""
                out.append(f"   given: {marker}{render(h.formula)}")
            for line in script.lines:
                just = _render_justification(line.justification)
                out.append(f"   {line.index:2d}. {render(line.formula):42s} {just}")
            out.append(f"   => {result}")
        if self.conclusions:
            out.append("derived: " + "; ".join(render(c) for c in self.conclusions))
        return "\n".join(out)


def _render_justification(j: Justification) -> str:
    if j.kind == "hyp":
        return "hyp"
    if j.kind == "taut":
        return "taut"
    if j.kind == "ax":
        if j.subst is not None:
            inner = ", ".join(f"{n}: {render(f)}" for n, f in j.subst)
            return f"ax {j.schema} {{{inner}}}"
        return f"ax {j.schema}"
    if j.kind == "mp":
        return "mp " + " ".join(map(str, j.refs))
    if j.kind == "cpl":
        return "cpl " + ",".join(map(str, j.refs))
    if j.kind in ("re", "rm"):
        return f"{j.kind} {j.refs[0]} {j.modality}"
    refs = ",".join(map(str, j.refs))
    sides = [str(s) for s in j.sides]
    if j.kind == "ifcp_o":
        return f"ifcp_o {refs} side={sides[0]}"
    return f"{j.kind} {refs} " + " ".join(sides)


def run_scenario(name: str, registry: SystemRegistry | None = None) -> ScenarioResult:
    """Replay a bundled scenario and report the detached conclusions."""
    try:
        script_names = SCENARIOS[name]
    except KeyError:
        known = ", ".join(SCENARIOS)
        raise ValueError(f"unknown scenario {name!r} (available: {known})") from None
    registry = registry or scenario_registry()
    entries = []
    conclusions = []
    for script_name in script_names:
        script = load_script(script_name)
        result = check_proof(script, registry)
        entries.append((script_name, script, result))
        if result.valid:
            conclusions.append(script.goal)
    return ScenarioResult(name, entries, conclusions)


# ---------------------------------------------------------------------------
# Strength-lattice verification

@dataclass
class InclusionVerification:
    fact: InclusionFact
    script_results: list[tuple[str, ProofResult]]
    fixture_results: list[tuple[FixtureCheck, str]]
    antitone: bool

    @property
    def ok(self) -> bool:
        scripts_ok = all(r.valid for _, r in self.script_results)
        fixtures_ok = all(check.expect == actual for check, actual in self.fixture_results)
        return scripts_ok and fixtures_ok and self.antitone


def _run_fixture_check(model, check: FixtureCheck) -> str:
    if check.kind == "property":
        outcome = check_property(model, FrameProperty.from_name(check.name))
    elif check.kind == "schema":
        outcome = schema_valid_on_frame(model, SCHEMAS[check.name])
    elif check.kind == "rule":
        outcome = rule_valid_on_frame(model, check.name)
    else:
        raise ValueError(f"unknown fixture check kind {check.kind!r}")
    return "satisfied" if outcome is None else "violated"


def verify_inclusions(registry: SystemRegistry | None = None) -> list[InclusionVerification]:
    """Re-check every inclusion: derivation scripts, fixtures, frame-class antitonicity."""
    registry = registry or scenario_registry()
    out = []
    for fact in inclusion_report():
        script_results = []
        for script_name in fact.derivation_scripts:
            script = load_script(script_name)
            script_results.append((script_name, check_proof(script, registry)))
        fixture_results = []
        if fact.strictness_fixture is not None:
            model = bundled.load_fixture_model(fact.strictness_fixture)
            for check in fact.fixture_checks:
                fixture_results.append((check, _run_fixture_check(model, check)))
        # The stronger system's frame class imposes every condition the weaker
        # one does, up to the provable implications between conditions.
        antitone = entailment_closure(frame_class(fact.larger)) >= entailment_closure(
            frame_class(fact.smaller)
        )
        out.append(InclusionVerification(fact, script_results, fixture_results, antitone))
    return out
