#!/usr/bin/env python3
"""Replay every bundled scenario and print the transcripts."""

from deontic import Atom, Not, Obl, PermS, compute_remainder, render
from deontic.proof import SCENARIOS, run_scenario, scenario_registry


def main() -> int:
    registry = scenario_registry()
    failures = 0
    for name in SCENARIOS:
        result = run_scenario(name, registry)
        print(result.transcript())
        if name == "five-disjuncts":
            disjuncts = [Atom(a) for a in "pqrst"]
            base = compute_remainder(disjuncts, [Obl(Not(Atom(a))) for a in "pqr"])
            print("remainder after O ~p, O ~q, O ~r: "
                  + render(PermS(base.surviving_disjunction())))
            extended = compute_remainder(disjuncts, [Obl(Not(Atom(a))) for a in "pqrs"])
            print("adding O ~s detaches: "
                  + ", ".join(render(PermS(d)) for d in extended.detached))
        print()
        if not result.ok:
            failures += 1
    if failures:
        print(f"{failures} scenario(s) FAILED")
        return 1
    print("all scenarios replay cleanly")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
