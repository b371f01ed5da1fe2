#!/usr/bin/env python3
"""Search for the frame-level separations between the guarded systems.

Runs the bounded countermodel search for (i) a frame meeting the
axiom-shaped obligation guard on which the rule-shaped guard fails, and
(ii) a non-supplemented frame falsifying the distribution schema.
"""

import json

from deontic import FrameProperty, SearchBounds, find_countermodel, model_to_dict, render
from deontic.systems import SCHEMAS


def describe(label, report):
    print(f"== {label}")
    print(f"   outcome: {report.outcome}  "
          f"(examined {report.examined}, pruned {report.pruned_by_property}, "
          f"{report.elapsed_secs:.3f}s)")
    if report.found:
        print(f"   world: {report.world}")
        if report.instance is not None:
            print(f"   falsified: {render(report.instance)}")
        print("   " + json.dumps(model_to_dict(report.model)))
    print()


def main() -> int:
    bounds = SearchBounds(5, 2, ("a", "b", "c"))

    rule_gap = find_countermodel("IFCP_O", {FrameProperty.AFCP_O}, bounds)
    describe("rule-shaped guard fails on an axiom-guarded frame", rule_gap)

    distribution = find_countermodel(SCHEMAS["M_O"], set(), bounds)
    describe("distribution fails without supplementation", distribution)

    return 0 if (rule_gap.found and distribution.found) else 1


if __name__ == "__main__":
    raise SystemExit(main())
