#!/usr/bin/env python3
"""Verify the derivability suite and the strength lattice end to end."""

from deontic.cli import main as cli_main


def main() -> int:
    rc1 = cli_main(["verify-table1"])
    print()
    rc2 = cli_main(["inclusions"])
    return rc1 or rc2


if __name__ == "__main__":
    raise SystemExit(main())
