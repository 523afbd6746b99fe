#!/usr/bin/env python3
"""Walk through the 2x2 distribution-valued game without a lex equilibrium.

Prints the payoff table, the three projected real games, the cascade
analysis and the certificate replay.
"""

import json
import sys

from momentorder.games import (
    analyze_existence,
    project,
    verify_report,
    zero_sum_cycle_demo_game,
)
from momentorder.measures import rat_str


def main() -> int:
    G = zero_sum_cycle_demo_game()
    print("payoff table (probability vectors over {1,2,3}):")
    for row in G.payoffs:
        print("   " + "   ".join("(" + ", ".join(map(rat_str, c)) + ")" for c in row))
    for t in range(1, 4):
        print(f"projected game, coordinate {t}:")
        for row in project(G, t):
            print("   " + "  ".join(rat_str(x) for x in row))
    report = analyze_existence(G)
    print("analysis:")
    print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    print("certificate replay:", "ok" if verify_report(G, report) else "FAILED")
    return 0


if __name__ == "__main__":
    sys.exit(main())
