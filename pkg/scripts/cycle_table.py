"""Print construction widths for C_n and P_n next to the closed forms.

    python scripts/cycle_table.py 3 200
"""

import math
import sys

from royalcolor.coloring import palette_width, verify_strong_royal
from royalcolor.constructions import construct_cycle, construct_path
from royalcolor.graphs import cycle, path
from royalcolor.solver import k_floor


def expected_cycle(n):
    exceptions = {3: 3, 7: 4}
    return exceptions.get(n) or math.ceil(math.log2(n + 1))


def main(lo, hi):
    bad = 0
    print("n  cycle_width  expected  path_width  k_floor  valid")
    for n in range(lo, hi + 1):
        c, p = construct_cycle(n), construct_path(n)
        valid = not verify_strong_royal(cycle(n), c) and not verify_strong_royal(path(n), p)
        row = (n, palette_width(c), expected_cycle(n), palette_width(p), k_floor(n), valid)
        bad += not valid or row[1] != row[2] or row[3] != row[4]
        print("  ".join(str(x) for x in row))
    print(f"{bad} mismatches", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    lo, hi = (int(x) for x in sys.argv[1:3]) if len(sys.argv) > 2 else (3, 64)
    sys.exit(main(lo, hi))
