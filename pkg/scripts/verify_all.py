"""Run every named check for n = 1..N and print a summary.

    python scripts/verify_all.py --n 5 [--filter 'magic-*'] [--timings]
"""

import argparse
import sys

from hermarea.checks import verify


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--filter")
    ap.add_argument("--timings", action="store_true")
    args = ap.parse_args()
    report = verify(args.n, args.filter)
    print(report.format(timings=args.timings))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
