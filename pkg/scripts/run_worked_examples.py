"""Recompute the three closed-form examples and print one status line each."""
import sys

from hyperbicomb.verify import run_worked_examples


def main() -> int:
    reports = run_worked_examples()
    for rep in reports:
        print(rep.line())
        for name, pair in rep.details.items():
            print(f"    {name}: computed {pair['computed']!r}, expected {pair['expected']!r}")
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
