"""Run every applicable axiom suite on every target/family pair.

    python scripts/sweep_axioms.py --trials 200 --seed 0 --out sweep.json
"""
import argparse
import sys
import time

from hyperbicomb import verify


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--targets", default=",".join(verify.TARGETS))
    ap.add_argument("--out", help="write all reports as JSON")
    args = ap.parse_args(argv)

    reports = []
    for target in args.targets.split(","):
        for family in verify.FAMILIES:
            try:
                tgt = verify.Target(target, family)
            except ValueError:
                continue
            for suite in verify.applicable_suites(target, family):
                start = time.perf_counter()
                trials = min(args.trials, 100) if suite == "hormander" else args.trials
                rep = verify.run_suite(suite, tgt, trials=trials, seed=args.seed)
                reports.append(rep)
                print(f"{rep.line()}  [{time.perf_counter() - start:.1f}s]", flush=True)

    print("\nconsistent and conical imply convex:")
    for (target, family), holds in sorted(verify.implication_holds(reports).items()):
        print(f"  {target:<13} {family:<6} {'holds' if holds else 'VIOLATED'}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(verify.reports_json(reports))
    return 0


if __name__ == "__main__":
    sys.exit(main())
