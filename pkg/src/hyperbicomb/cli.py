"""Command-line entry point.

Exit codes: 0 on success, 1 on invalid input, 2 when a property check fails
unexpectedly (or the program itself breaks).
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass

from . import io, verify
from .cb_bicombing import CBForm, cb_sigma, default_form, geodesic_trace
from .hausdorff import hausdorff_distance, hausdorff_infimum_form
from .k_bicombing import k_sigma, naive_union_sigma
from .sets import FiniteCompactSet, Interval, Polygon, Subtree
from .spaces import line
from .svg import emit_svg

log = logging.getLogger("hyperbicomb")

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2
SEED_ENV = "HYPERBICOMB_SEED"
DEFAULT_SPACE = io.dump_space(line())


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    space: str | None = None
    a: str | None = None
    b: str | None = None
    t: float | None = None
    form: str | None = None
    naive: bool = False
    infimum: bool = False
    suites: tuple[str, ...] = ()
    family: str = "l2"
    target: str = "cb-minkowski"
    trials: int | None = None
    seed: int = 0
    tol: float = verify.DEFAULT_TOL
    sampler: str = "random"
    expect_fail: tuple[str, ...] = ()
    steps: int = 4
    out: str | None = None
    report: str | None = None

    def validate(self) -> "RunConfig":
        if self.t is not None and not 0.0 <= self.t <= 1.0:
            raise UsageError(f"--t must lie in [0, 1], got {self.t}")
        if self.trials is not None and self.trials < 1:
            raise UsageError("--trials must be at least 1")
        if self.tol < 0:
            raise UsageError("--tol must be non-negative")
        if self.steps < 1:
            raise UsageError("--steps must be at least 1")
        for s in self.suites + self.expect_fail:
            if s not in verify.SUITES:
                raise UsageError(f"unknown suite {s!r}; expected one of {', '.join(verify.SUITES)}")
        return self


def _suite_list(values: list[str]) -> tuple[str, ...]:
    out: list[str] = []
    for v in values or []:
        out.extend(x for x in v.split(",") if x)
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperbicomb", description="Bicombings on hyperspaces of metric spaces.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def operands(sp, with_t=True):
        sp.add_argument("--space", help="space JSON (inline or file); default: the real line")
        sp.add_argument("--a", required=True, help="first set JSON (inline or file)")
        sp.add_argument("--b", required=True, help="second set JSON (inline or file)")
        if with_t:
            sp.add_argument("--t", type=float, required=True)

    h = sub.add_parser("hausdorff", help="Hausdorff distance of two sets")
    operands(h, with_t=False)
    h.add_argument("--infimum", action="store_true", help="use the neighbourhood-infimum form")

    c = sub.add_parser("sigma-cb", help="bicombing on closed bounded convex sets")
    operands(c)
    c.add_argument("--form", choices=[f.value for f in CBForm])

    k = sub.add_parser("sigma-k", help="metric-projection bicombing on finite sets")
    operands(k)
    k.add_argument("--naive", action="store_true", help="plain union of geodesic points instead")

    v = sub.add_parser("verify", help="randomised checks of the bicombing axioms")
    v.add_argument("--suite", action="append", default=None, help="suite name, comma list, or 'all'")
    v.add_argument("--family", choices=verify.FAMILIES, default="l2")
    v.add_argument("--target", choices=verify.TARGETS, default="cb-minkowski")
    v.add_argument("--trials", type=int, default=None,
                   help=f"default {verify.DEFAULT_TRIALS} (hormander: 100)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=verify.DEFAULT_TOL)
    v.add_argument("--sampler", choices=("random", "counterexample"), default="random")
    v.add_argument("--expect-fail", action="append", default=None, metavar="SUITE")
    v.add_argument("--report", help="write the JSON report here")

    sub.add_parser("paper-examples", help="recompute the three worked examples")

    pl = sub.add_parser("plot", help="SVG of a CB(X) geodesic trace")
    operands(pl, with_t=False)
    pl.add_argument("--steps", type=int, default=4, help="number of steps k (k + 1 snapshots)")
    pl.add_argument("--form", choices=[f.value for f in CBForm])
    pl.add_argument("--out", required=True)
    return p


def config_from_args(ns: argparse.Namespace, env: dict | None = None) -> RunConfig:
    env = os.environ if env is None else env
    cfg = RunConfig(subcommand=ns.subcommand)
    for name in ("space", "a", "b", "t", "form", "naive", "infimum", "family", "target", "trials",
                 "seed", "tol", "sampler", "steps", "out", "report"):
        if hasattr(ns, name) and getattr(ns, name) is not None:
            setattr(cfg, name, getattr(ns, name))
    if ns.subcommand == "verify":
        suites = _suite_list(ns.suite or ["all"])
        cfg.suites = verify.applicable_suites(cfg.target, cfg.family) if "all" in suites else suites
        cfg.expect_fail = _suite_list(ns.expect_fail)
        if env.get(SEED_ENV, "").strip():
            try:
                cfg.seed = int(env[SEED_ENV])
            except ValueError:
                raise UsageError(f"{SEED_ENV} must be an integer, got {env[SEED_ENV]!r}") from None
    return cfg.validate()


# -- subcommands --------------------------------------------------------------

def _load_operands(cfg: RunConfig):
    space = io.load_space(io.read_json(cfg.space, "--space") if cfg.space else DEFAULT_SPACE)
    A = io.load_element(space, io.read_json(cfg.a, "--a"), "a")
    B = io.load_element(space, io.read_json(cfg.b, "--b"), "b")
    return space, A, B


def _bodies(A, B, what: str):
    for name, X in (("a", A), ("b", B)):
        if not isinstance(X, (Interval, Polygon, Subtree)):
            raise UsageError(f"{what} needs convex bodies; --{name} is a finite point set")


def _finite(A, B, what: str):
    for name, X in (("a", A), ("b", B)):
        if not isinstance(X, FiniteCompactSet):
            raise UsageError(f"{what} needs finite point sets; --{name} is a convex body")


def _emit(obj) -> None:
    sys.stdout.write(io.dumps(obj) + "\n")


def cmd_hausdorff(cfg: RunConfig) -> int:
    space, A, B = _load_operands(cfg)
    d = hausdorff_infimum_form(space, A, B) if cfg.infimum else hausdorff_distance(space, A, B)
    _emit({"d_h": d})
    return EXIT_OK


def cmd_sigma_cb(cfg: RunConfig) -> int:
    space, A, B = _load_operands(cfg)
    _bodies(A, B, "sigma-cb")
    _emit(io.dump_element(space, cb_sigma(space, cfg.form or default_form(space), A, B, cfg.t)))
    return EXIT_OK


def cmd_sigma_k(cfg: RunConfig) -> int:
    space, A, B = _load_operands(cfg)
    _finite(A, B, "sigma-k")
    fn = naive_union_sigma if cfg.naive else k_sigma
    _emit(io.dump_element(space, fn(space, A, B, cfg.t)))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    target = verify.Target(cfg.target, cfg.family)
    sampler = None
    if cfg.sampler == "counterexample":
        if (cfg.target, cfg.family) != ("k-sigma", "line") or set(cfg.suites) != {"conical"}:
            raise UsageError("--sampler counterexample replays the conical counterexample: "
                             "use --suite conical --target k-sigma --family line")
        sampler = verify.conical_counterexample_operands
    for s in cfg.suites:
        if s not in verify.applicable_suites(cfg.target, cfg.family):
            raise UsageError(f"suite {s!r} does not apply to target {cfg.target} on family {cfg.family}")
    reports = []
    for s in cfg.suites:
        trials = cfg.trials or (100 if s == "hormander" else verify.DEFAULT_TRIALS)
        if sampler is not None and cfg.trials is None:
            trials = 1
        rep = verify.run_suite(s, target, sampler, trials, cfg.seed, cfg.tol, expected_fail=s in cfg.expect_fail)
        log.info("%s done", s)
        print(rep.line(), flush=True)
        reports.append(rep)
    if cfg.report:
        with open(cfg.report, "w") as fh:
            fh.write(verify.reports_json(reports) + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


def cmd_examples(cfg: RunConfig) -> int:
    reports = verify.run_worked_examples()
    for r in reports:
        print(r.line())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_plot(cfg: RunConfig) -> int:
    space, A, B = _load_operands(cfg)
    _bodies(A, B, "plot")
    trace = geodesic_trace(space, cfg.form or default_form(space), A, B, cfg.steps)
    emit_svg(trace, cfg.out)
    return EXIT_OK


COMMANDS = {
    "hausdorff": cmd_hausdorff,
    "sigma-cb": cmd_sigma_cb,
    "sigma-k": cmd_sigma_k,
    "verify": cmd_verify,
    "paper-examples": cmd_examples,
    "plot": cmd_plot,
}


def dispatch(cfg: RunConfig) -> int:
    return COMMANDS[cfg.subcommand](cfg)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; those are invalid input here
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return dispatch(config_from_args(ns))
    except ValueError as exc:
        # SchemaError, UsageError and domain errors (bad t, mismatched spaces, ...)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
