"""Command-line front end.

    shl verify <suite> [flags]
    shl eval f --lambda [1,0] --t 1/3 --s 0 --u 1/5,1/7
    shl eval pf --t 1/3 --gamma 2 --s 1/5 --u 1/7,1/11

Exact values are read and written as "p/q" strings.  Exit codes: 0 pass,
1 fail, 2 error, 3 unsupported scope.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .exactmath import format_rational, parse_rational
from .identities import (
    TruncationPlan,
    check_class_specialization,
    check_frozen_corollary,
    check_littlewood,
    check_partition_P,
    check_unrefined,
    check_z_properties,
    littlewood_rhs,
)
from .params import InadmissibleError, InhomogeneitySequence, ParamSet
from .report import ERROR, PASS, UNSUPPORTED, Report, UnsupportedScope, timed
from .shl import check_lattice_vs_symmetrization, f_symmetrization
from .signatures import Signature
from .vertexmodel import check_lemma_plus, check_ybe_rll

SUITES = ("littlewood", "class", "unrefined", "pfp", "z-properties", "frozen", "ybe",
          "lattice-vs-sym", "lemma-plus", "all")
TRUNCATED = ("littlewood", "class", "unrefined", "pfp")
EVEN_SUITES = TRUNCATED + ("z-properties",)
RETRY_CAP = 10_000

DEFAULT_MU = ("[0]", "[3,2,2]", "[6,4,4,3,2,2,0]")


@dataclass
class RunConfig:
    suite: str
    params: ParamSet | None = None
    seed: int | None = None
    plan: TruncationPlan = field(default_factory=TruncationPlan)
    n: int = 1
    cutoff: int = 6
    mu: tuple = ()
    lam: Signature | None = None
    output: str | None = None


# --------------------------------------------------------------------------
# random parameters


def _rand_rational(rng: random.Random, bound: Fraction, max_den: int = 12, nonzero: bool = True) -> Fraction:
    while True:
        q = rng.randint(2, max_den)
        p = rng.randint(-q + 1, q - 1)
        v = Fraction(p, q) * bound
        if v or not nonzero:
            return v


def generate_params(seed: int, n: int = 1, *, needs_admissible: bool = True, s_mode: str = "random",
                    max_ratio: Fraction | None = None, prefix_len: int = 6) -> ParamSet:
    """Deterministic random ParamSet with 2n spectral variables.

    ``s_mode`` is "random" (prefix of ``prefix_len`` values plus a tail),
    "constant" or "zero".  With ``needs_admissible`` the u's are resampled
    until every ratio |(u - s)/(1 - s u)| is at most ``max_ratio``
    (default 1 - epsilon).
    """
    rng = random.Random(seed)
    t = Fraction(rng.randint(1, 7), rng.randint(8, 12))
    if rng.random() < 0.25:
        t = -t
    gamma = Fraction(rng.randint(1, 9), rng.randint(1, 5)) * (1 if rng.random() < 0.8 else -1)
    if s_mode == "zero":
        s = InhomogeneitySequence.constant(Fraction(0))
    elif s_mode == "constant":
        s = InhomogeneitySequence.constant(_rand_rational(rng, Fraction(1, 2)))
    elif s_mode == "random":
        prefix = tuple(_rand_rational(rng, Fraction(1, 2)) for _ in range(prefix_len))
        s = InhomogeneitySequence(prefix, _rand_rational(rng, Fraction(1, 2)))
    else:
        raise ValueError(f"unknown s_mode {s_mode!r}")
    base = ParamSet(t, gamma, s)
    bound = max_ratio if max_ratio is not None else 1 - base.epsilon
    for _ in range(RETRY_CAP):
        u = tuple(_rand_rational(rng, Fraction(1, 2)) for _ in range(2 * n))
        p = base.with_u(u)
        try:
            p.check_pairwise()
            if needs_admissible:
                p.check_admissible(bound)
        except ValueError:
            continue
        return p
    raise RuntimeError(f"no admissible parameters after {RETRY_CAP} draws (seed {seed})")


# --------------------------------------------------------------------------
# argument parsing


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed rational {text!r} (expected p/q)") from None


def _rational_list(text: str) -> tuple:
    return tuple(_rational(x.strip()) for x in text.split(",") if x.strip())


def _signature(text: str) -> Signature:
    try:
        return Signature.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shl", description="Exact checks for spin Hall-Littlewood identities.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbs = parser.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", type=_rational)
    common.add_argument("--gamma", type=_rational)
    common.add_argument("--s", type=_rational_list, help="s_0,s_1,...; the last value repeats for all later columns")
    common.add_argument("--u", type=_rational_list, help="comma-separated spectral variables")
    common.add_argument("--seed", type=int)
    common.add_argument("--json-out", dest="json_out")

    v = verbs.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--n", type=int)
    v.add_argument("--max-part", dest="max_part", type=int)
    v.add_argument("--tol", type=_rational)
    v.add_argument("--mode", choices=("fixed", "adaptive"), default="fixed")
    v.add_argument("--cutoff", type=int, default=6)
    v.add_argument("--mu", type=_signature, action="append")

    e = verbs.add_parser("eval", parents=[common], help="evaluate F_lambda or the Pfaffian side")
    e.add_argument("what", choices=("f", "pf"))
    e.add_argument("--lambda", dest="lam", type=_signature)
    return parser


def _explicit_params(ns) -> ParamSet:
    if ns.t is None:
        raise UsageError("--t is required with explicit parameters")
    if not ns.u:
        raise UsageError("--u is required with explicit parameters")
    s_vals = ns.s or (Fraction(0),)
    s = InhomogeneitySequence(tuple(s_vals[:-1]), s_vals[-1])
    try:
        return ParamSet(ns.t, ns.gamma if ns.gamma is not None else Fraction(1), s, ns.u)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_args(argv=None):
    """Parse ``argv`` into (verb, RunConfig).  Raises UsageError on bad combinations."""
    ns = build_parser().parse_args(argv)
    explicit = any(getattr(ns, k) is not None for k in ("t", "gamma", "s", "u"))
    if explicit and ns.seed is not None:
        raise UsageError("give either --seed or explicit parameters (--t/--gamma/--s/--u), not both")

    if ns.verb == "eval":
        if ns.seed is not None:
            raise UsageError("eval needs explicit parameters")
        params = _explicit_params(ns)
        if ns.what == "f":
            if ns.lam is None:
                raise UsageError("--lambda is required for eval f")
            if len(ns.lam) != len(params.u):
                raise UsageError("--lambda and --u must have the same length")
        elif len(params.u) % 2:
            raise UsageError("--u needs an even number of variables")
        return "eval", RunConfig(f"eval-{ns.what}", params=params, lam=ns.lam, output=ns.json_out)

    suite = ns.suite
    params = _explicit_params(ns) if explicit else None
    n = ns.n
    if params is not None and suite in EVEN_SUITES:
        if len(params.u) % 2:
            raise UsageError("--u needs an even number of variables for this suite")
        if n is not None and 2 * n != len(params.u):
            raise UsageError(f"--n {n} disagrees with {len(params.u)} values in --u")
        n = len(params.u) // 2
    n = n or 1
    if n < 1:
        raise UsageError("--n must be positive")
    plan_kw = {"n": n, "mode": ns.mode}
    if ns.max_part is not None:
        plan_kw["max_part"] = ns.max_part
    elif suite in TRUNCATED:
        plan_kw["max_part"] = 16 if n <= 2 else 10
    if ns.tol is not None:
        plan_kw["tolerance"] = ns.tol
    elif n >= 3:
        plan_kw["tolerance"] = Fraction(1, 10**6)
    try:
        plan = TruncationPlan(**plan_kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    seed = ns.seed if params is None else None
    if params is None and seed is None:
        seed = 0
    mu = tuple(ns.mu) if ns.mu else tuple(Signature.parse(m) for m in DEFAULT_MU)
    return "verify", RunConfig(suite, params=params, seed=seed, plan=plan, n=n, cutoff=ns.cutoff, mu=mu,
                               output=ns.json_out)


# --------------------------------------------------------------------------
# running


def _params_for(cfg: RunConfig, **shape) -> ParamSet:
    if cfg.params is not None:
        return cfg.params
    return generate_params(cfg.seed, **shape)


def _run(cfg: RunConfig) -> Report:
    suite, plan, n = cfg.suite, cfg.plan, cfg.n
    admissible = {"max_ratio": Fraction(35, 100)}
    if suite == "littlewood":
        return check_littlewood(_params_for(cfg, n=n, s_mode="constant", **admissible), plan)
    if suite == "class":
        p = _params_for(cfg, n=n, s_mode="zero", **admissible)
        return check_class_specialization(p, plan)
    if suite == "unrefined":
        return check_unrefined(_params_for(cfg, n=n, s_mode="constant", **admissible), plan)
    if suite == "pfp":
        return check_partition_P(_params_for(cfg, n=n, s_mode="constant", **admissible), plan)
    if suite == "z-properties":
        if n > 4:
            raise UnsupportedScope("the property suite covers n <= 4")
        p = _params_for(cfg, n=n, needs_admissible=False, s_mode="constant")
        return check_z_properties(p, n, seed=cfg.seed or 0)
    if suite == "frozen":
        p = _params_for(cfg, n=n, needs_admissible=False, s_mode="constant")
        return check_frozen_corollary(p, n)
    if suite == "ybe":
        p = _params_for(cfg, n=1, s_mode="random")
        return check_ybe_rll(p, p.u[0], p.u[1], cfg.cutoff)
    if suite == "lattice-vs-sym":
        p = _params_for(cfg, n=2, s_mode="random")
        return check_lattice_vs_symmetrization(p, max_parts=3)
    if suite == "lemma-plus":
        p = _params_for(cfg, n=1, needs_admissible=False, s_mode="random")
        report = Report("lemma-plus", params=p.to_json(), details={})
        for mu in cfg.mu:
            report.absorb(check_lemma_plus(mu, p), key=f"lemma-plus {mu}")
        return report
    if suite == "all":
        return _run_all(cfg)
    raise UnsupportedScope(f"unknown suite {suite!r}")


def _all_configs(cfg: RunConfig) -> list[RunConfig]:
    base = cfg.seed or 0
    out = []
    for suite, n in [("littlewood", 1), ("littlewood", 2), ("class", 1), ("unrefined", 1), ("pfp", 1),
                     ("z-properties", 1), ("z-properties", 2), ("z-properties", 3),
                     ("frozen", 1), ("frozen", 2), ("frozen", 3),
                     ("ybe", 1), ("lattice-vs-sym", 1), ("lemma-plus", 1)]:
        plan = TruncationPlan(16, n=n)
        out.append(RunConfig(suite, seed=base, plan=plan, n=n, cutoff=6,
                             mu=tuple(Signature.parse(m) for m in DEFAULT_MU)))
    return out


def _run_all(cfg: RunConfig) -> Report:
    configs = _all_configs(cfg)
    workers = int(os.environ.get("SHL_THREADS", "1") or 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run_suite, configs))
    else:
        reports = [run_suite(c) for c in configs]
    report = Report("all", details={"seed": cfg.seed})
    for c, r in zip(configs, reports):
        report.absorb(r, key=f"{c.suite} n={c.n}")
    return report


def run_suite(cfg: RunConfig) -> Report:
    """Run the configured suite; precondition failures become an "error" report."""
    try:
        report = _run(cfg)
    except UnsupportedScope as exc:
        report = Report(cfg.suite, verdict=UNSUPPORTED, details={"reason": str(exc)})
    except (InadmissibleError, ValueError, ZeroDivisionError, RuntimeError) as exc:
        kind = "inadmissible" if isinstance(exc, InadmissibleError) else type(exc).__name__
        report = Report(cfg.suite, verdict=ERROR, details={"error": str(exc), "kind": kind})
        if cfg.params is not None:
            report.params = cfg.params.to_json()
    if cfg.seed is not None:
        report.details.setdefault("seed", cfg.seed)
    if cfg.suite != "all" and cfg.plan is not None and report.plan is None and cfg.suite in TRUNCATED:
        report.plan = cfg.plan.to_json()
    return report


def run_eval(cfg: RunConfig) -> Report:
    report = Report(cfg.suite, params=cfg.params.to_json())
    with timed(report):
        try:
            if cfg.suite == "eval-f":
                report.lhs = f_symmetrization(cfg.lam, cfg.params)
                report.details["lambda"] = str(cfg.lam)
            else:
                report.rhs = littlewood_rhs(cfg.params)
        except (ValueError, ZeroDivisionError) as exc:
            report.verdict = ERROR
            report.details["error"] = str(exc)
    return report


def _emit(report: Report, output: str | None) -> None:
    text = report.dumps()
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    try:
        verb, cfg = parse_args(argv)
    except UsageError as exc:
        print(f"shl: error: {exc}", file=sys.stderr)
        return 2
    if verb == "eval":
        report = run_eval(cfg)
        if report.verdict == PASS:
            value = report.lhs if cfg.suite == "eval-f" else report.rhs
            print(format_rational(value))
        else:
            print(f"shl: error: {report.details['error']}", file=sys.stderr)
        if cfg.output:
            _emit(report, cfg.output)
        return report.exit_code
    report = run_suite(cfg)
    _emit(report, cfg.output)
    if cfg.output:
        print(f"{report.check}: {report.verdict}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
