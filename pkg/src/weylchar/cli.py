"""Command-line front end: every computation as a subcommand with JSON output.

JSON goes to stdout (stable key order, byte-identical for identical seeded
invocations); one human-readable summary line goes to stderr.  Exit codes:
0 pass, 1 check failure, 2 usage or parse error, 3 budget exceeded.
Angles are given in turns (fractions of a full circle), so exact roots of
unity are expressible in text.  WEYLCHAR_SEED overrides --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from weylchar import afalgebra, moments, poisson, ucharacters
from weylchar.combinatorics import Partition, Signature, signatures_with_entries
from weylchar.errors import BudgetExceeded


@dataclass(frozen=True)
class RunConfig:
    """Seed, budgets and output destination shared by the subcommands."""

    seed: int = 0
    gt_dim_max: int = ucharacters.DIM_BUDGET
    series_truncation: int = 60
    mc_samples: int = 100_000
    output: str | None = None

    def __post_init__(self):
        if min(self.gt_dim_max, self.series_truncation, self.mc_samples) <= 0:
            raise ValueError("budgets must be positive")

    @staticmethod
    def from_args(args) -> "RunConfig":
        seed_env = os.environ.get("WEYLCHAR_SEED")
        seed = int(seed_env) if seed_env is not None else getattr(args, "seed", 0)
        return RunConfig(
            seed=seed,
            gt_dim_max=getattr(args, "dim_budget", ucharacters.DIM_BUDGET),
            series_truncation=getattr(args, "truncation", 60),
            mc_samples=getattr(args, "samples", 100_000),
            output=getattr(args, "output", None),
        )


def parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))


def parse_partition(text: str) -> Partition:
    return Partition(parse_ints(text))


def parse_signature(text: str) -> Signature:
    return Signature(parse_ints(text))


def parse_angles(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(t) for t in text.split(","))


def parse_rationals(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(Fraction(t) for t in text.split(","))


def _c(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def emit(payload: dict, summary: str, output: str | None = None) -> None:
    text = json.dumps(payload, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(summary, file=sys.stderr)


def cmd_char(args) -> int:
    sig = parse_signature(args.sig)
    u = ucharacters.DiagonalUnitary(parse_angles(args.u))
    from weylchar.symfunc import weyl_dim

    dim = weyl_dim(sig)
    trace = ucharacters.char_eval(sig, u)
    payload = {
        "signature": sig.to_json(),
        "dim": dim,
        "trace": _c(trace),
        "normalized": _c(complex(trace) / dim),
    }
    if u.exact_values() is not None:
        exact = ucharacters.char_eval(sig, u, exact=True)
        payload["trace_exact"] = [str(exact.re), str(exact.im)]
    emit(payload, f"char: dim {dim}, normalized {complex(trace) / dim:.6g}", args.output)
    return 0


def cmd_branch(args) -> int:
    if args.op == "tensor":
        sig1, sig2 = parse_signature(args.sig1), parse_signature(args.sig2)
        comps = ucharacters.tensor_decompose(sig1, sig2, dim_budget=args.dim_budget)
        report = ucharacters.check_branching_inequalities(comps, (sig1, sig2))
        payload = {
            "op": "tensor",
            "components": [
                {"signature": s.to_json(), "multiplicity": m} for s, m in comps
            ],
            "inequalities_hold": report.holds,
        }
        emit(payload, f"tensor: {len(comps)} components, inequalities {report.holds}", args.output)
    else:
        sig = parse_signature(args.sig)
        dec = ucharacters.restrict_to_blocks(sig, args.d1, args.d2, dim_budget=args.dim_budget)
        report = ucharacters.check_branching_inequalities(dec, sig)
        payload = {
            "op": "restrict",
            "components": dec.to_json(),
            "total_dim": dec.total_dim(),
            "inequalities_hold": report.holds,
        }
        emit(payload, f"restrict: {len(dec.components)} components, dim {dec.total_dim()}", args.output)
    return 0 if report.holds else 1


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def cmd_moments(args) -> int:
    if args.sweep:
        failures = 0
        checked = 0
        estimates = 0
        for d in range(4, args.dmax + 1):
            for sig in signatures_with_entries(d, -args.entry_bound, args.entry_bound):
                for r in range(2, d + 1, 2):
                    f = moments.TraceZeroSigned(r, d)
                    dist = moments.weight_distribution(sig, f)
                    ok = moments.moment2_closed(sig, f) == dist.moment(2) and (
                        moments.moment4_closed(sig, f) == dist.moment(4)
                    )
                    checked += 1
                    if not ok:
                        failures += 1
                    if 3 * r >= 2 * d:
                        estimates += 1
                        if not moments.estimate_check(sig, f).holds:
                            failures += 1
        payload = {
            "sweep": True,
            "dmax": args.dmax,
            "checked": checked,
            "estimate_checked": estimates,
            "failures": failures,
        }
        emit(payload, f"moment sweep: {checked} identities, {failures} failures", args.output)
        return 0 if failures == 0 else 1

    sig = parse_signature(args.sig)
    f = moments.TraceZeroSigned(args.r, sig.d)
    dist = moments.weight_distribution(sig, f)
    m2c, m2b = moments.moment2_closed(sig, f), dist.moment(2)
    ratio = dist.moment_ratio()
    payload = {
        "signature": sig.to_json(),
        "r": args.r,
        "distribution": dist.to_json(),
        "m2": _frac_str(m2c),
        "m2_brute": _frac_str(m2b),
        "m4_over_m2_sq": None if ratio is None else _frac_str(ratio),
        "equal": m2c == m2b,
    }
    if sig.d >= 4:
        m4c, m4b = moments.moment4_closed(sig, f), dist.moment(4)
        payload["m4"] = _frac_str(m4c)
        payload["m4_brute"] = _frac_str(m4b)
        payload["equal"] = payload["equal"] and m4c == m4b
        if 3 * args.r >= 2 * sig.d:
            est = moments.estimate_check(sig, f)
            payload["estimate_holds"] = est.holds
            payload["equal"] = payload["equal"] and est.holds
    emit(payload, f"moments: m2 {m2c}, equal {payload['equal']}", args.output)
    return 0 if payload["equal"] else 1


def _random_centered_spectrum(rng, d: int) -> moments.HermitianSpectrum:
    while True:
        raw = [Fraction(int(rng.integers(-3, 4))) for _ in range(d)]
        if any(raw):
            break
    spec = moments.HermitianSpectrum(tuple(sorted(raw, reverse=True)))
    return moments.center(spec)


def cmd_hciz(args) -> int:
    import numpy as np

    rng = np.random.default_rng(args.seed)
    d = args.d
    a = (
        moments.HermitianSpectrum(parse_rationals(args.a))
        if args.a
        else _random_centered_spectrum(rng, d)
    )
    b = (
        moments.HermitianSpectrum(parse_rationals(args.b))
        if args.b
        else _random_centered_spectrum(rng, d)
    )
    if a.d != d or b.d != d:
        raise ValueError("spectrum length must match --d")
    report = moments.hciz_monte_carlo(a, b, args.n, args.samples, args.seed, mode=args.mode)
    if args.mode == "power":
        exact = moments.hciz_power_sum(a, b, args.n)
        exact_c = complex(float(exact))
        exact_json: object = _frac_str(exact)
    else:
        exact_c = complex(moments.hciz_exponential_exact(a, b))
        exact_json = _c(exact_c)
    dev = float(abs(report.estimate - exact_c))
    passed = bool(dev <= 3 * report.stderr + 1e-12)
    payload = {
        "a": [_frac_str(v) for v in a.eigenvalues],
        "b": [_frac_str(v) for v in b.eigenvalues],
        "mode": args.mode,
        "n": args.n,
        "exact": exact_json,
        "mc": report.to_json(),
        "deviation": dev,
        "pass": passed,
    }
    emit(payload, f"hciz: deviation {dev:.3g} vs 3*stderr {3 * report.stderr:.3g}", args.output)
    return 0 if passed else 1


def cmd_ergodic(args) -> int:
    diagram = afalgebra.preset_diagram(args.diagram, depth=max(args.nmax, 8))
    lam, mu = parse_partition(args.lam), parse_partition(args.mu)
    angles = parse_angles(args.u)
    blocks = []
    for i, d in enumerate(diagram.levels[args.level]):
        if i == args.block:
            if len(angles) != d:
                raise ValueError(f"block {i} at level {args.level} has size {d}")
            blocks.append(ucharacters.DiagonalUnitary(angles))
        else:
            blocks.append(ucharacters.DiagonalUnitary.identity(d))
    u = afalgebra.BlockUnitary(args.level, tuple(blocks))
    report = afalgebra.ergodic_sequence(diagram, lam, mu, u, args.nmax, block=args.block)
    payload = report.to_json()
    payload["diagram"] = args.diagram
    emit(payload, f"ergodic: limit {complex(report.limit):.6g}, rate {report.rate}", args.output)
    return 0


def cmd_schur_weyl(args) -> int:
    defect = afalgebra.schur_weyl_defect(args.n, args.p, args.q)
    payload = {
        "n": args.n,
        "p": args.p,
        "q": args.q,
        "defect": _frac_str(defect),
        "defect_float": float(defect),
    }
    emit(payload, f"schur-weyl: defect {defect}", args.output)
    return 0


def cmd_poisson(args) -> int:
    if args.stirling is not None:
        report = poisson.stirling_identity(Fraction(args.stirling))
        payload = {"stirling": report.to_json()}
        emit(payload, f"stirling: closed {payload['stirling']['closed_form']}", args.output)
        return 0
    if args.tv_a is not None:
        value = poisson.tv_bound(Fraction(args.tv_a), args.tv_k)
        payload = {"tv_bound": value, "a": args.tv_a, "k": args.tv_k}
        emit(payload, f"tv bound: {value:.6g}", args.output)
        return 0
    if args.kstep_k is not None:
        params = poisson.PoissonKernelParams(parse_rationals(args.kernel_a or "1"))
        report = poisson.kstep_semigroup_check(params, args.kstep_k, args.truncation)
        payload = {"kstep": report.to_json()}
        emit(payload, f"kstep: max deviation {report.max_deviation:.3g}", args.output)
        return 0 if report.passed else 1
    if args.series_n is not None:
        a = parse_rationals(args.kernel_a or "1")
        b = parse_rationals(args.kernel_b) if args.kernel_b else ()
        tau = [complex(*map(float, t.split(","))) for t in args.tau.split(";")] if args.tau else []
        taup = (
            [complex(*map(float, t.split(","))) for t in args.tau_prime.split(";")]
            if args.tau_prime
            else None
        )
        report = poisson.poisson_series_check(
            a, b, args.series_n, tau, taup, truncation=args.truncation
        )
        payload = {"series": report.to_json()}
        emit(payload, f"series: deviation {report.deviation:.3g}", args.output)
        return 0 if report.passed else 1
    raise ValueError("choose one of --stirling / --tv-a / --kstep-k / --series-n")


def cmd_validate_diagram(args) -> int:
    if args.file:
        with open(args.file) as fh:
            diagram = afalgebra.BratteliDiagram.from_json(json.load(fh))
    else:
        diagram = afalgebra.preset_diagram(args.diagram, depth=args.depth)
    report = afalgebra.validate_diagram(diagram)
    payload = report.to_json()
    payload["name"] = diagram.name
    emit(payload, f"diagram {diagram.name or args.file}: valid {report.valid}", args.output)
    return 0 if report.valid else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weylchar", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the JSON payload to this path instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("char", help="evaluate an irreducible U(d) character", parents=[common])
    p.add_argument("--sig", required=True, help="signature, e.g. 1,0,0,-1")
    p.add_argument("--u", required=True, help="eigenvalue angles in turns, e.g. 0.25,0,0,0")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("branch", help="tensor or restriction decomposition", parents=[common])
    p.add_argument("--op", choices=("tensor", "restrict"), required=True)
    p.add_argument("--sig", help="signature to restrict")
    p.add_argument("--sig1")
    p.add_argument("--sig2")
    p.add_argument("--d1", type=int)
    p.add_argument("--d2", type=int)
    p.add_argument("--dim-budget", type=int, default=ucharacters.DIM_BUDGET)
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("moments", help="weight-distribution moments, closed vs brute force", parents=[common])
    p.add_argument("--sig", help="signature")
    p.add_argument("--r", type=int, help="rank of the signed window")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--dmax", type=int, default=5)
    p.add_argument("--entry-bound", type=int, default=2)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("hciz", help="Monte Carlo unitary integral vs exact value", parents=[common])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("power", "exp"), default="power")
    p.add_argument("--a", help="spectrum of A as comma rationals")
    p.add_argument("--b", help="spectrum of B as comma rationals")
    p.set_defaults(func=cmd_hciz)

    p = sub.add_parser("ergodic", help="extreme-character sequence along a diagram", parents=[common])
    p.add_argument("--diagram", default="car")
    p.add_argument("--lam", default="")
    p.add_argument("--mu", default="")
    p.add_argument("--u", required=True, help="angles in the designated block")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--block", type=int, default=0)
    p.add_argument("--nmax", type=int, default=6)
    p.set_defaults(func=cmd_ergodic)

    p = sub.add_parser("schur-weyl", help="isotypic defect of the tensor-power tower", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_schur_weyl)

    p = sub.add_parser("poisson", help="Poisson kernel and tail checks", parents=[common])
    p.add_argument("--stirling", help="t value for the Stirling identity")
    p.add_argument("--tv-a", help="rate a_i for the total-variation bound")
    p.add_argument("--tv-k", type=int, default=1)
    p.add_argument("--kstep-k", type=int, help="k for the semigroup check")
    p.add_argument("--kernel-a", help="kernel rates, comma rationals")
    p.add_argument("--kernel-b", help="conjugate-side rates")
    p.add_argument("--series-n", type=int, help="level for the series check")
    p.add_argument("--tau", help="trace values 're,im' separated by ';'")
    p.add_argument("--tau-prime", help="conjugate-side trace values")
    p.add_argument("--truncation", type=int, default=60)
    p.set_defaults(func=cmd_poisson)

    p = sub.add_parser("validate-diagram", help="check a Bratteli diagram", parents=[common])
    p.add_argument("--diagram", help="preset name")
    p.add_argument("--file", help="JSON diagram file")
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(func=cmd_validate_diagram)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        config = RunConfig.from_args(args)
        if hasattr(args, "seed"):
            args.seed = config.seed
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
