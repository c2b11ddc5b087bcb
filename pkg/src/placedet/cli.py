"""Command-line entry point.

Subcommands expose the exact evaluator (``pe``), the brute-force search
(``optimal``), the partition and majorization utilities, the plane sweep CSV
writer, the Monte Carlo cross-check, and the structural verifiers. Outputs
are JSON (CSV for sweeps and the majorization matrix) and are pure functions
of the arguments, so repeated runs are byte-identical. Exit status: 0 on
success / verification pass, 1 on verification failure, 2 on usage errors or
refused compute budgets.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from . import analysis, montecarlo
from .detection import error_probability, optimal_placements
from .majorization import MajorizationVerdict, compare
from .model import SensorModel, canonicalize_placement
from .partitions import enumerate_partitions

SCHEMA_VERSION = "1"

_VERIFY_TARGETS = ("thm41", "thm42", "cor41", "prop51", "counterexample", "conjecture")
_PROP51_PAIRS = ((3, 3), (3, 4), (4, 4), (4, 5), (5, 6))


@dataclass(frozen=True)
class RunConfig:
    """Validated arguments for one invocation."""

    subcommand: str
    m: int | None = None
    n: int | None = None
    p_d: float | None = None
    p_f: float | None = None
    placement: tuple[int, ...] | None = None
    step: float | None = None
    trials: int | None = None
    seed: int | None = None
    tie_rule: str | None = None
    threads: int = 1
    out: str | None = None
    fmt: str = "json"
    target: str | None = None
    max_m: int | None = None
    n1: int | None = None
    n2: int | None = None
    region: str | None = None


def _parse_placement(text: str) -> tuple[int, ...]:
    try:
        counts = tuple(int(part) for part in text.split("-"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"placement must be dash-joined integers like 2-1-1-0, got {text!r}"
        ) from None
    return counts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="placedet",
        description="Exact sensor-placement toolkit for intruder detection.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_model(p: argparse.ArgumentParser) -> None:
        p.add_argument("--pd", type=float, required=True, help="per-sensor detection probability")
        p.add_argument("--pf", type=float, required=True, help="per-sensor false-alarm probability")

    p_pe = sub.add_parser("pe", help="exact error probability of one placement")
    p_pe.add_argument("--m", type=int, help="total sensors (validated against --placement)")
    p_pe.add_argument("--n", type=int, required=True)
    add_model(p_pe)
    p_pe.add_argument("--placement", type=_parse_placement, required=True)
    p_pe.add_argument("--out")

    p_opt = sub.add_parser("optimal", help="brute-force optimal placements")
    p_opt.add_argument("--m", type=int, required=True)
    p_opt.add_argument("--n", type=int, required=True)
    add_model(p_opt)
    p_opt.add_argument("--out")

    p_parts = sub.add_parser("partitions", help="list all placements of m sensors")
    p_parts.add_argument("--m", type=int, required=True)
    p_parts.add_argument("--out")

    p_maj = sub.add_parser("majorize", help="majorization comparability matrix (CSV)")
    p_maj.add_argument("--m", type=int, required=True)
    p_maj.add_argument("--out")

    p_sweep = sub.add_parser("sweep", help="optimal-placement region map over the plane")
    p_sweep.add_argument("--m", type=int, required=True)
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--step", type=float, default=0.005)
    p_sweep.add_argument("--region", choices=("pd_ge_pf", "full"), default="pd_ge_pf")
    p_sweep.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--threads", type=int, default=1)
    p_sweep.add_argument("--out")

    p_sim = sub.add_parser("simulate", help="Monte Carlo cross-check of the evaluator")
    p_sim.add_argument("--m", type=int)
    p_sim.add_argument("--n", type=int, required=True)
    add_model(p_sim)
    p_sim.add_argument("--placement", type=_parse_placement, required=True)
    p_sim.add_argument("--trials", type=int, default=1_000_000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--ties", dest="tie_rule", choices=("uniform", "lowest"), default="uniform")
    p_sim.add_argument("--threads", type=int, default=1)
    p_sim.add_argument("--out")

    p_ver = sub.add_parser("verify", help="numerical verification of the structural claims")
    p_ver.add_argument("target", choices=_VERIFY_TARGETS)
    p_ver.add_argument("--m", type=int)
    p_ver.add_argument("--n", type=int)
    p_ver.add_argument("--n1", type=int)
    p_ver.add_argument("--n2", type=int)
    p_ver.add_argument("--max-m", dest="max_m", type=int, default=5)
    p_ver.add_argument("--step", type=float)
    p_ver.add_argument("--threads", type=int, default=1)
    p_ver.add_argument("--out")
    return parser


def build_config(parser: argparse.ArgumentParser, args: argparse.Namespace) -> RunConfig:
    """Validate the parsed namespace; argparse errors carry exit status 2."""
    ns = vars(args)
    sub = ns["subcommand"]
    for prob_key in ("pd", "pf"):
        value = ns.get(prob_key)
        if value is not None and not 0.0 <= value <= 1.0:
            parser.error(f"--{prob_key} must lie in [0, 1], got {value}")
    placement = ns.get("placement")
    m = ns.get("m")
    if placement is not None:
        if any(v < 0 for v in placement):
            parser.error(f"--placement entries must be non-negative, got {placement}")
        total = sum(placement)
        if total < 1:
            parser.error("--placement must contain at least one sensor")
        if m is not None and m != total:
            parser.error(f"--m {m} does not match placement total {total}")
        m = total
    if m is not None and m < 1:
        parser.error(f"--m must be >= 1, got {m}")
    n = ns.get("n")
    if n is not None and n < 1:
        parser.error(f"--n must be >= 1, got {n}")
    if sub in ("pe", "optimal", "simulate") and m is not None and n is not None and m > n:
        parser.error(f"need m <= n (at most one sensor per point count), got m={m} n={n}")
    trials = ns.get("trials")
    if trials is not None and trials < 1:
        parser.error(f"--trials must be >= 1, got {trials}")
    threads = ns.get("threads", 1)
    if threads < 1:
        parser.error(f"--threads must be >= 1, got {threads}")
    tie_rule = ns.get("tie_rule")
    if tie_rule is not None:
        tie_rule = {"uniform": "uniform_random", "lowest": "lowest_index"}[tie_rule]
    target = ns.get("target")
    if sub == "verify" and target == "thm42":
        if ns.get("m") is None or ns.get("n1") is None or ns.get("n2") is None:
            parser.error("verify thm42 requires --m, --n1 and --n2")
        if not ns["m"] < ns["n1"] < ns["n2"]:
            parser.error("verify thm42 requires m < n1 < n2")
    if sub == "verify" and target == "conjecture":
        if ns.get("m") is None or ns.get("n") is None:
            parser.error("verify conjecture requires --m and --n")
    if sub == "verify" and target == "prop51":
        if (ns.get("m") is None) != (ns.get("n") is None):
            parser.error("verify prop51 takes --m and --n together (or neither)")
    return RunConfig(
        subcommand=sub,
        m=m,
        n=n,
        p_d=ns.get("pd"),
        p_f=ns.get("pf"),
        placement=placement,
        step=ns.get("step"),
        trials=trials,
        seed=ns.get("seed"),
        tie_rule=tie_rule,
        threads=threads,
        out=ns.get("out"),
        fmt=ns.get("fmt", "json"),
        target=target,
        max_m=ns.get("max_m"),
        n1=ns.get("n1"),
        n2=ns.get("n2"),
        region=ns.get("region"),
    )


def _jsonable(value):
    """Make floats JSON-safe: non-finite values become strings."""
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        analysis.write_atomic(out, text)


def _emit_json(payload: dict, out: str | None) -> None:
    body = {"schema_version": SCHEMA_VERSION, **payload}
    _emit(json.dumps(_jsonable(body), indent=2) + "\n", out)


def dispatch(config: RunConfig) -> int:
    if config.subcommand == "pe":
        placement = canonicalize_placement(config.placement, config.n)
        model = SensorModel(p_d=config.p_d, p_f=config.p_f)
        result = error_probability(placement, model, config.n)
        _emit_json(
            {"pe": result.value, "placement": placement.label(), "n": config.n},
            config.out,
        )
        return 0

    if config.subcommand == "optimal":
        model = SensorModel(p_d=config.p_d, p_f=config.p_f)
        opt = optimal_placements(config.m, config.n, model)
        _emit_json(
            {
                "best": [p.label() for p in opt.best],
                "pe_min": opt.pe_min,
                "margin": opt.margin,
                "strict": opt.strict,
            },
            config.out,
        )
        return 0

    if config.subcommand == "partitions":
        lines = ["-".join(map(str, p)) for p in enumerate_partitions(config.m)]
        _emit("\n".join(lines) + "\n", config.out)
        return 0

    if config.subcommand == "majorize":
        _emit(_majorize_csv(config.m), config.out)
        return 0

    if config.subcommand == "sweep":
        region_map = analysis.sweep_plane(
            config.m, config.n, config.step, region=config.region, threads=config.threads
        )
        if config.fmt == "csv":
            _emit(analysis.region_csv_text(region_map), config.out)
        else:
            cells = [
                {
                    "p_f": c.p_f,
                    "p_d": c.p_d,
                    "best": ["-".join(map(str, b)) for b in c.best],
                    "pe_min": c.pe_min,
                    "margin": c.margin,
                    "strict": c.strict,
                }
                for c in region_map.cells
            ]
            _emit_json(
                {"m": config.m, "n": config.n, "step": config.step, "cells": cells},
                config.out,
            )
        return 0

    if config.subcommand == "simulate":
        placement = canonicalize_placement(config.placement, config.n)
        model = SensorModel(p_d=config.p_d, p_f=config.p_f)
        sim = montecarlo.simulate(
            placement,
            model,
            n=config.n,
            trials=config.trials,
            seed=config.seed,
            tie_rule=config.tie_rule,
            threads=config.threads,
        )
        exact = error_probability(placement, model, config.n).value
        z = (sim.pe_hat - exact) / sim.std_err if sim.std_err > 0 else 0.0
        _emit_json(
            {
                "trials": sim.trials,
                "errors": sim.errors,
                "pe_hat": sim.pe_hat,
                "std_err": sim.std_err,
                "seed": sim.seed,
                "tie_rule": config.tie_rule,
                "analytic_pe": exact,
                "z_score": z,
            },
            config.out,
        )
        return 0

    if config.subcommand == "verify":
        reports = _run_verify(config)
        if len(reports) == 1:
            _emit_json(reports[0].to_json_dict(), config.out)
        else:
            _emit_json(
                {"reports": [r.to_json_dict() for r in reports]}, config.out
            )
        return 0 if all(r.passed for r in reports) else 1

    raise AssertionError(f"unhandled subcommand {config.subcommand}")


def _run_verify(config: RunConfig) -> list[analysis.VerificationReport]:
    target = config.target
    if target == "thm41":
        step = 0.02 if config.step is None else config.step
        return [analysis.verify_thm41(m_max=config.max_m, step=step)]
    if target == "thm42":
        step = 0.05 if config.step is None else config.step
        return [analysis.verify_thm42(config.m, config.n1, config.n2, step=step)]
    if target == "cor41":
        step = 0.01 if config.step is None else config.step
        m = 3 if config.m is None else config.m
        return [analysis.verify_cor41(m, step=step, threads=config.threads)]
    if target == "prop51":
        step = 0.01 if config.step is None else config.step
        pairs = _PROP51_PAIRS if config.m is None else ((config.m, config.n),)
        return [
            analysis.verify_prop51(m, n, step=step, threads=config.threads)
            for m, n in pairs
        ]
    if target == "counterexample":
        return [analysis.verify_counterexample(threads=config.threads)]
    if target == "conjecture":
        step = 0.01 if config.step is None else config.step
        region_map = analysis.sweep_plane(
            config.m, config.n, step, threads=config.threads
        )
        return [analysis.check_conjecture_chain(region_map)]
    raise AssertionError(f"unhandled verify target {target}")


_VERDICT_CODES = {
    MajorizationVerdict.STRICTLY_ABOVE: "A",
    MajorizationVerdict.STRICTLY_BELOW: "B",
    MajorizationVerdict.EQUAL: "E",
    MajorizationVerdict.INCOMPARABLE: "I",
}


def _majorize_csv(m: int) -> str:
    parts = list(enumerate_partitions(m))
    labels = ["-".join(map(str, p)) for p in parts]
    lines = ["placement," + ",".join(labels)]
    for p, label in zip(parts, labels):
        codes = [_VERDICT_CODES[compare(p, q)] for q in parts]
        lines.append(label + "," + ",".join(codes))
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = build_config(parser, args)
    try:
        return dispatch(config)
    except analysis.BudgetError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
