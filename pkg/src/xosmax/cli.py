"""Experiment harness and command-line interface.

Subcommands:

* ``gen``     write an instance document (explicit weights or a hidden family)
* ``solve``   run one solver for one or more seeded trials on an instance
* ``bench``   run a config-driven trial suite and aggregate it
* ``verify``  materialize a small instance and run the class checks

Machine output (instance JSON, trial records) goes to stdout or ``--out``;
human-readable summaries go to stderr. Exit codes: 0 success, 2 bad
arguments, 3 instance error, 4 cap exceeded.

Trial i of a suite uses seed (base_seed + i) mod 2^64 and a fresh oracle;
the optimum reference is computed once per suite on a separate oracle, so
reported call counts are the solver's own. CSV columns are fixed
(trial,seed,algo,n,k,value,opt,ratio,calls,ms) and replaying a suite with
the same base_seed is byte-identical because the ms column is 0 unless
``--record-timing`` asks for measured wall time.
"""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .algorithms import (
    DEFAULT_BRUTE_CAP,
    EnumParams,
    SamplingParams,
    solve_brute_force,
    solve_enum_small_sets,
    solve_exact_2xos,
    solve_exact_star,
    solve_k_minus_1,
    solve_random_sampling,
)
from .classify import CLASS_NAMES, check_class, check_star_condition, materialize
from .core import (
    CapExceededError,
    InstanceFormatError,
    ValueOverflowError,
    elements_of,
)
from .hardness import uniform_size_probe
from .instances import InstanceHandle, dump_instance, instance_from_dict, load_instance

ALGORITHMS = ("enum", "sample", "exact2", "kminus1", "star", "brute", "probe")

CSV_COLUMNS = ("trial", "seed", "algo", "n", "k", "value", "opt", "ratio", "calls", "ms")

_SEED_MOD = 1 << 64


class UsageError(ValueError):
    """Bad command-line arguments or config values (exit code 2)."""


@dataclass(frozen=True)
class TrialRecord:
    """One solver run: what it returned, what it cost, and how it compares.

    ``ratio`` is opt/value (>= 1 when both are positive), 1.0 when both are
    zero, infinity when value is nonpositive but opt is positive, and None
    when opt is unknown. ``opt_source`` is one of planted/brute/unknown.
    """

    trial: int
    seed: int
    algo: str
    n: int
    k: int | None
    value: int
    opt: int | None
    ratio: float | None
    calls: int
    wall_time_ms: float
    opt_source: str
    budget_override: int | None = None


def _ratio(opt: int | None, value: int) -> float | None:
    if opt is None:
        return None
    if value > 0:
        return opt / value
    if opt == value:
        return 1.0
    return math.inf


def run_trial(
    handle: InstanceHandle,
    algo: str,
    trial: int = 0,
    seed: int = 0,
    *,
    epsilon=None,
    budget_override: int | None = None,
    high_probability: bool = False,
    brute_cap: int = DEFAULT_BRUTE_CAP,
    queries: int = 1000,
    opt_info: tuple[int | None, str] | None = None,
) -> TrialRecord:
    """Run one solver on a fresh oracle and assemble the record.

    ``opt_info`` lets suite runners compute the optimum reference once; when
    absent it is computed here on a separate oracle-free path.
    """
    oracle = handle.oracle()
    t0 = time.perf_counter()
    if algo == "enum":
        if epsilon is None:
            raise UsageError("enum needs --epsilon (an exact rational like 1/3)")
        report = solve_enum_small_sets(oracle, EnumParams(epsilon))
    elif algo == "sample":
        if epsilon is None:
            raise UsageError("sample needs --epsilon (an exact rational like 1/3)")
        report = solve_random_sampling(
            oracle,
            SamplingParams(
                epsilon,
                seed=seed,
                sample_budget_override=budget_override,
                high_probability=high_probability,
            ),
        )
    elif algo == "exact2":
        report = solve_exact_2xos(oracle)
    elif algo == "kminus1":
        report = solve_k_minus_1(oracle)
    elif algo == "star":
        report = solve_exact_star(oracle)
    elif algo == "brute":
        report = solve_brute_force(oracle, cap=brute_cap)
    elif algo == "probe":
        if handle.kind != "needle":
            raise UsageError("probe runs on needle instances only")
        report = uniform_size_probe(oracle, handle.hidden.t, queries, seed)
    else:
        raise UsageError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")
    ms = (time.perf_counter() - t0) * 1000.0
    opt, source = opt_info if opt_info is not None else handle.exact_optimum(brute_cap)
    return TrialRecord(
        trial=trial,
        seed=seed,
        algo=report.algorithm,
        n=handle.n,
        k=handle.width,
        value=report.value,
        opt=opt,
        ratio=_ratio(opt, report.value),
        calls=report.oracle_calls,
        wall_time_ms=ms,
        opt_source=source,
        budget_override=report.budget_override,
    )


@dataclass(frozen=True)
class ExperimentConfig:
    """Bench suite: instance + algorithm + params + trial count + base seed."""

    instance: dict
    algorithm: str
    trials: int
    base_seed: int = 0
    params: dict | None = None
    format: str = "csv"

    @classmethod
    def from_dict(cls, doc: dict, base_dir: Path | None = None) -> "ExperimentConfig":
        if not isinstance(doc, dict):
            raise UsageError("config must be a JSON object")
        inst = doc.get("instance")
        if isinstance(inst, str):
            path = Path(inst)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            inst = load_instance(path).to_json_dict()
        if not isinstance(inst, dict):
            raise UsageError("config field 'instance' must be a document or file path")
        algo = doc.get("algorithm")
        if algo not in ALGORITHMS:
            raise UsageError(f"config algorithm must be one of {', '.join(ALGORITHMS)}")
        trials = doc.get("trials")
        if not isinstance(trials, int) or isinstance(trials, bool) or trials < 0:
            raise UsageError("config field 'trials' must be a nonnegative integer")
        base_seed = doc.get("base_seed", 0)
        if not isinstance(base_seed, int) or isinstance(base_seed, bool) or base_seed < 0:
            raise UsageError("config field 'base_seed' must be a nonnegative integer")
        params = doc.get("params", {})
        if not isinstance(params, dict):
            raise UsageError("config field 'params' must be an object")
        fmt = doc.get("format", "csv")
        if fmt not in ("json", "csv"):
            raise UsageError("config field 'format' must be 'json' or 'csv'")
        return cls(inst, algo, trials, base_seed, params, fmt)


def run_suite(
    config: ExperimentConfig,
    brute_cap: int = DEFAULT_BRUTE_CAP,
) -> list[TrialRecord]:
    """Run the suite sequentially; records are ordered by trial index.

    Trials are independent (fresh oracle and seed each); only the record
    list is shared, so a future parallel runner only has to sort by trial.
    """
    handle = instance_from_dict(config.instance)
    params = config.params or {}
    epsilon = params.get("epsilon")
    budget_override = params.get("budget_override")
    high_probability = bool(params.get("high_probability", False))
    queries = params.get("queries", 1000)
    opt_info = handle.exact_optimum(brute_cap)
    records = []
    for i in range(config.trials):
        records.append(
            run_trial(
                handle,
                config.algorithm,
                trial=i,
                seed=(config.base_seed + i) % _SEED_MOD,
                epsilon=epsilon,
                budget_override=budget_override,
                high_probability=high_probability,
                brute_cap=brute_cap,
                queries=queries,
                opt_info=opt_info,
            )
        )
    records.sort(key=lambda r: r.trial)
    return records


# ---------------------------------------------------------------------------
# Serialization


def record_to_json_dict(record: TrialRecord) -> dict:
    ratio: object
    if record.ratio is None:
        ratio = None
    elif math.isinf(record.ratio):
        ratio = "inf"
    else:
        ratio = record.ratio
    return {
        "trial": record.trial,
        "seed": record.seed,
        "algo": record.algo,
        "n": record.n,
        "k": record.k,
        "value": record.value,
        "opt": record.opt,
        "ratio": ratio,
        "calls": record.calls,
        "ms": round(record.wall_time_ms, 3),
        "opt_source": record.opt_source,
        "budget_override": record.budget_override,
    }


def records_to_json_lines(records: Sequence[TrialRecord]) -> str:
    return "".join(json.dumps(record_to_json_dict(r)) + "\n" for r in records)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "inf" if math.isinf(value) else repr(value)
    return str(value)


def records_to_csv(records: Sequence[TrialRecord], record_timing: bool = False) -> str:
    """Fixed-column CSV; ms is 0 unless timing was explicitly requested,
    which keeps same-seed replays byte-identical."""
    lines = [",".join(CSV_COLUMNS)]
    for r in records:
        ms = int(round(r.wall_time_ms)) if record_timing else 0
        cells = (r.trial, r.seed, r.algo, r.n, r.k, r.value, r.opt, r.ratio, r.calls, ms)
        lines.append(",".join(_csv_cell(c) for c in cells))
    return "\n".join(lines) + "\n"


def summarize(records: Sequence[TrialRecord]) -> str:
    """Human summary for stderr: call quantiles, ratio spread, success rate."""
    if not records:
        return "0 trials"
    first = records[0]
    lines = [f"{len(records)} trial(s) of {first.algo} on n={first.n}"]
    calls = [r.calls for r in records]
    lines.append(
        f"  calls: min={min(calls)} median={statistics.median(calls)} max={max(calls)}"
    )
    finite = [r.ratio for r in records if r.ratio is not None and math.isfinite(r.ratio)]
    infinite = sum(1 for r in records if r.ratio is not None and math.isinf(r.ratio))
    if finite:
        lines.append(
            f"  ratio (opt/value): min={min(finite):.4f} "
            f"mean={statistics.fmean(finite):.4f} max={max(finite):.4f}"
            + (f" (+{infinite} infinite)" if infinite else "")
        )
    if records[0].opt is not None:
        hits = sum(1 for r in records if r.value == r.opt)
        lines.append(f"  optimum hit rate: {hits}/{len(records)}")
    mean_ms = statistics.fmean(r.wall_time_ms for r in records)
    lines.append(f"  mean wall time: {mean_ms:.3f} ms")
    return "\n".join(lines)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_records(records, fmt: str, out: str | None, record_timing: bool) -> None:
    if fmt == "csv":
        _emit(records_to_csv(records, record_timing=record_timing), out)
    else:
        _emit(records_to_json_lines(records), out)


# ---------------------------------------------------------------------------
# Subcommands


def _parse_weights_arg(text: str) -> list[list[int]]:
    try:
        rows = [[int(cell) for cell in row.split(",")] for row in text.split(";") if row]
    except ValueError as exc:
        raise UsageError(f"bad --weights (rows ';'-separated, entries ','): {exc}") from exc
    if not rows:
        raise UsageError("--weights is empty")
    return rows


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "explicit":
        rows = _parse_weights_arg(args.weights)
        doc = {"type": "explicit", "n": len(rows[0]), "weights": rows}
    elif args.family == "needle":
        doc = {
            "type": "needle",
            "params": {"n_hat": args.nhat, "s": args.s, "t": args.t},
            "seed": args.seed,
        }
    elif args.family == "hard-general":
        doc = {
            "type": "hard_general_remark" if args.remark else "hard_general",
            "params": {"n": args.n, "tau": args.tau},
            "seed": args.seed,
        }
    else:  # hard-kxos
        doc = {
            "type": "hard_kxos",
            "params": {"k": args.k, "n_tilde": args.ntilde, "a": args.a},
            "seed": args.seed,
        }
    handle = instance_from_dict(doc)  # validates parameters
    _emit(dump_instance(handle), args.out)
    width = handle.width if handle.width is not None else "unknown"
    hidden_note = "" if handle.kind == "explicit" else " (planted data hidden; derived from seed)"
    print(
        f"{handle.kind} instance: n={handle.n} width={width}{hidden_note}",
        file=sys.stderr,
    )
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    handle = load_instance(args.instance)
    opt_info = handle.exact_optimum(args.brute_cap)
    records = []
    for i in range(args.trials):
        records.append(
            run_trial(
                handle,
                args.algo,
                trial=i,
                seed=(args.seed + i) % _SEED_MOD,
                epsilon=args.epsilon,
                budget_override=args.budget_override,
                high_probability=args.high_probability,
                brute_cap=args.brute_cap,
                queries=args.queries,
                opt_info=opt_info,
            )
        )
    _emit_records(records, args.format, args.out, args.record_timing)
    print(summarize(records), file=sys.stderr)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    path = Path(args.config)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}") from exc
    config = ExperimentConfig.from_dict(doc, base_dir=path.parent)
    if args.seed is not None:
        config = ExperimentConfig(
            config.instance, config.algorithm, config.trials, args.seed, config.params, config.format
        )
    records = run_suite(config, brute_cap=args.brute_cap)
    fmt = args.format if args.format else config.format
    _emit_records(records, fmt, args.out, args.record_timing)
    print(summarize(records), file=sys.stderr)
    return 0


def _witness_text(witness) -> str:
    parts = []
    for w in witness:
        parts.append("{" + ",".join(str(v) for v in elements_of(w)) + "}")
    return " ".join(parts)


def cmd_verify(args: argparse.Namespace) -> int:
    handle = load_instance(args.instance)
    if handle.explicit is not None:
        dense = materialize(handle.explicit)
        rep = handle.explicit
    else:
        dense = materialize(handle.hidden.evaluate, handle.n)
        rep = None
        if hasattr(handle.hidden, "representation"):
            try:
                rep = handle.hidden.representation()
            except InstanceFormatError:
                rep = None
    result: dict[str, object] = {}
    for cls in CLASS_NAMES:
        ok, witness = check_class(dense, cls)
        result[cls] = {"ok": ok, "witness": list(witness) if witness else None}
        note = "pass" if ok else f"FAIL witness {_witness_text(witness)}"
        print(f"{cls}: {note}", file=sys.stderr)
    if rep is not None:
        ok, witness = check_star_condition(rep)
        result["star_condition"] = {"ok": ok, "witness": list(witness) if witness else None}
        note = (
            "pass"
            if ok
            else f"FAIL witness element {witness[0]} component {witness[1]}"
        )
        print(f"star condition: {note}", file=sys.stderr)
    else:
        result["star_condition"] = None
        print("star condition: not applicable (no explicit representation)", file=sys.stderr)
    _emit(json.dumps(result, indent=2) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# Parser


def _add_common_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write machine output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xosmax",
        description="Query-efficient maximization of XOS (max-of-additive) set functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write an instance document")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    g_exp = gen_sub.add_parser("explicit", help="explicit weight matrix")
    g_exp.add_argument("--weights", required=True, help="rows ';'-separated, entries ','")
    g_nee = gen_sub.add_parser("needle", help="hidden threshold set")
    g_nee.add_argument("--nhat", type=int, required=True)
    g_nee.add_argument("--s", type=int, required=True)
    g_nee.add_argument("--t", type=int, required=True)
    g_nee.add_argument("--seed", type=int, default=0)
    g_hg = gen_sub.add_parser("hard-general", help="hidden half-size set with floor")
    g_hg.add_argument("--n", type=int, required=True)
    g_hg.add_argument("--tau", type=int, required=True)
    g_hg.add_argument("--seed", type=int, default=0)
    g_hg.add_argument("--remark", action="store_true", help="max(additive, floor) variant")
    g_kx = gen_sub.add_parser("hard-kxos", help="width-k blocked construction")
    g_kx.add_argument("--k", type=int, required=True)
    g_kx.add_argument("--ntilde", type=int, required=True)
    g_kx.add_argument("--a", type=int, required=True)
    g_kx.add_argument("--seed", type=int, default=0)
    for p in (g_exp, g_nee, g_hg, g_kx):
        _add_common_output(p)
        p.set_defaults(func=cmd_gen)

    solve = sub.add_parser("solve", help="run a solver on an instance")
    solve.add_argument("--algo", required=True, choices=ALGORITHMS)
    solve.add_argument("--instance", required=True, help="instance JSON file")
    solve.add_argument("--trials", type=int, default=1)
    solve.add_argument("--seed", type=int, default=0, help="base seed; trial i uses seed+i")
    solve.add_argument("--epsilon", help="exact rational like 1/3 (enum and sample)")
    solve.add_argument("--budget-override", type=int, help="per-round sample budget (sample)")
    solve.add_argument("--high-probability", action="store_true",
                       help="multiply the sample budget by ceil(2*epsilon*n)")
    solve.add_argument("--queries", type=int, default=1000, help="probe query count")
    solve.add_argument("--brute-cap", type=int, default=DEFAULT_BRUTE_CAP)
    solve.add_argument("--format", choices=("json", "csv"), default="json")
    solve.add_argument("--record-timing", action="store_true",
                       help="write measured ms into CSV (breaks byte-identical replay)")
    _add_common_output(solve)
    solve.set_defaults(func=cmd_solve)

    bench = sub.add_parser("bench", help="run a config-driven suite")
    bench.add_argument("--config", required=True, help="experiment config JSON file")
    bench.add_argument("--seed", type=int, help="override the config base_seed")
    bench.add_argument("--brute-cap", type=int, default=DEFAULT_BRUTE_CAP)
    bench.add_argument("--format", choices=("json", "csv"),
                       help="override the config output format")
    bench.add_argument("--record-timing", action="store_true",
                       help="write measured ms into CSV (breaks byte-identical replay)")
    _add_common_output(bench)
    bench.set_defaults(func=cmd_bench)

    verify = sub.add_parser("verify", help="class checks on a materialized instance (n <= 16)")
    verify.add_argument("--instance", required=True, help="instance JSON file")
    _add_common_output(verify)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed a message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InstanceFormatError as exc:
        print(f"instance error: {exc}", file=sys.stderr)
        return 3
    except ValueOverflowError as exc:
        print(f"instance error: {exc}", file=sys.stderr)
        return 3
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
