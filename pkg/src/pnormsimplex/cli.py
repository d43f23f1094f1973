"""Command-line interface.

Subcommands: generate (kleeminty | random | dmdp), solve, analyze, verify,
and experiment.  Every path is deterministic given files, flags, and seeds;
the only varying output field is the timestamp column/key.  All rationals are
rendered as lowest-terms "p/q" strings (plain integers stay integers); the
--decimal flag adds 12-significant-digit convenience renderings that are
never used in any comparison.

Exit codes: 0 success / optimal / all checks passed; 2 malformed input;
3 infeasible; 4 unbounded; 5 degenerate pivot; 6 iteration limit;
7 degenerate instance refused; 8 a verification check failed; 9 other
workbench errors (budget, rank, dimensions, ...).
"""

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import analysis, engine, generators
from .errors import (
    DegenerateInstance,
    Infeasible,
    NoImprovingNonbasis,
    ParseError,
    WorkbenchError,
)
from .lp import (
    Basis,
    basic_solution,
    dual_solution,
    format_rational,
    load_lp,
    parse_rational,
    save_lp,
    validate,
)
from .rules import INFINITY, RuleKind, parse_rule

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_UNBOUNDED = 4
EXIT_DEGENERATE_PIVOT = 5
EXIT_ITERATION_LIMIT = 6
EXIT_DEGENERATE_INSTANCE = 7
EXIT_CHECK_FAILED = 8
EXIT_OTHER = 9

_OUTCOME_EXIT = {
    engine.OutcomeKind.OPTIMAL: EXIT_OK,
    engine.OutcomeKind.UNBOUNDED: EXIT_UNBOUNDED,
    engine.OutcomeKind.DEGENERATE_PIVOT: EXIT_DEGENERATE_PIVOT,
    engine.OutcomeKind.ITERATION_LIMIT: EXIT_ITERATION_LIMIT,
}


def _p_from_text(text: str):
    if text.strip().lower() == "inf":
        return INFINITY
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"bad p {text!r}; expected a positive integer or 'inf'")


def _basis_from_text(text: str) -> Basis:
    try:
        return Basis(tuple(int(t) for t in text.split(",") if t.strip()))
    except ValueError as exc:
        raise ParseError(f"bad basis {text!r}: {exc}") from exc


def _dec(value) -> str:
    return f"{float(value):.12g}"


def _q_dec(q_power, p) -> str:
    if p == INFINITY:
        return _dec(q_power)
    return f"{float(q_power) ** (1.0 / p):.12g}"


def _write_json(doc: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


# --- generate ---------------------------------------------------------------

def cmd_generate(args) -> int:
    if args.generator == "kleeminty":
        gen = generators.klee_minty(args.m)
        extra = None
    elif args.generator == "random":
        gen = generators.random_lp(
            args.m, args.n, args.seed,
            value_range=(args.value_range[0], args.value_range[1]))
        extra = None
    else:
        inst = generators.dmdp_generate(args.m, args.k, args.theta, args.seed)
        gen = generators.GeneratedInstance(inst.lp, inst.initial_basis)
        extra = inst.to_extra()
    save_lp(gen.lp, args.out, initial_basis=gen.initial_basis, extra=extra)
    print(f"wrote {gen.lp.name}: m={gen.lp.m} n={gen.lp.n} -> {args.out}")
    return EXIT_OK


# --- solve -------------------------------------------------------------------

def _initial_basis(lp, embedded, override):
    if override is not None:
        return override
    if embedded is not None:
        return embedded
    return engine.phase_one(lp)


def cmd_solve(args) -> int:
    lp, embedded, _ = load_lp(args.instance)
    validate(lp)
    rule = parse_rule(args.rule)
    basis = _initial_basis(lp, embedded, args.initial_basis)
    trace = engine.solve(lp, basis, rule, max_iters=args.max_iters)
    if args.trace:
        engine.save_trace(trace, args.trace)
    outcome = trace.outcome
    if outcome.kind is engine.OutcomeKind.OPTIMAL:
        obj = trace.records[-1].objective_after if trace.records else trace.initial.objective
        msg = f"optimal, {trace.iterations} iterations, objective {format_rational(obj)}"
        if args.decimal:
            msg += f" ({_dec(obj)})"
        print(msg)
    elif outcome.kind is engine.OutcomeKind.UNBOUNDED:
        print(f"unbounded along variable {outcome.ray_column} "
              f"after {trace.iterations} iterations")
    elif outcome.kind is engine.OutcomeKind.DEGENERATE_PIVOT:
        print(f"degenerate pivot after {trace.iterations} iterations; aborted")
    else:
        print(f"iteration limit reached after {trace.iterations} iterations")
    return _OUTCOME_EXIT[outcome.kind]


# --- analyze -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    lp, embedded, _ = load_lp(args.instance)
    validate(lp)
    catalog = analysis.enumerate_bfs(lp, max_bases=args.budget)
    out_dir = Path(args.out_dir) if args.out_dir else Path(args.instance).parent
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.instance).stem
    _write_json(analysis.catalog_to_dict(catalog), out_dir / f"{stem}.catalog.json")

    if not catalog.nondegenerate:
        print(f"{lp.name} is degenerate; catalog written, no q or bounds")
        return EXIT_DEGENERATE_INSTANCE

    summary = [
        f"{lp.name}: feasible bases {catalog.feasible_count}",
        f"gamma {format_rational(catalog.gamma)}",
        f"delta {format_rational(catalog.delta)}",
        f"z* {format_rational(catalog.z_star)}",
    ]
    try:
        qrep = analysis.compute_q(lp, catalog, args.p)
    except NoImprovingNonbasis:
        print("; ".join(summary))
        print("every feasible basis is optimal; q and bounds are undefined")
        return EXIT_OK
    _write_json(analysis.qreport_to_dict(qrep), out_dir / f"{stem}.qreport.json")
    summary.append(f"q^p {format_rational(qrep.q_power)}")
    if args.decimal:
        summary.append(f"q ~ {_q_dec(qrep.q_power, args.p)}")

    x0 = embedded if args.x0_basis is None else args.x0_basis
    if x0 is not None:
        x0_objective = basic_solution(lp, x0).objective
    else:
        x0_objective = max(e.objective for e in catalog.entries)
    if catalog.z_second is None or not x0_objective > catalog.z_star:
        print("; ".join(summary))
        print("start is already optimal (or no second-best objective); bounds skipped")
        return EXIT_OK
    bounds = analysis.evaluate_bounds(catalog, qrep, lp.m, lp.n, args.p, x0_objective)
    _write_json(analysis.bounds_to_dict(bounds), out_dir / f"{stem}.bounds.json")
    summary += [
        f"thm3 {bounds.thm3}", f"thm4 {bounds.thm4}",
        f"thm5 {bounds.thm5}", f"thm6 {bounds.thm6}",
        f"km1 {bounds.km1}", f"km2 {bounds.km2}", f"km3 {bounds.km3}",
    ]
    print("; ".join(summary))
    return EXIT_OK


# --- verify ------------------------------------------------------------------

def cmd_verify(args) -> int:
    lp, _, _ = load_lp(args.instance)
    validate(lp)
    trace = engine.load_trace(args.trace)
    catalog = analysis.enumerate_bfs(lp, max_bases=args.budget)
    p = trace.rule.p if trace.rule.kind is RuleKind.PNORM else args.analysis_p
    qrep = analysis.compute_q(lp, catalog, p)
    dual = dual_solution(lp, catalog.optimal_basis)
    report = analysis.verify_trace(lp, trace, catalog, qrep, dual)
    for c in report.checks:
        line = f"{'PASS' if c.passed else 'FAIL'} {c.name}"
        if not c.passed:
            line += f": {c.detail}"
        print(line)
    if args.out:
        _write_json(analysis.verification_to_dict(report), args.out)
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


# --- experiment -------------------------------------------------------------

_CSV_COLUMNS = [
    "instance", "rule", "p", "m", "n", "gamma", "delta", "q", "iterations",
    "thm3", "thm4", "thm5", "thm6", "km1", "km2", "km3",
    "all_checks_pass", "dmdp_thm7",
]
_DEC_COLUMNS = ["gamma_dec", "delta_dec", "q_dec"]


def _load_config(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("experiment config must be a JSON object")
    if not doc.get("instances"):
        raise ParseError("experiment config needs a nonempty 'instances' list")
    if not doc.get("rules"):
        raise ParseError("experiment config needs a nonempty 'rules' list")
    return doc


def _config_instances(doc, config_dir: Path):
    """Yield (lp, initial_basis or None, dmdp theta or None) for each source."""
    for src in doc["instances"]:
        if not isinstance(src, dict):
            raise ParseError(f"bad instance source {src!r}")
        if "file" in src:
            path = Path(src["file"])
            if not path.is_absolute():
                path = config_dir / path
            lp, basis, dmdp = load_lp(path)
            theta = parse_rational(dmdp["theta"]) if dmdp else None
            yield lp, basis, theta
            continue
        kind = src.get("type")
        if kind == "kleeminty":
            gen = generators.klee_minty(int(src["m"]))
            yield gen.lp, gen.initial_basis, None
        elif kind == "random":
            vr = tuple(src.get("value_range", (-9, 9)))
            for seed in src.get("seeds", [src.get("seed", 0)]):
                gen = generators.random_lp(int(src["m"]), int(src["n"]), int(seed),
                                           value_range=vr)
                yield gen.lp, gen.initial_basis, None
        elif kind == "dmdp":
            for seed in src.get("seeds", [src.get("seed", 0)]):
                inst = generators.dmdp_generate(
                    int(src["m"]), int(src["k"]), src["theta"], int(seed))
                yield inst.lp, inst.initial_basis, inst.theta
        else:
            raise ParseError(f"unknown generator type {kind!r}")


def _experiment_row(lp, basis, theta, rule, analysis_p, max_iters, caches):
    row = {col: "" for col in _CSV_COLUMNS + _DEC_COLUMNS + ["failure"]}
    row.update(instance=lp.name, rule=rule.designator, m=lp.m, n=lp.n)
    p = rule.p if rule.kind is RuleKind.PNORM else analysis_p
    row["p"] = "inf" if p == INFINITY else p
    try:
        if basis is None:
            basis = engine.phase_one(lp)
        trace = engine.solve(lp, basis, rule, max_iters=max_iters)
        row["iterations"] = trace.iterations
        if trace.outcome.kind is not engine.OutcomeKind.OPTIMAL:
            row["failure"] = trace.outcome.kind.value
            row["all_checks_pass"] = False
            return row, False

        if lp.name not in caches["catalog"]:
            caches["catalog"][lp.name] = analysis.enumerate_bfs(lp)
        catalog = caches["catalog"][lp.name]
        row["gamma"] = format_rational(catalog.gamma)
        row["delta"] = format_rational(catalog.delta)

        qkey = (lp.name, p)
        if qkey not in caches["q"]:
            caches["q"][qkey] = analysis.compute_q(lp, catalog, p)
        qrep = caches["q"][qkey]
        row["q"] = format_rational(qrep.q_power)
        row["gamma_dec"] = _dec(catalog.gamma)
        row["delta_dec"] = _dec(catalog.delta)
        row["q_dec"] = _q_dec(qrep.q_power, p)

        if lp.name not in caches["dual"]:
            caches["dual"][lp.name] = dual_solution(lp, catalog.optimal_basis)
        report = analysis.verify_trace(lp, trace, catalog, qrep, caches["dual"][lp.name])
        if report.bounds is not None:
            bounds = report.bounds
            row.update(thm3=bounds.thm3, thm4=bounds.thm4, thm5=bounds.thm5,
                       thm6=bounds.thm6, km1=bounds.km1, km2=bounds.km2,
                       km3=bounds.km3)
        if theta is not None:
            row["dmdp_thm7"] = generators.dmdp_bound(lp.m, lp.n, theta, p)
        row["all_checks_pass"] = report.all_passed
        return row, report.all_passed
    except WorkbenchError as exc:
        row["failure"] = f"{type(exc).__name__}: {exc}"
        row["all_checks_pass"] = False
        return row, False


def cmd_experiment(args) -> int:
    doc = _load_config(args.config)
    config_dir = Path(args.config).parent
    rules = [parse_rule(r) for r in doc["rules"]]
    analysis_p = doc.get("analysis_p", 2)
    if analysis_p == "inf":
        analysis_p = INFINITY
    max_iters = doc.get("max_iters")
    decimal = bool(doc.get("decimal", False)) or args.decimal
    out_path = Path(args.out) if args.out else Path(doc.get("output", "results.csv"))
    fmt = doc.get("format", "csv")

    caches = {"catalog": {}, "q": {}, "dual": {}}
    rows = []
    all_ok = True
    for lp, basis, theta in _config_instances(doc, config_dir):
        for rule in rules:
            row, ok = _experiment_row(
                lp, basis, theta, rule, analysis_p, max_iters, caches)
            rows.append(row)
            all_ok = all_ok and ok
    rows.sort(key=lambda r: (r["instance"], r["rule"]))

    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    columns = list(_CSV_COLUMNS)
    if decimal:
        columns += _DEC_COLUMNS
    columns += ["failure", "timestamp"]

    if fmt == "csv":
        with open(out_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([row.get(col, "") if col != "timestamp" else stamp
                                 for col in columns])
    elif fmt == "json":
        doc_out = {
            "timestamp": stamp,
            "rows": [{col: row.get(col, "") for col in columns if col != "timestamp"}
                     for row in rows],
        }
        _write_json(doc_out, out_path)
    else:
        raise ParseError(f"unknown output format {fmt!r}")

    print(f"wrote {len(rows)} rows -> {out_path}")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pnormsimplex",
        description="Exact simplex workbench with p-norm pricing and bound verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write an instance file")
    gsub = gen.add_subparsers(dest="generator", required=True)
    km = gsub.add_parser("kleeminty")
    km.add_argument("--m", type=int, required=True)
    km.add_argument("--out", required=True)
    km.set_defaults(func=cmd_generate)
    rnd = gsub.add_parser("random")
    rnd.add_argument("--m", type=int, required=True)
    rnd.add_argument("--n", type=int, required=True)
    rnd.add_argument("--seed", type=int, required=True)
    rnd.add_argument("--value-range", type=int, nargs=2, default=(-9, 9),
                     metavar=("LO", "HI"))
    rnd.add_argument("--out", required=True)
    rnd.set_defaults(func=cmd_generate)
    dm = gsub.add_parser("dmdp")
    dm.add_argument("--m", type=int, required=True)
    dm.add_argument("--k", type=int, required=True)
    dm.add_argument("--theta", type=parse_rational, required=True)
    dm.add_argument("--seed", type=int, required=True)
    dm.add_argument("--out", required=True)
    dm.set_defaults(func=cmd_generate)

    slv = sub.add_parser("solve", help="run one pivot rule on an instance")
    slv.add_argument("instance")
    slv.add_argument("--rule", required=True,
                     help="dantzig | best | pnorm:<p> | pnorm:inf | steepest")
    slv.add_argument("--initial-basis", type=_basis_from_text, default=None,
                     help="comma-separated variable indices; default: embedded basis or phase one")
    slv.add_argument("--max-iters", type=int, default=None)
    slv.add_argument("--trace", default=None, help="write the iteration trace here")
    slv.add_argument("--decimal", action="store_true")
    slv.set_defaults(func=cmd_solve)

    ana = sub.add_parser("analyze", help="enumerate all bases and evaluate bounds")
    ana.add_argument("instance")
    ana.add_argument("--p", type=_p_from_text, default=2)
    ana.add_argument("--x0-basis", type=_basis_from_text, default=None)
    ana.add_argument("--budget", type=int, default=analysis.DEFAULT_ENUM_BUDGET)
    ana.add_argument("--out-dir", default=None)
    ana.add_argument("--decimal", action="store_true")
    ana.set_defaults(func=cmd_analyze)

    ver = sub.add_parser("verify", help="re-check every guarantee on a saved trace")
    ver.add_argument("instance")
    ver.add_argument("trace")
    ver.add_argument("--analysis-p", type=_p_from_text, default=2,
                     help="p for q and bounds when the trace's rule has no p")
    ver.add_argument("--budget", type=int, default=analysis.DEFAULT_ENUM_BUDGET)
    ver.add_argument("--out", default=None)
    ver.set_defaults(func=cmd_verify)

    exp = sub.add_parser("experiment", help="run an instance x rule batch to CSV/JSON")
    exp.add_argument("config")
    exp.add_argument("--out", default=None, help="override the config's output path")
    exp.add_argument("--decimal", action="store_true")
    exp.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DegenerateInstance as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE_INSTANCE
    except WorkbenchError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_OTHER
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
