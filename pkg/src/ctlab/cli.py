"""Command-line entry point.

One verb per task; global options --model/--seed/--out/--format apply where
meaningful.  Every run prints a reproducibility header with the resolved
parameters; file outputs are written atomically (temp file + rename) and
numeric fields are rounded to 6 significant digits in both CSV and JSON, so
the two formats decode to identical values.

Exit codes: 0 success, 1 runtime error (message on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import replace
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import __version__
from .bn import BNError, most_informative_features
from .covid import AlertPolicy, CaseInput, assess, load_model
from .epi import (
    CRITERIA,
    CohortParams,
    TraceStrategy,
    default_sweet_spot_template,
    generate_contact_graph,
    realize_outbreak,
    required_install_fraction,
    run_agent_sim,
    run_cohort,
    sweet_spot_search,
    table1,
    trace_contacts,
)
from .surv import Window, export_heatmap
from .surv.store import ReportStore

__all__ = ["main"]


def _sig6(value: Any) -> Any:
    """Round floats to 6 significant digits so CSV and JSON agree exactly."""
    if isinstance(value, bool) or not isinstance(value, float):
        return value
    return float(f"{value:.6g}")


def _atomic_write(path: Path, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _encode_rows(rows: list[dict[str, Any]], fmt: str) -> bytes:
    rows = [{k: _sig6(v) for k, v in row.items()} for row in rows]
    if fmt == "json":
        return (json.dumps(rows, indent=2, sort_keys=False) + "\n").encode("utf-8")
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue().encode("utf-8")


def _emit(rows: list[dict[str, Any]], args: argparse.Namespace) -> None:
    data = _encode_rows(rows, args.format)
    if args.out:
        _atomic_write(Path(args.out), data)
        print(f"wrote {args.out} ({len(rows)} rows)")
    else:
        sys.stdout.write(data.decode("utf-8"))


def _header(args: argparse.Namespace, **resolved: Any) -> None:
    """Reproducibility header: the exact parameter set this run used."""
    pairs = {"verb": args.verb, **resolved}
    if getattr(args, "seed", None) is not None:
        pairs["seed"] = args.seed
    rendered = " ".join(f"{k}={v}" for k, v in pairs.items())
    print(f"# ctlab {__version__} | {rendered}", file=sys.stderr)


def _cohort_params(args: argparse.Namespace, template: CohortParams | None = None) -> CohortParams:
    template = template or CohortParams()
    names = ("adoption", "link_model", "horizon_days", "asymptomatic_fraction", "long_shedder_fraction")
    overrides = {n: getattr(args, n) for n in names if getattr(args, n, None) is not None}
    return replace(template, **overrides) if overrides else template


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.mode == "cohort":
        params = _cohort_params(args)
        _header(args, mode="cohort", **{k: getattr(params, k) for k in ("adoption", "link_model", "horizon_days")})
        ts = run_cohort(params)
        rows = [
            {
                "day": t,
                "new_exposures": ts.new_exposures[i],
                "cumulative_exposures": ts.cumulative_exposures[i],
                "actively_shedding": ts.actively_shedding[i],
                "newly_isolated": ts.newly_isolated[i],
            }
            for i, t in enumerate(ts.times)
        ]
        _emit(rows, args)
        return 0
    # agents
    params = _cohort_params(args)
    seed = args.seed if args.seed is not None else 0
    graph = generate_contact_graph(
        args.n, app_fraction=params.adoption, horizon_days=params.horizon_days, seed=seed
    )
    _header(
        args,
        mode="agents",
        n=args.n,
        replicates=args.replicates,
        strategy=args.strategy,
        adoption=params.adoption,
        link_model=params.link_model,
        horizon_days=params.horizon_days,
    )
    res = run_agent_sim(
        graph,
        params,
        strategy=TraceStrategy(args.strategy),
        seed=seed,
        replicates=args.replicates,
    )
    rows = [
        {
            "replicate": r,
            "outbreak_size": res.outbreak_sizes[r],
            "infections_by_day_12": res.snapshots[12.0][r],
            "infections_by_day_14": res.snapshots[14.0][r],
        }
        for r in range(res.replicates)
    ]
    _emit(rows, args)
    print(
        f"mean outbreak {res.mean_outbreak:.6g} (sd {res.std_outbreak:.6g}); "
        f"mean serial interval {res.mean_serial_interval and round(res.mean_serial_interval, 6)}",
        file=sys.stderr,
    )
    return 0


def _cmd_table1(args: argparse.Namespace) -> int:
    params = _cohort_params(args)
    _header(args, link_model=params.link_model, adoptions="0.8,0.9,0.95", days="12,14,16,18,20")
    rows = [
        {
            "adoption": r.adoption,
            "day": r.day,
            "direct_cumulative": r.direct_cumulative,
            "windowed_new": r.windowed_new,
            "windowed_per_isolation": r.windowed_per_isolation,
        }
        for r in table1(params)
    ]
    _emit(rows, args)
    return 0


def _cmd_sweetspot(args: argparse.Namespace) -> int:
    template = default_sweet_spot_template()
    if args.link_model is not None:
        template = replace(template, link_model=args.link_model)
    _header(args, criterion=args.criterion, link_model=template.link_model, resolution=args.resolution)
    p = sweet_spot_search(template, criterion=args.criterion, resolution=args.resolution)
    _emit([{"criterion": args.criterion, "link_model": template.link_model, "sweet_spot": p}], args)
    return 0


def _cmd_uptake(args: argparse.Namespace) -> int:
    _header(args, target=args.target, penetration=args.penetration, dropout=args.dropout)
    res = required_install_fraction(args.target, args.penetration, args.dropout)
    _emit(
        [
            {
                "target_adoption": args.target,
                "smartphone_penetration": args.penetration,
                "dropout": args.dropout,
                "owners_fraction": res.owners_install_fraction,
                "population_fraction": res.population_install_fraction,
                "notes": " ".join(res.notes),
            }
        ],
        args,
    )
    return 0


def _parse_evidence(pairs: Iterable[str]) -> dict[str, str]:
    evidence = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"evidence must be node=state, got {pair!r}")
        node, state = pair.split("=", 1)
        evidence[node.strip()] = state.strip()
    return evidence


def _cmd_assess(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    evidence = _parse_evidence(args.evidence)
    _header(args, model=args.model or "packaged", evidence=",".join(f"{k}={v}" for k, v in evidence.items()) or "(none)")
    case = CaseInput(
        evidence=evidence,
        symptom_duration_days=args.duration,
        improving=args.improving,
    )
    report = assess(model, case, AlertPolicy())
    posterior = report.posterior.as_dict() if report.posterior is not None else {}
    rows = [
        {
            "p_none": posterior.get("none"),
            "p_mild": posterior.get("mild"),
            "p_severe": posterior.get("severe"),
            "p_covid": report.p_covid,
            "covid_alert": report.covid_alert,
            "hospitalization_alert": report.hospitalization_alert,
            "next_questions": ";".join(f"{f}:{g:.6g}" for f, g in report.next_questions),
            "contradiction": report.contradiction,
        }
    ]
    _emit(rows, args)
    return 0


def _cmd_voi(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    evidence = _parse_evidence(args.evidence)
    _header(args, target=args.target, evidence=",".join(f"{k}={v}" for k, v in evidence.items()) or "(none)")
    observed = set(evidence) | {args.target}
    candidates = args.candidates or [n for n in model.network.node_ids if n not in observed]
    ranking = most_informative_features(model.network, evidence, args.target, candidates)
    _emit(
        [{"feature": f, "expected_entropy_reduction": g} for f, g in ranking],
        args,
    )
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    bind = args.bind or os.environ.get("CTLAB_BIND_ADDR", "127.0.0.1:8000")
    host, _, port = bind.rpartition(":")
    _header(args, bind=bind, data_dir=args.data_dir or os.environ.get("CTLAB_DATA_DIR", "ctlab-data"))
    app = create_app(data_dir=args.data_dir, model_path=args.model)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


def _cmd_heatmap(args: argparse.Namespace) -> int:
    store = ReportStore(args.data_dir)
    try:
        _header(args, data_dir=args.data_dir, start=args.start, end=args.end, cell=args.cell, tau=args.tau)
        body = export_heatmap(store.snapshot(), Window(args.start, args.end), args.cell, args.tau)
    finally:
        store.close()
    if args.out:
        _atomic_write(Path(args.out), body)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(body.decode("utf-8") + "\n")
    return 0


def _cmd_trace(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else 0
    params = CohortParams(adoption=args.adoption) if args.adoption is not None else CohortParams()
    graph = generate_contact_graph(args.n, app_fraction=params.adoption, seed=seed)
    realized, index = realize_outbreak(graph, params, seed=seed, index_case=args.index)
    _header(
        args,
        n=args.n,
        strategy=args.strategy,
        index=index,
        as_of=args.as_of,
        infections=len(realized.infection_edges),
    )
    result = trace_contacts(realized, TraceStrategy(args.strategy), [index], args.as_of)
    rows = [
        {"order": i, "individual": uid}
        for i, uid in enumerate(result.notification_order)
    ]
    _emit(rows, args)
    print(f"traced {len(result.traced)} individuals", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctlab",
        description="Contact-tracing epidemic laboratory: simulations, diagnostics, surveillance.",
    )
    parser.add_argument("--version", action="version", version=f"ctlab {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p: argparse.ArgumentParser, model: bool = False) -> None:
        p.add_argument("--seed", type=int, default=None, help="RNG seed (default 0 where used)")
        p.add_argument("--out", type=str, default=None, help="output file (atomic write)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if model:
            p.add_argument("--model", type=str, default=None, help="model file (default: packaged)")

    p = sub.add_parser("simulate", help="run the cohort recursion or the agent simulator")
    psub = p.add_subparsers(dest="mode", required=True)
    pc = psub.add_parser("cohort", help="deterministic expected-value recursion")
    add_common(pc)
    pc.add_argument("--adoption", type=float, default=None)
    pc.add_argument("--link-model", dest="link_model", choices=("both_need_app", "contact_needs_app"), default=None)
    pc.add_argument("--horizon", dest="horizon_days", type=float, default=None)
    pc.add_argument("--asymptomatic-fraction", dest="asymptomatic_fraction", type=float, default=None)
    pc.add_argument("--long-shedder-fraction", dest="long_shedder_fraction", type=float, default=None)
    pa = psub.add_parser("agents", help="stochastic replicates on a synthetic contact graph")
    add_common(pa)
    pa.add_argument("--n", type=int, default=10_000)
    pa.add_argument("--replicates", type=int, default=100)
    pa.add_argument("--strategy", choices=[s.value for s in TraceStrategy], default="iterative")
    pa.add_argument("--adoption", type=float, default=None)
    pa.add_argument("--link-model", dest="link_model", choices=("both_need_app", "contact_needs_app"), default=None)
    pa.add_argument("--horizon", dest="horizon_days", type=float, default=None)
    pa.add_argument("--asymptomatic-fraction", dest="asymptomatic_fraction", type=float, default=None)
    pa.add_argument("--long-shedder-fraction", dest="long_shedder_fraction", type=float, default=None)

    p = sub.add_parser("table1", help="adoption-sweep metric table")
    add_common(p)
    p.add_argument("--link-model", dest="link_model", choices=("both_need_app", "contact_needs_app"), default=None)

    p = sub.add_parser("sweetspot", help="least adoption satisfying a containment criterion")
    add_common(p)
    p.add_argument("--criterion", choices=sorted(CRITERIA), default="peak_bounded")
    p.add_argument("--link-model", dest="link_model", choices=("both_need_app", "contact_needs_app"), default=None)
    p.add_argument("--resolution", type=float, default=0.001)

    p = sub.add_parser("uptake", help="required install fraction arithmetic")
    add_common(p)
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--penetration", type=float, required=True)
    p.add_argument("--dropout", type=float, default=0.0)

    p = sub.add_parser("assess", help="assess a case: posterior, alerts, next questions")
    add_common(p, model=True)
    p.add_argument("--evidence", nargs="*", default=[], metavar="node=state")
    p.add_argument("--duration", type=float, default=0.0, help="symptom duration, days")
    p.add_argument("--improving", choices=("yes", "no", "unknown"), default="unknown")

    p = sub.add_parser("voi", help="rank features by expected entropy reduction")
    add_common(p, model=True)
    p.add_argument("--evidence", nargs="*", default=[], metavar="node=state")
    p.add_argument("--target", type=str, default="covid_status")
    p.add_argument("--candidates", nargs="*", default=None)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--bind", type=str, default=None, help="host:port (or CTLAB_BIND_ADDR)")
    p.add_argument("--data-dir", dest="data_dir", type=str, default=None)
    p.add_argument("--model", type=str, default=None)
    p.set_defaults(seed=None, out=None, format="csv")

    p = sub.add_parser("heatmap", help="export a GeoJSON heatmap from a report log")
    add_common(p)
    p.add_argument("--data-dir", dest="data_dir", type=str, required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--end", type=float, required=True)
    p.add_argument("--cell", type=float, default=0.01)
    p.add_argument("--tau", type=float, default=0.5)

    p = sub.add_parser("trace", help="realize one outbreak and trace from its index case")
    add_common(p)
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--strategy", choices=[s.value for s in TraceStrategy], default="iterative")
    p.add_argument("--index", type=int, default=None, help="index case id (default: random)")
    p.add_argument("--as-of", dest="as_of", type=float, default=14.0)
    p.add_argument("--adoption", type=float, default=None)
    return parser


_COMMANDS = {
    "simulate": _cmd_simulate,
    "table1": _cmd_table1,
    "sweetspot": _cmd_sweetspot,
    "uptake": _cmd_uptake,
    "assess": _cmd_assess,
    "voi": _cmd_voi,
    "serve": _cmd_serve,
    "heatmap": _cmd_heatmap,
    "trace": _cmd_trace,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.verb](args)
    except (BNError, ValueError, RuntimeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
