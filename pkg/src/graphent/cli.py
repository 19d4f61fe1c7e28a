"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 result not certified within budget,
3 self-check mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from graphent.bounds import entanglement_report, lc_orbit_search
from graphent.capacity import (
    Ensemble,
    achievable_rate,
    capacity_bound,
    colouring_ensemble,
    povm_slack,
    rate_table,
)
from graphent.graph import DEFAULT_MIS_BUDGET, FAMILIES, Graph, GraphError, build_family
from graphent.locc import simulate_discrimination, verify_perfect_discrimination
from graphent.measures import (
    MixedGraphState,
    exact_pure_measures,
    mixed_measures,
    mixed_robustness,
)
from graphent.table import table1

EXIT_OK, EXIT_INPUT, EXIT_UNCERTIFIED, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# --- output -------------------------------------------------------------------


def _text_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    if v is None:
        return "null"
    return str(v)


def render(data, fmt: str) -> str:
    rows = data if isinstance(data, list) else None
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    if fmt == "csv":
        table = rows if rows is not None else [data]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(table[0]) if table else [], lineterminator="\n")
        writer.writeheader()
        for r in table:
            writer.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v)
                             for k, v in r.items()})
        return buf.getvalue()
    if rows is not None:
        if not rows:
            return ""
        cols = list(rows[0])
        cells = [[_text_value(r[c]) for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
        lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells]
        return "\n".join(line.rstrip() for line in lines) + "\n"
    return "".join(f"{k}: {_text_value(v)}\n" for k, v in data.items())


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --- graph source --------------------------------------------------------------


def load_graph(args) -> Graph:
    if bool(args.family) == bool(args.file):
        raise UsageError("give exactly one graph source: --family or --file")
    if args.file:
        try:
            return Graph.from_json(Path(args.file).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from None
    _, names = FAMILIES[args.family]
    params = {}
    for name in names:
        value = getattr(args, name, None)
        if value is None:
            raise UsageError(f"family {args.family} needs --{name}")
        params[name] = value
    return build_family(args.family, **params)


def _report(args, g: Graph):
    return entanglement_report(
        g,
        budget=args.budget_nodes,
        strategy=getattr(args, "strategy", "auto"),
        restarts=getattr(args, "restarts", 64),
        seed=args.seed,
    )


# --- commands --------------------------------------------------------------------


def cmd_bounds(args) -> int:
    g = load_graph(args)
    if args.lc_depth:
        g, report = lc_orbit_search(g, args.lc_depth, args.beam, args.budget_nodes,
                                    strategy=args.strategy, restarts=args.restarts, seed=args.seed)
    else:
        report = _report(args, g)
    data = report.to_dict()
    data["E"] = report.entanglement
    data["measures"] = exact_pure_measures(report).to_dict() if report.exact else None
    _emit(render(data, args.format), args.out)
    return EXIT_OK if report.certified else EXIT_UNCERTIFIED


def cmd_table1(args) -> int:
    rows = table1(budget=args.budget_nodes, seed=args.seed)
    _emit(render([r.to_dict() for r in rows], args.format), args.out)
    bad = [r for r in rows if not r.matches]
    for r in bad:
        rep = r.report
        print(f"mismatch {r.label}: got (|A|, E_low, E_high) = "
              f"{(rep.lower_log_N, rep.E_low, rep.E_high)}, expected {r.expected}", file=sys.stderr)
    if bad:
        return EXIT_MISMATCH
    return EXIT_OK if all(r.report.certified for r in rows) else EXIT_UNCERTIFIED


def cmd_discriminate(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    g = load_graph(args)
    report = _report(args, g)
    amber = sorted(_parse_vertices(args.amber) if args.amber else report.witness_set)
    rate = verify_perfect_discrimination(g, amber, args.trials, args.seed)
    data = {
        "n": g.n,
        "amber": amber,
        "states": 2 ** len(amber),
        "trials": args.trials,
        "successes": round(rate * args.trials),
        "success_rate": rate,
    }
    trace = []
    if args.trace:
        k = [0] * g.n
        for i in amber:
            k[i] = 1
        trace = simulate_discrimination(g, amber, k, args.seed).trace_lines()
        if args.format == "json":
            data["trace"] = trace
    text = render(data, args.format)
    if trace and args.format == "text":
        text = "\n".join(trace) + "\n" + text
    _emit(text, args.out)
    return EXIT_OK if rate == 1.0 else EXIT_MISMATCH


def cmd_mixed(args) -> int:
    g = load_graph(args)
    try:
        doc = json.loads(Path(args.weights).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read weights file: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError("weights file must be a JSON object")
    weights = doc["weights"] if "weights" in doc else doc
    if not isinstance(weights, dict):
        raise UsageError("weights must map index bit strings to probabilities")
    report = _report(args, g)
    amber = doc.get("amber", sorted(report.witness_set)) if "weights" in doc else sorted(report.witness_set)
    state = MixedGraphState.from_weights(g, amber, weights)
    values = mixed_measures(state, report)
    data = {"n": g.n, "amber": sorted(state.amber), "blue_size": g.n - len(state.amber)}
    data.update(values.to_dict())
    data["robustness"] = mixed_robustness(state, report)
    _emit(render(data, args.format), args.out)
    return EXIT_OK if report.certified else EXIT_UNCERTIFIED


def cmd_capacity(args) -> int:
    epsilons = _parse_floats(args.epsilon)
    lengths = [int(x) for x in args.lengths.split(",") if x]
    certified = True
    if args.ensemble:
        if args.family or args.file:
            raise UsageError("give either --ensemble or a graph source, not both")
        try:
            ens = Ensemble.from_json(Path(args.ensemble).read_text(), args.assume_additive)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read ensemble: {exc}") from None
        data = {"n": ens.n, "states": len(ens.entries)}
    else:
        g = load_graph(args)
        report = _report(args, g)
        certified = report.certified
        ens = colouring_ensemble(g, report)
        slack = povm_slack([1.0] * len(ens.entries), [e.e_g for e in ens.entries], g.n)
        data = {
            "n": g.n,
            "states": len(ens.entries),
            "exact": report.exact,
            "achievable_rate": achievable_rate(g, report),
            "povm_slack": float(slack),
        }
    bound = capacity_bound(ens)
    data["mean_e_g"] = ens.mean_e_g
    data["capacity_bound"] = bound
    table = rate_table(ens.n, ens.mean_e_g, epsilons, lengths)
    if args.format == "csv":
        _emit(render(table, "csv"), args.out)
    else:
        data["table"] = table if args.format == "json" else None
        text = render({k: v for k, v in data.items() if k != "table" or v is not None}, args.format)
        if args.format == "text":
            text += render(table, "text")
        _emit(text, args.out)
    return EXIT_OK if certified else EXIT_UNCERTIFIED


def cmd_orbit(args) -> int:
    g = load_graph(args)
    base = _report(args, g)
    best_graph, report = lc_orbit_search(g, args.orbit_depth, args.beam, args.budget_nodes,
                                         strategy=args.strategy, restarts=args.restarts,
                                         seed=args.seed)
    data = {
        "graph": best_graph.to_dict(),
        "report": report.to_dict(),
        "start_lower_log_N": base.lower_log_N,
        "improved": (report.lower_log_N, report.E_low) > (base.lower_log_N, base.E_low),
    }
    _emit(render(data, args.format), args.out)
    return EXIT_OK if report.certified else EXIT_UNCERTIFIED


def _parse_vertices(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad number list {text!r}") from None


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--budget-nodes", type=int, default=DEFAULT_MIS_BUDGET,
                        help="branch-and-bound node budget for the independent-set search")
    common.add_argument("--out", help="write output to this file instead of stdout")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--family", choices=sorted(f for f in FAMILIES if f != "edge_list"))
    source.add_argument("--file", help='graph JSON: {"n": N, "edges": [[i, j], ...]}')
    source.add_argument("--n", type=int)
    source.add_argument("--rows", type=int)
    source.add_argument("--cols", type=int)
    source.add_argument("--depth", type=int)

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--strategy", choices=("auto", "exhaustive", "heuristic"), default="auto")
    search.add_argument("--restarts", type=int, default=64)

    p = _Parser(prog="graphent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bounds", parents=[common, source, search], help="entanglement bounds report")
    b.add_argument("--lc-depth", type=int, default=0)
    b.add_argument("--beam", type=int, default=16)
    b.set_defaults(func=cmd_bounds)

    t = sub.add_parser("table1", parents=[common], help="bounds table for the standard families")
    t.set_defaults(func=cmd_table1)

    d = sub.add_parser("discriminate", parents=[common, source], help="simulate the colouring protocol")
    d.add_argument("--trials", type=int, default=1000)
    d.add_argument("--amber", help="comma-separated Amber qubits (default: reported witness set)")
    d.add_argument("--trace", action="store_true", help="print the measurement record of one run")
    d.set_defaults(func=cmd_discriminate)

    m = sub.add_parser("mixed", parents=[common, source], help="mixed-state measures")
    m.add_argument("--weights", required=True,
                   help='JSON {"amber": [...], "weights": {"<bits>": p, ...}}')
    m.set_defaults(func=cmd_mixed)

    c = sub.add_parser("capacity", parents=[common, source], help="LOCC-decoding capacity bounds")
    c.add_argument("--ensemble", help="ensemble JSON instead of a graph source")
    c.add_argument("--assume-additive", action="store_true",
                   help="treat every ensemble entry as having additive E_g")
    c.add_argument("--epsilon", default="0,0.1")
    c.add_argument("--lengths", default="1,10,100")
    c.set_defaults(func=cmd_capacity)

    o = sub.add_parser("orbit", parents=[common, source, search], help="local-complementation orbit search")
    o.add_argument("--beam", type=int, default=16)
    o.add_argument("--lc-depth", dest="orbit_depth", type=int, default=1,
                   help="number of local-complementation rounds (default 1)")
    o.set_defaults(func=cmd_orbit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError, KeyError) as exc:
        print(f"graphent {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
