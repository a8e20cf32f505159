"""``qospath`` command line: run-ga, run-sa, compare, oracle, gen-topology.

Exit status: 0 success, 1 usage or input error, 2 infeasible QoS requirement,
3 internal error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from ..encoding import path_text
from ..errors import InfeasibleError, NoFeasiblePathError, QosPathError
from ..ga import rank_final, run_ga
from ..oracle import enumerate_paths, exact_optimum
from ..qos import admissible_subgraph
from ..sa import anneal
from ..topology import serialize_topology
from . import reports
from .compare import compare, comparison_json, curves_csv, trials_csv
from .config import ConfigError, ExperimentConfig, GeneratorSpec, parse_config

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--topology", type=Path, help="topology file")
    p.add_argument("--config", type=Path, help="experiment config file")
    p.add_argument("--seed", type=int, help="RNG seed (overrides the config's seed stanza)")
    p.add_argument("--out", type=Path, default=Path("out"), help="output directory (default: ./out)")
    p.add_argument("--format", choices=("csv", "json"), help="write only this format (default: both)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qospath", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run-ga", help="genetic path selection")
    _common(p)
    p.add_argument("--generations", type=int, help="override max_generations")
    p.add_argument("--demand", type=float, help="override the required bandwidth")

    p = sub.add_parser("run-sa", help="simulated-annealing path selection")
    _common(p)
    p.add_argument("--demand", type=float, help="override the required bandwidth")

    p = sub.add_parser("compare", help="GA vs SA convergence against the oracle")
    _common(p)
    p.add_argument("--trials", type=int, help="override trial count")
    p.add_argument("--budgets", type=int, nargs="+", help="generation budgets to sweep")
    p.add_argument("--demand", type=float, help="override the required bandwidth")

    p = sub.add_parser("oracle", help="enumerate every simple path")
    _common(p)
    p.add_argument("--demand", type=float, help="override the required bandwidth")

    p = sub.add_parser("gen-topology", help="write a seeded random topology")
    _common(p)
    p.add_argument("--nodes", type=int, default=10)
    p.add_argument("--edge-probability", type=float, default=0.35)
    for name in ("utility", "delay", "jitter", "loss"):
        p.add_argument(f"--{name}", metavar="LO:HI", help=f"{name} range")
    return parser


def _load_config(args) -> ExperimentConfig:
    if args.config is not None:
        cfg = parse_config(args.config.read_text(), args.config.parent)
    else:
        cfg = ExperimentConfig()
    changes = {}
    if args.topology is not None:
        changes["topology_path"] = args.topology
        changes["generator"] = None
    if args.seed is not None:
        changes["seed_base"] = args.seed
    if getattr(args, "trials", None) is not None:
        changes["trial_count"] = args.trials
    if getattr(args, "budgets", None):
        changes["budgets"] = tuple(args.budgets)
    if getattr(args, "demand", None) is not None:
        changes["qos"] = dataclasses.replace(cfg.qos, required_bandwidth=args.demand)
    if getattr(args, "generations", None) is not None:
        changes["ga"] = dataclasses.replace(cfg.ga, max_generations=args.generations)
    return dataclasses.replace(cfg, **changes)


def _write(out: Path, files: dict[str, str], fmt: str | None):
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        if fmt is None or name.endswith("." + fmt):
            (out / name).write_text(text)


def cmd_run_ga(args) -> int:
    cfg = _load_config(args)
    t = cfg.load_topologies()[0]
    ga_cfg = cfg.ga_config()
    selected, gens = run_ga(t, cfg.qos, ga_cfg)
    ranked = rank_final(gens[-1].rows)
    alternate = ranked[1].chromosome if len(ranked) > 1 else None
    _write(
        args.out,
        {
            "generations.csv": reports.generations_csv(gens),
            "ga_report.json": reports.ga_json(gens, ga_cfg, cfg.qos, selected, alternate),
        },
        args.format,
    )
    print(path_text(selected))
    return EXIT_OK


def cmd_run_sa(args) -> int:
    cfg = _load_config(args)
    t = cfg.load_topologies()[0]
    sa_cfg = cfg.sa_config()
    result = anneal(t, cfg.qos, sa_cfg)
    _write(
        args.out,
        {
            "sa_trace.csv": reports.trace_csv(result),
            "sa_report.json": reports.sa_json(result, sa_cfg, cfg.qos),
        },
        args.format,
    )
    print(f"# {reports.sa_header(sa_cfg)}")
    print(path_text(result.best))
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _load_config(args)
    report = compare(cfg.load_topologies(), cfg)
    _write(
        args.out,
        {
            "comparison.csv": curves_csv(report),
            "trials.csv": trials_csv(report),
            "comparison.json": comparison_json(report),
        },
        args.format,
    )
    for method in ("ga", "sa"):
        curve = " ".join(f"{b}:{r:.3f}" for b, r in report.curve(method))
        print(f"{method} {curve}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    cfg = _load_config(args)
    t = cfg.load_topologies()[0]
    work = admissible_subgraph(t, cfg.qos)
    catalog = enumerate_paths(work, cfg.qos)
    optimum = exact_optimum(catalog)
    _write(
        args.out,
        {"catalog.csv": reports.catalog_csv(catalog), "catalog.json": reports.catalog_json(catalog, optimum)},
        args.format,
    )
    print(path_text(optimum))
    return EXIT_OK


def _range_arg(raw, name):
    lo, sep, hi = raw.partition(":")
    try:
        return (float(lo), float(hi))
    except ValueError:
        raise ConfigError(f"--{name} must read LO:HI") from None


def cmd_gen_topology(args) -> int:
    ranges = {
        name: _range_arg(getattr(args, name), name)
        for name in ("utility", "delay", "jitter", "loss")
        if getattr(args, name) is not None
    }
    seed = 0 if args.seed is None else args.seed
    if args.nodes < 2 or not 0 < args.edge_probability <= 1:
        raise ConfigError("need --nodes >= 2 and 0 < --edge-probability <= 1")
    spec = GeneratorSpec(args.nodes, args.edge_probability, seed, 1, ranges)
    t = spec.generate()
    text = serialize_topology(t)
    if str(args.out) == "-":
        sys.stdout.write(text)
    else:
        _write(args.out, {"topology.txt": text}, None)
        print(f"topology.txt nodes={t.node_count} edges={len(t.edges)} seed={seed}")
    return EXIT_OK


COMMANDS = {
    "run-ga": cmd_run_ga,
    "run-sa": cmd_run_sa,
    "compare": cmd_compare,
    "oracle": cmd_oracle,
    "gen-topology": cmd_gen_topology,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (InfeasibleError, NoFeasiblePathError) as exc:
        print(f"qospath: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (QosPathError, ValueError, OSError) as exc:
        print(f"qospath: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"qospath: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
