"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or parse
error, 3 a size limit was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

from . import config
from .errors import CapacityError, GraphFormatError, PropertySyntaxError
from .graph import enumerate_graphs, make_named, parse_graph6, read_census, write_graph6
from .polynomials import FFPoly, coloring_counts, evaluate_ff, ff_to_monomial

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

EXPERIMENTS = ("fr-vanish", "two-cycles", "triangle-blocks", "collisions", "max-degree")


class UsageError(Exception):
    pass


@dataclass
class Config:
    enumeration: int = config.Limits.enumeration
    partition: int = config.Limits.partition
    canonical: int = config.Limits.canonical
    seed: int = 0
    format: str = "table"
    threads: int = 1

    def validate(self):
        if self.format not in ("table", "json", "csv"):
            raise UsageError(f"format must be table, json or csv, not {self.format!r}")
        if not 0 <= self.enumeration <= 10:
            raise UsageError("enumeration limit must lie in 0..10")
        if not 0 <= self.partition <= 20:
            raise UsageError("partition limit must lie in 0..20")
        if not 0 <= self.canonical <= config.MAX_ORDER:
            raise UsageError(f"canonical limit must lie in 0..{config.MAX_ORDER}")
        if self.threads < 1:
            raise UsageError("threads must be at least 1")


def read_config_file(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    names = {f.name: f.type for f in fields(Config)}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip().replace("-", "_"), value.strip().strip('"')
        if not sep or key not in names:
            raise UsageError(f"{path}:{lineno}: expected one of {', '.join(names)} = value")
        out[key] = value if key == "format" else int(value)
    return out


def resolve_config(args) -> Config:
    cfg = Config()
    if args.config:
        for k, v in read_config_file(args.config).items():
            setattr(cfg, k, v)
    env_threads = os.environ.get("HARARY_THREADS")
    if env_threads and args.threads is None:
        try:
            cfg.threads = int(env_threads)
        except ValueError:
            raise UsageError(f"HARARY_THREADS must be an integer, not {env_threads!r}") from None
    for name in ("enumeration", "partition", "canonical", "seed", "format", "threads"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    cfg.validate()
    return cfg


def parse_graph_arg(text: str):
    """Named graph (``K3``, ``C4``, ``P5``, ``E2``, ``D6``, ``K1,3``, ``mc 2 3``) or graph6."""
    from .properties import parse_graph_token
    parts = text.split()
    if parts and parts[0].lower() == "mc":
        if len(parts) != 3:
            raise UsageError(f"expected 'mc m r', got {text!r}")
        try:
            return make_named("mC", int(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        return parse_graph_token(text.strip())
    except GraphFormatError:
        raise
    except ValueError as exc:
        raise UsageError(f"bad graph {text!r}: {exc}") from None


def parse_fraction(text: str) -> Fraction:
    if "." in text or "e" in text.lower():
        raise UsageError(f"probabilities are rationals like 1/2, not {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {text!r}") from None


def parse_orders(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        lo, sep, hi = part.partition("-")
        try:
            out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError:
            raise UsageError(f"bad order list {text!r}") from None
    return out


def _parse_property(text: str | None):
    from .properties import parse_property
    return None if text is None else parse_property(text)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# -- commands ----------------------------------------------------------------

def cmd_poly(args, cfg: Config) -> int:
    from .mates import parse_invariant
    if (args.graph is None) == (args.graph6 is None):
        raise UsageError("give exactly one of --graph and --graph6")
    g = parse_graph_arg(args.graph) if args.graph else parse_graph6(args.graph6)
    prop = _parse_property(args.property)
    if args.invariant != "harary":
        inv = parse_invariant(args.invariant, prop if args.property_given else None)
        p = inv.compute(g)
        payload = {"graph": write_graph6(g), "invariant": inv.id, "polynomial": p.to_json()}
        if cfg.format == "json":
            _emit(_dump(payload))
        elif cfg.format == "csv":
            _emit(_csv([["graph", "invariant", "basis", "coeffs"],
                        [payload["graph"], inv.id, p.to_json()["basis"],
                         " ".join(p.to_json()["coeffs"])]]))
        else:
            shown = ff_to_monomial(p) if isinstance(p, FFPoly) else p
            _emit(f"graph: {write_graph6(g)} (n={g.n})\ninvariant: {inv.id}\n"
                  f"polynomial: {shown}")
        return EXIT_OK
    from .polynomials import harary_counts
    h = harary_counts(g, prop)
    c = coloring_counts(h)
    mono = ff_to_monomial(h)
    values = [evaluate_ff(h, k) for k in range(g.n + 1)]
    if cfg.format == "json":
        _emit(_dump({"graph": write_graph6(g), "n": g.n, "property": str(prop),
                     "h": h.to_json(), "c": [str(x) for x in c], "monomial": mono.to_json(),
                     "values": [str(v) for v in values]}))
    elif cfg.format == "csv":
        rows = [["k", "value"]] + [[k, v] for k, v in enumerate(values)]
        _emit(_csv(rows))
    else:
        _emit("\n".join([
            f"graph: {write_graph6(g)} (n={g.n})",
            f"property: {prop}",
            f"h = {list(h.coeffs)}",
            f"c = {c}",
            f"chi(x) = {mono}",
            "values: " + ", ".join(f"k={k}: {v}" for k, v in enumerate(values)),
        ]))
    return EXIT_OK


def _load_census(path: str):
    try:
        with open(path) as fh:
            return read_census(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_mates(args, cfg: Config) -> int:
    from .mates import CSV_HEADER, classify, parse_invariant
    inv = parse_invariant(args.invariant, args.property)
    if (args.order is None) == (args.census is None):
        raise UsageError("give exactly one of --order and --census")
    if args.census:
        graphs = _load_census(args.census)
        if args.mixed:
            groups = [graphs]
        else:
            by_order: dict[int, list] = {}
            for g in graphs:
                by_order.setdefault(g.n, []).append(g)
            groups = [by_order[n] for n in sorted(by_order)]
    else:
        orders = parse_orders(args.order)
        groups = [list(enumerate_graphs(n)) for n in orders]
        if args.mixed:
            groups = [[g for grp in groups for g in grp]]
    results = [classify(grp, inv, threads=cfg.threads) for grp in groups]
    if cfg.format == "json":
        out = [r.to_json() for r in results]
        for o, r in zip(out, results):
            o["index"] = f"{r.index.numerator}/{r.index.denominator}"
        _emit(_dump(out[0] if len(out) == 1 else out))
    elif cfg.format == "csv":
        _emit(_csv([CSV_HEADER] + [r.csv_row() for r in results]))
    else:
        lines = []
        for r in results:
            lines.append(f"order {r.n if r.n is not None else 'mixed'}, invariant {r.invariant}: "
                         f"{r.total_count} graphs, {len(r.classes)} classes, "
                         f"{r.unique_count} unique, index {r.index}")
            for c in r.classes:
                if len(c.graphs) > 1 or args.all:
                    lines.append(f"  [{len(c.graphs)}] " + " ".join(write_graph6(g) for g in c.graphs))
            if args.unique:
                lines.append("  unique: " + " ".join(write_graph6(g) for g in r.unique()))
        _emit("\n".join(lines))
    return EXIT_OK


def cmd_compare(args, cfg: Config) -> int:
    from .mates import compare_dp, parse_invariant
    a, b = parse_invariant(args.first), parse_invariant(args.second)
    if args.graph:
        graphs = [parse_graph_arg(t) for t in args.graph]
    elif args.census:
        graphs = _load_census(args.census)
    else:
        graphs = [g for n in range(args.upto + 1) for g in enumerate_graphs(n)]
    r = compare_dp(a, b, graphs, threads=cfg.threads)
    if cfg.format == "json":
        _emit(_dump(r.to_json()))
    elif cfg.format == "csv":
        w = r.to_json()["witnesses"]
        _emit(_csv([["first", "second", "verdict", "checked_up_to", "graphs",
                     "first_not_second", "second_not_first"],
                    [r.first, r.second, r.verdict, r.checked_up_to, r.graph_count,
                     " ".join(w["first_not_second"] or []), " ".join(w["second_not_first"] or [])]]))
    else:
        lines = [f"{r.first} vs {r.second} on {r.graph_count} graphs (orders <= {r.checked_up_to}): "
                 f"{r.verdict}"]
        if r.first_not_second:
            x, y = r.first_not_second
            lines.append(f"  mates under {r.first} only: {write_graph6(x)} {write_graph6(y)}")
        if r.second_not_first:
            x, y = r.second_not_first
            lines.append(f"  mates under {r.second} only: {write_graph6(x)} {write_graph6(y)}")
        _emit("\n".join(lines))
    return EXIT_OK


def cmd_verify(args, cfg: Config) -> int:
    from .harness import Scope, check_ids, json_report, run_all, text_report
    known = check_ids()
    if args.list:
        _emit("\n".join(known))
        return EXIT_OK
    if not args.all and not args.checks:
        raise UsageError("name checks to run or pass --all")
    unknown = [c for c in args.checks if c not in known]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}")
    scope = Scope(args.max_order, args.enumeration)
    results = run_all(scope, None if args.all else args.checks, threads=cfg.threads)
    if cfg.format == "json":
        _emit(_dump(json_report(results, scope)))
    elif cfg.format == "csv":
        _emit(_csv([["id", "verdict", "reason"]] + [[r.id, r.verdict, r.reason] for r in results]))
    else:
        _emit(text_report(results))
    return EXIT_FAIL if any(r.verdict == "fail" for r in results) else EXIT_OK


def _reports_out(reports, cfg: Config, timing: bool) -> None:
    if cfg.format == "json":
        out = [r.to_json(timing) for r in reports]
        _emit(_dump(out[0] if len(out) == 1 else out))
    elif cfg.format == "csv":
        rows = [["experiment", "n", "p", "seed", "trials", "successes", "estimate"]]
        for r in reports:
            e = r.estimate
            rows.append([r.experiment, r.params.get("n"), r.params.get("p"), r.params.get("seed"),
                         r.trials, r.successes, f"{e.numerator}/{e.denominator}"])
        _emit(_csv(rows))
    else:
        lines = []
        for r in reports:
            e = r.estimate
            lines.append(f"{r.experiment} {json.dumps(r.params)}: {r.successes}/{r.trials} = {e} "
                         f"({float(e):.4f})")
            for k, v in r.details.items():
                lines.append(f"  {k}: {v}")
            if r.notes:
                lines.append(f"  note: {r.notes}")
            if timing:
                lines.append(f"  wall time: {r.wall_time:.2f}s")
        _emit("\n".join(lines))


def cmd_random(args, cfg: Config) -> int:
    from . import experiments as ex
    seed = cfg.seed
    ns = parse_orders(args.n) if args.n else []
    if args.experiment == "two-cycles":
        if args.d is None or not ns:
            raise UsageError("two-cycles needs --d and --n")
        reports = ex.two_cycle_incidence_rate(args.r, parse_fraction(args.d), ns, args.trials, seed,
                                              threads=cfg.threads)
        _reports_out(reports, cfg, args.timing)
        return EXIT_OK
    control = parse_graph_arg(args.control) if args.control else None
    if not ns and control is None:
        raise UsageError("--n is required")
    reports = []
    for n in ns or [control.n]:
        if args.d is not None:
            params = ex.GnpParams.sparse(n, parse_fraction(args.d), seed, args.trials)
        else:
            params = ex.GnpParams(n, parse_fraction(args.p), seed, args.trials)
        if args.experiment == "fr-vanish":
            reports.append(ex.fr_vanishing_rate(args.r, params, control, threads=cfg.threads))
        elif args.experiment == "triangle-blocks":
            reports.append(ex.triangle_in_blocks_rate(args.r, params, args.partitions, control,
                                                      threads=cfg.threads))
        elif args.experiment == "collisions":
            from .mates import parse_invariant
            inv = parse_invariant(args.invariant, args.property)
            reports.append(ex.collision_rate(inv.name, inv.prop, params, threads=cfg.threads))
        elif args.experiment == "max-degree":
            band = ex.log_ratio_band(n) if args.d is not None and n > 15 else None
            reports.append(ex.max_degree_profile(params, band, threads=cfg.threads))
    _reports_out(reports, cfg, args.timing)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default=None,
                        help="output format (default table)")
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default $HARARY_THREADS or 1)")
    common.add_argument("--enumeration-limit", dest="enumeration", type=int, default=None,
                        help=f"largest census order (default {config.Limits.enumeration})")
    common.add_argument("--partition-limit", dest="partition", type=int, default=None,
                        help=f"largest order for partition counting (default {config.Limits.partition})")
    common.add_argument("--canonical-limit", dest="canonical", type=int, default=None,
                        help=f"largest order for canonical codes (default {config.Limits.canonical})")

    parser = argparse.ArgumentParser(
        prog="harary", description="Harary polynomials, mates and random-graph experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="compute a polynomial of one graph")
    p.add_argument("--graph", help="named graph: K3, C4, P5, E2, D6, 'mc 2 3'")
    p.add_argument("--graph6", help="graph6 string")
    p.add_argument("--property", help="property expression (default edgeless)")
    p.add_argument("--invariant", default="harary",
                   help="harary (default) or chromatic, ind, clique, dom, matching, mu, char, lap, "
                        "genfun, fr<r>")
    p.set_defaults(func=cmd_poly)

    m = sub.add_parser("mates", parents=[common], help="classify graphs into mate classes")
    m.add_argument("--order", help="order or list: 5, 1-6, 4,6")
    m.add_argument("--census", help="graph6 file, one graph per line")
    m.add_argument("--invariant", default="chromatic")
    m.add_argument("--property")
    m.add_argument("--mixed", action="store_true", help="classify all orders together")
    m.add_argument("--unique", action="store_true", help="list the unique graphs")
    m.add_argument("--all", action="store_true", help="list singleton classes too")
    m.set_defaults(func=cmd_mates)

    c = sub.add_parser("compare", parents=[common], help="compare distinguishing power")
    c.add_argument("first", help="invariant, e.g. chromatic or 'harary:(explicit C4)'")
    c.add_argument("second")
    c.add_argument("--upto", type=int, default=5, help="census of orders 0..N (default 5)")
    c.add_argument("--graph", action="append", help="explicit graph (repeatable)")
    c.add_argument("--census", help="graph6 file")
    c.set_defaults(func=cmd_compare)

    v = sub.add_parser("verify", parents=[common], help="run the claim checks")
    v.add_argument("checks", nargs="*")
    v.add_argument("--all", action="store_true")
    v.add_argument("--list", action="store_true", help="list check ids")
    v.add_argument("--max-order", type=int, default=None, help="cap every census sweep")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("random", parents=[common], help="seeded random-graph experiments")
    r.add_argument("experiment", choices=EXPERIMENTS)
    r.add_argument("--n", help="order or list: 24 or 200,2000")
    r.add_argument("--p", default="1/2", help="edge probability as p/q (default 1/2)")
    r.add_argument("--d", help="use p = d/n")
    r.add_argument("--r", type=int, default=4, help="cycle length / block size (default 4)")
    r.add_argument("--trials", type=int, default=100)
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--partitions", type=int, default=50, help="partitions per graph")
    r.add_argument("--invariant", default="chromatic", help="for collisions")
    r.add_argument("--property", help="for collisions")
    r.add_argument("--control", help="replace sampling by this fixed graph")
    r.add_argument("--timing", action="store_true", help="include wall time (breaks byte equality)")
    r.set_defaults(func=cmd_random)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "poly":
        args.property_given = args.property is not None
        if args.property is None and args.invariant == "harary":
            args.property = "edgeless"
    try:
        cfg = resolve_config(args)
        with config.limits(enumeration=cfg.enumeration, partition=cfg.partition,
                           canonical=cfg.canonical):
            return args.func(args, cfg)
    except CapacityError as exc:
        print(f"harary: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except PropertySyntaxError as exc:
        print(f"harary: property: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphFormatError as exc:
        print(f"harary: graph6: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"harary: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
