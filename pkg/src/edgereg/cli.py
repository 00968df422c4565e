"""``edgereg`` command-line front end.

Exit codes: 0 success, 1 verification failure (or a negative check), 2 usage
or input error, 3 budget exceeded.  Output files are written atomically.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields, replace
from typing import Sequence

from . import config
from .combinatorics import (
    check_vwc_characterization,
    induced_matching,
    is_very_well_covered,
    is_well_covered,
    relabel_swap,
    vwc_labeling,
)
from .errors import BudgetExceeded, EdgeRegError, VerificationFailure
from .even import EdgeProduct, all_products, colon_graph, colon_ideal_by_even_connections, is_even_connected
from .fixtures import FIXTURE_NAMES, fixture, write_fixtures
from .graph import Graph, format_graph, read_graph
from .harness import (
    FAMILIES,
    SweepConfig,
    records_to_csv,
    records_to_json,
    sweep,
    verify_colon_bound,
    verify_main_theorem,
)
from .io import atomic_write
from .monomial import edge_ideal, format_ideal, is_squarefree, power, read_ideal
from .regularity import regularity, regularity_lcm_lattice

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _load_graph(spec: str | None) -> Graph:
    if spec is None:
        raise _Usage("--graph is required")
    if spec.startswith("fixture:"):
        name = spec.split(":", 1)[1]
        if name not in FIXTURE_NAMES:
            raise _Usage(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
        return fixture(name)
    return read_graph(spec)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2) + "\n")


def _pair(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise _Usage(f"--pair expects 'u,v', got {text!r}")
    return parts[0], parts[1]


# -- subcommands --------------------------------------------------------------


def cmd_nu(args) -> int:
    g = _load_graph(args.graph)
    cert = induced_matching(g)
    if args.json:
        _emit_json(args, {"graph": g.digest(), "nu": len(cert), "matching": [list(e) for e in cert.edges]})
    else:
        _emit(args, f"{len(cert)}\n")
    return EXIT_OK


def cmd_check_vwc(args) -> int:
    g = _load_graph(args.graph)
    vwc = is_very_well_covered(g)
    lab = vwc_labeling(g) if vwc else None
    if args.json:
        _emit_json(
            args,
            {
                "graph": g.digest(),
                "well_covered": is_well_covered(g),
                "very_well_covered": vwc,
                "labeling": [list(p) for p in lab.pairs] if lab else None,
                "characterization": check_vwc_characterization(g, lab) if lab else None,
            },
        )
    else:
        _emit(args, "true\n" if vwc else "false\n")
    return EXIT_OK if vwc else EXIT_FAIL


def cmd_label(args) -> int:
    g = _load_graph(args.graph)
    lab = vwc_labeling(g)
    if args.swap is not None:
        lab = relabel_swap(g, lab, args.swap - 1)
    if args.json:
        _emit_json(args, {"graph": g.digest(), "pairs": [list(p) for p in lab.pairs], "X": list(lab.X), "Y": list(lab.Y)})
    else:
        _emit(args, "".join(f"{x} {y}\n" for x, y in lab.pairs))
    return EXIT_OK


def _product(args, g: Graph) -> EdgeProduct:
    if not args.product:
        raise _Usage("--product is required")
    return EdgeProduct.parse(g, args.product)


def cmd_colon(args) -> int:
    g = _load_graph(args.graph)
    prod = _product(args, g)
    colon = colon_ideal_by_even_connections(prod)
    cg = colon_graph(prod)
    if args.json:
        _emit_json(
            args,
            {
                "graph": g.digest(),
                "product": prod.spec(),
                "colon": [m.to_string(colon.ring_vars) for m in colon.monomials()],
                "squarefree": is_squarefree(colon),
                "W": list(cg.W),
                "partners": dict(cg.partners),
                "gprime": {"vertices": list(cg.gprime.vertices), "edges": [list(e) for e in cg.gprime.edges]},
            },
        )
    elif args.gprime:
        _emit(args, format_graph(cg.gprime))
    else:
        _emit(args, format_ideal(colon))
    return EXIT_OK


def cmd_even(args) -> int:
    g = _load_graph(args.graph)
    prod = _product(args, g)
    if not args.pair:
        raise _Usage("--pair is required")
    u, v = _pair(args.pair)
    w = is_even_connected(prod, u, v)
    if args.json:
        _emit_json(
            args,
            {
                "pair": [u, v],
                "product": prod.spec(),
                "connected": w is not None,
                "witness": list(w.vertices) if w else None,
                "assignment": [list(e) for e in w.odd_step_assignment] if w else None,
            },
        )
    else:
        _emit(args, f"{w}\n" if w else "none\n")
    return EXIT_OK


def cmd_reg(args) -> int:
    if (args.graph is None) == (args.ideal is None):
        raise _Usage("give exactly one of --graph or --ideal")
    ideal = edge_ideal(_load_graph(args.graph)) if args.graph else read_ideal(args.ideal)
    if args.power is not None:
        if args.power < 1:
            raise _Usage("--power must be at least 1")
        ideal = power(ideal, args.power)
    compute = regularity_lcm_lattice if args.method == "lcm-lattice" else regularity
    rep = compute(ideal, args.field)
    _emit_json(args, rep.to_dict())
    return EXIT_OK


def _write_records(args, records) -> None:
    text = records_to_json(records, args.timing) if args.json else records_to_csv(records, args.timing)
    _emit(args, text)


def cmd_verify_main(args) -> int:
    g = _load_graph(args.graph)
    records = verify_main_theorem(g, args.s_max, args.field)
    _write_records(args, records)
    return EXIT_OK if all(r.passed for r in records) else EXIT_FAIL


def cmd_verify_colon_bound(args) -> int:
    g = _load_graph(args.graph)
    if args.product:
        products = [EdgeProduct.parse(g, p) for p in args.product]
    else:
        products = [p for s in range(1, args.s_max + 1) for p in all_products(g, s)]
    records = verify_colon_bound(g, products, args.field)
    _write_records(args, records)
    return EXIT_OK if all(r.passed for r in records) else EXIT_FAIL


def cmd_sweep(args) -> int:
    try:
        cfg = SweepConfig(
            family=args.family,
            h=args.h,
            s_max=args.s_max,
            samples=args.samples,
            seed=args.seed,
            field=args.field,
            statements=tuple(s for s in (args.statements or "").split(",") if s),
            workers=args.threads,
            fixture_dir=args.fixture_dir,
        )
    except ValueError as exc:
        raise _Usage(str(exc)) from exc
    try:
        records = sweep(cfg)
    except VerificationFailure as exc:
        _write_records(args, exc.records)
        if exc.fixture_path:
            print(f"regression fixture: {exc.fixture_path}", file=sys.stderr)
        raise
    _write_records(args, records)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    paths = write_fixtures(args.out_dir)
    sys.stdout.write("".join(p + "\n" for p in paths))
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def _budget_arg(text: str) -> tuple[str, int]:
    name, sep, val = text.partition("=")
    names = {f.name for f in fields(config.Budgets)}
    if not sep or name not in names:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE with NAME in {sorted(names)}")
    try:
        return name, int(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"budget value {val!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="rationals", help="rationals (default) or gf(p)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text/CSV")
    common.add_argument("--out", help="write output to this file (atomically)")
    common.add_argument("--threads", type=int, help="worker count (overrides EDGEREG_THREADS)")
    common.add_argument("--budget", type=_budget_arg, action="append", default=[], metavar="NAME=VAL")
    common.add_argument("--timing", action="store_true", help="fill the millis column")

    p = argparse.ArgumentParser(prog="edgereg", description="Regularity of powers of edge ideals.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    graph_help = "graph file, or fixture:<name>"
    sp = add("nu", cmd_nu, "induced matching number")
    sp.add_argument("--graph", help=graph_help)
    sp = add("check-vwc", cmd_check_vwc, "very well-covered test (exit 1 when false)")
    sp.add_argument("--graph", help=graph_help)
    sp = add("label", cmd_label, "deterministic X/Y labeling")
    sp.add_argument("--graph", help=graph_help)
    sp.add_argument("--swap", type=int, help="apply the swap relabeling driven by pair I (1-based)")
    sp = add("colon", cmd_colon, "colon ideal by a product of edges")
    sp.add_argument("--graph", help=graph_help)
    sp.add_argument("--product", help="e.g. x1-x2,x3-y3")
    sp.add_argument("--gprime", action="store_true", help="print the polarized colon graph instead")
    sp = add("even", cmd_even, "even-connection witness")
    sp.add_argument("--graph", help=graph_help)
    sp.add_argument("--product")
    sp.add_argument("--pair", help="u,v")
    sp = add("reg", cmd_reg, "regularity report (always JSON)")
    sp.add_argument("--graph", help=graph_help)
    sp.add_argument("--ideal", help="ideal file")
    sp.add_argument("--power", type=int)
    sp.add_argument("--method", choices=("hochster", "lcm-lattice"), default="hochster")
    sp = add("verify-main", cmd_verify_main, "check reg(I^s) = 2s + nu - 1")
    sp.add_argument("--graph", help=graph_help)
    sp.add_argument("--s-max", type=int, default=2)
    sp = add("verify-colon-bound", cmd_verify_colon_bound, "check the colon regularity bound")
    sp.add_argument("--graph", help=graph_help)
    sp.add_argument("--product", action="append", help="repeatable; default: all products with s <= --s-max")
    sp.add_argument("--s-max", type=int, default=2)
    sp = add("sweep", cmd_sweep, "family-wide verification sweep")
    sp.add_argument("--family", choices=FAMILIES, default="exhaustive-vwc")
    sp.add_argument("--h", type=int, default=4, help="VWC half-size or vertex bound")
    sp.add_argument("--s-max", type=int, default=2)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--statements", help="comma-separated subset of the family's statements")
    sp.add_argument("--fixture-dir", help="where to save shrunk counterexamples")
    sp = add("fixtures", cmd_fixtures, "write the bundled graph fixtures")
    sp.add_argument("--out-dir", required=True)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    old_budgets = config.budgets()
    if args.budget:
        config.set_budgets(replace(old_budgets, **dict(args.budget)))
    if args.threads is not None:
        config.set_threads(args.threads)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"edgereg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"edgereg: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationFailure as exc:
        print(f"edgereg: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (EdgeRegError, ValueError, OSError) as exc:
        print(f"edgereg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        return 130
    finally:
        config.set_budgets(old_budgets)
        config.set_threads(None)


if __name__ == "__main__":
    sys.exit(main())
