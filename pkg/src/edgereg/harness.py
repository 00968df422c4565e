"""Statement-level sweeps producing reproducible evidence tables.

Every sweep is a list of independent work items evaluated in order (or on a
process pool, with results merged back by item index), so the CSV written
for a given configuration is byte-identical across runs.  Timing goes into
the ``millis`` column only when asked for.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from .combinatorics import (
    induced_matching_number,
    is_bipartite,
    is_very_well_covered,
    is_well_covered,
)
from .config import budgets, set_budgets, threads
from .errors import BudgetExceeded, NotVeryWellCovered, VerificationFailure
from .even import (
    EdgeProduct,
    all_products,
    brute_force_colon,
    colon_graph,
    colon_ideal_by_even_connections,
    verify_colon_decomposition,
)
from .families import generate_vwc_family, join_pairs, random_graph, vwc_pool, whiskered_family
from .fixtures import fixture
from .graph import Graph
from .io import atomic_write
from .monomial import MonomialIdeal, edge_ideal, ideal_equal, is_squarefree, polarize, power
from .regularity import regularity, regularity_lcm_lattice, regularity_squarefree

CSV_COLUMNS = ("statement", "graph", "s", "nu", "expected", "computed", "pass", "millis")

FAMILIES = ("exhaustive-vwc", "whiskered", "unmixed-bipartite", "join", "random-graph", "random-ideal", "fixture")

EQ, LE, GE, INFO = "==", "<=", ">=", "info"


@dataclass
class VerificationRecord:
    statement: str
    graph: str
    s: int | None
    nu: int | None
    expected: int | None
    computed: int | None
    relation: str = EQ
    millis: int | None = None
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.relation == INFO:
            return True
        if self.expected is None or self.computed is None:
            return False
        if self.relation == EQ:
            return self.computed == self.expected
        if self.relation == LE:
            return self.computed <= self.expected
        return self.computed >= self.expected

    def row(self, timing: bool = False) -> list[str]:
        def cell(x):
            return "" if x is None else str(x)

        return [
            self.statement,
            self.graph,
            cell(self.s),
            cell(self.nu),
            cell(self.expected),
            cell(self.computed),
            "info" if self.relation == INFO else ("true" if self.passed else "false"),
            cell(self.millis) if timing else "",
        ]

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "statement": self.statement,
            "graph": self.graph,
            "s": self.s,
            "nu": self.nu,
            "expected": self.expected,
            "computed": self.computed,
            "relation": self.relation,
            "pass": self.passed,
            "millis": self.millis if timing else None,
        }
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass(frozen=True)
class SweepConfig:
    family: str = "exhaustive-vwc"
    h: int = 4              # VWC half-size, or vertex count for random/whiskered families
    s_max: int = 2
    samples: int = 200
    seed: int | None = None
    field: str = "rationals"
    statements: tuple[str, ...] = ()
    workers: int | None = None
    fixture_dir: str | None = None
    shrink: bool = True

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family.startswith("random") and self.seed is None:
            raise ValueError("random families need a seed")
        if self.s_max < 1:
            raise ValueError("s_max must be at least 1")


def _timed(fn: Callable, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, int(round((time.perf_counter() - t0) * 1000))


def _label(g: Graph, product: EdgeProduct | None = None) -> str:
    return g.digest() if product is None else f"{g.digest()}/{product.spec()}"


# -- single-graph statements ------------------------------------------------


def verify_main_theorem(g: Graph, s_max: int, field: str = "rationals") -> list[VerificationRecord]:
    """``reg(I(G)^s) == 2s + nu(G) - 1`` for ``s = 1..s_max``."""
    if not is_very_well_covered(g):
        raise NotVeryWellCovered(f"graph {g.digest()!r} is not very well-covered")
    nu = induced_matching_number(g)
    ideal = edge_ideal(g)
    records: list[VerificationRecord] = []
    for s in range(1, s_max + 1):
        try:
            rep, ms = _timed(regularity, power(ideal, s), field)
        except BudgetExceeded as exc:
            exc.records = records
            raise
        records.append(VerificationRecord("main-formula", _label(g), s, nu, 2 * s + nu - 1, rep.reg, EQ, ms))
    return records


def verify_colon_bound(g: Graph, products: Iterable[EdgeProduct], field: str = "rationals") -> list[VerificationRecord]:
    """Colon regularity against ``nu(G) + 1``, plus the squarefree-case companions."""
    if not is_very_well_covered(g):
        raise NotVeryWellCovered(f"graph {g.digest()!r} is not very well-covered")
    nu = induced_matching_number(g)
    records: list[VerificationRecord] = []
    for product in products:
        label = _label(g, product)
        colon = colon_ideal_by_even_connections(product)
        rep, ms = _timed(regularity, colon, field)
        records.append(VerificationRecord("colon-bound", label, product.s, nu, nu + 1, rep.reg, LE, ms))
        if not is_squarefree(colon):
            continue
        gp = colon_graph(product).gprime
        records.append(
            VerificationRecord("colon-squarefree-vwc", label, product.s, nu, 1, int(is_very_well_covered(gp)), EQ)
        )
        nu_p = induced_matching_number(gp)
        records.append(VerificationRecord("colon-squarefree-reg", label, product.s, nu_p, nu_p + 1, rep.reg, EQ))
        records.append(VerificationRecord("colon-squarefree-nu", label, product.s, nu, nu, nu_p, LE))
        for i in range(1, product.s + 1):
            ok = verify_colon_decomposition(product, i)
            records.append(
                VerificationRecord(
                    "colon-decomposition", label, product.s, nu, 1, int(ok), EQ, detail={"factor": i}
                )
            )
    return records


def verify_counterexample_boundary(field: str = "rationals") -> list[VerificationRecord]:
    """The 9-vertex well-covered graph sits one above the formula for ``s = 1, 2``."""
    g = fixture("nine")
    label = _label(g)
    nu = induced_matching_number(g)
    out = [
        VerificationRecord("boundary-well-covered", label, None, nu, 1, int(is_well_covered(g))),
        VerificationRecord("boundary-not-vwc", label, None, nu, 0, int(is_very_well_covered(g))),
        VerificationRecord("boundary-nu", label, None, nu, 2, nu),
    ]
    ideal = edge_ideal(g)
    for s in (1, 2):
        rep, ms = _timed(regularity, power(ideal, s), field)
        out.append(VerificationRecord("boundary-reg", label, s, nu, 2 * s + 2, rep.reg, EQ, ms))
        out.append(VerificationRecord("boundary-above-formula", label, s, nu, 2 * s + nu, rep.reg, GE))
    return out


def record_c5_powers(s_values: Sequence[int] = (2,), field: str = "rationals") -> list[VerificationRecord]:
    """Observed ``reg(I(C5)^s)``, reported next to ``2s + nu - 1`` without a verdict."""
    g = fixture("c5")
    nu = induced_matching_number(g)
    out = []
    for s in s_values:
        rep, ms = _timed(regularity, power(edge_ideal(g), s), field)
        out.append(VerificationRecord("c5-power-observed", _label(g), s, nu, 2 * s + nu - 1, rep.reg, INFO, ms))
    return out


def colon_oracle_record(product: EdgeProduct) -> VerificationRecord:
    g = product.base
    even, ms = _timed(colon_ideal_by_even_connections, product)
    brute = brute_force_colon(product)
    same = ideal_equal(even, brute)
    quadratic = all(sum(e) == 2 for e in brute.gens)
    return VerificationRecord(
        "colon-oracle",
        _label(g, product),
        product.s,
        None,
        len(brute.gens),
        len(even.gens) if same and quadratic else -1,
        EQ,
        ms,
    )


def lower_bound_records(g: Graph, s_max: int, field: str = "rationals") -> list[VerificationRecord]:
    nu = induced_matching_number(g)
    out = []
    for s in range(1, s_max + 1):
        rep, ms = _timed(regularity, power(edge_ideal(g), s), field)
        out.append(VerificationRecord("lower-bound", _label(g), s, nu, 2 * s + nu - 1, rep.reg, GE, ms))
    return out


def method_agreement_records(ideal: MonomialIdeal, field: str = "rationals") -> list[VerificationRecord]:
    lcm = regularity_lcm_lattice(ideal, field)
    out = []
    if is_squarefree(ideal):
        hoch, ms = _timed(regularity_squarefree, ideal, field)
        out.append(VerificationRecord("method-agreement", ideal.digest(), None, None, lcm.reg, hoch.reg, EQ, ms))
    else:
        pol, _ = polarize(ideal)
        hoch, ms = _timed(regularity_squarefree, pol, field)
        out.append(
            VerificationRecord("polarization-invariance", ideal.digest(), None, None, lcm.reg, hoch.reg, EQ, ms)
        )
    return out


# -- family statements ----------------------------------------------------------


def verify_special_families(config: SweepConfig) -> list[VerificationRecord]:
    """Whiskered graphs, joins and unmixed bipartite graphs against their formulas."""
    records: list[VerificationRecord] = []
    fam = config.family
    if fam == "whiskered":
        for _, w in whiskered_family(config.h):
            nu = induced_matching_number(w)
            for s in range(1, config.s_max + 1):
                rep, ms = _timed(regularity, power(edge_ideal(w), s), config.field)
                records.append(VerificationRecord("whisker-formula", _label(w), s, nu, 2 * s + nu - 1, rep.reg, EQ, ms))
    elif fam == "join":
        pool = [g for g, _ in vwc_pool(config.h)]
        for a, b, j in join_pairs(pool):
            top = max(induced_matching_number(a), induced_matching_number(b))
            for s in range(1, config.s_max + 1):
                rep, ms = _timed(regularity, power(edge_ideal(j), s), config.field)
                records.append(VerificationRecord("join-formula", _label(j), s, top, 2 * s + top - 1, rep.reg, EQ, ms))
    elif fam == "unmixed-bipartite":
        for g, _ in vwc_pool(config.h):
            if not is_bipartite(g):
                continue
            nu = induced_matching_number(g)
            for s in range(1, config.s_max + 1):
                rep, ms = _timed(regularity, power(edge_ideal(g), s), config.field)
                records.append(
                    VerificationRecord("unmixed-bipartite-formula", _label(g), s, nu, 2 * s + nu - 1, rep.reg, EQ, ms)
                )
    else:
        raise ValueError(f"family {fam!r} has no special-family formula")
    return records


def differential_colon_sweep(config: SweepConfig) -> list[VerificationRecord]:
    """Even-connection colon against the brute-force colon on seeded random instances."""
    return [colon_oracle_record(p) for p in random_products(config)]


def random_products(config: SweepConfig) -> list[EdgeProduct]:
    rng = random.Random(config.seed)
    out = []
    while len(out) < config.samples:
        n = rng.randint(2, config.h)
        g = random_graph(n, rng.choice((0.3, 0.5, 0.7)), rng)
        if not g.edges:
            continue
        s = rng.randint(1, config.s_max)
        out.append(EdgeProduct(g, tuple(rng.choice(g.edges) for _ in range(s))))
    return out


def random_graphs(config: SweepConfig) -> list[Graph]:
    rng = random.Random(config.seed)
    out = []
    while len(out) < config.samples:
        g = random_graph(rng.randint(2, config.h), rng.choice((0.3, 0.5, 0.7)), rng)
        if g.edges:
            out.append(g)
    return out


def random_ideals(config: SweepConfig, squarefree: bool) -> list[MonomialIdeal]:
    """Seeded random ideals on at most ``config.h`` variables and 8 generators."""
    rng = random.Random(config.seed)
    out = []
    while len(out) < config.samples:
        n = rng.randint(2, config.h)
        k = rng.randint(1, 8)
        top = 1 if squarefree else 3
        gens = []
        for _ in range(k):
            e = [0] * n
            for i in rng.sample(range(n), rng.randint(1, min(4, n))):
                e[i] = rng.randint(1, top)
            gens.append(tuple(e))
        ideal = MonomialIdeal(tuple(f"z{i}" for i in range(1, n + 1)), tuple(gens))
        if not squarefree and is_squarefree(ideal):
            continue
        out.append(ideal)
    return out


# -- shrinking and regression fixtures ---------------------------------------


def shrink_instance(g: Graph, product: EdgeProduct | None, fails: Callable[[Graph, EdgeProduct | None], bool]):
    """Greedy removal of product factors, edges and isolated vertices while ``fails`` holds."""
    changed = True
    while changed:
        changed = False
        if product is not None and product.s > 1:
            for i in range(product.s):
                cand = EdgeProduct(g, product.without(i))
                if _safe(fails, g, cand):
                    product, changed = cand, True
                    break
            if changed:
                continue
        used = set(product.edges) if product is not None else set()
        for e in g.edges:
            if e in used:
                continue
            h = Graph(g.vertices, [f for f in g.edges if f != e])
            cand = EdgeProduct(h, product.edges) if product is not None else None
            if _safe(fails, h, cand):
                g, product, changed = h, cand, True
                break
        if changed:
            continue
        iso = g.isolated_vertices()
        if iso:
            h = g.remove_vertices(iso)
            cand = EdgeProduct(h, product.edges) if product is not None else None
            if _safe(fails, h, cand):
                g, product, changed = h, cand, True
    return g, product


def _safe(fails, g, product) -> bool:
    try:
        return bool(fails(g, product))
    except Exception:
        return False


def write_regression_fixture(directory: str, record: VerificationRecord, g: Graph | None, product) -> str:
    os.makedirs(directory, exist_ok=True)
    payload = {
        "record": record.to_dict(),
        "graph": g.digest() if g is not None else record.graph,
        "product": product.spec() if product is not None else None,
    }
    name = f"regression-{record.statement}.json"
    path = os.path.join(directory, name)
    atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


# -- sweep driver ----------------------------------------------------------------


def _work_main(args):
    digest, s_max, field = args
    return verify_main_theorem(Graph.from_digest(digest), s_max, field)


def _work_colon(args):
    digest, s_max, field = args
    g = Graph.from_digest(digest)
    products = [p for s in range(1, s_max + 1) for p in all_products(g, s)]
    return verify_colon_bound(g, products, field)


def _work_lower(args):
    digest, s_max, field = args
    return lower_bound_records(Graph.from_digest(digest), s_max, field)


def _work_oracle(args):
    digest, spec = args
    g = Graph.from_digest(digest)
    return [colon_oracle_record(EdgeProduct.parse(g, spec))]


def _work_method(args):
    ring, gens, field = args
    return method_agreement_records(MonomialIdeal(tuple(ring), tuple(map(tuple, gens))), field)


def _run_items(fn, items: list, workers: int) -> list[VerificationRecord]:
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=set_budgets, initargs=(budgets(),)) as pool:
            chunks = list(pool.map(fn, items))
    else:
        chunks = [fn(it) for it in items]
    return [r for chunk in chunks for r in chunk]


def _shrinker_for(statement: str, field: str):
    """Re-evaluation predicate used to shrink the first failure of ``statement``."""

    def main_fails(g, product):
        return not all(r.passed for r in verify_main_theorem(g, 2, field))

    def colon_fails(g, product):
        if product is None or not is_very_well_covered(g):
            return False
        return not all(r.passed for r in verify_colon_bound(g, [product], field))

    def oracle_fails(g, product):
        return product is not None and not colon_oracle_record(product).passed

    def lower_fails(g, product):
        return bool(g.edges) and not all(r.passed for r in lower_bound_records(g, 2, field))

    return {
        "main-formula": main_fails,
        "colon-bound": colon_fails,
        "colon-squarefree-vwc": colon_fails,
        "colon-squarefree-reg": colon_fails,
        "colon-squarefree-nu": colon_fails,
        "colon-decomposition": colon_fails,
        "colon-oracle": oracle_fails,
        "lower-bound": lower_fails,
    }.get(statement)


def _parse_label(label: str):
    digest, _, spec = label.partition("/")
    g = Graph.from_digest(digest)
    product = EdgeProduct.parse(g, spec) if spec else None
    return g, product


def default_statements(family: str) -> tuple[str, ...]:
    return {
        "exhaustive-vwc": ("main", "colon-bound"),
        "fixture": ("main", "colon-bound", "boundary", "c5-power"),
        "random-graph": ("colon-oracle", "lower-bound"),
        "random-ideal": ("method-agreement", "polarization-invariance"),
        "whiskered": ("family-formula",),
        "join": ("family-formula",),
        "unmixed-bipartite": ("family-formula",),
    }[family]


def vwc_graphs_for(config: SweepConfig) -> list[Graph]:
    if config.family == "fixture":
        return [fixture(n) for n in ("c4", "g_ex", "g_b", "w_c4")]
    out = []
    for h in range(1, config.h + 1):
        out.extend(g for g, _ in generate_vwc_family(h, "exhaustive", dedup=True))
    return out


def sweep(config: SweepConfig) -> list[VerificationRecord]:
    """Run every statement of ``config`` and return the records in item order.

    On failure the first failing instance of each statement is shrunk, saved
    to ``config.fixture_dir`` (when set) and reported via ``VerificationFailure``.
    """
    workers = threads(config.workers)
    statements = config.statements or default_statements(config.family)
    records: list[VerificationRecord] = []
    fam = config.family
    if fam in ("exhaustive-vwc", "fixture"):
        digests = [g.digest() for g in vwc_graphs_for(config)]
        if "main" in statements:
            records += _run_items(_work_main, [(d, config.s_max, config.field) for d in digests], workers)
        if "colon-bound" in statements:
            records += _run_items(_work_colon, [(d, config.s_max, config.field) for d in digests], workers)
        if "boundary" in statements:
            records += verify_counterexample_boundary(config.field)
        if "c5-power" in statements:
            records += record_c5_powers(tuple(range(1, config.s_max + 1)), config.field)
    elif fam == "random-graph":
        if "colon-oracle" in statements:
            items = [(p.base.digest(), p.spec()) for p in random_products(config)]
            records += _run_items(_work_oracle, items, workers)
        if "lower-bound" in statements:
            items = [(g.digest(), config.s_max, config.field) for g in random_graphs(config)]
            records += _run_items(_work_lower, items, workers)
    elif fam == "random-ideal":
        items = []
        if "method-agreement" in statements:
            items += [(i.ring_vars, i.gens, config.field) for i in random_ideals(config, squarefree=True)]
        if "polarization-invariance" in statements:
            half = replace(config, seed=(config.seed or 0) + 1, samples=max(1, config.samples // 2))
            items += [(i.ring_vars, i.gens, config.field) for i in random_ideals(half, squarefree=False)]
        records += _run_items(_work_method, items, workers)
    else:
        records += verify_special_families(config)

    failures = [r for r in records if not r.passed]
    if failures:
        paths = []
        done: set[str] = set()
        for r in failures:
            if r.statement in done:
                continue
            done.add(r.statement)
            g = product = None
            pred = _shrinker_for(r.statement, config.field) if config.shrink else None
            try:
                g, product = _parse_label(r.graph)
                if pred is not None:
                    g, product = shrink_instance(g, product, pred)
            except Exception:
                pass
            if config.fixture_dir:
                paths.append(write_regression_fixture(config.fixture_dir, r, g, product))
        raise VerificationFailure(
            f"{len(failures)} failing record(s); first: {failures[0].statement} on {failures[0].graph}",
            records,
            paths[0] if paths else None,
        )
    return records


# -- output ---------------------------------------------------------------------


def records_to_csv(records: Iterable[VerificationRecord], timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row(timing))
    return buf.getvalue()


def records_to_json(records: Iterable[VerificationRecord], timing: bool = False) -> str:
    return json.dumps([r.to_dict(timing) for r in records], indent=2) + "\n"


def write_records(records: Sequence[VerificationRecord], path: str, fmt: str = "csv", timing: bool = False) -> None:
    text = records_to_csv(records, timing) if fmt == "csv" else records_to_json(records, timing)
    atomic_write(path, text)


__all__ = [
    "CSV_COLUMNS",
    "SweepConfig",
    "VerificationRecord",
    "differential_colon_sweep",
    "record_c5_powers",
    "records_to_csv",
    "records_to_json",
    "shrink_instance",
    "sweep",
    "verify_colon_bound",
    "verify_counterexample_boundary",
    "verify_main_theorem",
    "verify_special_families",
    "write_records",
]
