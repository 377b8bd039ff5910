"""Corpus-driven verification of the closed forms and biconditionals.

Every theorem id owns a corpus generator and a per-instance check.  Checks are
module-level functions taking plain data, so instances can be farmed out to a
process pool; results are always collected in instance order.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

import networkx as nx

from . import __version__
from .cameron_walker import (
    EXAMPLE_SPEC,
    CWStructure,
    build_cw,
    classify_special,
    construct_de,
    construct_dre,
    cw_corpus,
    cw_dim,
    cw_i_bounds,
    cw_reg,
    theorem_main_check,
    v_label,
)
from .families import Family, family_graph, family_predictions
from .graph_core import SimpleGraph, canonical_key, graph_from_dict, is_connected
from .hilbert import (
    h_polynomial,
    independent_set_counts,
    k_polynomial,
    k_polynomial_random_pivot,
    series_from_face_counts,
    star_series,
    star_triangle_series,
)
from .invariants import (
    independence_domination,
    independence_number,
    induced_matching_number,
    matching_number,
)
from .resolution import CutoffExceeded, Field, HomologicalReport, betti_table, homological_report, kimura_witness


class VerifyError(ValueError):
    """Unknown theorem id, unknown range key or malformed config."""


# ranges -------------------------------------------------------------------------


def parse_config(text: str, source: str = "<config>") -> dict[str, int]:
    out: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise VerifyError(f"{source}:{lineno}: expected key = value")
        try:
            out[key.strip()] = int(value.strip())
        except ValueError:
            raise VerifyError(f"{source}:{lineno}: value for {key.strip()!r} is not an integer") from None
    return out


def default_ranges() -> dict[str, int]:
    text = resources.files(__package__).joinpath("defaults.conf").read_text()
    return parse_config(text, "defaults.conf")


def merge_ranges(base: dict[str, int], overrides: dict[str, int]) -> dict[str, int]:
    unknown = sorted(set(overrides) - set(base))
    if unknown:
        raise VerifyError(f"unknown range key(s): {', '.join(unknown)}")
    merged = dict(base)
    merged.update(overrides)
    return merged


# report types -------------------------------------------------------------------


@dataclass
class InstanceResult:
    index: int
    label: str
    passed: bool
    values: dict
    counterexample: Optional[dict] = None

    def to_dict(self) -> dict:
        d = {"index": self.index, "label": self.label, "pass": self.passed, "values": self.values}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


@dataclass
class VerificationReport:
    theorem: str
    statement: str
    ranges: dict[str, int]
    field: str
    instances: list[InstanceResult]
    wall_time: float = 0.0
    version: str = __version__

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.instances)

    @property
    def failures(self) -> list[InstanceResult]:
        return [r for r in self.instances if not r.passed]

    def to_dict(self, timing: bool = True) -> dict:
        summary: dict = {
            "all_pass": self.all_pass,
            "passed": sum(r.passed for r in self.instances),
            "failed": len(self.failures),
        }
        if timing:
            summary["wall_time_s"] = round(self.wall_time, 3)
        return {
            "theorem": self.theorem,
            "statement": self.statement,
            "corpus": {"ranges": self.ranges, "instances": len(self.instances)},
            "version": self.version,
            "field": self.field,
            "summary": summary,
            "instances": [r.to_dict() for r in self.instances],
        }

    def csv_rows(self) -> list[list]:
        rows: list[list] = [["index", "label", "pass"]]
        rows += [[r.index, r.label, int(r.passed)] for r in self.instances]
        return rows


# shared computations ----------------------------------------------------------------

_HOM_CACHE: dict[tuple[bytes, str], HomologicalReport] = {}


def _homological(g: SimpleGraph, fld: Field, cutoff: Optional[int]) -> HomologicalReport:
    """Betti-derived invariants, memoised up to isomorphism within one process."""
    if cutoff is not None and g.order > cutoff:
        raise CutoffExceeded(g.order, cutoff)
    key = (canonical_key(g), str(fld))
    hit = _HOM_CACHE.get(key)
    if hit is None:
        hit = homological_report(g, fld, cutoff)
        _HOM_CACHE[key] = hit
    return hit


def _spec_label(spec: CWStructure) -> str:
    bip = " ".join(f"{i}-{j}" for i, j in sorted(spec.bip))
    return f"m={spec.m} n={spec.n} s={list(spec.s)} t={list(spec.t)} bip={bip}"


def _result(item: dict, passed: bool, values: dict, g: SimpleGraph, identity: str, lhs, rhs) -> InstanceResult:
    cex = None
    if not passed:
        cex = {"graph": g.to_dict(), "identity": identity, "lhs": lhs, "rhs": rhs}
        if "spec" in item:
            cex["spec"] = item["spec"]
    return InstanceResult(item["index"], item["label"], passed, values, cex)


def _cw_items(ranges: dict[str, int], max_vertices: Optional[int] = None, keep=None) -> list[dict]:
    specs = cw_corpus(
        ranges["cw.max_m"],
        ranges["cw.max_n"],
        ranges["cw.max_s"],
        ranges["cw.max_t"],
        ranges["cw.max_vertices"] if max_vertices is None else max_vertices,
    )
    if keep is not None:
        specs = [s for s in specs if keep(s)]
    return [{"spec": s.to_dict(), "label": _spec_label(s)} for s in specs]


# theorem checks ---------------------------------------------------------------------


def _check_a_invariant(item: dict, ctx: dict) -> InstanceResult:
    spec = CWStructure.from_dict(item["spec"])
    g = build_cw(spec)
    dim = independence_number(g).value
    deg_h = h_polynomial(g, dim).degree
    values = {"dim": dim, "deg_h": deg_h, "a_invariant": deg_h - dim}
    return _result(item, deg_h - dim == 0, values, g, "a(S/I(G)) = 0", deg_h - dim, 0)


def _check_dim_formula(item: dict, ctx: dict) -> InstanceResult:
    spec = CWStructure.from_dict(item["spec"])
    g = build_cw(spec)
    dim = independence_number(g).value
    deg_h = h_polynomial(g, dim).degree
    formula = cw_dim(spec)
    values = {"dim": dim, "deg_h": deg_h, "formula": formula}
    ok = dim == deg_h == formula
    return _result(item, ok, values, g, "deg h = dim = sum s_i + sum max(t_j, 1)", [deg_h, dim], formula)


def _check_star_series(item: dict, ctx: dict) -> InstanceResult:
    s = item["param"]
    g = family_graph(Family("star", s))
    series, closed = k_polynomial(g), star_series(s)
    deg_h = h_polynomial(g).degree
    values = {"deg_h": deg_h, "numerator": series.reduced().numerator.to_list()}
    ok = series == closed and deg_h == s
    return _result(item, ok, values, g, "recursion = closed form, deg h = s", [series.reduced().to_dict(), deg_h],
                   [closed.reduced().to_dict(), s])


def _check_star_triangle_series(item: dict, ctx: dict) -> InstanceResult:
    t = item["param"]
    g = family_graph(Family("startriangle", t))
    series, closed = k_polynomial(g), star_triangle_series(t)
    dim = independence_number(g).value
    deg_h = h_polynomial(g, dim).degree
    expected = t if t % 2 else t - 1
    values = {"dim": dim, "deg_h": deg_h, "numerator": series.reduced().numerator.to_list()}
    ok = series == closed and deg_h == expected and dim == t
    return _result(item, ok, values, g, "recursion = closed form, deg h = t or t - 1 by parity",
                   [series.reduced().to_dict(), deg_h, dim], [closed.reduced().to_dict(), expected, t])


def _check_i_bounds(item: dict, ctx: dict) -> InstanceResult:
    spec = CWStructure.from_dict(item["spec"])
    g = build_cw(spec)
    i = independence_domination(g).value
    lower, upper = cw_i_bounds(spec)
    complete = spec.is_complete_bipartite()
    ok = lower <= i <= upper and (not complete or i == upper)
    values = {"i": i, "lower": lower, "upper": upper, "complete_bipartite": complete}
    return _result(item, ok, values, g, "lower <= i(G) <= upper, equality at upper if complete", i, [lower, upper])


def _check_main_theorem(item: dict, ctx: dict) -> InstanceResult:
    spec = CWStructure.from_dict(item["spec"])
    g = build_cw(spec)
    holds, failing = theorem_main_check(spec)
    holds_all, failing_all = theorem_main_check(spec, exhaustive=True)
    values: dict = {"theorem_main_check": holds, "failing_V": None if failing is None else [v_label(i) for i in failing]}
    if g.order <= ctx["cutoff"]:
        rep = _homological(g, ctx["field"], ctx["cutoff"])
        corner = rep.betti[(rep.projdim, rep.projdim + rep.reg)] != 0
        degrees = rep.deg_h - rep.reg == rep.dim - rep.depth
        values.update({"beta_corner_nonzero": corner, "degree_identity": degrees, "method": "betti"})
    else:
        # above the Betti cutoff: depth = i(G), reg = im(G), both exact on this class
        dim = independence_number(g).value
        deg_h = h_polynomial(g, dim).degree
        depth = independence_domination(g).value
        reg = induced_matching_number(g).value
        corner = None
        degrees = deg_h - reg == dim - depth
        values.update({"degree_identity": degrees, "method": "combinatorial"})
    ok = holds == degrees and (corner is None or corner == holds) and (holds, failing) == (holds_all, failing_all)
    if "expect_failing" in item:
        ok = ok and values["failing_V"] == item["expect_failing"]
    return _result(item, ok, values, g, "inequality check = (beta_(p,p+r) != 0) = (s - r == d - e)",
                   holds, [corner, degrees])


def _check_star_equality_holds(item: dict, ctx: dict) -> InstanceResult:
    spec = CWStructure.from_dict(item["spec"])
    g = build_cw(spec)
    rep = _homological(g, ctx["field"], ctx["cutoff"])
    flags = classify_special(spec)
    values = {"star_equality": rep.star_equality, "theorem_main_check": theorem_main_check(spec)[0],
              "cohen_macaulay": flags.cohen_macaulay}
    ok = rep.star_equality and values["theorem_main_check"]
    return _result(item, ok, values, g, "(*) holds when every t_j <= 1", rep.star_equality, True)


def _check_complete_bipartite(item: dict, ctx: dict) -> InstanceResult:
    spec = CWStructure.from_dict(item["spec"])
    g = build_cw(spec)
    rep = _homological(g, ctx["field"], ctx["cutoff"])
    predicted = sum(spec.s) + spec.n >= sum(spec.t) + spec.m
    values = {"star_equality": rep.star_equality, "predicted": predicted}
    return _result(item, rep.star_equality == predicted, values, g, "(*) iff sum s + n >= sum t + m",
                   rep.star_equality, predicted)


def _check_depth_two(item: dict, ctx: dict) -> InstanceResult:
    spec = CWStructure.from_dict(item["spec"])
    g = build_cw(spec)
    rep = _homological(g, ctx["field"], ctx["cutoff"])
    i = independence_domination(g).value
    case = classify_special(spec).depth2_case
    ok = rep.depth == i and rep.depth >= 2 and (rep.depth == 2) == (case is not None)
    values = {"depth_betti": rep.depth, "i": i, "depth2_case": case}
    return _result(item, ok, values, g, "depth = i(G) >= 2, depth = 2 iff case e1/e2/e3",
                   [rep.depth, i], case)


def _check_family(item: dict, ctx: dict) -> InstanceResult:
    fam = Family(item["kind"], item["param"])
    g = family_graph(fam)
    pred = family_predictions(fam)
    rep = _homological(g, ctx["field"], ctx["cutoff"])
    got = {"dim": rep.dim, "depth": rep.depth, "reg": rep.reg, "projdim": rep.projdim, "deg_h": rep.deg_h,
           "star_equality": rep.star_equality}
    want = {k: v for k, v in pred.to_dict().items() if k in got and v is not None}
    ok = all(got[k] == v for k, v in want.items())
    if pred.deg_h_below_dim:
        ok = ok and rep.deg_h < rep.dim
    return _result(item, ok, got, g, "computed = predicted", got, want)


def _check_deg_h_vs_reg(item: dict, ctx: dict) -> InstanceResult:
    spec = CWStructure.from_dict(item["spec"])
    g = build_cw(spec)
    rep = _homological(g, ctx["field"], ctx["cutoff"])
    predicted = classify_special(spec).h_deg_equals_reg
    ok = rep.deg_h >= rep.reg and (rep.deg_h == rep.reg) == predicted
    values = {"deg_h": rep.deg_h, "reg": rep.reg, "equality_predicted": predicted}
    return _result(item, ok, values, g, "deg h >= reg, equality iff all s_i = 1 and all t_j >= 1",
                   [rep.deg_h, rep.reg], predicted)


def _check_construction(item: dict, ctx: dict) -> InstanceResult:
    d, r, e = item["d"], item["r"], item["e"]
    spec = construct_de(d, e) if r is None else construct_dre(d, r, e)
    if spec is None:
        # only e = 2 may lack a construction, and then exactly when 2 < r < d
        ok = e == 2 and 2 < r < d
        values = {"exists": False}
        empty = SimpleGraph([])
        return _result(item, ok, values, empty, "construction exists iff r in {2, d}", False, not ok)
    g = build_cw(spec)
    rep = _homological(g, ctx["field"], ctx["cutoff"])
    values = {"exists": True, "spec": spec.to_dict(), "dim": rep.dim, "deg_h": rep.deg_h, "reg": rep.reg,
              "depth": rep.depth, "star_equality": rep.star_equality}
    ok = rep.dim == d and rep.depth == e
    if r is None:
        ok = ok and rep.star_equality
    else:
        ok = ok and rep.deg_h == d and rep.reg == r
        if e == 2:
            ok = ok and r in (2, d)
    return _result(item, ok, values, g, "constructed invariants = requested", [rep.dim, rep.deg_h, rep.reg, rep.depth],
                   [d, d if r is not None else None, r, e])


def _check_forest_witnesses(item: dict, ctx: dict) -> InstanceResult:
    g = graph_from_dict(item["graph"])
    tables = {f: betti_table(g, f, ctx["cutoff"]) for f in ("q", "2")}
    checked = 0
    bad = []
    top = max(i for i, _ in tables["q"].entries) + 1
    for i in range(1, top + 1):
        for ell in range(1, i + 1):
            w = kimura_witness(g, i, ell)
            for f, table in tables.items():
                nonzero = table[(i, i + ell)] != 0
                if w is not None and not nonzero:
                    bad.append([i, ell, f, "witness but beta = 0"])
                if w is None and nonzero:
                    bad.append([i, ell, f, "beta != 0 without witness"])
            checked += 1
    values = {"pairs_checked": checked}
    return _result(item, not bad, values, g, "witness exists iff beta_(i,i+ell) != 0", bad, [])


def _check_forest_reg(item: dict, ctx: dict) -> InstanceResult:
    g = graph_from_dict(item["graph"])
    rep = _homological(g, ctx["field"], ctx["cutoff"])
    im = induced_matching_number(g).value
    return _result(item, rep.reg == im, {"reg": rep.reg, "im": im}, g, "reg = im on forests", rep.reg, im)


def _check_reg_bounds(item: dict, ctx: dict) -> InstanceResult:
    spec = CWStructure.from_dict(item["spec"])
    g = build_cw(spec)
    rep = _homological(g, ctx["field"], ctx["cutoff"])
    im = induced_matching_number(g).value
    m = matching_number(g).value
    formula = cw_reg(spec)
    values = {"im": im, "reg": rep.reg, "m": m, "formula": formula}
    ok = im <= rep.reg <= m and rep.reg == formula
    return _result(item, ok, values, g, "im <= reg <= m and reg = sum t_j + m", rep.reg, [im, m, formula])


def _check_oracles(item: dict, ctx: dict) -> InstanceResult:
    g = graph_from_dict(item["graph"])
    series = k_polynomial(g)
    oracle = series_from_face_counts(independent_set_counts(g), g.order)
    shuffled = k_polynomial_random_pivot(g, random.Random(item["index"]))
    table = betti_table(g, ctx["field"], ctx["cutoff"])
    alternating = table.alternating_numerator()
    dim = independence_number(g).value
    h = h_polynomial(g, dim)
    h_oracle = oracle.reduced()
    ok = series == oracle and series == shuffled and alternating == series.numerator
    ok = ok and h == h_oracle.numerator and h_oracle.pole_order == dim
    values = {"h": h.to_list(), "order": g.order, "size": g.size}
    return _result(item, ok, values, g, "recursion = f-vector oracle = Betti alternating sum",
                   series.numerator.to_list(), [oracle.numerator.to_list(), alternating.to_list()])


# corpora --------------------------------------------------------------------------


def _trees(max_order: int) -> list[dict]:
    out = []
    for n in range(2, max_order + 1):
        for k, t in enumerate(nx.nonisomorphic_trees(n)):
            names = [f"x{i}" for i in range(1, n + 1)]
            edges = sorted((names[min(a, b)], names[max(a, b)]) for a, b in t.edges())
            g = SimpleGraph(names, edges)
            out.append({"graph": g.to_dict(), "label": f"tree n={n} #{k}"})
    return out


def random_connected_graphs(count: int, max_order: int, seed: int) -> list[SimpleGraph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, max_order)
        p = rng.uniform(0.2, 0.7)
        names = [f"x{i}" for i in range(1, n + 1)]
        edges = [(names[a], names[b]) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
        g = SimpleGraph(names, edges)
        if is_connected(g):
            out.append(g)
    return out


def _random_items(r: dict[str, int]) -> list[dict]:
    graphs = random_connected_graphs(r["random.count"], r["random.max_order"], r["random.seed"])
    return [{"graph": g.to_dict(), "label": f"random #{k} n={g.order} e={g.size}"} for k, g in enumerate(graphs)]


def _lemma_items(kind: str, r: dict[str, int]) -> list[dict]:
    return [{"param": k, "label": f"{kind}:{k}"} for k in range(1, r["lemma.max_param"] + 1)]


def _family_items(r: dict[str, int]) -> list[dict]:
    out = [{"kind": "path", "param": n} for n in range(2, r["family.max_path"] + 1)]
    out += [{"kind": "cycle", "param": n} for n in range(3, r["family.max_cycle"] + 1)]
    out += [{"kind": "star", "param": s} for s in range(1, r["family.max_param"] + 1)]
    out += [{"kind": "gs", "param": s} for s in range(1, r["family.max_param"] + 1)]
    for item in out:
        item["label"] = f"{item['kind']}:{item['param']}"
    return out


def _main_theorem_items(r: dict[str, int]) -> list[dict]:
    items = _cw_items(r, max_vertices=min(r["thm22.max_vertices"], r["cw.max_vertices"]))
    items.append({"spec": EXAMPLE_SPEC.to_dict(), "label": "worked example " + _spec_label(EXAMPLE_SPEC),
                  "expect_failing": [v_label(2)]})
    return items


def _de_items(r: dict[str, int]) -> list[dict]:
    top = r["de.max_d"]
    return [{"d": d, "r": None, "e": e, "label": f"d={d} e={e}"} for d in range(2, top + 1) for e in range(2, d + 1)]


def _dre_items(r: dict[str, int]) -> list[dict]:
    top = r["dre.max_d"]
    out = []
    for d in range(2, top + 1):
        for rr in range(2, d + 1):
            for e in range(2, rr + 1):
                out.append({"d": d, "r": rr, "e": e, "label": f"d={d} r={rr} e={e}"})
    return out


@dataclass(frozen=True)
class Theorem:
    statement: str
    keys: tuple[str, ...]
    corpus: Callable[[dict[str, int]], list[dict]]
    check: Callable[[dict, dict], InstanceResult]


_CW_KEYS = ("cw.max_m", "cw.max_n", "cw.max_s", "cw.max_t", "cw.max_vertices")

THEOREMS: dict[str, Theorem] = {
    "thm-1.1": Theorem("a-invariant of every Cameron-Walker graph is 0", _CW_KEYS, _cw_items, _check_a_invariant),
    "prop-1.3": Theorem("deg h = dim = sum s_i + sum max(t_j, 1)", _CW_KEYS, _cw_items, _check_dim_formula),
    "lem-1.6": Theorem("Hilbert series of a star", ("lemma.max_param",),
                       lambda r: _lemma_items("star", r), _check_star_series),
    "lem-1.7": Theorem("Hilbert series of a star triangle", ("lemma.max_param",),
                       lambda r: _lemma_items("startriangle", r), _check_star_triangle_series),
    "lem-2.1": Theorem("bounds on i(G), with equality for complete bipartite cores", _CW_KEYS, _cw_items,
                       _check_i_bounds),
    "thm-2.2": Theorem("(*) holds iff the subset inequality holds", _CW_KEYS + ("thm22.max_vertices",),
                       _main_theorem_items, _check_main_theorem),
    "cor-2.4": Theorem("(*) holds when all t_j <= 1", _CW_KEYS,
                       lambda r: _cw_items(r, keep=lambda s: all(t <= 1 for t in s.t)), _check_star_equality_holds),
    "cor-2.6": Theorem("complete bipartite core: (*) iff sum s + n >= sum t + m", _CW_KEYS,
                       lambda r: _cw_items(r, keep=lambda s: s.is_complete_bipartite()), _check_complete_bipartite),
    "prop-2.8": Theorem("depth >= 2, with equality exactly in cases e1, e2, e3", _CW_KEYS, _cw_items,
                        _check_depth_two),
    "cor-2.9": Theorem("for d >= e >= 2 a graph with dim d, depth e and (*)", ("de.max_d",), _de_items,
                       _check_construction),
    "prop-2.11": Theorem("paths, cycles, stars and G_s satisfy (*)",
                         ("family.max_path", "family.max_cycle", "family.max_param"), _family_items, _check_family),
    "thm-3.1": Theorem("deg h >= reg, equality iff all s_i = 1 and all t_j >= 1", _CW_KEYS, _cw_items,
                       _check_deg_h_vs_reg),
    "thm-3.4": Theorem("realizability of (dim, reg, depth) with deg h = dim", ("dre.max_d",), _dre_items,
                       _check_construction),
    "lem-2.10-forest": Theorem("star-family witnesses and nonzero Betti numbers agree on forests",
                               ("trees.converse_max_order",),
                               lambda r: _trees(r["trees.converse_max_order"]), _check_forest_witnesses),
    "forest-reg": Theorem("reg = im on trees", ("trees.max_order",), lambda r: _trees(r["trees.max_order"]),
                          _check_forest_reg),
    "reg-bounds": Theorem("im <= reg <= m, and reg = sum t_j + m", _CW_KEYS, _cw_items, _check_reg_bounds),
    "oracle": Theorem("Hilbert recursion, f-vector oracle and Betti alternating sum agree",
                      ("random.count", "random.max_order", "random.seed"), _random_items, _check_oracles),
}


def _run_one(args: tuple[str, dict, dict]) -> InstanceResult:
    tid, item, ctx = args
    return THEOREMS[tid].check(item, ctx)


def run_verify(
    theorem: str,
    ranges: Optional[dict[str, int]] = None,
    field_spec: str | Field | None = None,
    cutoff: Optional[int] = None,
    jobs: int = 1,
) -> VerificationReport:
    if theorem not in THEOREMS:
        raise VerifyError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREMS)}")
    from .resolution import default_cutoff

    thm = THEOREMS[theorem]
    r = merge_ranges(default_ranges(), ranges or {})
    fld = Field.parse(field_spec)
    ctx = {"field": fld, "cutoff": default_cutoff() if cutoff is None else cutoff}
    start = time.perf_counter()
    items = thm.corpus(r)
    for k, item in enumerate(items):
        item["index"] = k
    tasks = [(theorem, item, ctx) for item in items]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_run_one(t) for t in tasks]
    return VerificationReport(
        theorem=theorem,
        statement=thm.statement,
        ranges={k: r[k] for k in thm.keys},
        field=str(fld),
        instances=results,
        wall_time=time.perf_counter() - start,
    )
