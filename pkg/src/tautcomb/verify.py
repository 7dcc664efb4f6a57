"""Verification sweeps: every machine-checkable fact, as runnable suites.

Each ``sweep_*`` / ``check_*`` function exercises one family of identities
over a bounded range and returns a :class:`VerificationReport` carrying the
suite name, the parameters, a pass flag, and witnesses for any failures.
:func:`verify_all` runs the whole battery (optionally in parallel) and
aggregates; its JSON payload is byte-identical across runs and job counts
because every suite is deterministic and reports are emitted in a fixed
order with wall times kept out of the canonical payload.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .errors import InvalidRange
from .exactalg import FormalClass, IndexedMatrix, Laurent, rat_to_str
from .kernels import (
    alternating_power_sum,
    alternating_reciprocal_sum,
    closed_sum_alpha,
    closed_sum_beta,
    closed_sum_beta_prime,
    closed_sum_gamma,
    closed_sum_value,
    eta_sign_scale,
    eta_weight,
)
from .locgraph import (
    SIDE_0,
    SIDE_INF,
    LocalizationGraph,
    RelativeShape,
    aut_group_order,
    canonical_form,
    classify_case,
    contribution,
    degenerate_over,
    enumerate_graphs,
    hurwitz_condition,
    multiplicity,
    omega_dimension_check,
    relabel_graph,
    validate_graph,
)
from .partitions import (
    INF,
    POP,
    canonical_marking_sets,
    compare_pop,
    enumerate_pop,
    enumerate_pop_multi,
    is_inf,
    lower_one_step,
)
from .relmatrix import (
    build_A,
    build_B,
    build_M,
    verify_C,
    verify_kronecker,
    verify_M_invertible,
    verify_M_transpose_scaling,
)

MAX_WITNESSES = 5


@dataclass
class VerificationReport:
    """Outcome of one verification suite."""

    suite: str
    parameters: dict
    passed: bool
    witnesses: list = field(default_factory=list)
    wall_time: float = 0.0

    def to_json_dict(self, include_wall_time: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "parameters": self.parameters,
            "pass": self.passed,
            "witnesses": self.witnesses[:MAX_WITNESSES],
        }
        if include_wall_time:
            out["wallTime"] = self.wall_time
        return out


def _timed(fn: Callable[[], VerificationReport]) -> VerificationReport:
    start = time.perf_counter()
    report = fn()
    report.wall_time = time.perf_counter() - start
    return report


def _k_label(k) -> str | int:
    return "inf" if is_inf(k) else k


# ---------------------------------------------------------------------------
# matrix sweeps


def _cutoffs_upto(limit: int, include_inf: bool = True):
    out = list(range(limit + 1))
    if include_inf:
        out.append(INF)
    return out


def sweep_triangular(max_d: int = 6, inject_fault: bool = False) -> VerificationReport:
    """Unit upper triangularity of ``B A`` for every (d, n, k) in range."""
    witnesses = []
    first_cell = True
    for d in range(1, max_d + 1):
        for n in range(1, d + 1):
            for k in _cutoffs_upto(d - n):
                if inject_fault and first_cell:
                    first_cell = False
                    a = build_A(d, n, k)
                    b = build_B(d, n, k)
                    bumped = [list(row) for row in b.entries]
                    bumped[-1][0] += 1
                    c = IndexedMatrix(b.index, bumped).multiply(a)
                    ok, pos = c.is_unit_upper_triangular()
                    if not ok:
                        witnesses.append(
                            {
                                "cell": {"d": d, "n": n, "k": _k_label(k)},
                                "injectedFault": True,
                                "row": c.index[pos[0]].to_json_dict(),
                                "col": c.index[pos[1]].to_json_dict(),
                                "value": rat_to_str(c[pos[0], pos[1]]),
                            }
                        )
                    continue
                rep = verify_C(d, n, k)
                if not rep["pass"]:
                    witnesses.append({"cell": rep["shape"], "witness": rep["witness"]})
    return VerificationReport(
        suite="triangular",
        parameters={"maxD": max_d, "lemma": "6", "injectFault": inject_fault},
        passed=not witnesses,
        witnesses=witnesses,
    )


def _degree_vectors(max_total: int) -> Iterator[tuple[int, ...]]:
    for total in range(1, max_total + 1):
        for c in range(1, total + 1):
            stack = [((), total, c)]
            while stack:
                prefix, rem, slots = stack.pop()
                if slots == 0:
                    if rem == 0:
                        yield prefix
                    continue
                for first in range(1, rem - slots + 2):
                    stack.append((prefix + (first,), rem - first, slots - 1))


def _multi_shapes(max_total: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (degree vector, marking cardinality vector) pairs in range."""
    for degrees in sorted(set(_degree_vectors(max_total))):
        card_ranges = [range(1, d + 1) for d in degrees]
        for cards in itertools.product(*card_ranges):
            yield degrees, cards


def sweep_invertible(max_total: int = 5) -> VerificationReport:
    """Invertibility of the principal matrix over every multi shape in range."""
    witnesses = []
    for degrees, cards in _multi_shapes(max_total):
        d = sum(degrees)
        marking_sets = canonical_marking_sets(cards)
        for k in _cutoffs_upto(d):
            rep = verify_M_invertible(degrees, marking_sets, k)
            if not rep["pass"]:
                witnesses.append({"cell": rep["shape"], "witness": rep["witness"]})
    return VerificationReport(
        suite="invertible",
        parameters={"maxTotalDegree": max_total, "lemma": "4"},
        passed=not witnesses,
        witnesses=witnesses,
    )


def sweep_transpose_scaling(max_total: int = 5) -> VerificationReport:
    witnesses = []
    for degrees, cards in _multi_shapes(max_total):
        d = sum(degrees)
        marking_sets = canonical_marking_sets(cards)
        for k in _cutoffs_upto(d):
            rep = verify_M_transpose_scaling(degrees, marking_sets, k)
            if not rep["pass"]:
                witnesses.append({"cell": rep["shape"], "witness": rep["witness"]})
    return VerificationReport(
        suite="transpose-scaling",
        parameters={"maxTotalDegree": max_total},
        passed=not witnesses,
        witnesses=witnesses,
    )


def sweep_kronecker(max_total: int = 5) -> VerificationReport:
    """Product factorization on every saturated cutoff of every multi shape."""
    witnesses = []
    for degrees, cards in _multi_shapes(max_total):
        d = sum(degrees)
        n = sum(cards)
        marking_sets = canonical_marking_sets(cards)
        for k in [kk for kk in _cutoffs_upto(d) if is_inf(kk) or kk >= d - n]:
            rep = verify_kronecker(degrees, marking_sets, k)
            if not rep["pass"]:
                witnesses.append({"cell": rep["shape"], "witness": rep["witness"]})
    return VerificationReport(
        suite="kronecker",
        parameters={"maxTotalDegree": max_total},
        passed=not witnesses,
        witnesses=witnesses,
    )


def check_worked_instance() -> VerificationReport:
    """The fully hand-checked 2x2 instance, frozen entry by entry."""
    pop_a = POP(2, (1,), (1,))
    pop_b = POP(2, (2,), ())
    expected = {
        "index": (pop_a, pop_b),
        "A": ((Fraction(1), Fraction(1)), (Fraction(1), Fraction(1, 2))),
        "B": ((Fraction(1), Fraction(0)), (Fraction(2), Fraction(-2))),
        "C": ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))),
        "M": ((Fraction(1), Fraction(-2)), (Fraction(1), Fraction(-1))),
        "detM": Fraction(1),
        "eta": (Fraction(1), Fraction(2)),
        "scale": (Fraction(1), Fraction(-2)),
    }
    a = build_A(2, 1, INF)
    b = build_B(2, 1, INF)
    m = build_M(2, 1, INF)
    c = b.multiply(a)
    got = {
        "index": a.index,
        "A": a.entries,
        "B": b.entries,
        "C": c.entries,
        "M": m.entries,
        "detM": m.determinant(),
        "eta": (eta_weight(pop_a), eta_weight(pop_b)),
        "scale": (eta_sign_scale(pop_a), eta_sign_scale(pop_b)),
    }
    witnesses = [
        {"field": key, "expected": repr(expected[key]), "got": repr(got[key])}
        for key in expected
        if expected[key] != got[key]
    ]
    return VerificationReport(
        suite="worked-instance",
        parameters={"d": 2, "n": 1, "k": "inf"},
        passed=not witnesses,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# scalar sums


def sweep_closed_sums(max_p: int = 12, max_n: int = 15) -> VerificationReport:
    """Direct summation against the closed forms, all arguments in range."""
    witnesses = []

    def note(name, args, got, want):
        if got != want:
            witnesses.append(
                {"sum": name, "args": args, "got": rat_to_str(got), "want": rat_to_str(want)}
            )

    for p in range(1, max_p + 1):
        for r in range(1, p + 1):
            note("alpha", [p, r], closed_sum_alpha(p, r), closed_sum_value("alpha", p, r))
    for p in range(2, max_p + 1):
        note("beta", [p], closed_sum_beta(p), closed_sum_value("beta", p))
        note("betaprime", [p], closed_sum_beta_prime(p), closed_sum_value("betaprime", p))
        for r in range(2, p + 1):
            note("gamma", [p, r], closed_sum_gamma(p, r), closed_sum_value("gamma", p, r))
    for n in range(0, max_n + 1):
        for a in range(0, n):
            note("binom-power", [n, a], alternating_power_sum(n, a), Fraction(0))
        note("binom-reciprocal", [n], alternating_reciprocal_sum(n), Fraction(1, n + 1))
    return VerificationReport(
        suite="closed-sums",
        parameters={"maxP": max_p, "maxN": max_n},
        passed=not witnesses,
        witnesses=witnesses,
    )


def sweep_sums_suite(suite: str, bound: int = 12) -> VerificationReport:
    """One named family of scalar sums checked up to ``bound``.

    ``suite`` is one of alpha, beta, betaprime, gamma, binom, or all; the
    bound must be at least 2.  The report counts every case checked.
    """
    if suite not in ("alpha", "beta", "betaprime", "gamma", "binom", "all"):
        raise InvalidRange(f"unknown sums suite {suite!r}")
    if bound < 2:
        raise InvalidRange(f"the bound must be at least 2, got {bound}")
    witnesses = []
    cases = 0

    def note(name, args, got, want):
        nonlocal cases
        cases += 1
        if got != want:
            witnesses.append(
                {"sum": name, "args": args, "got": rat_to_str(got), "want": rat_to_str(want)}
            )

    if suite in ("alpha", "all"):
        for p in range(1, bound + 1):
            for r in range(1, p + 1):
                note("alpha", [p, r], closed_sum_alpha(p, r), closed_sum_value("alpha", p, r))
    if suite in ("beta", "all"):
        for p in range(2, bound + 1):
            note("beta", [p], closed_sum_beta(p), closed_sum_value("beta", p))
    if suite in ("betaprime", "all"):
        for p in range(2, bound + 1):
            note(
                "betaprime",
                [p],
                closed_sum_beta_prime(p),
                closed_sum_value("betaprime", p),
            )
    if suite in ("gamma", "all"):
        for p in range(2, bound + 1):
            for r in range(2, p + 1):
                note("gamma", [p, r], closed_sum_gamma(p, r), closed_sum_value("gamma", p, r))
    if suite in ("binom", "all"):
        for n in range(0, bound + 1):
            for a in range(0, n):
                note("binom-power", [n, a], alternating_power_sum(n, a), Fraction(0))
            note(
                "binom-reciprocal",
                [n],
                alternating_reciprocal_sum(n),
                Fraction(1, n + 1),
            )
    return VerificationReport(
        suite=f"sums-{suite}",
        parameters={"suite": suite, "max": bound, "casesChecked": cases},
        passed=not witnesses,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# family properties


def sweep_pop_properties(
    stability_max_d: int = 7, lowering_max_d: int = 6, order_max_d: int = 6
) -> VerificationReport:
    """Stability, monotonicity, lowering closure, and total-order axioms."""
    witnesses = []
    for d in range(1, stability_max_d + 1):
        for n in range(1, d + 1):
            base = enumerate_pop(d, n, d - n)
            for k in list(range(d - n, d + 2)) + [INF]:
                if enumerate_pop(d, n, k) != base:
                    witnesses.append(
                        {"property": "stability", "d": d, "n": n, "k": _k_label(k)}
                    )
            prev: set = set()
            for k in range(0, d - n + 1):
                cur = set(enumerate_pop(d, n, k))
                if not prev <= cur:
                    witnesses.append(
                        {"property": "monotonicity", "d": d, "n": n, "k": k}
                    )
                prev = cur
    for d in range(1, lowering_max_d + 1):
        for n in range(1, d + 1):
            for k in _cutoffs_upto(d - n):
                members = set(enumerate_pop(d, n, k))
                for pop in members:
                    for pos in range(pop.n):
                        if pop.ordered[pos] >= 2 and lower_one_step(pop, pos) not in members:
                            witnesses.append(
                                {
                                    "property": "lowering-closure",
                                    "d": d,
                                    "n": n,
                                    "k": _k_label(k),
                                    "member": pop.to_json_dict(),
                                    "position": pos,
                                }
                            )
    for d in range(1, order_max_d + 1):
        for n in range(1, d + 1):
            family = enumerate_pop(d, n, INF)
            for i, p in enumerate(family):
                for j, q in enumerate(family):
                    want = (i > j) - (i < j)
                    if compare_pop(p, q) != want:
                        witnesses.append(
                            {
                                "property": "total-order",
                                "d": d,
                                "n": n,
                                "i": i,
                                "j": j,
                            }
                        )
    return VerificationReport(
        suite="pop-properties",
        parameters={
            "stabilityMaxD": stability_max_d,
            "loweringMaxD": lowering_max_d,
            "orderMaxD": order_max_d,
        },
        passed=not witnesses,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# graph suites


def _bfs_connected(a: int, b: int, edge_multiset) -> bool:
    """Breadth-first connectivity over a bipartite edge list."""
    total = a + b
    adj: dict[int, set[int]] = {i: set() for i in range(total)}
    for u, w, _deg in edge_multiset:
        adj[u].add(a + w)
        adj[a + w].add(u)
    seen = {0}
    queue = [0]
    while queue:
        cur = queue.pop()
        for nxt in adj[cur]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == total


def oracle_enumerate_graphs(shape: RelativeShape) -> tuple[LocalizationGraph, ...]:
    """Independent generate-and-filter enumeration for small shapes.

    Generates raw candidates by a different decomposition than the production
    path (degree partitions first, then endpoint assignments, then genus
    vectors and part-slot maps), filters with :func:`validate_graph`, and
    dedupes by canonical form.  Only plainly necessary arithmetic prefilters
    are applied before validation: the genus budget must balance exactly and
    the skeleton must be connected (checked by breadth-first search here,
    not by the production path's union-find).
    """

    def component_candidates(ci: int):
        d_i = shape.degrees[ci]
        g_i = shape.genera[ci]
        out = []
        degree_partitions = []

        def parts_rec(remaining, maxpart, acc):
            if remaining == 0:
                degree_partitions.append(tuple(acc))
                return
            for nxt in range(min(maxpart, remaining), 0, -1):
                acc.append(nxt)
                parts_rec(remaining - nxt, nxt, acc)
                acc.pop()

        parts_rec(d_i, d_i, [])
        for a in range(1, d_i + 1):
            for b in range(1, d_i + 1):
                for degs in degree_partitions:
                    h1 = len(degs) - (a + b) + 1
                    genus_target = g_i - h1
                    if genus_target < 0:
                        continue
                    raw_ends = itertools.product(
                        *[[(u, w) for u in range(a) for w in range(b)] for _ in degs]
                    )
                    seen_edge_sets = set()
                    for ends in raw_ends:
                        edge_multiset = tuple(
                            sorted((u, w, deg) for (u, w), deg in zip(ends, degs))
                        )
                        if edge_multiset in seen_edge_sets:
                            continue
                        seen_edge_sets.add(edge_multiset)
                        if not _bfs_connected(a, b, edge_multiset):
                            continue
                        for genus_vec in itertools.product(
                            range(genus_target + 1), repeat=a + b
                        ):
                            if sum(genus_vec) != genus_target:
                                continue
                            out.append((a, b, edge_multiset, genus_vec))
        return out

    all_graphs: dict[tuple, LocalizationGraph] = {}
    comp_cands = [component_candidates(i) for i in range(shape.c)]
    from .locgraph import Edge, Refinement, Vertex  # local alias for assembly

    for combo in itertools.product(*comp_cands):
        vertices: list[Vertex] = []
        edges: list[Edge] = []
        offset = 0
        comp_vertex_ids: dict[int, list[int]] = {}
        for comp_idx, (a, b, comp_edges, genus_vec) in enumerate(combo, start=1):
            ids = []
            for local in range(a + b):
                vid = offset + local
                side = SIDE_0 if local < a else SIDE_INF
                vertices.append(Vertex(vid, genus_vec[local], side, comp_idx))
                ids.append(vid)
            comp_vertex_ids[comp_idx] = ids
            for u, w, deg in comp_edges:
                edges.append(Edge(len(edges), (offset + u, offset + a + w), deg))
            offset += a + b
        marking_spaces = []
        for comp_idx in range(1, shape.c + 1):
            for _label in shape.marking_sets[comp_idx - 1]:
                marking_spaces.append(comp_vertex_ids[comp_idx])
        labels = [x for s in shape.marking_sets for x in s]
        side_ids = {
            s: [v.id for v in vertices if v.side == s] for s in (SIDE_0, SIDE_INF)
        }
        comp_of = {v.id: v.component for v in vertices}
        for placement in itertools.product(*marking_spaces):
            markings = tuple(zip(labels, placement))
            ref_spaces = []
            for j, profile in enumerate(shape.profiles):
                cands = []
                for side in (SIDE_0, SIDE_INF):
                    slot_spaces = []
                    flat_parts = []
                    for comp_idx in range(1, shape.c + 1):
                        comp_side = [
                            vid for vid in side_ids[side] if comp_of[vid] == comp_idx
                        ]
                        for part in profile[comp_idx - 1]:
                            flat_parts.append(part)
                            slot_spaces.append(comp_side)
                    if any(not s for s in slot_spaces):
                        continue
                    seen = set()
                    for assignment in itertools.product(*slot_spaces):
                        dist: dict[int, list[int]] = {}
                        for part, vid in zip(flat_parts, assignment):
                            dist.setdefault(vid, []).append(part)
                        key = (side, tuple(sorted((v, tuple(sorted(p))) for v, p in dist.items())))
                        if key in seen:
                            continue
                        seen.add(key)
                        cands.append(
                            Refinement(j, side, tuple((v, tuple(p)) for v, p in dist.items()))
                        )
                ref_spaces.append(cands)
            if any(not c for c in ref_spaces):
                continue
            for ref_combo in itertools.product(*ref_spaces):
                graph = LocalizationGraph(
                    tuple(vertices), tuple(edges), markings, ref_combo
                )
                ok, _ = validate_graph(graph, shape)
                if not ok:
                    continue
                enc = canonical_form(graph)
                if enc not in all_graphs:
                    all_graphs[enc] = graph
    from .locgraph import graph_from_canonical

    return tuple(graph_from_canonical(enc) for enc in sorted(all_graphs))


def default_oracle_shapes(heavy: bool = False) -> list[RelativeShape]:
    """The shape family for oracle comparison; ``heavy`` covers the full bounds."""
    shapes: list[RelativeShape] = []

    def partitions_of(x):
        out = []

        def rec(rem, mx, acc):
            if rem == 0:
                out.append(tuple(acc))
                return
            for nxt in range(min(mx, rem), 0, -1):
                acc.append(nxt)
                rec(rem - nxt, nxt, acc)
                acc.pop()

        rec(x, x, [])
        return out

    small_degrees = (1, 2) if not heavy else (1, 2, 3)
    genus_range = (0, 1) if not heavy else (0, 1, 2)
    m_range = (1, 2)
    for d in small_degrees:
        for g in genus_range:
            for m in m_range:
                for profs in itertools.product(partitions_of(d), repeat=m):
                    shapes.append(
                        RelativeShape((g,), (d,), ((),), tuple((p,) for p in profs))
                    )
    # marked variants
    for d in (1, 2):
        for m in (1, 2):
            for profs in itertools.product(partitions_of(d), repeat=m):
                shapes.append(
                    RelativeShape((0,), (d,), ((1,),), tuple((p,) for p in profs))
                )
    # two components
    for dd in ((1, 1), (2, 1)):
        for gg in ((0, 0), (1, 0)):
            for m in m_range:
                prof_spaces = [
                    [tuple(p) for p in itertools.product(*[partitions_of(x) for x in dd])]
                ] * m
                for profs in itertools.product(*prof_spaces):
                    shapes.append(RelativeShape(gg, dd, ((), ()), tuple(profs)))
    if heavy:
        for g in (0, 1, 2):
            for m in (1, 2):
                for profs in itertools.product(partitions_of(3), repeat=m):
                    shapes.append(
                        RelativeShape((g,), (3,), ((),), tuple((p,) for p in profs))
                    )
    return shapes


def sweep_graph_oracle(heavy: bool = False) -> VerificationReport:
    """Production enumeration against the generate-and-filter oracle."""
    witnesses = []
    shapes = default_oracle_shapes(heavy)
    for shape in shapes:
        got = enumerate_graphs(shape)
        want = oracle_enumerate_graphs(shape)
        if tuple(canonical_form(g) for g in got) != tuple(
            canonical_form(g) for g in want
        ):
            witnesses.append(
                {
                    "shape": shape.to_json_dict(),
                    "produced": len(got),
                    "oracle": len(want),
                }
            )
    return VerificationReport(
        suite="graph-oracle",
        parameters={"shapes": len(shapes), "heavy": heavy},
        passed=not witnesses,
        witnesses=witnesses,
    )


def _relabel_pool() -> list[tuple[RelativeShape, LocalizationGraph]]:
    pool = []
    shapes = [
        RelativeShape((0,), (2,), ((),), (((2,),), ((1, 1),))),
        RelativeShape((1,), (2,), ((1,),), (((2,),),)),
        RelativeShape((1,), (1,), ((),), (((1,),), ((1,),))),
        RelativeShape((0, 0), (1, 1), ((), ()), ((((1,)), ((1,))),)),
        RelativeShape((2,), (2,), ((),), (((1, 1),),)),
    ]
    for shape in shapes:
        for graph in enumerate_graphs(shape):
            pool.append((shape, graph))
    return pool


def sweep_relabel_invariance(trials: int = 1000, seed: int = 20240801) -> VerificationReport:
    """Multiplicity, symmetry order, validity under random relabelings."""
    rng = random.Random(seed)
    pool = _relabel_pool()
    witnesses = []
    for trial in range(trials):
        shape, graph = pool[rng.randrange(len(pool))]
        vids = [v.id for v in graph.vertices]
        shuffled = vids[:]
        rng.shuffle(shuffled)
        offset = rng.randrange(0, 50)
        vmap = {old: new + offset for old, new in zip(vids, shuffled)}
        eids = [e.id for e in graph.edges]
        eshuf = eids[:]
        rng.shuffle(eshuf)
        emap = {old: new for old, new in zip(eids, eshuf)}
        relabeled = relabel_graph(graph, vmap, emap)
        ok, issues = validate_graph(relabeled, shape)
        checks = {
            "valid": ok,
            "canonical": canonical_form(relabeled) == canonical_form(graph),
            "multiplicity": multiplicity(relabeled) == multiplicity(graph),
            "autOrder": aut_group_order(relabeled) == aut_group_order(graph),
        }
        if not all(checks.values()):
            witnesses.append({"trial": trial, "failed": [k for k, v in checks.items() if not v]})
    return VerificationReport(
        suite="relabel-invariance",
        parameters={"trials": trials, "seed": seed},
        passed=not witnesses,
        witnesses=witnesses,
    )


def check_doubly_degenerate() -> VerificationReport:
    """Both-sides-collapsed loci contribute exactly minus the inverse square."""
    shape = RelativeShape((0,), (1,), ((),), (((1,),), ((1,),)))
    witnesses = []
    seen = 0
    for graph in enumerate_graphs(shape):
        if degenerate_over(graph, SIDE_0) and degenerate_over(graph, SIDE_INF):
            seen += 1
            expected = FormalClass.scalar(Laurent({-2: Fraction(-1)}))
            got = contribution(graph, shape).euler
            if got.terms != expected.terms or multiplicity(graph) != 1:
                witnesses.append({"graph": graph.to_json_dict()})
    if seen == 0:
        witnesses.append({"error": "no doubly degenerate graph found"})
    return VerificationReport(
        suite="degenerate-euler",
        parameters={"expected": "-t^-2", "found": seen},
        passed=not witnesses,
        witnesses=witnesses,
    )


def _multiply_back_ok(graph: LocalizationGraph, shape: RelativeShape) -> bool:
    """Euler reciprocal times its unexpanded side denominators equals one."""
    euler = contribution(graph, shape).euler
    prod = euler
    for side, factor_key, sign in ((SIDE_0, "q0", 1), (SIDE_INF, "qinf", -1)):
        weight = Laurent({1: Fraction(sign)})
        if degenerate_over(graph, side):
            prod = prod * weight
        else:
            bound = prod.truncations.get(factor_key, 0)
            gen = ("psi", factor_key, 0)
            denominator = FormalClass(
                {(): weight, ((gen, 1),): Laurent({0: Fraction(-1)})},
                {factor_key: bound},
            )
            prod = prod * FormalClass.scalar(weight) * denominator
    return prod.terms == {(): Laurent({0: Fraction(1)})}


def sweep_multiply_back() -> VerificationReport:
    """The expansion identity on every dual-sided graph of the test shapes."""
    shapes = [
        RelativeShape((1,), (1,), ((),), (((1,),), ((1,),))),
        RelativeShape((0,), (1,), ((1,),), (((1,),), ((1,),))),
        RelativeShape((2,), (1,), ((),), (((1,),), ((1,),))),
        RelativeShape((1,), (2,), ((),), (((2,),), ((1, 1),))),
        RelativeShape((0,), (2,), ((1,),), (((2,),), ((2,),))),
        RelativeShape((1, 0), (1, 1), ((), ()), ((((1,)), ((1,))), (((1,)), ((1,)))),),
    ]
    witnesses = []
    cases = 0
    for shape in shapes:
        for graph in enumerate_graphs(shape):
            if classify_case(graph) != "I":
                continue
            cases += 1
            if not _multiply_back_ok(graph, shape):
                witnesses.append({"shape": shape.to_json_dict(), "graph": graph.to_json_dict()})
    if cases == 0:
        witnesses.append({"error": "no dual-sided graphs enumerated"})
    return VerificationReport(
        suite="multiply-back",
        parameters={"shapes": len(shapes), "casesChecked": cases},
        passed=not witnesses,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# dimension suites


def _random_partition(rng: random.Random, total: int) -> tuple[int, ...]:
    parts = []
    rem = total
    while rem > 0:
        p = rng.randint(1, rem)
        parts.append(p)
        rem -= p
    return tuple(sorted(parts, reverse=True))


def random_omega_instance(rng: random.Random):
    """One random valid argument pack for the dimension cross-check."""
    c = rng.randint(1, 2)
    degrees = tuple(rng.randint(1, 4) for _ in range(c))
    cards = tuple(rng.randint(1, d) for d in degrees)
    marking_sets = canonical_marking_sets(cards)
    genera = tuple(rng.randint(0, 3) for _ in range(c))
    m = rng.randint(1, 3)
    profiles = tuple(
        tuple(_random_partition(rng, d) for d in degrees) for _ in range(m)
    )
    n_extra = rng.randint(0, 3)
    shape = RelativeShape(
        genera, degrees, marking_sets, profiles, parameterized=True, extra_markings=n_extra
    )
    family = enumerate_pop_multi(degrees, marking_sets, INF)
    alpha = family[rng.randrange(len(family))]
    beta = family[rng.randrange(len(family))]
    k = rng.randint(0, sum(degrees) + 2)
    r_exps = [rng.randint(0, 4) for _ in range(n_extra)]
    s_exps = [rng.randint(0, 4) for _ in range(m)]
    return alpha, beta, shape, r_exps, s_exps, k


def sweep_omega_dimension(trials: int = 1000, seed: int = 20240801) -> VerificationReport:
    rng = random.Random(seed)
    witnesses = []
    for trial in range(trials):
        alpha, beta, shape, r_exps, s_exps, k = random_omega_instance(rng)
        rep = omega_dimension_check(alpha, beta, shape, r_exps, s_exps, k)
        if not (rep["equal"] and rep["degreesAgree"]):
            witnesses.append(
                {
                    "trial": trial,
                    "alpha": alpha.to_json_dict(),
                    "beta": beta.to_json_dict(),
                    "shape": shape.to_json_dict(),
                    "k": k,
                    "report": rep,
                }
            )
    return VerificationReport(
        suite="omega-dimension",
        parameters={"trials": trials, "seed": seed},
        passed=not witnesses,
        witnesses=witnesses,
    )


def sweep_hurwitz(max_genus: int = 10, scan_m: int = 40) -> VerificationReport:
    """Degree-two fully ramified covers: the profile count is pinned by genus."""
    witnesses = []
    for g in range(max_genus + 1):
        satisfying = [
            m
            for m in range(1, scan_m + 1)
            if hurwitz_condition(g, [(2,)] * m)
        ]
        if satisfying != [2 * g + 2]:
            witnesses.append({"genus": g, "satisfying": satisfying})
    return VerificationReport(
        suite="hurwitz",
        parameters={"maxGenus": max_genus, "scanM": scan_m},
        passed=not witnesses,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# the aggregate battery


def _suite_spec(max_d: int, seed: int, inject_fault: bool):
    multi_total = min(5, max_d)
    return [
        ("closed-sums", sweep_closed_sums, {"max_p": 12, "max_n": 15}),
        (
            "pop-properties",
            sweep_pop_properties,
            {
                "stability_max_d": min(7, max_d + 1),
                "lowering_max_d": max_d,
                "order_max_d": max_d,
            },
        ),
        ("triangular", sweep_triangular, {"max_d": max_d, "inject_fault": inject_fault}),
        ("invertible", sweep_invertible, {"max_total": multi_total}),
        ("transpose-scaling", sweep_transpose_scaling, {"max_total": multi_total}),
        ("kronecker", sweep_kronecker, {"max_total": multi_total}),
        ("worked-instance", check_worked_instance, {}),
        ("graph-oracle", sweep_graph_oracle, {"heavy": False}),
        ("relabel-invariance", sweep_relabel_invariance, {"trials": 1000, "seed": seed}),
        ("degenerate-euler", check_doubly_degenerate, {}),
        ("multiply-back", sweep_multiply_back, {}),
        ("omega-dimension", sweep_omega_dimension, {"trials": 1000, "seed": seed}),
        ("hurwitz", sweep_hurwitz, {"max_genus": 10}),
    ]


def _run_suite(spec) -> VerificationReport:
    _name, fn, kwargs = spec
    return _timed(lambda: fn(**kwargs))


def verify_all(
    max_d: int = 6,
    seed: int = 20240801,
    jobs: int = 1,
    inject_fault: bool = False,
) -> tuple[list[VerificationReport], bool]:
    """Run the whole battery; deterministic content for any job count."""
    spec = _suite_spec(max_d, seed, inject_fault)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_suite, spec))
    else:
        reports = [_run_suite(s) for s in spec]
    return reports, all(r.passed for r in reports)


def reports_to_json(
    reports: Sequence[VerificationReport],
    overall: bool,
    parameters: dict,
    include_wall_time: bool = False,
) -> str:
    payload = {
        "parameters": parameters,
        "reports": [r.to_json_dict(include_wall_time) for r in reports],
        "pass": overall,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
