"""Torus-fixed-locus graphs: enumeration, validity, and local contributions.

A graph here records one fixed locus of the circle action on a space of maps
to a projective line relative to both poles: bipartite vertices (side ``"0"``
or ``"inf"``) carrying genus and component labels, edges with positive
degrees, marking placements, and one *refinement* per ramification profile
saying on which side the profile is imposed and how its parts are distributed
over the vertices of that side.

The module provides

* :func:`validate_graph` -- the full list of structural conditions;
* :func:`enumerate_graphs` -- all valid graphs for a shape, one canonical
  representative per isomorphism class, within configurable safety bounds;
* :func:`multiplicity`, :func:`aut_group_order`, :func:`euler_inverse` --
  the combinatorial weights of a fixed locus;
* :func:`classify_principal` -- recognition of the distinguished graphs
  indexed by partially ordered partitions;
* dimension bookkeeping (:func:`vdim_parameterized`, :func:`hurwitz_condition`,
  :func:`omega_dimension_check`).

Everything is exact; series in the equivariant weight are truncated at the
dimension of the factor they come from.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

from .errors import (
    EnumerationBoundExceeded,
    InvalidShape,
    InvalidVertex,
    PreconditionViolated,
)
from .exactalg import FormalClass, Laurent, formal_geom_expand, rat_pow
from .partitions import MultiPOP, POP, canonicalize, double_prime

SIDE_0 = "0"
SIDE_INF = "inf"
SIDES = (SIDE_0, SIDE_INF)

DEFAULT_MAX_DEGREE = 4
DEFAULT_MAX_GENUS = 3
DEFAULT_MAX_PROFILES = 3
AUT_VERTEX_BOUND = 12


@dataclass(frozen=True)
class RelativeShape:
    """Discrete data of a relative-maps space.

    ``genera``, ``degrees``: per-component genus and positive degree.
    ``marking_sets``: ordered set partition of the marking labels ``{1..n}``
    (blocks may be empty); these are the labels graphs must place.
    ``profiles``: the ramification profiles, each a per-component partition of
    the component degree.
    ``parameterized``: whether the target line is rigid or carries its own
    automorphisms (affects expected dimensions only).
    ``extra_markings``: markings counted by the dimension bookkeeping but not
    placed on graphs.
    """

    genera: tuple[int, ...]
    degrees: tuple[int, ...]
    marking_sets: tuple[tuple[int, ...], ...]
    profiles: tuple[tuple[tuple[int, ...], ...], ...]
    parameterized: bool = True
    extra_markings: int = 0

    def __post_init__(self):
        object.__setattr__(self, "genera", tuple(int(g) for g in self.genera))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(
            self, "marking_sets", tuple(tuple(s) for s in self.marking_sets)
        )
        object.__setattr__(
            self,
            "profiles",
            tuple(tuple(canonicalize(p) for p in prof) for prof in self.profiles),
        )
        c = len(self.degrees)
        if c < 1:
            raise InvalidShape("need at least one component")
        if len(self.genera) != c or len(self.marking_sets) != c:
            raise InvalidShape("genera, degrees, and marking sets must align")
        if any(g < 0 for g in self.genera):
            raise InvalidShape("genera must be nonnegative")
        if any(d < 1 for d in self.degrees):
            raise InvalidShape("degrees must be positive")
        labels = [x for s in self.marking_sets for x in s]
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise InvalidShape("marking sets must partition 1..n")
        if len(self.profiles) < 1:
            raise InvalidShape("need at least one profile")
        for prof in self.profiles:
            if len(prof) != c:
                raise InvalidShape("each profile needs one partition per component")
            for part, d in zip(prof, self.degrees):
                if sum(part) != d:
                    raise InvalidShape(
                        f"profile component {part} does not partition degree {d}"
                    )
        if self.extra_markings < 0:
            raise InvalidShape("extra marking count must be nonnegative")

    @property
    def c(self) -> int:
        return len(self.degrees)

    @property
    def d(self) -> int:
        return sum(self.degrees)

    @property
    def n(self) -> int:
        return sum(len(s) for s in self.marking_sets)

    @property
    def m(self) -> int:
        return len(self.profiles)

    @property
    def arithmetic_genus(self) -> int:
        return sum(self.genera) - self.c + 1

    def component_of_marking(self, label: int) -> int:
        for i, s in enumerate(self.marking_sets, start=1):
            if label in s:
                return i
        raise InvalidShape(f"marking {label} belongs to no component")

    def to_json_dict(self) -> dict:
        return {
            "genera": list(self.genera),
            "degrees": list(self.degrees),
            "markingSets": [list(s) for s in self.marking_sets],
            "profiles": [[list(p) for p in prof] for prof in self.profiles],
            "parameterized": self.parameterized,
            "extraMarkings": self.extra_markings,
        }


@dataclass(frozen=True)
class Vertex:
    id: int
    genus: int
    side: str
    component: int


@dataclass(frozen=True)
class Edge:
    id: int
    ends: tuple[int, int]
    degree: int


@dataclass(frozen=True)
class Refinement:
    """One imposed profile: its side and the per-vertex part multisets."""

    profile_index: int
    side: str
    distribution: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        dist = tuple(
            sorted((int(v), tuple(sorted(parts, reverse=True))) for v, parts in self.distribution)
        )
        object.__setattr__(self, "distribution", dist)

    def parts_at(self, vertex_id: int) -> tuple[int, ...]:
        for v, parts in self.distribution:
            if v == vertex_id:
                return parts
        return ()


@dataclass(frozen=True)
class LocalizationGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    markings: tuple[tuple[int, int], ...]  # sorted (label, vertex id)
    refinements: tuple[Refinement, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "markings", tuple(sorted(self.markings)))
        object.__setattr__(
            self,
            "refinements",
            tuple(sorted(self.refinements, key=lambda r: r.profile_index)),
        )

    def vertex(self, vid: int) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise InvalidVertex(f"no vertex with id {vid}")

    def incident_edges(self, vid: int) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if vid in e.ends)

    def markings_at(self, vid: int) -> tuple[int, ...]:
        return tuple(label for label, v in self.markings if v == vid)

    def side_vertices(self, side: str) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v.side == side)

    def component_vertices(self, comp: int) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v.component == comp)

    def total_degree(self) -> int:
        return sum(e.degree for e in self.edges)

    def valence(self, vid: int) -> int:
        return len(self.incident_edges(vid)) + len(self.markings_at(vid))

    def to_json_dict(self) -> dict:
        return {
            "vertices": [
                {"id": v.id, "genus": v.genus, "side": v.side, "component": v.component}
                for v in self.vertices
            ],
            "edges": [
                {"id": e.id, "ends": list(e.ends), "degree": e.degree}
                for e in self.edges
            ],
            "markings": {str(label): vid for label, vid in self.markings},
            "refinements": [
                {
                    "profileIndex": r.profile_index,
                    "side": r.side,
                    "distribution": {str(v): list(parts) for v, parts in r.distribution},
                }
                for r in self.refinements
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "LocalizationGraph":
        try:
            vertices = tuple(
                Vertex(int(v["id"]), int(v["genus"]), str(v["side"]), int(v["component"]))
                for v in data["vertices"]
            )
            edges = tuple(
                Edge(int(e["id"]), (int(e["ends"][0]), int(e["ends"][1])), int(e["degree"]))
                for e in data["edges"]
            )
            markings = tuple(
                (int(label), int(vid)) for label, vid in data["markings"].items()
            )
            refinements = tuple(
                Refinement(
                    int(r["profileIndex"]),
                    str(r["side"]),
                    tuple(
                        (int(v), tuple(int(p) for p in parts))
                        for v, parts in r["distribution"].items()
                    ),
                )
                for r in data["refinements"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidShape(f"malformed graph object: {exc}") from exc
        return cls(vertices, edges, markings, refinements)


def validate_graph(graph: LocalizationGraph, shape: RelativeShape) -> tuple[bool, list[str]]:
    """Check every structural condition; returns (ok, human-readable issues)."""
    issues: list[str] = []
    vids = [v.id for v in graph.vertices]
    if len(set(vids)) != len(vids):
        issues.append("duplicate vertex ids")
        return False, issues
    by_id = {v.id: v for v in graph.vertices}
    eids = [e.id for e in graph.edges]
    if len(set(eids)) != len(eids):
        issues.append("duplicate edge ids")

    for v in graph.vertices:
        if v.genus < 0:
            issues.append(f"vertex {v.id} has negative genus")
        if v.side not in SIDES:
            issues.append(f"vertex {v.id} has unknown side {v.side!r}")
        if not (1 <= v.component <= shape.c):
            issues.append(f"vertex {v.id} has component {v.component} outside 1..{shape.c}")

    for e in graph.edges:
        if e.degree < 1:
            issues.append(f"edge {e.id} has nonpositive degree")
        a, b = e.ends
        if a not in by_id or b not in by_id:
            issues.append(f"edge {e.id} references a missing vertex")
            continue
        va, vb = by_id[a], by_id[b]
        if a == b or {va.side, vb.side} != {SIDE_0, SIDE_INF}:
            issues.append(f"edge {e.id} must join distinct vertices on opposite sides")
        if va.component != vb.component:
            issues.append(f"edge {e.id} joins different components")
    if issues:
        return False, issues

    # per-component checks: nonempty, connected, genus and degree budgets
    for comp in range(1, shape.c + 1):
        cverts = graph.component_vertices(comp)
        if not cverts:
            issues.append(f"component {comp} has no vertices")
            continue
        cedges = [e for e in graph.edges if by_id[e.ends[0]].component == comp]
        ids = [v.id for v in cverts]
        parent = {i: i for i in ids}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in cedges:
            ra, rb = find(e.ends[0]), find(e.ends[1])
            if ra != rb:
                parent[ra] = rb
        if len({find(i) for i in ids}) != 1:
            issues.append(f"component {comp} is not connected")
            continue
        h1 = len(cedges) - len(cverts) + 1
        total_genus = sum(v.genus for v in cverts) + h1
        if total_genus != shape.genera[comp - 1]:
            issues.append(
                f"component {comp} has genus {total_genus}, expected {shape.genera[comp - 1]}"
            )
        degree = sum(e.degree for e in cedges)
        if degree != shape.degrees[comp - 1]:
            issues.append(
                f"component {comp} has degree {degree}, expected {shape.degrees[comp - 1]}"
            )
        for v in cverts:
            if not graph.incident_edges(v.id):
                issues.append(f"vertex {v.id} has no incident edge")

    # markings: exactly the shape's labels, each on a vertex of its component
    labels = [label for label, _ in graph.markings]
    expected = sorted(x for s in shape.marking_sets for x in s)
    if sorted(labels) != expected:
        issues.append(f"markings {sorted(labels)} differ from shape labels {expected}")
    else:
        for label, vid in graph.markings:
            if vid not in by_id:
                issues.append(f"marking {label} sits on missing vertex {vid}")
            elif by_id[vid].component != shape.component_of_marking(label):
                issues.append(f"marking {label} sits on the wrong component")

    # refinements: one per profile, parts distributed on one side with
    # per-vertex sums matching incident edge degrees
    if sorted(r.profile_index for r in graph.refinements) != list(range(shape.m)):
        issues.append("refinements must cover each profile index exactly once")
    else:
        for r in graph.refinements:
            if r.side not in SIDES:
                issues.append(f"refinement {r.profile_index} has unknown side {r.side!r}")
                continue
            dist = dict(r.distribution)
            for vid in dist:
                if vid not in by_id:
                    issues.append(
                        f"refinement {r.profile_index} references missing vertex {vid}"
                    )
                    break
                if by_id[vid].side != r.side:
                    issues.append(
                        f"refinement {r.profile_index} assigns parts across sides"
                    )
                    break
            else:
                profile = shape.profiles[r.profile_index]
                for comp in range(1, shape.c + 1):
                    cside = [v for v in graph.side_vertices(r.side) if v.component == comp]
                    got = sorted(
                        p for v in cside for p in dist.get(v.id, ())
                    )
                    if got != sorted(profile[comp - 1]):
                        issues.append(
                            f"refinement {r.profile_index} distributes {got} on component "
                            f"{comp}, expected the parts of {list(profile[comp - 1])}"
                        )
                    for v in cside:
                        target = sum(e.degree for e in graph.incident_edges(v.id))
                        if sum(dist.get(v.id, ())) != target:
                            issues.append(
                                f"refinement {r.profile_index} gives vertex {v.id} parts "
                                f"summing to {sum(dist.get(v.id, ()))}, expected {target}"
                            )

    return not issues, issues


# ---------------------------------------------------------------------------
# enumeration


def _weak_compositions(total: int, length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, length - 1):
            yield (first,) + rest


def _edge_multisets(a: int, b: int, total: int) -> Iterator[tuple[tuple[int, int, int], ...]]:
    """Multisets of (side-0 slot, side-inf slot, degree) with degrees summing to total."""
    triples = [
        (u, w, deg) for u in range(a) for w in range(b) for deg in range(1, total + 1)
    ]

    def rec(start: int, remaining: int, acc: list):
        if remaining == 0:
            yield tuple(acc)
            return
        for idx in range(start, len(triples)):
            deg = triples[idx][2]
            if deg <= remaining:
                acc.append(triples[idx])
                yield from rec(idx, remaining - deg, acc)
                acc.pop()

    yield from rec(0, total, [])


def _covers_and_connected(edges, a: int, b: int) -> bool:
    n = a + b
    seen = [False] * n
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for u, w, _deg in edges:
        adj[u].add(a + w)
        adj[a + w].add(u)
        seen[u] = seen[a + w] = True
    if not all(seen):
        return False
    stack, visited = [0], {0}
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in visited:
                visited.add(y)
                stack.append(y)
    return len(visited) == n


def _submultisets_with_sum(parts: tuple[int, ...], target: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(chosen, remaining) pairs of sub-multisets of ``parts`` summing to target."""
    values = sorted(set(parts), reverse=True)
    counts = Counter(parts)

    def rec(i: int, remaining: int, acc: list):
        if remaining == 0:
            chosen = tuple(acc)
            left = list(parts)
            for x in chosen:
                left.remove(x)
            yield chosen, tuple(sorted(left, reverse=True))
            return
        if i >= len(values):
            return
        v = values[i]
        maxtake = min(counts[v], remaining // v) if v > 0 else 0
        for take in range(maxtake, -1, -1):
            yield from rec(i + 1, remaining - v * take, acc + [v] * take)

    yield from rec(0, target, [])


def _distributions(
    parts: tuple[int, ...], targets: Sequence[tuple[int, int]]
) -> Iterator[dict[int, tuple[int, ...]]]:
    """Assign the multiset ``parts`` over vertices with prescribed sums."""
    if not targets:
        if not parts:
            yield {}
        return
    vid, want = targets[0]
    for chosen, remaining in _submultisets_with_sum(parts, want):
        for rest in _distributions(remaining, targets[1:]):
            out = {vid: chosen}
            out.update(rest)
            yield out


def _component_skeletons(d_i: int, g_i: int, marks: tuple[int, ...]):
    """Raw per-component structures before global assembly.

    Yields ``(a, b, edges, genus_vector, marking_assignment)`` with local
    vertex slots 0..a-1 on side 0 and a..a+b-1 on side inf.
    """
    for a in range(1, d_i + 1):
        for b in range(1, d_i + 1):
            for edges in _edge_multisets(a, b, d_i):
                if not _covers_and_connected(edges, a, b):
                    continue
                h1 = len(edges) - (a + b) + 1
                rem = g_i - h1
                if rem < 0:
                    continue
                for genus_vec in _weak_compositions(rem, a + b):
                    for assign in itertools.product(range(a + b), repeat=len(marks)):
                        yield a, b, edges, genus_vec, assign


def canonical_form(graph: LocalizationGraph) -> tuple:
    """Label-independent encoding: minimal over structure-preserving relabelings.

    Vertices are grouped by (component, side) and sorted by genus inside each
    group; only permutations among equal-genus vertices can lower the encoding
    further, so those are searched exhaustively.
    """
    groups: dict[tuple[int, str], list[Vertex]] = {}
    for v in graph.vertices:
        groups.setdefault((v.component, v.side), []).append(v)
    ordered_keys = sorted(groups, key=lambda key: (key[0], key[1] != SIDE_0))
    blocks: list[list[list[Vertex]]] = []  # per group: subblocks of equal genus
    for key in ordered_keys:
        members = sorted(groups[key], key=lambda v: v.genus)
        sub: list[list[Vertex]] = []
        for _, grp in itertools.groupby(members, key=lambda v: v.genus):
            sub.append(list(grp))
        blocks.append(sub)

    flat_subblocks = [sb for group in blocks for sb in group]
    side_of = {v.id: v.side for v in graph.vertices}
    best = None
    for perm_combo in itertools.product(
        *[itertools.permutations(sb) for sb in flat_subblocks]
    ):
        order = [v for sb in perm_combo for v in sb]
        newid = {v.id: i for i, v in enumerate(order)}
        vtuple = tuple((v.component, v.side, v.genus) for v in order)
        enc_edges = []
        for e in graph.edges:
            a, b = e.ends
            if side_of[a] != SIDE_0:
                a, b = b, a
            enc_edges.append((newid[a], newid[b], e.degree))
        etuple = tuple(sorted(enc_edges))
        mtuple = tuple(sorted((label, newid[vid]) for label, vid in graph.markings))
        rtuple = tuple(
            (
                r.profile_index,
                r.side,
                tuple(sorted((newid[v], parts) for v, parts in r.distribution)),
            )
            for r in graph.refinements
        )
        enc = (vtuple, etuple, mtuple, rtuple)
        if best is None or enc < best:
            best = enc
    return best


def graph_from_canonical(enc: tuple) -> LocalizationGraph:
    vtuple, etuple, mtuple, rtuple = enc
    vertices = tuple(
        Vertex(i, genus, side, comp) for i, (comp, side, genus) in enumerate(vtuple)
    )
    edges = tuple(Edge(i, (u, w), deg) for i, (u, w, deg) in enumerate(etuple))
    refinements = tuple(
        Refinement(pi, side, dist) for pi, side, dist in rtuple
    )
    return LocalizationGraph(vertices, edges, mtuple, refinements)


def relabel_graph(
    graph: LocalizationGraph, vertex_map: Mapping[int, int], edge_map: Mapping[int, int] | None = None
) -> LocalizationGraph:
    """Apply an id bijection; the result is the same abstract graph."""
    edge_map = edge_map or {e.id: e.id for e in graph.edges}
    vertices = tuple(
        Vertex(vertex_map[v.id], v.genus, v.side, v.component) for v in graph.vertices
    )
    edges = tuple(
        Edge(edge_map[e.id], (vertex_map[e.ends[0]], vertex_map[e.ends[1]]), e.degree)
        for e in graph.edges
    )
    markings = tuple((label, vertex_map[vid]) for label, vid in graph.markings)
    refinements = tuple(
        Refinement(
            r.profile_index,
            r.side,
            tuple((vertex_map[v], parts) for v, parts in r.distribution),
        )
        for r in graph.refinements
    )
    return LocalizationGraph(vertices, edges, markings, refinements)


def check_enumeration_bounds(
    shape: RelativeShape,
    max_degree: int = DEFAULT_MAX_DEGREE,
    max_genus: int = DEFAULT_MAX_GENUS,
    max_profiles: int = DEFAULT_MAX_PROFILES,
) -> None:
    if shape.d > max_degree:
        raise EnumerationBoundExceeded(
            f"total degree {shape.d} exceeds the bound {max_degree}"
        )
    if sum(shape.genera) > max_genus:
        raise EnumerationBoundExceeded(
            f"total genus {sum(shape.genera)} exceeds the bound {max_genus}"
        )
    if shape.m > max_profiles:
        raise EnumerationBoundExceeded(
            f"{shape.m} profiles exceed the bound {max_profiles}"
        )


def enumerate_graphs(
    shape: RelativeShape,
    max_degree: int = DEFAULT_MAX_DEGREE,
    max_genus: int = DEFAULT_MAX_GENUS,
    max_profiles: int = DEFAULT_MAX_PROFILES,
) -> tuple[LocalizationGraph, ...]:
    """All valid graphs for the shape, one per isomorphism class, sorted.

    The output is deterministic: canonical representatives sorted by their
    encodings.  Raises :class:`EnumerationBoundExceeded` beyond the bounds.
    """
    check_enumeration_bounds(shape, max_degree, max_genus, max_profiles)
    per_comp = [
        list(_component_skeletons(shape.degrees[i], shape.genera[i], shape.marking_sets[i]))
        for i in range(shape.c)
    ]
    found: dict[tuple, LocalizationGraph] = {}
    for combo in itertools.product(*per_comp):
        vertices: list[Vertex] = []
        edges: list[Edge] = []
        markings: list[tuple[int, int]] = []
        offset = 0
        side_vertices: dict[tuple[int, str], list[int]] = {}
        incident_sum: dict[int, int] = {}
        for comp_idx, (a, b, comp_edges, genus_vec, assign) in enumerate(combo, start=1):
            for local in range(a + b):
                vid = offset + local
                side = SIDE_0 if local < a else SIDE_INF
                vertices.append(Vertex(vid, genus_vec[local], side, comp_idx))
                side_vertices.setdefault((comp_idx, side), []).append(vid)
                incident_sum[vid] = 0
            for u, w, deg in comp_edges:
                edges.append(Edge(len(edges), (offset + u, offset + a + w), deg))
                incident_sum[offset + u] += deg
                incident_sum[offset + a + w] += deg
            for label, local in zip(shape.marking_sets[comp_idx - 1], assign):
                markings.append((label, offset + local))
            offset += a + b

        refinement_options: list[list[Refinement]] = []
        for j, profile in enumerate(shape.profiles):
            options: list[Refinement] = []
            for side in SIDES:
                per_component_dists = []
                feasible = True
                for comp in range(1, shape.c + 1):
                    targets = [
                        (vid, incident_sum[vid])
                        for vid in side_vertices.get((comp, side), [])
                    ]
                    dists = list(_distributions(profile[comp - 1], targets))
                    if not dists:
                        feasible = False
                        break
                    per_component_dists.append(dists)
                if not feasible:
                    continue
                for dist_combo in itertools.product(*per_component_dists):
                    merged: dict[int, tuple[int, ...]] = {}
                    for dist in dist_combo:
                        merged.update(dist)
                    options.append(
                        Refinement(j, side, tuple(merged.items()))
                    )
            refinement_options.append(options)
        if any(not opts for opts in refinement_options):
            continue
        for ref_combo in itertools.product(*refinement_options):
            graph = LocalizationGraph(
                tuple(vertices), tuple(edges), tuple(markings), ref_combo
            )
            enc = canonical_form(graph)
            if enc not in found:
                ok, issues = validate_graph(graph, shape)
                if not ok:  # pragma: no cover - generator emits only valid graphs
                    raise InvalidShape(
                        "enumeration produced an invalid graph: " + "; ".join(issues)
                    )
                found[enc] = graph_from_canonical(enc)
    return tuple(found[enc] for enc in sorted(found))


# ---------------------------------------------------------------------------
# weights of a fixed locus


def classify_case(graph: LocalizationGraph) -> str:
    """"I" when profiles sit on both sides, "II" only on 0, "III" only on inf."""
    sides = {r.side for r in graph.refinements}
    if sides == {SIDE_0, SIDE_INF}:
        return "I"
    if sides == {SIDE_0}:
        return "II"
    if sides == {SIDE_INF}:
        return "III"
    raise InvalidShape("graph carries no refinements")


def degenerate_over(graph: LocalizationGraph, side: str) -> bool:
    """Whether the side's moduli factor collapses to a point.

    Requires every vertex on the side to have genus zero and valence one
    (hence no markings there), and a single refinement on the side whose
    distribution is forced by the edge degrees.
    """
    if side not in SIDES:
        raise InvalidShape(f"unknown side {side!r}")
    verts = graph.side_vertices(side)
    for v in verts:
        if v.genus != 0 or graph.valence(v.id) != 1:
            return False
    refs = [r for r in graph.refinements if r.side == side]
    if len(refs) != 1:
        return False
    r = refs[0]
    for v in verts:
        degrees = tuple(
            sorted((e.degree for e in graph.incident_edges(v.id)), reverse=True)
        )
        if r.parts_at(v.id) != degrees:
            return False
    return True


def multiplicity(graph: LocalizationGraph) -> int:
    """The gluing multiplicity of the fixed locus."""
    case = classify_case(graph)
    prod = 1
    for e in graph.edges:
        prod *= e.degree
    if case != "I":
        return prod
    deg0 = degenerate_over(graph, SIDE_0)
    deginf = degenerate_over(graph, SIDE_INF)
    if deg0 and deginf:
        return 1
    if deg0 or deginf:
        return prod
    return prod * prod


def graph_automorphism_count(graph: LocalizationGraph) -> int:
    """Order of the symmetry group fixing all decorations, by brute force."""
    if len(graph.vertices) > AUT_VERTEX_BOUND:
        raise EnumerationBoundExceeded(
            f"automorphism search limited to {AUT_VERTEX_BOUND} vertices"
        )
    marks_at = {v.id: tuple(sorted(graph.markings_at(v.id))) for v in graph.vertices}
    ref_parts = {
        v.id: tuple(r.parts_at(v.id) for r in graph.refinements) for v in graph.vertices
    }
    classes: dict[tuple, list[int]] = {}
    for v in graph.vertices:
        key = (v.component, v.side, v.genus, marks_at[v.id], ref_parts[v.id])
        classes.setdefault(key, []).append(v.id)
    edge_classes = Counter()
    by_id = {v.id: v for v in graph.vertices}
    for e in graph.edges:
        a, b = e.ends
        u, w = (a, b) if by_id[a].side == SIDE_0 else (b, a)
        edge_classes[(u, w, e.degree)] += 1

    ids = sorted(by_id)
    total = 0
    class_lists = list(classes.values())
    for perm_combo in itertools.product(
        *[itertools.permutations(members) for members in class_lists]
    ):
        sigma = {}
        for members, image in zip(class_lists, perm_combo):
            sigma.update(dict(zip(members, image)))
        mapped = Counter()
        for (u, w, deg), cnt in edge_classes.items():
            mapped[(sigma[u], sigma[w], deg)] += cnt
        if mapped != edge_classes:
            continue
        factor = 1
        for cnt in edge_classes.values():
            factor *= math.factorial(cnt)
        total += factor
    return total


def aut_group_order(graph: LocalizationGraph) -> int:
    """Order of the full symmetry group: edge-degree twists times graph symmetries."""
    prod = 1
    for e in graph.edges:
        prod *= e.degree
    return prod * graph_automorphism_count(graph)


def _side_factor_vdim(graph: LocalizationGraph, shape: RelativeShape, side: str) -> int:
    """Expected dimension of the unparameterized side factor."""
    verts = graph.side_vertices(side)
    c0 = len(verts)
    g_arith = sum(v.genus for v in verts) + 1 - c0
    n_side = sum(len(graph.markings_at(v.id)) for v in verts)
    d = graph.total_degree()
    out = 2 * g_arith - 5 + 2 * d + n_side
    for r in graph.refinements:
        if r.side == side:
            length = sum(len(p) for p in shape.profiles[r.profile_index])
            out += 1 + length - d
    out += 1 + len(graph.edges) - d  # the boundary condition carried by the edges
    return out


def vertex_term(
    graph: LocalizationGraph, vertex_id: int, sign: int
) -> FormalClass:
    """Reciprocal local factor of one vertex on the fully collapsed side.

    ``sign`` is +1 when the vertex sits over the zero pole and -1 over the
    other one; the edge weights are ``sign * t / degree``.
    """
    v = graph.vertex(vertex_id)
    edges = sorted(graph.incident_edges(vertex_id), key=lambda e: e.id)
    if not edges:
        raise InvalidVertex(f"vertex {vertex_id} has no incident edge")
    n_marks = len(graph.markings_at(vertex_id))
    val = len(edges) + n_marks
    genus = v.genus
    if 2 * genus - 2 + val > 0:
        key = f"v{vertex_id}"
        bound = 3 * genus - 3 + val
        out = FormalClass.scalar(Laurent({-1: Fraction(sign)}), {key: bound})
        for slot, e in enumerate(edges):
            weight = Laurent({1: Fraction(sign, e.degree)})
            out = out * formal_geom_expand(weight, ("psi", key, slot), bound)
        lam_terms: dict = {}
        for j in range(genus + 1):
            coeff = Laurent({genus - j: rat_pow(-1, j) * rat_pow(sign, genus - j)})
            mono = ((("lam", key, j), 1),) if j > 0 else ()
            lam_terms[mono] = coeff
        out = out * FormalClass(lam_terms, {key: bound})
        return out
    if genus == 0 and val == 2 and n_marks == 0:
        d1, d2 = (e.degree for e in edges)
        return FormalClass.scalar(Laurent({-2: Fraction(d1 * d2, d1 + d2)}))
    if genus == 0 and val == 2 and n_marks == 1:
        return FormalClass.scalar(Laurent({-1: Fraction(sign)}))
    if genus == 0 and val == 1 and n_marks == 0:
        return FormalClass.scalar(Laurent({0: Fraction(1, edges[0].degree)}))
    raise InvalidVertex(
        f"vertex {vertex_id} (genus {genus}, valence {val}) matches no local case"
    )


def _parameterized_side_factor(
    graph: LocalizationGraph, shape: RelativeShape, side: str
) -> FormalClass:
    """The factor ``1/(w(w - psi))`` of a non-collapsed side, or ``1/w`` degenerate."""
    sign = 1 if side == SIDE_0 else -1
    if degenerate_over(graph, side):
        return FormalClass.scalar(Laurent({-1: Fraction(sign)}))
    bound = max(0, _side_factor_vdim(graph, shape, side))
    weight = Laurent({1: Fraction(sign)})
    gen = ("psi", "q0" if side == SIDE_0 else "qinf", 0)
    expansion = formal_geom_expand(weight, gen, bound)
    return expansion * weight.inverse_of_monomial()


def euler_inverse(graph: LocalizationGraph, shape: RelativeShape) -> FormalClass:
    """Reciprocal equivariant Euler class of the fixed locus, truncated.

    Case I multiplies the two side factors; Cases II and III multiply one
    side factor by explicit edge scalars and the local factors of every
    vertex on the fully collapsed side.
    """
    case = classify_case(graph)
    if case == "I":
        return _parameterized_side_factor(graph, shape, SIDE_0) * _parameterized_side_factor(
            graph, shape, SIDE_INF
        )
    collapsed_side = SIDE_INF if case == "II" else SIDE_0
    factor_side = SIDE_0 if case == "II" else SIDE_INF
    sign = 1 if collapsed_side == SIDE_0 else -1
    out = _parameterized_side_factor(graph, shape, factor_side)
    for e in graph.edges:
        deg = e.degree
        coeff = rat_pow(sign, 1 - deg) * Fraction(rat_pow(deg, deg), math.factorial(deg))
        out = out * Laurent({1 - deg: coeff})
    for v in graph.side_vertices(collapsed_side):
        out = out * vertex_term(graph, v.id, sign)
    return out


@dataclass(frozen=True)
class GraphContribution:
    """All combinatorial weights of one fixed locus."""

    graph: LocalizationGraph
    case: str
    multiplicity: int
    aut_order: int
    degenerate_at_0: bool
    degenerate_at_inf: bool
    euler: FormalClass
    flagged: bool

    def to_json_dict(self) -> dict:
        return {
            "graph": self.graph.to_json_dict(),
            "case": self.case,
            "multiplicity": self.multiplicity,
            "autOrder": self.aut_order,
            "degenerateAt0": self.degenerate_at_0,
            "degenerateAtInf": self.degenerate_at_inf,
            "eulerInverse": self.euler.to_json_dict(),
            "flagged": self.flagged,
        }


def contribution(graph: LocalizationGraph, shape: RelativeShape) -> GraphContribution:
    case = classify_case(graph)
    deg0 = degenerate_over(graph, SIDE_0)
    deginf = degenerate_over(graph, SIDE_INF)
    return GraphContribution(
        graph=graph,
        case=case,
        multiplicity=multiplicity(graph),
        aut_order=aut_group_order(graph),
        degenerate_at_0=deg0,
        degenerate_at_inf=deginf,
        euler=euler_inverse(graph, shape),
        flagged=(case == "I" and deg0 != deginf),
    )


# ---------------------------------------------------------------------------
# recognition of the distinguished graphs


def classify_principal(
    graph: LocalizationGraph,
    n_ordered: int,
    alpha_dp: Sequence[int],
    shape: RelativeShape,
) -> Optional[MultiPOP]:
    """Identify the partially ordered partition a principal graph encodes.

    The marking labels split into three runs: ``1..n_ordered`` select the
    ordered parts, the next ``len(alpha_dp)`` sit on distinct unmarked
    edge-vertices, and the rest live on the side-0 vertices.  Returns the
    encoded multi-partition, or ``None`` when any structural condition fails.
    """
    alpha_dp = tuple(alpha_dp)
    n_mid = len(alpha_dp)
    first = set(range(1, n_ordered + 1))
    middle = set(range(n_ordered + 1, n_ordered + n_mid + 1))
    if any(r.side != SIDE_0 for r in graph.refinements):
        return None
    marking_vertex = dict((label, vid) for label, vid in graph.markings)
    by_id = {v.id: v for v in graph.vertices}
    components = []
    marking_sets = []
    for comp in range(1, shape.c + 1):
        side0 = [v for v in graph.component_vertices(comp) if v.side == SIDE_0]
        if len(side0) != 1 or side0[0].genus != shape.genera[comp - 1]:
            return None
        root = side0[0]
        inf_verts = [v for v in graph.component_vertices(comp) if v.side == SIDE_INF]
        for v in inf_verts:
            if v.genus != 0 or len(graph.incident_edges(v.id)) != 1:
                return None
        comp_first = sorted(
            label for label in shape.marking_sets[comp - 1] if label in first
        )
        if not comp_first:
            return None
        edge_of = {
            v.id: graph.incident_edges(v.id)[0] for v in inf_verts
        }
        used_vertices: set[int] = set()
        ordered_parts = []
        for label in comp_first:
            vid = marking_vertex[label]
            if vid not in edge_of or vid in used_vertices:
                return None
            used_vertices.add(vid)
            ordered_parts.append(edge_of[vid].degree)
        mid_vertices: set[int] = set()
        for label in shape.marking_sets[comp - 1]:
            if label in middle:
                vid = marking_vertex[label]
                if vid not in edge_of or vid in used_vertices or vid in mid_vertices:
                    return None
                mid_vertices.add(vid)
            elif label not in first:
                if marking_vertex[label] != root.id:
                    return None
        unordered_parts = tuple(
            edge_of[v.id].degree for v in inf_verts if v.id not in used_vertices
        )
        components.append(
            POP(shape.degrees[comp - 1], tuple(ordered_parts), unordered_parts)
        )
        marking_sets.append(tuple(comp_first))
    return MultiPOP(tuple(components), tuple(marking_sets))


# ---------------------------------------------------------------------------
# dimension bookkeeping


def vdim_parameterized(shape: RelativeShape) -> int:
    """Expected dimension with the target line rigid."""
    g = shape.arithmetic_genus
    d = shape.d
    n_tot = shape.n + shape.extra_markings
    out = 2 * g - 2 + 2 * d + n_tot
    for prof in shape.profiles:
        out += 1 + sum(len(p) for p in prof) - d
    return out


def vdim_unparameterized(shape: RelativeShape) -> int:
    """Expected dimension modulo the target line's own symmetries."""
    return vdim_parameterized(shape) - 3


def expected_dimension(shape: RelativeShape) -> int:
    return vdim_parameterized(shape) if shape.parameterized else vdim_unparameterized(shape)


def hurwitz_condition(g: int, profiles: Sequence[Sequence[int]]) -> bool:
    """Whether the profiles use up the whole ramification budget.

    ``profiles`` are partitions of one common degree ``d``.  True exactly
    when ``2g - 2 + 2d`` equals the sum over profiles of ``d - length``;
    then the cover space is zero dimensional before further conditions.
    """
    if not profiles:
        raise InvalidShape("at least one ramification profile is required")
    cleaned = [tuple(int(p) for p in prof) for prof in profiles]
    d = sum(cleaned[0])
    if any(sum(prof) != d or any(p <= 0 for p in prof) for prof in cleaned):
        raise InvalidShape("profiles must all be partitions of the same degree")
    budget = 2 * g - 2 + 2 * d
    spent = sum(d - len(prof) for prof in cleaned)
    return budget == spent


def omega_degree_recorded(alpha: MultiPOP, k: int, r_exponents, s_exponents) -> int:
    """Degree of the cut-down class, closed form."""
    l_dp = sum(len(double_prime(c.unordered)) for c in alpha.components)
    return k + alpha.n + l_dp + sum(r_exponents) + sum(s_exponents) + 2


def omega_degree_termwise(alpha: MultiPOP, k: int, r_exponents, s_exponents) -> int:
    """Degree of the cut-down class, summed factor by factor."""
    out = 0
    for comp in alpha.components:
        out += sum(comp.ordered)
        out += sum(double_prime(comp.unordered))
    out += sum(r_exponents) + sum(s_exponents)
    out += 2 + alpha.length() - alpha.d + k
    return out


def omega_dimension_check(
    alpha: MultiPOP,
    beta: MultiPOP,
    shape: RelativeShape,
    r_exponents: Sequence[int],
    s_exponents: Sequence[int],
    k: int,
) -> dict:
    """Cross-check the two dimension counts of the localized relation.

    The left side is the dimension of the cut-down parameterized space; the
    right side is the dimension of the boundary space indexed by ``beta``
    minus the degree of the class pulled to it.  Also cross-checks the two
    routes to the class degree.  Everything is plain integer arithmetic.
    """
    if alpha.degrees != beta.degrees or alpha.marking_sets != beta.marking_sets:
        raise PreconditionViolated("the two partitions must share degrees and markings")
    if tuple(shape.degrees) != alpha.degrees:
        raise PreconditionViolated("shape degrees must match the partitions")
    if len(s_exponents) != shape.m:
        raise PreconditionViolated("one exponent per profile required")
    if len(r_exponents) != shape.extra_markings:
        raise PreconditionViolated("one exponent per extra marking required")
    g = shape.arithmetic_genus
    d = shape.d
    n_extra = shape.extra_markings
    profile_terms = sum(
        1 + sum(len(p) for p in prof) - d for prof in shape.profiles
    )
    r_sum = sum(r_exponents)
    s_sum = sum(s_exponents)
    lhs = 2 * g - 2 + 2 * d + n_extra + profile_terms - (k + r_sum + s_sum + 2)
    l_beta = beta.length()
    rhs = (
        2 * g
        - 2
        + 2 * d
        + n_extra
        + (1 + l_beta - d)
        + profile_terms
        - 3
        - (r_sum + s_sum + l_beta - d + k)
    )
    deg_a = omega_degree_recorded(alpha, k, r_exponents, s_exponents)
    deg_b = omega_degree_termwise(alpha, k, r_exponents, s_exponents)
    return {
        "lhs": lhs,
        "rhs": rhs,
        "equal": lhs == rhs,
        "degreeRecorded": deg_a,
        "degreeTermwise": deg_b,
        "degreesAgree": deg_a == deg_b,
    }
