"""Finite lower-bound witnesses: forbidden patterns, matchings, chi'.

A proper |S|-edge-coloring of an |S|-regular graph splits into perfect
matchings, one per color.  A labeling phi of a torus by generators
induces the edge set {x, phi(x).x}; it is a perfect matching exactly
when phi avoids the 2m(2m-1) two-point patterns that pair a step u_i
with a wrong return step.  Odd tori have no perfect matching at all, so
exhaustive pattern searches on them come up empty and their chromatic
index exceeds the degree.

Matching search is dual-routed: an exhaustive branch for up to 12
vertices, and blossom-based maximum matching from networkx beyond that;
the two are cross-validated on small graphs in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import networkx as nx

from .errors import InfeasibleError, InvalidInputError
from .grid import SchreierGraphView, Torus, Vertex
from .lattice import GeneratorSet, Vector, vneg


# ---------------------------------------------------------------------------
# patterns and torus labelings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SftPattern:
    """A finite forbidden pattern: labels on a finite support in Z^n."""

    entries: tuple[tuple[Vector, Vector], ...]  # (point, label), sorted

    def __post_init__(self) -> None:
        if not self.entries:
            raise InvalidInputError("pattern support must be nonempty")

    @classmethod
    def from_labels(cls, labels: dict[Vector, Vector]) -> "SftPattern":
        return cls(tuple(sorted(labels.items())))

    @property
    def support(self) -> tuple[Vector, ...]:
        return tuple(p for p, _ in self.entries)

    def labels(self) -> dict[Vector, Vector]:
        return dict(self.entries)


@dataclass(frozen=True)
class TorusLabeling:
    """A total map from torus vertices to generators."""

    torus: Torus
    phi: tuple[tuple[Vertex, Vector], ...]  # sorted (vertex, generator)

    @classmethod
    def from_map(cls, torus: Torus, phi: dict[Vertex, Vector]) -> "TorusLabeling":
        missing = [v for v in torus.vertices() if v not in phi]
        if missing:
            raise InvalidInputError(f"labeling misses vertex {missing[0]}")
        return cls(torus, tuple(sorted(phi.items())))

    def mapping(self) -> dict[Vertex, Vector]:
        return dict(self.phi)


def matching_patterns(s: GeneratorSet) -> list[SftPattern]:
    """The 2m(2m-1) patterns whose absence makes a labeling a matching.

    With S enumerated as u_1..u_{2m} (lex order), pattern (i, j), i != j,
    puts u_i at the origin and -u_j at u_i: following your own arrow must
    come straight back.
    """
    members = sorted(s.members)
    out = []
    for i, ui in enumerate(members):
        for j, uj in enumerate(members):
            if i == j:
                continue
            out.append(SftPattern.from_labels({(0,) * s.dimension: ui, ui: vneg(uj)}))
    return out


def _check_moduli(torus: Torus, s: GeneratorSet, patterns: Iterable[SftPattern]) -> None:
    max_coord = 0
    for p in patterns:
        for point in p.support:
            max_coord = max(max_coord, max(abs(x) for x in point) if point else 0)
    if any(q <= max_coord for q in torus.moduli):
        raise InfeasibleError(
            f"moduli {torus.moduli} too small: pattern supports reach {max_coord}"
        )
    # distinct generators must stay distinct on the torus, else the
    # occurrence semantics degenerate
    SchreierGraphView(torus, s)


def respects(
    labeling: TorusLabeling, patterns: Sequence[SftPattern], s: GeneratorSet
) -> bool:
    """True when no pattern occurs in the periodic pullback of the labeling.

    A pattern occurs at a torus point v when every support point f
    satisfies phi((v + f) mod q) = label(f).
    """
    torus = labeling.torus
    _check_moduli(torus, s, patterns)
    phi = labeling.mapping()
    for pattern in patterns:
        entries = pattern.entries
        for v in torus.vertices():
            if all(phi[torus.add(v, f)] == lab for f, lab in entries):
                return False
    return True


def respects_matching(labeling: TorusLabeling, s: GeneratorSet) -> bool:
    """Fast equivalent of :func:`respects` for the matching patterns:
    for every x, phi(x + phi(x)) = -phi(x)."""
    torus = labeling.torus
    _check_moduli(torus, s, matching_patterns(s))
    phi = labeling.mapping()
    return all(phi[torus.add(x, g)] == vneg(g) for x, g in phi.items())


def induced_matching(labeling: TorusLabeling, s: GeneratorSet) -> set[frozenset[Vertex]]:
    """The perfect matching {x, phi(x).x} of a respecting labeling."""
    if not respects_matching(labeling, s):
        raise InvalidInputError("labeling does not respect the matching patterns")
    torus = labeling.torus
    matching = {frozenset((x, torus.add(x, g))) for x, g in labeling.mapping().items()}
    covered: dict[Vertex, int] = {}
    for e in matching:
        for v in e:
            covered[v] = covered.get(v, 0) + 1
    assert all(c == 1 for c in covered.values()) and len(covered) == torus.vertex_count()
    return matching


def search_respecting_labelings(
    torus: Torus, s: GeneratorSet, limit: Optional[int] = None
) -> list[TorusLabeling]:
    """Exhaustive backtracking over labelings that respect the patterns.

    Assigning phi(v) = g forces phi(v + g) = -g, which prunes hard; the
    search is exact, so an empty result is a proof of nonexistence.
    """
    _check_moduli(torus, s, matching_patterns(s))
    vertices = sorted(torus.vertices())
    generators = sorted(s.members)
    found: list[TorusLabeling] = []
    phi: dict[Vertex, Vector] = {}

    def consistent(v: Vertex, g: Vector) -> bool:
        w = torus.add(v, g)
        if w in phi and phi[w] != vneg(g):
            return False
        for h in generators:
            u = torus.add(v, vneg(h))
            if phi.get(u) == h and g != vneg(h):
                return False
        return True

    def rec(i: int) -> bool:
        if limit is not None and len(found) >= limit:
            return True
        if i == len(vertices):
            found.append(TorusLabeling.from_map(torus, dict(phi)))
            return limit is not None and len(found) >= limit
        v = vertices[i]
        for g in generators:
            if consistent(v, g):
                phi[v] = g
                if rec(i + 1):
                    return True
                del phi[v]
        return False

    rec(0)
    return found


# ---------------------------------------------------------------------------
# perfect matchings
# ---------------------------------------------------------------------------

def _adjacency(view: SchreierGraphView) -> dict[Vertex, list[Vertex]]:
    return {v: view.neighbors(v) for v in view.vertices()}


def maximum_matching_size_exhaustive(view: SchreierGraphView) -> int:
    """Branch-and-memoize maximum matching; exact, for tiny graphs only."""
    vertices = view.vertices()
    if len(vertices) > 16:
        raise InvalidInputError("exhaustive matching is limited to 16 vertices")
    index = {v: i for i, v in enumerate(vertices)}
    adj = [
        sorted(index[w] for w in view.neighbors(v)) for v in vertices
    ]

    @lru_cache(maxsize=None)
    def best(uncovered: frozenset[int]) -> int:
        if not uncovered:
            return 0
        v = min(uncovered)
        rest = uncovered - {v}
        out = best(rest)  # leave v unmatched
        for w in adj[v]:
            if w in rest:
                out = max(out, 1 + best(rest - {w}))
        return out

    return best(frozenset(range(len(vertices))))


def maximum_matching_size(view: SchreierGraphView) -> int:
    """Exact maximum matching size: exhaustive up to 12 vertices, then
    blossom-based search (networkx)."""
    vertices = view.vertices()
    if len(vertices) <= 12:
        return maximum_matching_size_exhaustive(view)
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    for v in vertices:
        for w in view.neighbors(v):
            graph.add_edge(v, w)
    return len(nx.max_weight_matching(graph, maxcardinality=True))


def has_perfect_matching(view: SchreierGraphView) -> bool:
    vertices = view.vertices()
    return 2 * maximum_matching_size(view) == len(vertices)


# ---------------------------------------------------------------------------
# exact chromatic index
# ---------------------------------------------------------------------------

def _edge_colorable(
    edges: list[tuple[Vertex, Vertex]],
    incident: dict[Vertex, list[int]],
    k: int,
    pinned: list[int],
) -> bool:
    """Backtracking edge-coloring decision with fail-first ordering."""
    color = [0] * len(edges)
    used: dict[Vertex, set[int]] = {v: set() for v in incident}

    def assign(i: int, c: int) -> None:
        color[i] = c
        for v in edges[i]:
            used[v].add(c)

    def unassign(i: int) -> None:
        c = color[i]
        color[i] = 0
        for v in edges[i]:
            used[v].discard(c)

    # fix the colors around the first vertex: any proper coloring can be
    # relabeled to match, which kills the k! color symmetry
    for c, i in enumerate(pinned, start=1):
        if c > k:
            return False
        a, b = edges[i]
        if c in used[a] or c in used[b]:
            return False
        assign(i, c)

    order = [i for i in range(len(edges)) if color[i] == 0]

    def candidates(i: int) -> list[int]:
        a, b = edges[i]
        taken = used[a] | used[b]
        return [c for c in range(1, k + 1) if c not in taken]

    def rec(remaining: list[int]) -> bool:
        if not remaining:
            return True
        best_i, best_c = None, None
        for i in remaining:
            cs = candidates(i)
            if best_c is None or len(cs) < len(best_c):
                best_i, best_c = i, cs
                if not cs:
                    return False
                if len(cs) == 1:
                    break
        rest = [i for i in remaining if i != best_i]
        for c in best_c:
            assign(best_i, c)
            if rec(rest):
                return True
            unassign(best_i)
        return False

    return rec(order)


def chromatic_index(view: SchreierGraphView, k_max: int) -> Optional[int]:
    """Least k <= k_max admitting a proper edge k-coloring, else None.

    Exact backtracking search starting at the maximum degree, with the
    colors around one vertex pinned to break color symmetry.
    """
    keys = view.edge_keys()
    edges = [view.edge_endpoints(key) for key in sorted(keys)]
    incident: dict[Vertex, list[int]] = {}
    for i, (a, b) in enumerate(edges):
        incident.setdefault(a, []).append(i)
        incident.setdefault(b, []).append(i)
    if not edges:
        return 0
    max_degree = max(len(v) for v in incident.values())
    v0 = min(incident)
    pinned = incident[v0]
    for k in range(max_degree, k_max + 1):
        if _edge_colorable(edges, incident, k, pinned):
            return k
    return None
