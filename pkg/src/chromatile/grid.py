"""Boxes, grid edges, tori and Schreier graphs of Z^n actions.

Axes are 1-based throughout, matching the color names c1..cn used by
the rectangle colorers.  All values are immutable, so everything here
is safe to share across threads.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, NamedTuple, Union

from .errors import InvalidInputError
from .lattice import GeneratorSet, Vector

Vertex = tuple[int, ...]


class GridEdge(NamedTuple):
    """Canonical undirected grid edge {base, base + e_axis}.

    An edge handed over as (x, x - e_i) is stored with base x - e_i, so
    each undirected edge has exactly one representation.
    """

    base: Vertex
    axis: int  # 1-based

    def endpoints(self) -> tuple[Vertex, Vertex]:
        other = tuple(
            x + 1 if i == self.axis - 1 else x for i, x in enumerate(self.base)
        )
        return self.base, other


def unit_vector(n: int, axis: int) -> Vector:
    return tuple(1 if i == axis - 1 else 0 for i in range(n))


@dataclass(frozen=True)
class Box:
    """The n-dimensional rectangle [b_1, b_1+a_1] x ... x [b_n, b_n+a_n].

    ``sizes`` are the side lengths a_i, so side i spans a_i + 1 vertices.
    """

    origin: Vertex
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.origin) != len(self.sizes):
            raise InvalidInputError("origin/sizes dimension mismatch")
        if not self.sizes:
            raise InvalidInputError("box must have dimension >= 1")
        if any(a < 1 for a in self.sizes):
            raise InvalidInputError(f"box sides must be >= 1, got {self.sizes}")

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def high(self) -> Vertex:
        return tuple(b + a for b, a in zip(self.origin, self.sizes))

    def vertices(self) -> Iterator[Vertex]:
        ranges = [range(b, b + a + 1) for b, a in zip(self.origin, self.sizes)]
        return product(*ranges)

    def vertex_count(self) -> int:
        out = 1
        for a in self.sizes:
            out *= a + 1
        return out

    def contains(self, v: Vertex) -> bool:
        return all(b <= x <= b + a for x, b, a in zip(v, self.origin, self.sizes))

    def translate(self, offset: Vector) -> "Box":
        return Box(tuple(b + t for b, t in zip(self.origin, offset)), self.sizes)

    def core(self) -> "Box":
        """Central 2 x ... x 2 sub-box; requires all sides even and >= 2."""
        return self.shifted_core((0,) * self.n)

    def shifted_core(self, t: Vector) -> "Box":
        """The core translated by t, staying inside the box.

        Requires all sides even and -a_i/2 + 1 <= t_i <= a_i/2 - 1.
        """
        if len(t) != self.n:
            raise InvalidInputError("shift dimension mismatch")
        if any(a % 2 or a < 2 for a in self.sizes):
            raise InvalidInputError(f"core needs even sides >= 2, got {self.sizes}")
        for a, ti in zip(self.sizes, t):
            if not (-a // 2 + 1 <= ti <= a // 2 - 1):
                raise InvalidInputError(f"shift {t} not within range for sides {self.sizes}")
        origin = tuple(
            b + a // 2 - 1 + ti for b, a, ti in zip(self.origin, self.sizes, t)
        )
        return Box(origin, (2,) * self.n)


# ---------------------------------------------------------------------------
# edge enumeration for (possibly degenerate) boxes
#
# The private helpers accept size-0 extents so rectangle colorers can
# treat slices of a box as lower-dimensional boxes without leaving the
# ambient coordinates.  The public functions only see real Box values.
# ---------------------------------------------------------------------------

def _vertices(origin: Vertex, sizes: tuple[int, ...]) -> Iterator[Vertex]:
    return product(*[range(b, b + a + 1) for b, a in zip(origin, sizes)])


def _edges_in(origin: Vertex, sizes: tuple[int, ...], axes: Iterable[int]) -> list[GridEdge]:
    edges = []
    for ax in axes:
        if sizes[ax - 1] < 1:
            continue
        ranges = [
            range(b, b + a) if i == ax - 1 else range(b, b + a + 1)
            for i, (b, a) in enumerate(zip(origin, sizes))
        ]
        for base in product(*ranges):
            edges.append(GridEdge(base, ax))
    edges.sort()
    return edges


def _adjacent_edges(origin: Vertex, sizes: tuple[int, ...], axes: Iterable[int]) -> list[GridEdge]:
    edges = []
    for ax in axes:
        i = ax - 1
        cross = [
            (b,) if j == i else range(b, b + a + 1)
            for j, (b, a) in enumerate(zip(origin, sizes))
        ]
        low = [(origin[i] - 1,) if j == i else r for j, r in enumerate(cross)]
        high = [(origin[i] + sizes[i],) if j == i else r for j, r in enumerate(cross)]
        for base in product(*low):
            edges.append(GridEdge(base, ax))
        for base in product(*high):
            edges.append(GridEdge(base, ax))
    edges.sort()
    return edges


def edges_in(box: Box) -> list[GridEdge]:
    """All edges with both endpoints in the box, in deterministic order.

    The count is sum_i a_i * prod_{j != i} (a_j + 1).
    """
    return _edges_in(box.origin, box.sizes, range(1, box.n + 1))


def adjacent_edges(box: Box) -> list[GridEdge]:
    """Edges with exactly one endpoint in the box.

    These are precisely the edges outside the box that share a vertex
    with an edge of the box; per axis i there are 2 * prod_{j != i}
    (a_j + 1) of them.
    """
    return _adjacent_edges(box.origin, box.sizes, range(1, box.n + 1))


def boundary_edges(box: Box) -> list[GridEdge]:
    """Edges of the box that are adjacent to some grid edge outside it."""

    def interior(v: Vertex) -> bool:
        return all(b + 1 <= x <= b + a - 1 for x, b, a in zip(v, box.origin, box.sizes))

    out = [e for e in edges_in(box) if not all(interior(p) for p in e.endpoints())]
    return out


# ---------------------------------------------------------------------------
# tori and Schreier graph views
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Torus:
    """Z^n reduced componentwise modulo the given moduli."""

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.moduli or any(q < 1 for q in self.moduli):
            raise InvalidInputError(f"torus moduli must be >= 1, got {self.moduli}")

    @property
    def n(self) -> int:
        return len(self.moduli)

    def reduce(self, v: Vertex) -> Vertex:
        return tuple(x % q for x, q in zip(v, self.moduli))

    def add(self, v: Vertex, w: Vector) -> Vertex:
        return tuple((x + y) % q for x, y, q in zip(v, w, self.moduli))

    def vertices(self) -> Iterator[Vertex]:
        return product(*[range(q) for q in self.moduli])

    def vertex_count(self) -> int:
        out = 1
        for q in self.moduli:
            out *= q
        return out


@dataclass(frozen=True)
class SchreierGraphView:
    """The graph on a torus or box with edges {x, u.x} for generators u.

    On a torus the construction asserts that all generators act as
    distinct nonzero translations, which makes the graph regular of
    degree |S|.  Tiny moduli that would create self-loops or doubled
    edges are rejected outright rather than silently merged.
    """

    domain: Union[Torus, Box]
    generators: GeneratorSet

    def __post_init__(self) -> None:
        n = self.generators.dimension
        if isinstance(self.domain, Torus):
            if self.domain.n != n:
                raise InvalidInputError("generator/torus dimension mismatch")
            seen: dict[Vertex, Vector] = {}
            for u in self.generators:
                image = self.domain.reduce(u)
                if not any(image):
                    raise InvalidInputError(
                        f"generator {u} acts trivially modulo {self.domain.moduli}"
                    )
                if image in seen:
                    raise InvalidInputError(
                        f"generators {seen[image]} and {u} coincide modulo "
                        f"{self.domain.moduli}; the Schreier graph would not be "
                        f"{len(self.generators)}-regular"
                    )
                seen[image] = u
        else:
            if self.domain.n != n:
                raise InvalidInputError("generator/box dimension mismatch")

    def vertices(self) -> list[Vertex]:
        return sorted(self.domain.vertices())

    def neighbors(self, x: Vertex) -> list[Vertex]:
        if isinstance(self.domain, Torus):
            return sorted(self.domain.add(x, u) for u in self.generators)
        out = []
        for u in self.generators:
            y = tuple(a + b for a, b in zip(x, u))
            if self.domain.contains(y):
                out.append(y)
        return sorted(out)

    def edge_keys(self) -> list[tuple[Vertex, Vector]]:
        """Canonical edges (base, step) with step the lex positive generator."""
        keys = []
        reps = self.generators.pairs()
        if isinstance(self.domain, Torus):
            for x in self.domain.vertices():
                for u in reps:
                    keys.append((x, u))
        else:
            for x in self.domain.vertices():
                for u in reps:
                    y = tuple(a + b for a, b in zip(x, u))
                    if self.domain.contains(y):
                        keys.append((x, u))
        keys.sort()
        return keys

    def edge_endpoints(self, key: tuple[Vertex, Vector]) -> tuple[Vertex, Vertex]:
        base, step = key
        if isinstance(self.domain, Torus):
            return base, self.domain.add(base, step)
        return base, tuple(a + b for a, b in zip(base, step))

    def is_regular(self) -> bool:
        degs = {len(self.neighbors(x)) for x in self.domain.vertices()}
        return degs == {len(self.generators)}


def path_distance(view: SchreierGraphView, x: Vertex, y: Vertex) -> Union[int, float]:
    """BFS shortest-path length between x and y; math.inf across components."""
    if x == y:
        return 0
    seen = {x}
    frontier = deque([(x, 0)])
    while frontier:
        v, dist = frontier.popleft()
        for w in view.neighbors(v):
            if w in seen:
                continue
            if w == y:
                return dist + 1
            seen.add(w)
            frontier.append((w, dist + 1))
    return math.inf


def ball(view: SchreierGraphView, x: Vertex, radius: int) -> dict[Vertex, int]:
    """Distances from x to every vertex within the given radius."""
    dist = {x: 0}
    frontier = deque([x])
    while frontier:
        v = frontier.popleft()
        if dist[v] == radius:
            continue
        for w in view.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                frontier.append(w)
    return dist
