"""Proper edge colorings of n-dimensional rectangles.

Four constructions with increasingly strong guarantees, plus the
verifiers that certify them:

* ``color_bc1``: a (2n+1)-coloring satisfying the boundary condition
  (proper on the box and its adjacent edges; every adjacent edge
  parallel to e_i gets the direction color c_i).
* ``color_bc2``: a 2n-coloring with the boundary condition, available
  whenever some side is odd; it never touches the extra color n+1.
* ``color_core``: on a cube of side d = 4k+2, a (2n+1)-coloring with
  the boundary condition where color n+1 appears only on edges of the
  central 2 x ... x 2 core.
* ``color_shifted_core``: same, with the core translated by an even
  shift vector t, |t_i| <= 2k-2.

All constructions are deterministic.  A coloring is computed once per
size (relative to the origin) and cached, then translated into place;
identical sizes therefore share bit-identical colorings, which is what
makes tiling-based colorings local.

Everything is written through a conflict-detecting map, so any internal
disagreement between construction stages raises instead of producing a
silently improper coloring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ColorConflictError, InfeasibleError, InvalidInputError
from .grid import (
    Box,
    GridEdge,
    Vertex,
    _adjacent_edges,
    _vertices,
    adjacent_edges,
    edges_in,
    unit_vector,
)
from .lattice import Vector


@dataclass(frozen=True)
class Color:
    """Either a direction color c_i (kind "c") or a plain color j (kind "p")."""

    kind: str
    index: int

    def __post_init__(self) -> None:
        if self.kind not in ("c", "p") or self.index < 1:
            raise InvalidInputError(f"bad color {self.kind}{self.index}")

    def __str__(self) -> str:
        return f"c{self.index}" if self.kind == "c" else str(self.index)

    def sort_key(self) -> tuple[int, int]:
        return (0 if self.kind == "c" else 1, self.index)


def C(i: int) -> Color:
    return Color("c", i)


def P(j: int) -> Color:
    return Color("p", j)


def palette(n: int) -> list[Color]:
    """The 2n+1 colors c_1..c_n, 1..n+1 in canonical order."""
    return [C(i) for i in range(1, n + 1)] + [P(j) for j in range(1, n + 2)]


def parse_color(name: str) -> Color:
    name = name.strip()
    if name.startswith("c"):
        return C(int(name[1:]))
    return P(int(name))


class EdgeColoring:
    """A partial map from edges to colors with conflict-detecting writes."""

    __slots__ = ("_colors",)

    def __init__(self, initial: Optional[dict] = None) -> None:
        self._colors: dict = dict(initial) if initial else {}

    def write(self, edge, color) -> None:
        prior = self._colors.get(edge)
        if prior is None:
            self._colors[edge] = color
        elif prior != color:
            raise ColorConflictError(f"edge {edge}: {prior} vs {color}")

    def __getitem__(self, edge):
        return self._colors[edge]

    def get(self, edge, default=None):
        return self._colors.get(edge, default)

    def __contains__(self, edge) -> bool:
        return edge in self._colors

    def __len__(self) -> int:
        return len(self._colors)

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeColoring) and self._colors == other._colors

    def edges(self):
        return self._colors.keys()

    def items(self):
        return self._colors.items()

    def colors_used(self) -> set:
        return set(self._colors.values())

    def copy(self) -> "EdgeColoring":
        return EdgeColoring(self._colors)

    def update(self, other: "EdgeColoring") -> None:
        for edge, color in other.items():
            self.write(edge, color)

    def translate(self, offset: Vector) -> "EdgeColoring":
        """Shift a coloring with GridEdge keys by a lattice vector."""
        out = {}
        for edge, color in self._colors.items():
            base = tuple(b + t for b, t in zip(edge.base, offset))
            out[GridEdge(base, edge.axis)] = color
        return EdgeColoring(out)


# ---------------------------------------------------------------------------
# construction internals
#
# The recursion peels one axis at a time, so intermediate "layers" are
# boxes with extent 0 along the peeled axes.  ``axes`` always lists the
# still-active axes (1-based, ascending except where an axis order says
# otherwise).
# ---------------------------------------------------------------------------

def _vertex_colors(coloring: EdgeColoring, v: Vertex, axes: Sequence[int]) -> set:
    """Colors already present on edges at v along the given axes."""
    seen = set()
    for ax in axes:
        up = GridEdge(v, ax)
        down = GridEdge(tuple(x - 1 if i == ax - 1 else x for i, x in enumerate(v)), ax)
        for e in (up, down):
            c = coloring.get(e)
            if c is not None:
                seen.add(c)
    return seen


def _pick_free(candidates: Sequence[Color], taken: set) -> Color:
    for c in candidates:
        if c not in taken:
            return c
    raise AssertionError("no free color; candidate accounting is broken")


def _alternate_path(
    coloring: EdgeColoring, start: Vertex, axis: int, count: int, first: Color, second: Color
) -> None:
    """Color ``count`` consecutive axis-parallel edges first, second, first, ..."""
    base = list(start)
    for step in range(count):
        coloring.write(GridEdge(tuple(base), axis), first if step % 2 == 0 else second)
        base[axis - 1] += 1


def _bc1(origin: Vertex, sizes: tuple[int, ...], axes: tuple[int, ...]) -> EdgeColoring:
    """Boundary-condition coloring over the active axes with 2*dim+1 colors.

    dim = len(axes).  Colors used: c_ax for active axes plus plain
    colors 1..dim+1.
    """
    dim = len(axes)
    coloring = EdgeColoring()
    if dim == 1:
        ax = axes[0]
        a = sizes[ax - 1]
        for e in _adjacent_edges(origin, sizes, (ax,)):
            coloring.write(e, C(ax))
        _alternate_path(coloring, origin, ax, a, P(1), P(2))
        return coloring

    peel = axes[-1]
    rest = axes[:-1]
    a_peel = sizes[peel - 1]
    layer_sizes = tuple(0 if i == peel - 1 else a for i, a in enumerate(sizes))
    layer = _bc1(origin, layer_sizes, rest)

    # all layers carry the identical coloring, shifted along the peeled axis
    step = unit_vector(len(sizes), peel)
    for h in range(a_peel + 1):
        offset = tuple(h * x for x in step)
        coloring.update(layer if h == 0 else layer.translate(offset))

    # edges sticking out along the peeled axis take its direction color
    for e in _adjacent_edges(origin, sizes, (peel,)):
        coloring.write(e, C(peel))

    # interior paths parallel to the peeled axis: alternate a free color
    # with the fresh plain color dim+1, starting with the free color
    candidates = [C(ax) for ax in sorted(rest)] + [P(j) for j in range(1, dim + 1)]
    for pos in _vertices(origin, layer_sizes):
        taken = _vertex_colors(layer, pos, rest)
        assert len(taken) == 2 * dim - 2, "layer vertex is missing incident colors"
        free = _pick_free(candidates, taken)
        _alternate_path(coloring, pos, peel, a_peel, free, P(dim + 1))
    return coloring


def _bc2(origin: Vertex, sizes: tuple[int, ...], odd_axis: int) -> EdgeColoring:
    """Boundary-condition coloring with 2n colors; needs an odd side."""
    n = len(sizes)
    if sizes[odd_axis - 1] % 2 == 0:
        raise InfeasibleError(f"axis {odd_axis} of {sizes} is not odd")
    coloring = EdgeColoring()
    if n == 1:
        ax = odd_axis
        for e in _adjacent_edges(origin, sizes, (ax,)):
            coloring.write(e, C(ax))
        _alternate_path(coloring, origin, ax, sizes[ax - 1], P(1), C(ax))
        return coloring

    rest = tuple(ax for ax in range(1, n + 1) if ax != odd_axis)
    a_peel = sizes[odd_axis - 1]
    layer_sizes = tuple(0 if i == odd_axis - 1 else a for i, a in enumerate(sizes))
    layer = _bc1(origin, layer_sizes, rest)

    step = unit_vector(n, odd_axis)
    for h in range(a_peel + 1):
        offset = tuple(h * x for x in step)
        coloring.update(layer if h == 0 else layer.translate(offset))

    for e in _adjacent_edges(origin, sizes, (odd_axis,)):
        coloring.write(e, C(odd_axis))

    # paths have odd length, so they can start and end with the free
    # color, alternating with the peeled axis direction color
    candidates = [C(ax) for ax in rest] + [P(j) for j in range(1, n + 1)]
    for pos in _vertices(origin, layer_sizes):
        taken = _vertex_colors(layer, pos, rest)
        assert len(taken) == 2 * n - 2
        free = _pick_free(candidates, taken)
        _alternate_path(coloring, pos, odd_axis, a_peel, free, C(odd_axis))
    return coloring


def _shifted_core(sizes: tuple[int, ...], t: Vector) -> EdgeColoring:
    """Core construction at origin 0; assumes validated arguments."""
    n = len(sizes)
    d = sizes[0]
    k = (d - 2) // 4
    if k == 0:
        return _bc1((0,) * n, sizes, tuple(range(1, n + 1)))

    coloring = EdgeColoring()
    origin = [0] * n
    current = list(sizes)
    for stage_ax in range(1, n + 1):
        i = stage_ax - 1
        low_extent = 2 * k - 1 + t[i]
        high_extent = 2 * k - 1 - t[i]
        low_origin = tuple(origin)
        low_sizes = tuple(low_extent if j == i else a for j, a in enumerate(current))
        high_origin = tuple(
            origin[j] + (low_extent + 4 if j == i else 0) for j in range(n)
        )
        high_sizes = tuple(high_extent if j == i else a for j, a in enumerate(current))
        coloring.update(_bc2(low_origin, low_sizes, stage_ax))
        coloring.update(_bc2(high_origin, high_sizes, stage_ax))
        origin[i] += low_extent + 1
        current[i] = 2
    coloring.update(_bc1(tuple(origin), tuple(current), tuple(range(1, n + 1))))
    return coloring


# cached, origin-zero builders --------------------------------------------

@lru_cache(maxsize=None)
def _bc1_cached(sizes: tuple[int, ...], axis_order: tuple[int, ...]) -> EdgeColoring:
    return _bc1((0,) * len(sizes), sizes, axis_order)


@lru_cache(maxsize=None)
def _bc2_cached(sizes: tuple[int, ...], odd_axis: int) -> EdgeColoring:
    return _bc2((0,) * len(sizes), sizes, odd_axis)


@lru_cache(maxsize=None)
def _core_cached(sizes: tuple[int, ...], t: tuple[int, ...]) -> EdgeColoring:
    return _shifted_core(sizes, t)


# ---------------------------------------------------------------------------
# public constructions
# ---------------------------------------------------------------------------

def color_bc1(box: Box, axis_order: Optional[Sequence[int]] = None) -> EdgeColoring:
    """Proper (2n+1)-coloring of the box and its adjacent edges with the
    boundary condition.  ``axis_order`` controls which axis each level of
    the construction peels; the default is 1..n."""
    order = tuple(axis_order) if axis_order is not None else tuple(range(1, box.n + 1))
    if sorted(order) != list(range(1, box.n + 1)):
        raise InvalidInputError(f"axis_order {order} is not a permutation of 1..{box.n}")
    return _bc1_cached(box.sizes, order).translate(box.origin)


def color_bc2(box: Box, odd_axis: int) -> EdgeColoring:
    """Proper 2n-coloring with the boundary condition; color n+1 unused.

    Requires the side along ``odd_axis`` to be odd.
    """
    if not 1 <= odd_axis <= box.n:
        raise InvalidInputError(f"odd_axis {odd_axis} out of range")
    if box.sizes[odd_axis - 1] % 2 == 0:
        raise InfeasibleError(
            f"side {box.sizes[odd_axis - 1]} along axis {odd_axis} is not odd"
        )
    return _bc2_cached(box.sizes, odd_axis).translate(box.origin)


def _require_cube_4k2(box: Box) -> int:
    d = box.sizes[0]
    if any(a != d for a in box.sizes):
        raise InfeasibleError(f"core colorings need a cube, got {box.sizes}")
    if d % 4 != 2:
        raise InfeasibleError(f"cube side {d} is not congruent to 2 mod 4")
    return (d - 2) // 4


def admissible_shifts(d: int, n: int) -> Iterator[Vector]:
    """All even shift vectors usable with a side-d cube, 0 first."""
    if d % 4 != 2:
        raise InfeasibleError(f"side {d} is not congruent to 2 mod 4")
    k = (d - 2) // 4
    bound = max(2 * k - 2, 0)
    values = list(range(-bound, bound + 1, 2))
    values.sort(key=lambda v: (abs(v), v))

    def rec(prefix: tuple[int, ...]) -> Iterator[Vector]:
        if len(prefix) == n:
            yield prefix
            return
        for v in values:
            yield from rec(prefix + (v,))

    return rec(())


def check_shift(box: Box, t: Vector) -> int:
    """Validate an even core shift for a side-d cube; returns k."""
    k = _require_cube_4k2(box)
    if len(t) != box.n:
        raise InvalidInputError("shift dimension mismatch")
    bound = max(2 * k - 2, 0)
    for ti in t:
        if ti % 2:
            raise InfeasibleError(f"shift {t} has an odd coordinate")
        if abs(ti) > bound:
            raise InfeasibleError(f"shift {t} exceeds the admissible range +-{bound}")
    return k


def color_core(box: Box) -> EdgeColoring:
    """Boundary + core condition coloring of a cube of side d = 4k+2.

    The construction runs one stage per axis: stage i splits the
    current box along axis i into two odd slabs (colored by
    ``color_bc2``, which stays within the first 2n colors) around a
    middle slab of extent 2.  After n stages a 2 x ... x 2 cube remains
    at the center and is finished with ``color_bc1``, so the extra
    color n+1 can only appear on core edges.  For d = 2 the core is the
    whole cube and ``color_bc1`` already does everything.
    """
    _require_cube_4k2(box)
    return _core_cached(box.sizes, (0,) * box.n).translate(box.origin)


def color_shifted_core(box: Box, t: Vector) -> EdgeColoring:
    """Boundary + t-shifted-core condition coloring of a side-d cube.

    Stage i uses slab extents 2k-1+t_i and 2k-1-t_i (both odd since t_i
    is even), which lands the final 2-cube on the core translated by t.
    """
    t = tuple(t)
    check_shift(box, t)
    return _core_cached(box.sizes, t).translate(box.origin)


# ---------------------------------------------------------------------------
# verifiers -- literal checks of the definitions, independent of the
# constructions above
# ---------------------------------------------------------------------------

def verify_proper(coloring: EdgeColoring) -> bool:
    """No two colored edges sharing a vertex carry the same color."""
    at_vertex: dict[Vertex, set] = {}
    for edge, color in coloring.items():
        for v in edge.endpoints():
            bucket = at_vertex.setdefault(v, set())
            if color in bucket:
                return False
            bucket.add(color)
    return True


def _require_total(coloring: EdgeColoring, box: Box) -> tuple[list[GridEdge], list[GridEdge]]:
    inner = edges_in(box)
    adj = adjacent_edges(box)
    missing = [e for e in inner + adj if e not in coloring]
    if missing:
        raise InvalidInputError(
            f"coloring is not total on the box and its adjacent edges; "
            f"first missing: {missing[0]}"
        )
    return inner, adj


def _restriction(coloring: EdgeColoring, edges: Iterable[GridEdge]) -> EdgeColoring:
    return EdgeColoring({e: coloring[e] for e in edges})


def verify_boundary_condition(coloring: EdgeColoring, box: Box) -> bool:
    """Proper on box + adjacent edges; adjacent edges parallel to e_i are c_i."""
    inner, adj = _require_total(coloring, box)
    for e in adj:
        if coloring[e] != C(e.axis):
            return False
    return verify_proper(_restriction(coloring, inner + adj))


def verify_shifted_core(coloring: EdgeColoring, box: Box, t: Vector) -> bool:
    """Boundary-style properness plus: color n+1 only on t-shifted-core edges.

    Raises when the box has an odd side (no core exists).
    """
    core_box = box.shifted_core(tuple(t))  # raises on odd sides / bad t
    inner, adj = _require_total(coloring, box)
    if not verify_proper(_restriction(coloring, inner + adj)):
        return False
    allowed = set(edges_in(core_box))
    extra = P(box.n + 1)
    for e in inner + adj:
        if coloring[e] == extra and e not in allowed:
            return False
    return True


def verify_core_condition(coloring: EdgeColoring, box: Box) -> bool:
    return verify_shifted_core(coloring, box, (0,) * box.n)
