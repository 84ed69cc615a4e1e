"""Marker sets and rectangular tilings of tori, and the global colorer.

A tiling partitions the torus vertex set into boxes whose sides span d
or d+1 vertices.  Since d is congruent to 2 mod 4, sides of d+1
vertices have even length (exactly d) and sides of d vertices have odd
length (d-1).  The global colorer gives every all-even region a core
(or shifted-core) coloring and every region with an odd side the
2n-color boundary coloring; edges crossing between regions pick up the
direction color c_i from the boundary condition of both regions they
touch, which is what makes the union proper.

``greedy_marker_set`` witnesses the d-separated / d-covering marker
property on finite graphs; it is not on the coloring critical path.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InfeasibleError, InvalidInputError, VerificationError
from .grid import (
    Box,
    GridEdge,
    SchreierGraphView,
    Torus,
    Vertex,
    ball,
    edges_in,
)
from .lattice import Vector
from .rectcolor import (
    EdgeColoring,
    P,
    color_bc1,
    color_bc2,
    color_core,
    color_shifted_core,
)


def thread_count() -> int:
    """Worker cap from CHROMATILE_THREADS (default 1)."""
    raw = os.environ.get("CHROMATILE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# marker sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkerSet:
    domain: SchreierGraphView
    points: tuple[Vertex, ...]
    d: int


def greedy_marker_set(view: SchreierGraphView, d: int) -> MarkerSet:
    """Greedy maximal d-separated vertex set in deterministic order.

    Maximality gives both marker properties: chosen points are pairwise
    more than d apart, and every vertex is within d of some point.
    """
    if d < 1:
        raise InvalidInputError("marker distance must be >= 1")
    chosen: list[Vertex] = []
    near: dict[Vertex, int] = {}
    for v in view.vertices():
        if near.get(v, d + 1) > d:
            chosen.append(v)
            for w, dist in ball(view, v, d).items():
                if dist < near.get(w, d + 1):
                    near[w] = dist
    return MarkerSet(view, tuple(chosen), d)


def verify_marker_set(markers: MarkerSet) -> bool:
    """Brute-force check of separation and covering via BFS balls."""
    pts = set(markers.points)
    covered: set[Vertex] = set()
    for p in markers.points:
        reach = ball(markers.domain, p, markers.d)
        if any(q in pts and q != p for q in reach):
            return False
        covered.update(reach)
    return covered == set(markers.domain.vertices())


# ---------------------------------------------------------------------------
# tilings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tiling:
    """A partition of a torus vertex set into boxes.

    Region boxes live in [0, q)^n coordinates; their closed vertex sets
    (sizes + 1 vertices per side, reduced mod q) partition the torus.
    """

    torus: Torus
    regions: tuple[Box, ...]
    d: int


def segment_lengths(q: int, d: int) -> list[int]:
    """Deterministic composition of q into parts of d and d+1 vertices.

    Uses as few d+1 parts as possible, d parts first.  Raises when q is
    not representable (e.g. q < d, or q = 4 with d = 3).
    """
    if d < 2:
        raise InvalidInputError("marker distance d must be >= 2")
    y = q % d  # number of (d+1)-parts needed, modulo d
    while y * (d + 1) <= q:
        if (q - y * (d + 1)) % d == 0:
            x = (q - y * (d + 1)) // d
            return [d] * x + [d + 1] * y
        y += d
    raise InfeasibleError(f"modulus {q} is not a sum of parts {d} and {d + 1}")


def _segment_origins(parts: Sequence[int], offset: int, q: int) -> list[tuple[int, int]]:
    """(origin, vertex-count) pairs for a 1-d segmentation starting at offset."""
    out = []
    pos = offset % q
    for p in parts:
        out.append((pos, p))
        pos = (pos + p) % q
    return out


def brick_tiling(
    torus: Torus,
    d: int,
    offsets: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
) -> Tiling:
    """Axis-aligned brick tiling with per-slab offsets.

    The last axis is cut into slabs of d or d+1 vertices; each slab is
    tiled recursively in one dimension less, translated by that slab's
    offset (offsets cycle when there are more slabs than entries, and
    the list is rotated one step per slab for the recursive calls, which
    produces brick-wall adjacency).  ``seed`` draws offsets from a local
    RNG instead; with neither, everything is aligned at 0.
    """
    if offsets is not None and seed is not None:
        raise InvalidInputError("give offsets or seed, not both")
    if seed is not None:
        rng = random.Random(seed)
        offsets = [rng.randrange(0, max(torus.moduli)) for _ in range(8)]
    offs = tuple(offsets) if offsets else (0,)

    def build(moduli: tuple[int, ...], offs_now: tuple[int, ...], shift: int):
        q = moduli[-1]
        parts = segment_lengths(q, d)
        if len(moduli) == 1:
            return [
                ((o,), (count - 1,))
                for o, count in _segment_origins(parts, shift, q)
            ]
        regions = []
        for j, (o, count) in enumerate(_segment_origins(parts, shift, q)):
            sub_shift = offs_now[j % len(offs_now)]
            rotated = offs_now[1:] + offs_now[:1]
            for sub_origin, sub_sizes in build(moduli[:-1], rotated, sub_shift):
                regions.append((sub_origin + (o,), sub_sizes + (count - 1,)))
        return regions

    shift0 = offs[0] if torus.n == 1 else 0
    raw = build(torus.moduli, offs, shift0)
    boxes = tuple(sorted((Box(o, s) for o, s in raw), key=lambda b: b.origin))
    return Tiling(torus, boxes, d)


@dataclass(frozen=True)
class TilingReport:
    ok: bool
    problems: tuple[str, ...]


def region_vertices(region: Box, torus: Torus) -> set[Vertex]:
    return {torus.reduce(v) for v in region.vertices()}


def validate_tiling(tiling: Tiling) -> TilingReport:
    """Check the partition, the d / d+1 vertex widths, and minimum width.

    Sides must span at least 2 vertices so that two parallel crossing
    edges can never share a vertex.
    """
    problems: list[str] = []
    torus = tiling.torus
    seen: dict[Vertex, Box] = {}
    for region in tiling.regions:
        for ax, a in enumerate(region.sizes, start=1):
            width = a + 1
            if width not in (tiling.d, tiling.d + 1):
                problems.append(
                    f"region at {region.origin} spans {width} vertices along "
                    f"axis {ax}; expected {tiling.d} or {tiling.d + 1}"
                )
            if width < 2:
                problems.append(f"region at {region.origin} is too thin on axis {ax}")
        pts = region_vertices(region, torus)
        if len(pts) != region.vertex_count():
            problems.append(f"region at {region.origin} self-overlaps modulo the torus")
        for v in pts:
            if v in seen:
                problems.append(f"vertex {v} covered by two regions")
            seen[v] = region
    missing = torus.vertex_count() - len(seen)
    if missing:
        problems.append(f"{missing} torus vertices uncovered")
    return TilingReport(not problems, tuple(problems))


# ---------------------------------------------------------------------------
# the global colorer
# ---------------------------------------------------------------------------

def torus_edge(edge: GridEdge, torus: Torus) -> GridEdge:
    return GridEdge(torus.reduce(edge.base), edge.axis)


def torus_edge_endpoints(edge: GridEdge, torus: Torus) -> tuple[Vertex, Vertex]:
    up = tuple(
        (x + 1) % q if i == edge.axis - 1 else x
        for i, (x, q) in enumerate(zip(edge.base, torus.moduli))
    )
    return edge.base, up


def all_torus_edges(torus: Torus) -> list[GridEdge]:
    return sorted(
        GridEdge(v, ax) for v in torus.vertices() for ax in range(1, torus.n + 1)
    )


def is_all_even(region: Box) -> bool:
    return all(a % 2 == 0 for a in region.sizes)


def first_odd_axis(region: Box) -> int:
    for ax, a in enumerate(region.sizes, start=1):
        if a % 2 == 1:
            return ax
    raise InfeasibleError(f"region {region.sizes} has no odd side")


def region_coloring(
    region: Box, mode: str, d: int, shift: Optional[Vector] = None
) -> EdgeColoring:
    """The local coloring a region contributes, already translated into place."""
    if mode == "plain":
        return color_bc1(region)
    if mode not in ("core", "shifted"):
        raise InvalidInputError(f"unknown tiling mode {mode!r}")
    if d % 4 != 2:
        raise InfeasibleError(f"core mode needs d congruent to 2 mod 4, got {d}")
    if is_all_even(region):
        if shift is None or not any(shift):
            return color_core(region)
        return color_shifted_core(region, shift)
    return color_bc2(region, first_odd_axis(region))


def color_tiling(
    tiling: Tiling,
    mode: str = "plain",
    shifts: Optional[dict[int, Vector]] = None,
) -> EdgeColoring:
    """Color every edge of the torus exactly once.

    Within-region edges come from the region's own coloring; crossing
    edges are written from both sides as the direction color via the
    boundary condition, so the conflict-detecting map doubles as a
    correctness check.  In core / shifted mode the extra color n+1 stays
    inside the (shifted) cores of all-even regions.
    """
    report = validate_tiling(tiling)
    if not report.ok:
        raise InvalidInputError("invalid tiling: " + "; ".join(report.problems))
    if mode == "shifted" and shifts is None:
        shifts = {}
    for idx in shifts or {}:
        if not 0 <= idx < len(tiling.regions):
            raise InvalidInputError(f"shift for unknown region index {idx}")
        if not is_all_even(tiling.regions[idx]):
            raise InfeasibleError(
                f"region {idx} has an odd side and cannot take a core shift"
            )
    torus = tiling.torus
    out = EdgeColoring()
    for idx, region in enumerate(tiling.regions):
        shift = shifts.get(idx) if shifts else None
        local = region_coloring(region, mode, tiling.d, shift)
        for edge, color in local.items():
            out.write(torus_edge(edge, torus), color)
    expected = torus.n * torus.vertex_count()
    if len(out) != expected:
        raise VerificationError(
            f"tiling coloring covered {len(out)} edges, expected {expected}"
        )
    return out


def allowed_core_edges(
    tiling: Tiling, shifts: Optional[dict[int, Vector]] = None
) -> set[GridEdge]:
    """Torus edges on which the extra color may appear in core/shifted mode."""
    allowed: set[GridEdge] = set()
    for idx, region in enumerate(tiling.regions):
        if not is_all_even(region):
            continue
        t = (shifts or {}).get(idx, (0,) * region.n)
        core_box = region.shifted_core(t)
        for e in edges_in(core_box):
            allowed.add(torus_edge(e, tiling.torus))
    return allowed


# ---------------------------------------------------------------------------
# torus-wide verification
# ---------------------------------------------------------------------------

def _check_vertices(
    coloring: EdgeColoring, torus: Torus, vertices: Sequence[Vertex]
) -> list[str]:
    problems = []
    for v in vertices:
        seen = set()
        for ax in range(1, torus.n + 1):
            down = tuple(
                (x - 1) % q if i == ax - 1 else x
                for i, (x, q) in enumerate(zip(v, torus.moduli))
            )
            for e in (GridEdge(v, ax), GridEdge(down, ax)):
                color = coloring.get(e)
                if color is None:
                    problems.append(f"edge {e} uncolored")
                elif color in seen:
                    problems.append(f"vertex {v} sees color {color} twice")
                else:
                    seen.add(color)
    return problems


def verify_torus_proper(coloring: EdgeColoring, torus: Torus) -> bool:
    """Exhaustive vertex-local properness check over the whole torus.

    Splits the vertex set across workers when CHROMATILE_THREADS > 1;
    the check is read-only, so partitioning is safe.
    """
    vertices = sorted(torus.vertices())
    workers = min(thread_count(), len(vertices))
    if workers <= 1:
        return not _check_vertices(coloring, torus, vertices)
    chunk = (len(vertices) + workers - 1) // workers
    parts = [vertices[i : i + chunk] for i in range(0, len(vertices), chunk)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = pool.map(lambda p: _check_vertices(coloring, torus, p), parts)
        return all(not r for r in results)


def verify_tiling_coloring(
    coloring: EdgeColoring,
    tiling: Tiling,
    mode: str,
    shifts: Optional[dict[int, Vector]] = None,
) -> TilingReport:
    """Full certification: totality, properness, palette, confinement."""
    problems: list[str] = []
    torus = tiling.torus
    n = torus.n
    missing = [e for e in all_torus_edges(torus) if e not in coloring]
    if missing:
        problems.append(f"{len(missing)} torus edges uncolored (first: {missing[0]})")
    if not verify_torus_proper(coloring, torus):
        problems.append("coloring is not proper")
    used = coloring.colors_used()
    if len(used) > 2 * n + 1:
        problems.append(f"{len(used)} colors used, more than {2 * n + 1}")
    if mode in ("core", "shifted"):
        allowed = allowed_core_edges(tiling, shifts)
        extra = P(n + 1)
        for edge, color in sorted(coloring.items()):
            if color == extra and edge not in allowed:
                problems.append(f"extra color escapes the cores at {edge}")
    return TilingReport(not problems, tuple(problems))
