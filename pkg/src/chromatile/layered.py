"""Layered (|S|+1)-colorings for arbitrary symmetric generating sets.

The edge set of the Schreier graph for S on a torus splits by layer:
edges stepping by a member of S_i form the graph G_i, and the layers
are colored from the top (i = m) down to 0.  Each level's orbits under
<S_i> are charted as product tori via the level's independent basis,
tiled with marker-sized boxes, and colored with fresh per-level colors;
the one shared color 0 replaces each level's local extra color n_i + 1
and is confined to (shifted) cores.

A level below the top must place its cores so color 0 never meets the
already-fixed cores above it.  For each all-even region the chosen core
is the original core translated by a*beta*s for the least a in
[0, alpha] whose translate misses every higher core set; at the full
marker distance d from the decomposition constants such an a always
exists by a counting argument, while desk-scale overrides fail loudly
instead of degrading.

Shift vectors in chart coordinates are a * (coordinates of beta*s in
the level's basis); those coordinates are always even, so shifted-core
colorings apply whenever the magnitude check passes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .errors import InfeasibleError, InvalidInputError
from .grid import SchreierGraphView, Torus, Vertex
from .lattice import (
    Decomposition,
    GeneratorSet,
    Vector,
    decompose_with_constants,
    hermite_normal_form,
    integer_kernel,
    vscale,
)
from .rectcolor import Color, EdgeColoring, color_bc2, color_shifted_core
from .tiling import (
    Tiling,
    brick_tiling,
    first_odd_axis,
    is_all_even,
    segment_lengths,
    validate_tiling,
)

AmbientEdge = tuple[Vertex, Vector]  # (base, canonical step)

ZERO = "0"


@dataclass(frozen=True)
class CosetModel:
    """One level's orbit structure on the ambient torus.

    The chart sends z in Z^{n_i} to rep + sum z_j * basis_j; its kernel
    is the diagonal lattice given by ``chart_moduli``, so every orbit is
    a product torus and all orbits of the level share one shape.
    """

    level: int
    moduli: tuple[int, ...]  # ambient torus moduli
    basis: tuple[Vector, ...]
    chart_moduli: tuple[int, ...]
    reps: tuple[Vertex, ...]

    @property
    def chart_dim(self) -> int:
        return len(self.basis)

    def chart_torus(self) -> Torus:
        return Torus(self.chart_moduli)

    def ambient_torus(self) -> Torus:
        return Torus(self.moduli)

    def to_ambient(self, rep: Vertex, z: Vertex) -> Vertex:
        v = list(rep)
        for zj, b in zip(z, self.basis):
            for t in range(len(v)):
                v[t] += zj * b[t]
        return tuple(x % q for x, q in zip(v, self.moduli))

    def orbit_points(self, rep: Vertex):
        for z in product(*[range(r) for r in self.chart_moduli]):
            yield z, self.to_ambient(rep, z)


def effective_d(dec: Decomposition, d_override: Optional[int]) -> int:
    if d_override is None:
        if dec.d is None:
            raise InvalidInputError("decomposition constants not computed")
        return dec.d
    if d_override < 2 or d_override % 4 != 2:
        raise InfeasibleError(f"d override {d_override} is not of the form 4k+2")
    return d_override


def build_model(
    s: GeneratorSet,
    dec: Decomposition,
    moduli: Sequence[int],
    d_override: Optional[int] = None,
) -> list[CosetModel]:
    """Coset decomposition of the torus under each level's subgroup.

    Checks that the full generating set acts without self-loops or
    doubled edges, that every level's chart kernel is diagonal (the
    orbits really are product tori), and that every chart circumference
    splits into parts of d and d+1 vertices.  Diagnostics name the
    failing level and circumference.
    """
    torus = Torus(tuple(int(q) for q in moduli))
    SchreierGraphView(torus, s)  # raises when the action degenerates
    d = effective_d(dec, d_override)

    models = []
    n = s.dimension
    for level in range(dec.level_count + 1):
        basis = tuple(dec.layer_reps(level))
        ni = len(basis)
        rows = []
        for r in range(n):
            row = [basis[j][r] for j in range(ni)]
            row += [-torus.moduli[r] if t == r else 0 for t in range(n)]
            rows.append(row)
        kernel = [vec[:ni] for vec in integer_kernel(rows, ni + n)]
        kernel_hnf = hermite_normal_form(kernel)
        diagonal = len(kernel_hnf) == ni and all(
            all(x == 0 for t, x in enumerate(row) if t != j) and row[j] > 0
            for j, row in enumerate(kernel_hnf)
        )
        if not diagonal:
            raise InfeasibleError(
                f"level {level}: orbits are not product tori for moduli "
                f"{torus.moduli} (chart kernel {kernel_hnf})"
            )
        chart_moduli = tuple(kernel_hnf[j][j] for j in range(ni))
        for ax, r in enumerate(chart_moduli, start=1):
            if r < 3:
                raise InfeasibleError(
                    f"level {level}: chart circumference {r} on axis {ax} is "
                    f"too small for a regular Schreier graph"
                )
            try:
                segment_lengths(r, d)
            except InfeasibleError as exc:
                raise InfeasibleError(
                    f"level {level}, chart axis {ax}: circumference {r} is not "
                    f"a sum of {d} and {d + 1} parts"
                ) from exc

        orbit_size = 1
        for r in chart_moduli:
            orbit_size *= r
        probe = CosetModel(level, torus.moduli, basis, chart_moduli, ())
        seen: set[Vertex] = set()
        reps = []
        for v in sorted(torus.vertices()):
            if v in seen:
                continue
            reps.append(v)
            count = 0
            for _, w in probe.orbit_points(v):
                assert w not in seen, "chart is not injective on the orbit"
                seen.add(w)
                count += 1
            assert count == orbit_size
        models.append(CosetModel(level, torus.moduli, basis, chart_moduli, tuple(reps)))
    return models


def plan_tilings(
    models: Sequence[CosetModel],
    d: int,
    offsets_per_level: Optional[dict[int, Sequence[int]]] = None,
) -> list[Tiling]:
    """One chart tiling per level, shared by all of that level's orbits."""
    tilings = []
    for model in models:
        offsets = (offsets_per_level or {}).get(model.level)
        tilings.append(brick_tiling(model.chart_torus(), d, offsets=offsets))
    return tilings


def level_color_name(color: Color, level: int, chart_dim: int) -> str:
    """Map a region-local color onto the level palette; n_i+1 becomes 0."""
    if color.kind == "p" and color.index == chart_dim + 1:
        return ZERO
    return f"{color.kind}{color.index}@{level}"


def level_palette(level: int, chart_dim: int) -> list[str]:
    return [f"c{j}@{level}" for j in range(1, chart_dim + 1)] + [
        f"p{j}@{level}" for j in range(1, chart_dim + 1)
    ]


@dataclass(frozen=True)
class LayeredResult:
    coloring: EdgeColoring  # keys: (ambient vertex, canonical step)
    k_sets: tuple[frozenset[Vertex], ...]
    shifts: dict[tuple[int, Vertex, int], int]  # (level, orbit rep, region) -> a
    models: tuple[CosetModel, ...]
    tilings: tuple[Tiling, ...]
    dec: Decomposition
    d: int
    moduli: tuple[int, ...]

    def colors_used(self) -> set[str]:
        return self.coloring.colors_used()


def run_layered(
    s: GeneratorSet,
    dec: Decomposition,
    models: Sequence[CosetModel],
    tilings: Sequence[Tiling],
) -> LayeredResult:
    """Reverse induction over levels m..0 building one global coloring.

    Every all-even chart region is colored through a shifted core, with
    the shift factor a chosen as the least value in [0, alpha] whose
    translated core avoids all higher levels' core sets; regions with an
    odd side take the 2n_i-coloring and contribute no core.  All writes
    go through conflict detection, so each level provably extends the
    ones above it.
    """
    if dec.alpha is None or dec.a_coeffs is None:
        raise InvalidInputError("decomposition constants not computed")
    if len(models) != dec.level_count + 1 or len(tilings) != len(models):
        raise InvalidInputError("models/tilings do not match the decomposition")
    torus = models[0].ambient_torus()
    if any(m.moduli != torus.moduli for m in models):
        raise InvalidInputError("models were built on different tori")
    d = tilings[0].d
    if any(t.d != d for t in tilings):
        raise InvalidInputError("all levels must share one marker distance")
    k = (d - 2) // 4
    shift_bound = max(2 * k - 2, 0)
    beta_s = vscale(dec.beta, dec.s)

    coloring = EdgeColoring()
    k_sets: list[set[Vertex]] = [set() for _ in models]
    shifts: dict[tuple[int, Vertex, int], int] = {}
    busy: set[Vertex] = set()

    for model in sorted(models, key=lambda m: -m.level):
        level = model.level
        tiling = tilings[level]
        report = validate_tiling(tiling)
        if not report.ok:
            raise InvalidInputError(
                f"level {level} tiling invalid: " + "; ".join(report.problems)
            )
        ni = model.chart_dim
        chart_torus = model.chart_torus()
        coeffs = dec.a_coeffs[level]
        for rep in model.reps:
            for idx, region in enumerate(tiling.regions):
                if is_all_even(region):
                    base = [
                        model.to_ambient(rep, chart_torus.reduce(v))
                        for v in region.core().vertices()
                    ]
                    chosen = None
                    for a in range(dec.alpha + 1):
                        offset = vscale(a, beta_s)
                        translated = {torus.add(p, offset) for p in base}
                        if translated.isdisjoint(busy):
                            chosen = (a, translated)
                            break
                    if chosen is None:
                        raise InfeasibleError(
                            f"no admissible core shift in [0, {dec.alpha}] at level "
                            f"{level}, orbit {rep}, region {region.origin}; "
                            f"d = {d} is too small for this torus"
                        )
                    a, translated = chosen
                    t = tuple(a * c for c in coeffs)
                    assert all(ti % 2 == 0 for ti in t)
                    if any(abs(ti) > shift_bound for ti in t):
                        raise InfeasibleError(
                            f"core shift {t} at level {level} exceeds the "
                            f"admissible range +-{shift_bound} for d = {d}"
                        )
                    shifted_box = region.shifted_core(t)
                    assert all(region.contains(v) for v in shifted_box.vertices())
                    image = {
                        model.to_ambient(rep, chart_torus.reduce(v))
                        for v in shifted_box.vertices()
                    }
                    assert image == translated, "chart/ambient shift disagreement"
                    k_sets[level] |= translated
                    shifts[(level, rep, idx)] = a
                    local = color_shifted_core(region, t)
                else:
                    local = color_bc2(region, first_odd_axis(region))
                for edge, color in local.items():
                    zbase = chart_torus.reduce(edge.base)
                    base_amb = model.to_ambient(rep, zbase)
                    key = (base_amb, model.basis[edge.axis - 1])
                    coloring.write(key, level_color_name(color, level, ni))
        busy |= k_sets[level]

    return LayeredResult(
        coloring=coloring,
        k_sets=tuple(frozenset(ks) for ks in k_sets),
        shifts=shifts,
        models=tuple(models),
        tilings=tuple(tilings),
        dec=dec,
        d=d,
        moduli=torus.moduli,
    )


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LayeredReport:
    ok: bool
    problems: tuple[str, ...]
    color_count: int
    zero_edges: int


def ambient_edge_keys(s: GeneratorSet, torus: Torus) -> list[AmbientEdge]:
    reps = s.pairs()
    return sorted((x, u) for x in torus.vertices() for u in reps)


def verify_layered(
    result: LayeredResult, s: GeneratorSet, moduli: Sequence[int]
) -> LayeredReport:
    """Totality, properness, palette size, and color-0 confinement.

    Also re-checks that the per-level edge sets carry exactly the level
    palettes and that chosen core sets are pairwise disjoint.
    """
    problems: list[str] = []
    torus = Torus(tuple(moduli))
    coloring = result.coloring
    expected = set(ambient_edge_keys(s, torus))
    have = set(coloring.edges())
    if have != expected:
        missing = len(expected - have)
        alien = len(have - expected)
        problems.append(f"edge totality broken: {missing} missing, {alien} alien")

    # properness: every vertex sees pairwise distinct colors
    reps = s.pairs()
    for x in torus.vertices():
        seen = set()
        for u in reps:
            down = torus.add(x, tuple(-c for c in u))
            for key in ((x, u), (down, u)):
                color = coloring.get(key)
                if color is None:
                    continue
                if color in seen:
                    problems.append(f"vertex {x} sees color {color} twice")
                else:
                    seen.add(color)

    used = coloring.colors_used()
    if len(used) > len(s) + 1:
        problems.append(f"{len(used)} colors used; at most {len(s) + 1} allowed")

    # color 0 only inside one level's core set, on that level's edges
    zero_edges = 0
    step_level = {}
    for model in result.models:
        for b in model.basis:
            step_level[b] = model.level
    for (base, step), color in coloring.items():
        if color != ZERO:
            continue
        zero_edges += 1
        level = step_level.get(step)
        if level is None:
            problems.append(f"zero-colored edge with unknown step {step}")
            continue
        other = torus.add(base, step)
        ks = result.k_sets[level]
        if base not in ks or other not in ks:
            problems.append(f"color 0 escapes the level-{level} cores at {(base, step)}")

    # per-level partition: level palette colors exactly on level edges
    for model in result.models:
        lvl = model.level
        allowed = set(level_palette(lvl, model.chart_dim)) | {ZERO}
        for (base, step), color in coloring.items():
            if step in model.basis:
                if color not in allowed:
                    problems.append(
                        f"level {lvl} edge {(base, step)} colored {color} from "
                        f"another level's palette"
                    )

    for i in range(len(result.k_sets)):
        for j in range(i + 1, len(result.k_sets)):
            if result.k_sets[i] & result.k_sets[j]:
                problems.append(f"core sets of levels {i} and {j} intersect")

    return LayeredReport(not problems, tuple(problems), len(used), zero_edges)


# ---------------------------------------------------------------------------
# one-call pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PipelineRun:
    genset: GeneratorSet
    dec: Decomposition
    result: LayeredResult
    report: LayeredReport


def run_pipeline(
    s: GeneratorSet,
    moduli: Sequence[int],
    d_override: Optional[int] = None,
    offsets_per_level: Optional[dict[int, Sequence[int]]] = None,
) -> PipelineRun:
    """Decompose, model, tile, color and verify in one call."""
    dec = decompose_with_constants(s)
    d = effective_d(dec, d_override)
    models = build_model(s, dec, moduli, d_override)
    tilings = plan_tilings(models, d, offsets_per_level)
    result = run_layered(s, dec, models, tilings)
    report = verify_layered(result, s, moduli)
    return PipelineRun(s, dec, result, report)
