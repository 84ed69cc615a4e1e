"""Line-oriented text formats for colorings and layered results.

Text over binary: desk-scale colorings are small, and reviewers can
diff them.  Writers emit records in sorted order, so serialization is
byte-deterministic; readers validate that every edge appears exactly
once and that color names come from the declared legend.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InvalidInputError
from .grid import GridEdge, Vertex
from .lattice import Vector
from .layered import LayeredResult
from .rectcolor import EdgeColoring, palette, parse_color

COLORING_FORMAT = "chromatile/coloring/v1"
LAYERED_FORMAT = "chromatile/layered/v1"


def fmt_vec(v: Vector) -> str:
    return ",".join(str(x) for x in v)


def parse_vec(text: str) -> Vector:
    try:
        return tuple(int(p) for p in text.strip().split(","))
    except ValueError as exc:
        raise InvalidInputError(f"bad vector {text!r}") from exc


@dataclass
class ColoringDocument:
    """A rectangle or torus edge coloring plus the context that made it."""

    kind: str  # "rect" | "torus"
    n: int
    meta: dict[str, str]  # origin/sizes or moduli, mode, d, t, seed, offsets
    legend: list[str]
    coloring: EdgeColoring  # GridEdge -> Color

    def __post_init__(self) -> None:
        if self.kind not in ("rect", "torus"):
            raise InvalidInputError(f"unknown document kind {self.kind!r}")


def document_for_rect(
    box_origin: Vector,
    sizes: Vector,
    mode: str,
    coloring: EdgeColoring,
    t: Optional[Vector] = None,
) -> ColoringDocument:
    n = len(sizes)
    meta = {"origin": fmt_vec(box_origin), "sizes": fmt_vec(sizes), "mode": mode}
    if t is not None:
        meta["t"] = fmt_vec(t)
    legend = [str(c) for c in palette(n)]
    return ColoringDocument("rect", n, meta, legend, coloring)


def document_for_torus(
    moduli: Vector,
    d: int,
    mode: str,
    coloring: EdgeColoring,
    seed: Optional[int] = None,
    offsets: Optional[Vector] = None,
) -> ColoringDocument:
    n = len(moduli)
    meta = {"moduli": fmt_vec(moduli), "d": str(d), "mode": mode}
    if seed is not None:
        meta["seed"] = str(seed)
    if offsets is not None:
        meta["offsets"] = fmt_vec(offsets)
    legend = [str(c) for c in palette(n)]
    return ColoringDocument("torus", n, meta, legend, coloring)


_META_ORDER = ["origin", "sizes", "moduli", "mode", "d", "t", "seed", "offsets"]


def serialize_coloring(doc: ColoringDocument) -> str:
    lines = [f"format={COLORING_FORMAT}", f"kind={doc.kind}", f"n={doc.n}"]
    for key in _META_ORDER:
        if key in doc.meta:
            lines.append(f"{key}={doc.meta[key]}")
    legend = set(doc.legend)
    for edge, color in doc.coloring.items():
        if str(color) not in legend:
            raise InvalidInputError(f"color {color} missing from the legend")
    lines.append("palette=" + ",".join(doc.legend))
    records = sorted(doc.coloring.items())
    lines.append(f"edges={len(records)}")
    for edge, color in records:
        lines.append(f"{fmt_vec(edge.base)} ; {edge.axis} ; {color}")
    return "\n".join(lines) + "\n"


def _split_header(lines: list[str]) -> tuple[dict[str, str], int]:
    header = {}
    for i, line in enumerate(lines):
        if ";" in line:
            return header, i
        if not line.strip():
            continue
        if "=" not in line:
            raise InvalidInputError(f"bad header line {line!r}")
        key, value = line.split("=", 1)
        header[key.strip()] = value.strip()
    return header, len(lines)


def parse_coloring_document(text: str) -> ColoringDocument:
    lines = text.splitlines()
    header, body_start = _split_header(lines)
    if header.get("format") != COLORING_FORMAT:
        raise InvalidInputError(f"not a {COLORING_FORMAT} document")
    kind = header.get("kind", "")
    try:
        n = int(header["n"])
        count = int(header["edges"])
    except (KeyError, ValueError) as exc:
        raise InvalidInputError("missing or bad n=/edges= header") from exc
    legend = [c for c in header.get("palette", "").split(",") if c]
    legal = set(legend)
    coloring = EdgeColoring()
    body = [ln for ln in lines[body_start:] if ln.strip()]
    if len(body) != count:
        raise InvalidInputError(f"expected {count} edge records, found {len(body)}")
    for line in body:
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 3:
            raise InvalidInputError(f"bad edge record {line!r}")
        base = parse_vec(parts[0])
        axis = int(parts[1])
        if len(base) != n or not 1 <= axis <= n:
            raise InvalidInputError(f"record {line!r} does not fit dimension {n}")
        if parts[2] not in legal:
            raise InvalidInputError(f"color {parts[2]!r} not in the legend")
        edge = GridEdge(base, axis)
        if edge in coloring:
            raise InvalidInputError(f"edge {edge} appears twice")
        coloring.write(edge, parse_color(parts[2]))
    meta = {k: v for k, v in header.items() if k in _META_ORDER}
    return ColoringDocument(kind, n, meta, legend, coloring)


# ---------------------------------------------------------------------------
# layered documents
# ---------------------------------------------------------------------------

@dataclass
class LayeredDocument:
    n: int
    moduli: Vector
    generators: list[Vector]  # canonical pair representatives
    levels: int
    d: int
    alpha: int
    beta: int
    s: Vector
    k_sets: list[list[Vertex]]
    shifts: list[tuple[int, Vertex, int, int]]  # level, rep, region, a
    legend: list[str]
    coloring: dict[tuple[Vertex, Vector], str]


def document_for_layered(result: LayeredResult) -> LayeredDocument:
    dec = result.dec
    generators = []
    for layer in dec.layers:
        generators.extend(layer.pairs())
    shifts = sorted(
        (lvl, rep, idx, a) for (lvl, rep, idx), a in result.shifts.items()
    )
    legend = sorted(result.coloring.colors_used())
    return LayeredDocument(
        n=len(result.moduli),
        moduli=result.moduli,
        generators=sorted(generators),
        levels=dec.level_count + 1,
        d=result.d,
        alpha=dec.alpha,
        beta=dec.beta,
        s=dec.s,
        k_sets=[sorted(ks) for ks in result.k_sets],
        shifts=shifts,
        legend=legend,
        coloring=dict(result.coloring.items()),
    )


def serialize_layered(doc: LayeredDocument) -> str:
    lines = [
        f"format={LAYERED_FORMAT}",
        f"n={doc.n}",
        f"moduli={fmt_vec(doc.moduli)}",
        "generators=" + "|".join(fmt_vec(g) for g in doc.generators),
        f"levels={doc.levels}",
        f"d={doc.d}",
        f"alpha={doc.alpha}",
        f"beta={doc.beta}",
        f"s={fmt_vec(doc.s)}",
    ]
    for level, pts in enumerate(doc.k_sets):
        lines.append(f"kset{level}=" + "|".join(fmt_vec(p) for p in pts))
    for level, rep, idx, a in doc.shifts:
        lines.append(f"shift={level} ; {fmt_vec(rep)} ; {idx} ; {a}")
    lines.append("palette=" + ",".join(doc.legend))
    records = sorted(doc.coloring.items())
    lines.append(f"edges={len(records)}")
    for (base, step), color in records:
        lines.append(f"{fmt_vec(base)} ; {fmt_vec(step)} ; {color}")
    return "\n".join(lines) + "\n"


def parse_layered_document(text: str) -> LayeredDocument:
    lines = text.splitlines()
    header_lines = []
    shift_lines = []
    record_lines = []
    for ln in lines:
        if not ln.strip():
            continue
        if ln.startswith("shift="):
            shift_lines.append(ln[len("shift="):])
        elif ";" in ln:
            record_lines.append(ln)
        else:
            header_lines.append(ln)
    header = {}
    for ln in header_lines:
        if "=" not in ln:
            raise InvalidInputError(f"bad header line {ln!r}")
        key, value = ln.split("=", 1)
        header[key] = value
    if header.get("format") != LAYERED_FORMAT:
        raise InvalidInputError(f"not a {LAYERED_FORMAT} document")
    n = int(header["n"])
    levels = int(header["levels"])
    k_sets = []
    for level in range(levels):
        raw = header.get(f"kset{level}", "")
        k_sets.append([parse_vec(p) for p in raw.split("|") if p])
    shifts = []
    for ln in shift_lines:
        parts = [p.strip() for p in ln.split(";")]
        shifts.append((int(parts[0]), parse_vec(parts[1]), int(parts[2]), int(parts[3])))
    legend = [c for c in header.get("palette", "").split(",") if c]
    legal = set(legend)
    count = int(header["edges"])
    if len(record_lines) != count:
        raise InvalidInputError(f"expected {count} edge records, found {len(record_lines)}")
    coloring: dict[tuple[Vertex, Vector], str] = {}
    for ln in record_lines:
        parts = [p.strip() for p in ln.split(";")]
        if len(parts) != 3:
            raise InvalidInputError(f"bad edge record {ln!r}")
        base, step, color = parse_vec(parts[0]), parse_vec(parts[1]), parts[2]
        if color not in legal:
            raise InvalidInputError(f"color {color!r} not in the legend")
        key = (base, step)
        if key in coloring:
            raise InvalidInputError(f"edge {key} appears twice")
        coloring[key] = color
    return LayeredDocument(
        n=n,
        moduli=parse_vec(header["moduli"]),
        generators=[parse_vec(g) for g in header["generators"].split("|") if g],
        levels=levels,
        d=int(header["d"]),
        alpha=int(header["alpha"]),
        beta=int(header["beta"]),
        s=parse_vec(header["s"]),
        k_sets=k_sets,
        shifts=shifts,
        legend=legend,
        coloring=coloring,
    )
