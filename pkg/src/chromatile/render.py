"""SVG rendering of 2-dimensional slices of colorings.

Vertices sit on a unit grid scaled to pixels, edges are colored
segments, and a legend maps the palette.  Higher-dimensional documents
must be sliced down to exactly two free axes first.  Output is fully
deterministic for identical inputs.
"""

from __future__ import annotations

from .document import ColoringDocument
from .errors import InvalidInputError

_UNIT = 40
_MARGIN = 60
_STUB = 0.3  # fraction of a unit used for wrap-around edge stubs

_HEXES = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#aec7e8", "#ffbb78",
    "#98df8a", "#ff9896", "#c5b0d5", "#c49c94",
]


def _color_map(legend: list[str]) -> dict[str, str]:
    return {name: _HEXES[i % len(_HEXES)] for i, name in enumerate(legend)}


def render_svg(doc: ColoringDocument, slices: dict[int, int] | None = None) -> str:
    """Render the document, with ``slices`` pinning axes to values.

    The axes not pinned must number exactly two; the first free axis
    runs right, the second runs up.
    """
    slices = dict(slices or {})
    for ax in slices:
        if not 1 <= ax <= doc.n:
            raise InvalidInputError(f"slice axis {ax} out of range 1..{doc.n}")
    free = [ax for ax in range(1, doc.n + 1) if ax not in slices]
    if len(free) != 2:
        raise InvalidInputError(
            f"need exactly 2 free axes to render, have {len(free)} "
            f"(dimension {doc.n}, sliced {sorted(slices)})"
        )
    h_ax, v_ax = free

    moduli = None
    if doc.kind == "torus":
        moduli = tuple(int(x) for x in doc.meta["moduli"].split(","))

    segments = []  # (x1, y1, x2, y2, color-name)
    for edge, color in sorted(doc.coloring.items()):
        base, axis = edge.base, edge.axis
        if any(base[ax - 1] != val for ax, val in slices.items()):
            continue
        if axis in slices:
            continue
        x, y = base[h_ax - 1], base[v_ax - 1]
        dx = 1 if axis == h_ax else 0
        dy = 1 if axis == v_ax else 0
        wraps = moduli is not None and base[axis - 1] == moduli[axis - 1] - 1
        if wraps:
            # draw a stub leaving the frame and a stub entering at 0
            segments.append((x, y, x + dx * _STUB, y + dy * _STUB, str(color)))
            ox = 0 if axis == h_ax else x
            oy = 0 if axis == v_ax else y
            segments.append((ox, oy, ox - dx * _STUB, oy - dy * _STUB, str(color)))
        else:
            segments.append((x, y, x + dx, y + dy, str(color)))

    if not segments:
        raise InvalidInputError("nothing to render in the requested slice")

    xs = [s[0] for s in segments] + [s[2] for s in segments]
    ys = [s[1] for s in segments] + [s[3] for s in segments]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)

    def px(x: float) -> float:
        return round(_MARGIN + (x - x_lo) * _UNIT, 1)

    def py(y: float) -> float:
        return round(_MARGIN + (y_hi - y) * _UNIT, 1)

    legend_w = 120
    width = int(2 * _MARGIN + (x_hi - x_lo) * _UNIT) + legend_w
    height = int(2 * _MARGIN + (y_hi - y_lo) * _UNIT)
    height = max(height, 2 * _MARGIN + len(doc.legend) * 18)

    colors = _color_map(doc.legend)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for x1, y1, x2, y2, name in segments:
        out.append(
            f'<line x1="{px(x1)}" y1="{py(y1)}" x2="{px(x2)}" y2="{py(y2)}" '
            f'stroke="{colors[name]}" stroke-width="4" stroke-linecap="round"/>'
        )
    # small vertex dots on integer positions
    seen = set()
    for x1, y1, x2, y2, _ in segments:
        for x, y in ((x1, y1), (x2, y2)):
            if x == int(x) and y == int(y) and (x, y) not in seen:
                seen.add((x, y))
                out.append(
                    f'<circle cx="{px(x)}" cy="{py(y)}" r="2.5" fill="#222"/>'
                )
    lx = width - legend_w + 10
    out.append(
        f'<text x="{lx}" y="{_MARGIN - 20}" font-family="monospace" '
        f'font-size="13">legend</text>'
    )
    for i, name in enumerate(doc.legend):
        yy = _MARGIN + i * 18
        out.append(
            f'<line x1="{lx}" y1="{yy}" x2="{lx + 24}" y2="{yy}" '
            f'stroke="{colors[name]}" stroke-width="4"/>'
        )
        out.append(
            f'<text x="{lx + 32}" y="{yy + 4}" font-family="monospace" '
            f'font-size="12">{name}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
