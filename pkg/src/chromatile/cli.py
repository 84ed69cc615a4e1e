"""Command-line front end.

Exit codes: 0 verified success, 1 invalid input, 2 verification
failure, 3 infeasible parameters.  Every coloring command verifies its
output before writing anything; the tool never emits a coloring it
cannot certify.  All commands are deterministic given their flags.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .document import (
    document_for_layered,
    document_for_rect,
    document_for_torus,
    parse_coloring_document,
    serialize_coloring,
    serialize_layered,
)
from .errors import (
    ChromatileError,
    InfeasibleError,
    InvalidInputError,
    VerificationError,
)
from .grid import Box, SchreierGraphView, Torus
from .lattice import GeneratorSet, decompose_with_constants, load_generator_file
from .layered import run_pipeline
from .lowerbound import (
    chromatic_index,
    has_perfect_matching,
    matching_patterns,
    search_respecting_labelings,
)
from .rectcolor import (
    color_bc1,
    color_bc2,
    color_core,
    color_shifted_core,
    verify_boundary_condition,
    verify_proper,
    verify_shifted_core,
)
from .render import render_svg
from .tiling import brick_tiling, color_tiling, verify_tiling_coloring

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNVERIFIED = 2
EXIT_INFEASIBLE = 3


def _vec(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise InvalidInputError(f"expected comma-separated integers, got {text!r}") from exc


def _load_genset(path: str, symmetrize: bool) -> GeneratorSet:
    return load_generator_file(path, symmetrize=symmetrize)


def _write_out(path: Optional[str], text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_decompose(args: argparse.Namespace) -> int:
    s = _load_genset(args.genset, args.symmetrize)
    dec = decompose_with_constants(s)
    print(f"n={s.dimension} |S|={len(s)} levels={dec.level_count + 1}")
    for i, layer in enumerate(dec.layers):
        reps = " ".join(",".join(map(str, v)) for v in layer.pairs())
        print(f"S_{i}: +-{{{reps}}}")
    for i, k in enumerate(dec.k, start=1):
        print(f"k_{i}={k}")
    print(f"alpha={dec.alpha}")
    print(f"beta={dec.beta}")
    print(f"gamma={dec.gamma}")
    print(f"s={','.join(map(str, dec.s))} |s|={dec.s_norm}")
    print(f"d={dec.d}")
    return EXIT_OK


def cmd_color_rect(args: argparse.Namespace) -> int:
    sizes = _vec(args.sizes)
    origin = _vec(args.origin) if args.origin else (0,) * len(sizes)
    box = Box(origin, sizes)
    t = _vec(args.t) if args.t else None
    if args.mode == "bc1":
        coloring = color_bc1(box)
    elif args.mode == "bc2":
        axis = args.odd_axis
        if axis is None:
            odd = [ax for ax, a in enumerate(sizes, start=1) if a % 2]
            if not odd:
                raise InfeasibleError(f"no odd side in {sizes} for bc2")
            axis = odd[0]
        coloring = color_bc2(box, axis)
    elif args.mode == "core":
        coloring = color_core(box)
    elif args.mode == "shifted":
        if t is None:
            raise InvalidInputError("--mode shifted requires --t")
        coloring = color_shifted_core(box, t)
    else:
        raise InvalidInputError(f"unknown mode {args.mode!r}")

    if not verify_proper(coloring) or not verify_boundary_condition(coloring, box):
        raise VerificationError("produced coloring failed verification")
    if args.mode in ("core", "shifted"):
        shift = t if t is not None else (0,) * box.n
        if not verify_shifted_core(coloring, box, shift):
            raise VerificationError("core confinement failed verification")
    doc = document_for_rect(box.origin, box.sizes, args.mode, coloring, t)
    _write_out(args.out, serialize_coloring(doc))
    print(
        f"ok: {len(coloring)} edges, {len(coloring.colors_used())} colors",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_color_torus(args: argparse.Namespace) -> int:
    moduli = _vec(args.moduli)
    torus = Torus(moduli)
    offsets = _vec(args.offsets) if args.offsets else None
    tiling = brick_tiling(torus, args.d, offsets=offsets, seed=args.seed)
    coloring = color_tiling(tiling, mode=args.mode)
    report = verify_tiling_coloring(coloring, tiling, args.mode)
    if not report.ok:
        raise VerificationError("; ".join(report.problems))
    doc = document_for_torus(
        moduli, args.d, args.mode, coloring, seed=args.seed, offsets=offsets
    )
    _write_out(args.out, serialize_coloring(doc))
    print(
        f"ok: {len(tiling.regions)} regions, {len(coloring)} edges, "
        f"{len(coloring.colors_used())} colors",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_layered(args: argparse.Namespace) -> int:
    s = _load_genset(args.genset, args.symmetrize)
    moduli = _vec(args.moduli)
    run = run_pipeline(s, moduli, d_override=args.d_override)
    report = run.report
    if not report.ok:
        raise VerificationError("; ".join(report.problems[:5]))
    if args.out:
        doc = document_for_layered(run.result)
        _write_out(args.out, serialize_layered(doc))
    zero_in = report.zero_edges
    print(f"levels={run.dec.level_count + 1} d={run.result.d}")
    print(f"edges={len(run.result.coloring)} colors={report.color_count} "
          f"limit={len(s) + 1}")
    print(f"zero_edges={zero_in} core_vertices="
          f"{sum(len(ks) for ks in run.result.k_sets)}")
    print("verified: proper, total, palette bound, zero confinement")
    return EXIT_OK


def cmd_lowerbound(args: argparse.Namespace) -> int:
    moduli = _vec(args.moduli)
    torus = Torus(moduli)
    if args.genset:
        s = _load_genset(args.genset, args.symmetrize)
    else:
        s = GeneratorSet.standard(len(moduli))
    view = SchreierGraphView(torus, s)
    if args.search == "matchings":
        found = has_perfect_matching(view)
        print(f"perfect_matching={'found' if found else 'none'} "
              f"vertices={torus.vertex_count()}")
    elif args.search == "labelings":
        hits = search_respecting_labelings(torus, s, limit=args.limit)
        print(f"patterns={len(matching_patterns(s))} respecting_labelings="
              f"{'>=' if args.limit and len(hits) == args.limit else ''}{len(hits)}")
        for lab in hits[:3]:
            print("witness: " + " ".join(
                f"{','.join(map(str, v))}->{','.join(map(str, g))}"
                for v, g in lab.phi
            ))
    elif args.search == "chi":
        k_max = args.k_max if args.k_max else len(s) + 1
        chi = chromatic_index(view, k_max)
        print(f"chromatic_index={chi if chi is not None else f'>{k_max}'}")
    else:
        raise InvalidInputError(f"unknown search {args.search!r}")
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        doc = parse_coloring_document(fh.read())
    slices = {}
    for pin in args.slice or []:
        if "=" not in pin:
            raise InvalidInputError(f"bad --slice {pin!r}, expected axis=value")
        ax, val = pin.split("=", 1)
        slices[int(ax)] = int(val)
    svg = render_svg(doc, slices)
    _write_out(args.out, svg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chromatile",
        description="Constructs and verifies proper edge colorings of "
        "rectangles, tori and tiled grid graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_symmetrize(p):
        p.add_argument(
            "--symmetrize",
            action="store_true",
            help="close the input generating set under negation "
            "(without this flag, asymmetric input is an error)",
        )

    p = sub.add_parser("decompose", help="layer a generating set and print constants")
    p.add_argument("genset", help="generating-set file")
    add_symmetrize(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("color-rect", help="color a rectangle")
    p.add_argument("--sizes", required=True, help="comma-separated side lengths")
    p.add_argument("--origin", help="comma-separated origin (default all 0)")
    p.add_argument("--mode", required=True, choices=["bc1", "bc2", "core", "shifted"])
    p.add_argument("--t", help="core shift vector for --mode shifted")
    p.add_argument("--odd-axis", type=int, help="odd axis for bc2 (default: first odd)")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_color_rect)

    p = sub.add_parser("color-torus", help="tile a torus and color it")
    p.add_argument("--moduli", required=True)
    p.add_argument("--d", type=int, required=True, help="marker distance")
    p.add_argument("--mode", default="plain", choices=["plain", "core", "shifted"])
    p.add_argument("--seed", type=int, help="seed for brick offsets")
    p.add_argument("--offsets", help="explicit per-slab offsets")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_color_torus)

    p = sub.add_parser("layered", help="full multi-level pipeline for any S")
    p.add_argument("--genset", required=True)
    p.add_argument("--moduli", required=True)
    p.add_argument("--d-override", type=int, help="smaller marker distance (4k+2)")
    p.add_argument("--out", help="write the layered document here")
    add_symmetrize(p)
    p.set_defaults(func=cmd_layered)

    p = sub.add_parser("lowerbound", help="finite lower-bound witnesses")
    p.add_argument("--genset", help="generating-set file (default: standard)")
    p.add_argument("--moduli", required=True)
    p.add_argument("--search", required=True, choices=["matchings", "labelings", "chi"])
    p.add_argument("--k-max", type=int, help="color budget for --search chi")
    p.add_argument("--limit", type=int, help="stop after this many labelings")
    add_symmetrize(p)
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("render", help="render a coloring document as SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--slice", action="append", help="axis=value, repeatable")
    p.add_argument("--out", help="output SVG file (default stdout)")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_UNVERIFIED
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ChromatileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
