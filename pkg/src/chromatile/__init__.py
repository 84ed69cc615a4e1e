"""chromatile: proper edge colorings of rectangles, tori and tiled grids.

For any symmetric generating set S of Z^n (identity excluded), the
Schreier graphs built here admit proper edge colorings with |S| + 1
colors that are *local*: each tiling region's colors depend only on its
size and core shift, never on its position.  The package constructs
those colorings at finite-torus scale, verifies every one it emits, and
ships brute-force witnesses for the matching lower bound that shows the
extra color is unavoidable for position-independent colorings.
"""

from .errors import (
    ChromatileError,
    ColorConflictError,
    InfeasibleError,
    InvalidInputError,
    VerificationError,
)
from .grid import (
    Box,
    GridEdge,
    SchreierGraphView,
    Torus,
    adjacent_edges,
    boundary_edges,
    edges_in,
    path_distance,
)
from .lattice import (
    Decomposition,
    GeneratorSet,
    SubgroupBasis,
    compute_constants,
    decompose,
    decompose_with_constants,
    hermite_normal_form,
    is_linearly_independent,
    load_generator_file,
    parse_generator_text,
    smallest_multiple_in,
)
from .layered import (
    CosetModel,
    LayeredResult,
    build_model,
    plan_tilings,
    run_layered,
    run_pipeline,
    verify_layered,
)
from .lowerbound import (
    chromatic_index,
    has_perfect_matching,
    induced_matching,
    matching_patterns,
    respects,
    search_respecting_labelings,
)
from .rectcolor import (
    C,
    Color,
    EdgeColoring,
    P,
    color_bc1,
    color_bc2,
    color_core,
    color_shifted_core,
    palette,
    verify_boundary_condition,
    verify_core_condition,
    verify_proper,
    verify_shifted_core,
)
from .tiling import (
    MarkerSet,
    Tiling,
    brick_tiling,
    color_tiling,
    greedy_marker_set,
    validate_tiling,
    verify_tiling_coloring,
)

__version__ = "0.1.0"
