"""Interval structure of monochromatic combinatorial lines in [3]^n.

Implements the contraction-weight colouring T+ over Z_r, its boundary-pair
decomposition, and exhaustive desk-scale scans of combinatorial lines.
"""

from .claim import (
    BoundaryDecomposition,
    claim_eval,
    decompose,
    h,
    line_color_delta,
    pair_delta,
)
from .coloring import (
    ColoringSpec,
    T,
    T_plus,
    WeightVector,
    canonical_weights,
    even_r_coloring,
    evaluate,
    load_coloring,
    random_coloring,
    save_coloring,
    table_coloring,
    tplus_coloring,
    weight_sum,
)
from .lines import (
    LineTemplate,
    enumerate_templates,
    interval_count,
    line_points,
    substitute,
)
from .search import (
    SearchReport,
    decide_all_colorings,
    min_n_with_mono_line,
    pigeonhole_line,
    scan,
    verify_theorem,
)
from .words import Word, contract, plus_extend, word_from_index, word_index

__version__ = "0.1.0"
