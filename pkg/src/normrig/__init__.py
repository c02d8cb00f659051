"""Infinitesimal rigidity of bar-joint frameworks in finite-dimensional real
normed spaces: Euclidean, lq and polyhedral norms, symmetry-extended counting
checks, and a conjecture-evidence explorer for quadrilateral unit balls."""

from .document import AnalysisDocument, DocumentError, load_document, serialize_document
from .framework import (
    FlexSpace,
    Framework,
    NotWellPositionedError,
    RigidityMatrix,
    RigidityVerdict,
    VERDICT_FLEXIBLE,
    VERDICT_ISOSTATIC,
    VERDICT_NOT_WELL_POSITIONED,
    VERDICT_RIGID_REDUNDANT,
    classify_rigidity,
    finite_difference_check,
    flex_space,
    make_framework,
    rigidity_map,
    rigidity_matrix,
    trivial_flex_space,
    well_positioned,
)
from .graphs import Graph, make_graph
from .norms import (
    IsometryGroup,
    NormSpec,
    builtin_norm,
    euclidean,
    from_ball_vertices,
    hexagonal_prism,
    l1,
    linf,
    lq,
    polyhedral as polyhedral_norm,
)
from .polyhedral import (
    ColoredGraph,
    Condition,
    edge_colors,
    facet_action,
    quadrilateral_conditions,
    tree_decomposition_check,
)
from .scalars import EXACT_CTX, FLOAT_CTX, ScalarContext, UnsupportedError
from .sparsity import (
    SparsityParams,
    brute_force_sparse,
    is_sparse,
    is_tight,
    symmetric_tight_subgraphs,
    two_spanning_trees,
)
from .symmetry import (
    GroupAction,
    SymmetryOpClass,
    character_equation_check,
    character_table,
    classify_operation,
    fixed_elements,
    intertwining_check,
    symmetric_count_check,
    validate_symmetric_framework,
)

__version__ = "0.1.0"
