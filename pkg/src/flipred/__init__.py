"""Labelled-edge triangulations and reduction of edge flip sequences."""

from .algebra import (
    InvalidSequenceError,
    MoveError,
    RewriteStep,
    apply,
    cancel_pair,
    commutes_at,
    insert_pair,
    invert,
    is_valid,
    relabel_sequence,
    rewrite,
    strongly_equiv_by_commutativity,
    swap_adjacent,
    transposition_expand,
    transposition_reduce,
)
from .kernel import BACKEND
from .reducer import ReductionReport, is_reduced_oracle, reduce
from .triangulation import (
    FlipError,
    LabeledTriangulation,
    MissingEdgeError,
    Setting,
    Support,
    TriangulationError,
    flip,
    flippable,
    from_chords,
    make_fan,
    strong_equal,
    support,
    support_overlap,
    transpose_labels,
    weak_equal,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FlipError",
    "InvalidSequenceError",
    "LabeledTriangulation",
    "MissingEdgeError",
    "MoveError",
    "ReductionReport",
    "RewriteStep",
    "Setting",
    "Support",
    "TriangulationError",
    "apply",
    "cancel_pair",
    "commutes_at",
    "flip",
    "flippable",
    "from_chords",
    "insert_pair",
    "invert",
    "is_reduced_oracle",
    "is_valid",
    "make_fan",
    "reduce",
    "relabel_sequence",
    "rewrite",
    "strong_equal",
    "strongly_equiv_by_commutativity",
    "support",
    "support_overlap",
    "swap_adjacent",
    "transpose_labels",
    "transposition_expand",
    "transposition_reduce",
    "weak_equal",
]
