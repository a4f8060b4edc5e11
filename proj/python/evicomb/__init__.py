"""Evidence combination: Dempster's orthogonal sum with linear fast paths.

The heavy lifting lives in the compiled ``evicomb._core`` extension; this
package re-exports its public surface.
"""

from ._core import (
    ApproxBreakdownError,
    DichotomousMass,
    Error,
    Frame,
    FrameError,
    FrameMismatchError,
    FuseMethod,
    FuseOptions,
    FusionReport,
    ItemDecision,
    MassError,
    MassFunction,
    MultiFocusIntermediate,
    NoiseModel,
    ParseError,
    ScoreMatrix,
    Subset,
    SynthParams,
    SynthWorkload,
    TotalConflictError,
    TripletCombination,
    TripletMass,
    __version__,
    approx_combine,
    belief,
    combine_all,
    combine_disjoint,
    combine_equal,
    combine_one_shared,
    combine_pair,
    combine_pair_auto,
    combine_repeated,
    commonality,
    conflict,
    doubt,
    evaluate,
    fold_combine,
    fuse_item,
    fuse_matrix,
    normalization_repeated,
    outstanding,
    plausibility,
    scores_to_dichotomous,
    scores_to_triplet,
    synth_workload,
    to_general,
)

__all__ = [
    "ApproxBreakdownError",
    "DichotomousMass",
    "Error",
    "Frame",
    "FrameError",
    "FrameMismatchError",
    "FuseMethod",
    "FuseOptions",
    "FusionReport",
    "ItemDecision",
    "MassError",
    "MassFunction",
    "MultiFocusIntermediate",
    "NoiseModel",
    "ParseError",
    "ScoreMatrix",
    "Subset",
    "SynthParams",
    "SynthWorkload",
    "TotalConflictError",
    "TripletCombination",
    "TripletMass",
    "__version__",
    "approx_combine",
    "belief",
    "combine_all",
    "combine_disjoint",
    "combine_equal",
    "combine_one_shared",
    "combine_pair",
    "combine_pair_auto",
    "combine_repeated",
    "commonality",
    "conflict",
    "doubt",
    "evaluate",
    "fold_combine",
    "fuse_item",
    "fuse_matrix",
    "normalization_repeated",
    "outstanding",
    "plausibility",
    "scores_to_dichotomous",
    "scores_to_triplet",
    "synth_workload",
    "to_general",
]
