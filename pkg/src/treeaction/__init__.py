"""Exact proper affine isometric actions for groups acting on trees.

Build amalgams of finitely generated abelian groups (and Baumslag-Solitar
HNN extensions), their Bass-Serre trees, the affine space of mass-one
vertex functions, and the tower representation assembled from two factor
actions over a common subspace; everything in exact rational arithmetic.
"""
from .abelian import AbelianGroup, DiagonalEmbedding
from .bswindow import BSSpec, WindowSpec, britton_normalize, build_window
from .errors import (
    BallBudgetError,
    ChartMismatchError,
    ConstructionError,
    InvariantFailure,
    SpecParseError,
    WordSyntaxError,
)
from .groupspec import AmalgamSpec, BrittonForm, HNNSpec, NormalForm
from .linalg import AffinePt, SparseVec
from .reps import (
    AffineIso,
    DirectSumRep,
    Exhaustion,
    FactorRep,
    RestrictedRep,
    SubspaceDatum,
    WeightedSumRep,
    center_of_mass_fixed_point,
    displacement_sq,
    point_rep,
    relative_displacement_sq,
    translation_rep,
    weighted_sum,
)
from .specfile import ParsedSpec, parse_spec_file, parse_spec_text
from .tree import TreeBall
from .utspace import UTRep
from .wgamma import AmalgamRepInput, WGammaRep, build_wgamma, assembled_rep

__version__ = "0.1.0"
