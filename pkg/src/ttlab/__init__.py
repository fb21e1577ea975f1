"""Train-track calculus: labelled ribbon graphs, splitting moves, and
certificates for the self maps they carry."""

from .boundary import (
    BoundaryAction,
    CurveImage,
    PeriodicPoint,
    SideDynamics,
    SideOrbit,
    boundary_action,
    side_dynamics,
)
from .certify import Certificate, certify, render_text, to_json, to_json_dict
from .errors import (
    AlignmentError,
    BadIndex,
    BoundaryNotPreserved,
    ChainMismatch,
    IllegalMove,
    InconsistentConstraints,
    InvalidMorphism,
    InvalidTrack,
    NoConvergence,
    NoSplitAvailable,
    NotAnIdentification,
    NotASelfMap,
    NotIrreducible,
    NotOrientable,
    NotPrimitive,
    ParseError,
    ResourceLimit,
    TrackError,
    UnknownEntry,
)
from .incidence import (
    IncidenceMatrix,
    PerronData,
    dilatation,
    fixed_edge_points,
    incidence_matrix,
    irreducibility,
    primitivity,
)
from .morphism import (
    TrackMorphism,
    compose,
    compose_chain,
    identity_morphism,
    iso_morphism,
    power,
    relabel_morphism,
)
from .search import LoopResult, SearchConfig, replay, search_loops
from .splitting import (
    SplitMove,
    SplitRun,
    apply_sequence,
    apply_split,
    format_sequence,
    is_legal,
    legal_splits,
    parse_move,
    parse_sequence,
    unsplit,
)
from .track import (
    BoundaryCurve,
    EulerData,
    Switch,
    TrackIso,
    TrainTrack,
    automorphisms,
    isomorphisms,
    tracks_equal,
)
from .words import (
    cyclic_reduce,
    format_word,
    free_reduce,
    inverse,
    parse_word,
    substitute,
)
from . import atlas, fileio

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "BadIndex", "BoundaryAction", "BoundaryCurve",
    "BoundaryNotPreserved", "Certificate", "ChainMismatch", "CurveImage",
    "EulerData", "IllegalMove", "IncidenceMatrix", "InconsistentConstraints",
    "InvalidMorphism", "InvalidTrack", "LoopResult", "NoConvergence",
    "NoSplitAvailable", "NotASelfMap", "NotIrreducible", "NotOrientable",
    "NotPrimitive", "ParseError", "PeriodicPoint", "PerronData",
    "ResourceLimit", "SearchConfig", "SideDynamics", "SideOrbit", "SplitMove",
    "SplitRun", "Switch", "TrackError", "TrackIso", "TrackMorphism",
    "TrainTrack", "UnknownEntry", "apply_sequence", "apply_split", "atlas",
    "automorphisms", "boundary_action", "certify", "compose", "compose_chain",
    "cyclic_reduce", "dilatation", "fileio", "fixed_edge_points",
    "format_sequence", "format_word", "free_reduce", "identity_morphism",
    "incidence_matrix", "inverse", "irreducibility", "is_legal",
    "iso_morphism", "isomorphisms", "legal_splits", "parse_move",
    "parse_sequence", "parse_word", "power", "primitivity",
    "relabel_morphism", "render_text", "replay", "search_loops",
    "side_dynamics", "substitute", "to_json", "to_json_dict", "tracks_equal",
    "unsplit",
]
