"""Rack coloring invariants of oriented Legendrian knots from front codes."""

from .coloring import (
    Certificate,
    ColoringReport,
    DistinguishVerdict,
    count_colorings,
    distinguish_unknots,
    iter_colorings,
    nontriviality_certificate,
    quandle_colorings,
    unknot_arithmetic,
)
from .front_code import (
    Cusp,
    CuspDir,
    FrontCode,
    FrontInvariants,
    InvalidCodeError,
    OverPass,
    ParseError,
    UnderPass,
    invariants,
    parse,
    s_min,
    serialize,
)
from .model_finder import (
    EnumerationResult,
    check_lemma_suite,
    check_predicate_axioms,
    cusp_predicate,
    enumerate_racks,
)
from .moves import MoveSite, applicable, apply_move, inverse_site, random_walk, walk_iter
from .presentation import Presentation, Relation, RelKind, extract, instantiate, presentation_text
from .rack_core import (
    FiniteRack,
    RackViolation,
    cyclic,
    dihedral,
    make_rack,
    rack_from_descriptor,
    verify_rack,
)

__version__ = "0.1.0"
