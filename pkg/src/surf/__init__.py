"""Reaction systems over subobject lattices of sets, graphs, hypergraphs, posets and diagrams."""
from .core import (
    Background,
    BackgroundMismatch,
    ClosureViolation,
    Subobject,
    SurfError,
    TooLarge,
    UnknownElement,
    empty_subobject,
    enumerate_subobjects,
    intersect,
    is_included,
    union_all,
    validate_subobject,
)
from .process import ProcessTrace, check_context_independent, detect_cycle, run_process
from .reactions import Reaction, ReactionSystem, is_enabled, make_reaction, result_of_reaction, result_of_set
from .universes import (
    GraphBackground,
    HypergraphBackground,
    PosetBackground,
    SetBackground,
    construct_background,
)

__version__ = "0.1.0"
