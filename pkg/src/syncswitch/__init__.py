"""Switch counts and shortest reset words of deterministic finite automata."""

from .automaton import (
    Dfa,
    DfaEntryError,
    DfaHeaderError,
    DfaParseError,
    DfaShapeError,
    IsoConvention,
    Word,
    WordSymbolError,
    apply_set,
    apply_state,
    canonical_form,
    full_set,
    is_singleton,
    max_states,
    parse_dfa,
    preimage,
    serialize_dfa,
    set_members,
    set_size,
    state_set,
    switch_count,
)
from .closure import AlphabetMismatchError, ClosureMap, f2_transform, f_transform, power_closure
from .synchro import (
    NotSynchronizingError,
    Objective,
    SyncResult,
    count_optimal_words,
    is_synchronizing,
    min_switch_count,
    optimal_sync_word,
    optimal_words,
    shortest_sync_length,
)
from . import analysis, families, search

__all__ = [
    "Dfa",
    "Word",
    "IsoConvention",
    "Objective",
    "SyncResult",
    "ClosureMap",
    "DfaParseError",
    "DfaHeaderError",
    "DfaShapeError",
    "DfaEntryError",
    "WordSymbolError",
    "NotSynchronizingError",
    "AlphabetMismatchError",
    "switch_count",
    "apply_state",
    "apply_set",
    "preimage",
    "canonical_form",
    "parse_dfa",
    "serialize_dfa",
    "full_set",
    "state_set",
    "set_members",
    "set_size",
    "is_singleton",
    "max_states",
    "is_synchronizing",
    "shortest_sync_length",
    "min_switch_count",
    "optimal_sync_word",
    "optimal_words",
    "count_optimal_words",
    "power_closure",
    "f_transform",
    "f2_transform",
    "analysis",
    "families",
    "search",
]

__version__ = "0.1.0"
