"""Minimization and hyper-minimization of deterministic register automata
over data words with a dense order or equality only."""

from .automaton import (
    Automaton,
    Configuration,
    RunResult,
    State,
    StateKind,
    Transition,
    ValidationError,
    accepts,
    classify_states,
    complete,
    remove_finite_future_preambles,
    run,
    step,
    trim,
    validate,
)
from .equivalence import (
    automata_almost_equiv,
    automata_equiv,
    config_almost_equiv,
    config_equiv,
    state_almost_equiv,
    state_equiv,
    witness_alphabet,
)
from .memorability import ell_memorable, len_squared, memorable_set
from .minimize import hyper_data_minimize, hyper_minimize, merge, minimize
from .textformat import ParseError, dump, load, parse_automaton, serialize
from .wordtypes import Domain, WordType, extend, extensions, parse_type, realize, restrict, type_of

__all__ = [
    "Automaton", "Configuration", "RunResult", "State", "StateKind", "Transition", "ValidationError",
    "accepts", "classify_states", "complete", "remove_finite_future_preambles", "run", "step", "trim",
    "validate", "automata_almost_equiv", "automata_equiv", "config_almost_equiv", "config_equiv",
    "state_almost_equiv", "state_equiv", "witness_alphabet", "ell_memorable", "len_squared",
    "memorable_set", "hyper_data_minimize", "hyper_minimize", "merge", "minimize", "ParseError", "dump",
    "load", "parse_automaton", "serialize", "Domain", "WordType", "extend", "extensions", "parse_type",
    "realize", "restrict", "type_of",
]

__version__ = "0.1.0"
