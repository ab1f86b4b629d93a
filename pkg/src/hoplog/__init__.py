"""hoplog: a workbench for typed higher-order logic programs with negation.

Pipeline: parse -> type-check -> ground (bounded or demand-driven) ->
evaluate (well-founded or perfect model) -> check extensionality.
"""

from .extensionality import ExtChecker, ext_equal, reflexivity_check
from .grounder import (
    GroundAtom,
    GroundProgram,
    ground_instantiation,
    herbrand_universe,
    relevant_grounding,
)
from .interp import (
    Ordering,
    PartialInterpretation,
    TruthValue,
    is_minimal_model,
    is_model,
    leq,
    minimal_models_bruteforce,
    value_of,
    value_of_conj,
)
from .parser import parse_program, parse_type
from .perfect import localize, perfect_model, psi_step, stratify
from .typecheck import Program, check_program, load_program
from .wfs import theta_lfp, theta_step, well_founded_model

__all__ = [
    "ExtChecker",
    "GroundAtom",
    "GroundProgram",
    "Ordering",
    "PartialInterpretation",
    "Program",
    "TruthValue",
    "check_program",
    "ext_equal",
    "ground_instantiation",
    "herbrand_universe",
    "is_minimal_model",
    "is_model",
    "leq",
    "load_program",
    "localize",
    "minimal_models_bruteforce",
    "parse_program",
    "parse_type",
    "perfect_model",
    "psi_step",
    "reflexivity_check",
    "relevant_grounding",
    "stratify",
    "theta_lfp",
    "theta_step",
    "value_of",
    "value_of_conj",
    "well_founded_model",
]
