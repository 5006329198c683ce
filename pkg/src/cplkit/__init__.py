"""Decision procedures, proof terms and a Datalog engine for CPL and CPL*."""

from ._accel import USE_NUMBA
from .context import Judgment, ctx_leq, format_context, make_context, project
from .cpl import CplProof, CplProver, ProofResult, decide_cpl, replay_cpl
from .errors import (CplkitError, CyclicError, EmptyDomainError, FragmentError, NoRedex,
                     OrderError, ParseError, PolarityClashError, RangeRestrictionError,
                     SideConditionError, TooManyStrataError, UnknownWorldError,
                     UnstratifiableError, UnsupportedShape)
from .focused import FocProof, FocusedSearch, Inv, LFoc, RFoc, check_phases, decide_foc, prove_neg
from .frames import RUNNING_FRAME, Frame, build_frame, parse_frame, reaches, successors
from .nd import (check_nd, expand_neutral, explain, extract_nd, normalize, parse_term,
                 reduce_redex, subst_nd, to_text, weaken_nd)
from .polarity import Polarities, erase, polarize
from .syntax import (BOT, PBOT, Atom, Box, Dia, Down, Imp, NAtom, Neg, PAtom, PBox, PDia, PImp,
                     Prop, Up, parse_prop)
from .textio import Sequent, format_sequent, parse_sequent

__version__ = "0.1.0"

__all__ = [
    "USE_NUMBA", "Judgment", "ctx_leq", "format_context", "make_context", "project",
    "CplProof", "CplProver", "ProofResult", "decide_cpl", "replay_cpl",
    "CplkitError", "CyclicError", "EmptyDomainError", "FragmentError", "NoRedex", "OrderError",
    "ParseError", "PolarityClashError", "RangeRestrictionError", "SideConditionError",
    "TooManyStrataError", "UnknownWorldError", "UnstratifiableError", "UnsupportedShape",
    "FocProof", "FocusedSearch", "Inv", "LFoc", "RFoc", "check_phases", "decide_foc", "prove_neg",
    "RUNNING_FRAME", "Frame", "build_frame", "parse_frame", "reaches", "successors",
    "check_nd", "expand_neutral", "explain", "extract_nd", "normalize", "parse_term",
    "reduce_redex", "subst_nd", "to_text", "weaken_nd", "Polarities", "erase", "polarize",
    "BOT", "PBOT", "Atom", "Box", "Dia", "Down", "Imp", "NAtom", "Neg", "PAtom", "PBox", "PDia",
    "PImp", "Prop", "Up", "parse_prop", "Sequent", "format_sequent", "parse_sequent",
]
