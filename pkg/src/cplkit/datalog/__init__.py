"""Two-stratum Datalog compiled through the focused prover."""

from .engine import Database, crosscheck, immediate, query, run_program, saturate
from .ground import GroundProgram, GroundRule, ground
from .parser import Clause, DAtom, Literal, Program, parse_atom, parse_program
from .randprog import random_program
from .stratify import StratifiedProgram, stratify
from .translate import translate

__all__ = ["Clause", "DAtom", "Database", "GroundProgram", "GroundRule", "Literal", "Program",
           "StratifiedProgram", "crosscheck", "ground", "immediate", "parse_atom",
           "parse_program", "query", "random_program", "run_program", "saturate", "stratify",
           "translate"]
