from .Formula import And, Forall, Formula, GoalSpec, Literal, Not, is_variable
from .GroundedGoal import GroundedGoal
from .SignedLiteral import Atom, SignedLiteral, lit
from .SymbolicState import CATEGORY_ORDER, SymbolicState, Universe, make_universe
