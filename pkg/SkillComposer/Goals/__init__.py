from .Evaluator import evaluate, interpret, unsatisfied_literals
from .GoalObjects import *
from .GoalParser import format_goal, format_symbolic_state, parse_goal, read_goal_file, read_symbolic_state
from .Grounding import ground_quantifiers, resolve_constant
from .Predicates import DEFAULT_PREDICATES, PredicateDecl, declare
