from typing import Dict, List, Mapping

from .GoalObjects import And, Forall, Formula, GoalSpec, GroundedGoal, Literal, Not, SignedLiteral, SymbolicState
from .Grounding import bind_args, quantifier_domain


def unsatisfied_literals(goal: GroundedGoal, state: SymbolicState) -> List[SignedLiteral]:
    for literal in goal:
        state.check_entities(literal)
    return [literal for literal in goal if not state.holds(literal)]


def evaluate(goal: GroundedGoal, state: SymbolicState) -> bool:
    return not unsatisfied_literals(goal, state)


def _interpret(node: Formula, env: Dict[str, str], state: SymbolicState, containment: Mapping[str, str]) -> bool:
    if isinstance(node, Literal):
        return (node.predicate, bind_args(node, env, state.universe)) in state.facts
    if isinstance(node, Not):
        return not _interpret(node.child, env, state, containment)
    if isinstance(node, And):
        return all(_interpret(child, env, state, containment) for child in node.children)
    assert isinstance(node, Forall)
    for entity in quantifier_domain(node, env, state.universe, containment):
        if not _interpret(node.body, {**env, node.variable: entity}, state, containment):
            return False
    return True


def interpret(goal: GoalSpec, state: SymbolicState, containment: Mapping[str, str]) -> bool:
    """Evaluates the quantified formula directly, without grounding it first."""
    return _interpret(goal.root, {}, state, containment)
