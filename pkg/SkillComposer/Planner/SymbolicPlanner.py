import heapq
from typing import FrozenSet, List, Optional, Sequence, Tuple

from SkillComposer import Logger
from SkillComposer.Goals.GoalObjects import Atom, GroundedGoal, SymbolicState
from SkillComposer.Skills.SkillIds import Binding
from .OperatorSchema import GroundedOperator, OperatorSchema, default_schemas, ground_operators

logger = Logger.get_logger(__name__)


class Plan:
    """Ordered grounded skill invocations."""
    __slots__ = ("steps",)

    def __init__(self, steps: Sequence[GroundedOperator] = ()):
        self.steps: Tuple[GroundedOperator, ...] = tuple(steps)

    @property
    def bindings(self) -> List[Binding]:
        return [step.binding for step in self.steps]

    def lines(self) -> List[str]:
        return [str(step) for step in self.steps]

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, index):
        return self.steps[index]

    def __eq__(self, other):
        if not isinstance(other, Plan):
            return NotImplemented
        return self.lines() == other.lines()

    def __str__(self):
        return "; ".join(self.lines())

    def __repr__(self):
        return f"<Plan {self}>"


def _satisfied(goal: GroundedGoal, facts: FrozenSet[Atom]) -> bool:
    return all((literal.atom in facts) == literal.positive for literal in goal)


def plan(goal: GroundedGoal, state: SymbolicState, schemas: Optional[Sequence[OperatorSchema]] = None,
         max_expansions: int = 200000) -> Optional[Plan]:
    """Shortest plan by uniform-cost forward search, or None.

    Among shortest plans the one whose sequence of operator keys is
    lexicographically smallest wins.
    """
    for literal in goal:
        state.check_entities(literal)
    operators = ground_operators(schemas if schemas is not None else default_schemas(), state.universe)
    start = state.facts
    frontier = [(0, (), start, ())]
    closed = set()
    expansions = 0
    while frontier:
        cost, keys, facts, path = heapq.heappop(frontier)
        if facts in closed:
            continue
        closed.add(facts)
        if _satisfied(goal, facts):
            logger.debug(f"Found a {cost}-step plan after {expansions} expansions")
            return Plan(path)
        expansions += 1
        if expansions > max_expansions:
            logger.warning(f"Planner gave up after {max_expansions} expansions")
            return None
        for op in operators:
            if not op.applicable(facts):
                continue
            successor = op.apply(facts)
            if successor in closed:
                continue
            heapq.heappush(frontier, (cost + 1, keys + (op.key,), successor, path + (op,)))
    return None


def validate_plan(plan_: Plan, state: SymbolicState, goal: GroundedGoal) -> Tuple[bool, Optional[str]]:
    """Simulates the plan's effects; returns (valid, reason for the first failure)."""
    facts = state.facts
    for i, step in enumerate(plan_):
        if not step.applicable(facts):
            return False, f"step {i + 1} {step} is not applicable"
        facts = step.apply(facts)
    if not _satisfied(goal, facts):
        return False, "final state does not satisfy the goal"
    return True, None
