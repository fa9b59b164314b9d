from typing import Iterable, Iterator, Tuple

from .Formula import And, GoalSpec, Literal, Not
from .SignedLiteral import SignedLiteral


class GroundedGoal:
    """Conjunction of signed literals without variables, sorted and deduplicated."""
    __slots__ = ("literals",)

    literals: Tuple[SignedLiteral, ...]

    def __init__(self, literals: Iterable[SignedLiteral] = ()):
        self.literals = tuple(sorted(set(literals), key=SignedLiteral.sort_key))

    def as_goal_spec(self) -> GoalSpec:
        children = []
        for literal in self.literals:
            node = Literal(literal.predicate, literal.args)
            children.append(node if literal.positive else Not(node))
        return GoalSpec(And(tuple(children)))

    def __iter__(self) -> Iterator[SignedLiteral]:
        return iter(self.literals)

    def __len__(self):
        return len(self.literals)

    def __eq__(self, other):
        if not isinstance(other, GroundedGoal):
            return NotImplemented
        return self.literals == other.literals

    def __hash__(self):
        return hash(self.literals)

    def __repr__(self):
        return f"<GroundedGoal {' ∧ '.join(str(l) for l in self.literals) or '⊤'}>"
