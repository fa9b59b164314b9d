from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from SkillComposer.Exceptions.Exceptions import SymbolicStateError, UnknownEntityError
from .SignedLiteral import Atom, SignedLiteral

# declaration order doubles as the planner's tie-breaking rank
CATEGORY_ORDER = ("cupboards", "drawers", "buckets", "objects", "cloths")

Universe = Dict[str, Tuple[str, ...]]


def make_universe(categories: Mapping[str, Sequence[str]]) -> Universe:
    return {category: tuple(entities) for category, entities in categories.items()}


class SymbolicState:
    """Closed-world set of grounded facts over a finite universe.

    Only positive atoms are stored in `facts`. `negatives` optionally records
    atoms that were explicitly observed false; they must not overlap `facts`
    and carry no extra meaning for evaluation.
    """
    __slots__ = ("facts", "negatives", "universe", "_entities")

    facts: FrozenSet[Atom]
    negatives: FrozenSet[Atom]
    universe: Universe

    def __init__(self, facts: Iterable[Atom], universe: Mapping[str, Sequence[str]],
                 negatives: Iterable[Atom] = ()):
        self.facts = frozenset((pred, tuple(args)) for pred, args in facts)
        self.negatives = frozenset((pred, tuple(args)) for pred, args in negatives)
        self.universe = make_universe(universe)
        self._entities = frozenset(e for members in self.universe.values() for e in members)

        both = self.facts & self.negatives
        if both:
            raise SymbolicStateError(f"Literal asserted with both signs: {sorted(both)}")
        for pred, args in self.facts | self.negatives:
            for entity in args:
                if entity not in self._entities:
                    raise SymbolicStateError(f"{pred}{args} mentions {entity!r} which is not in the universe")

    @property
    def entities(self) -> FrozenSet[str]:
        return self._entities

    def category_of(self, entity: str) -> Optional[str]:
        for category, members in self.universe.items():
            if entity in members:
                return category
        return None

    def check_entities(self, literal: SignedLiteral):
        for entity in literal.args:
            if entity not in self._entities:
                raise UnknownEntityError(f"{literal} mentions {entity!r} which is not in the universe")

    def holds(self, literal: SignedLiteral) -> bool:
        return (literal.atom in self.facts) == literal.positive

    def apply(self, add: Iterable[Atom] = (), delete: Iterable[Atom] = ()) -> 'SymbolicState':
        facts = (set(self.facts) - set(delete)) | set(add)
        return SymbolicState(facts, self.universe)

    def literals(self) -> List[SignedLiteral]:
        return sorted((SignedLiteral(pred, args) for pred, args in self.facts), key=SignedLiteral.sort_key)

    def __eq__(self, other):
        if not isinstance(other, SymbolicState):
            return NotImplemented
        return self.facts == other.facts and self.universe == other.universe

    def __hash__(self):
        return hash(self.facts)

    def __repr__(self):
        return f"<SymbolicState {', '.join(str(l) for l in self.literals())}>"
