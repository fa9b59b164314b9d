from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Mapping, NamedTuple, Sequence, Tuple

from SkillComposer.Goals.GoalObjects import CATEGORY_ORDER, Atom, SignedLiteral, lit
from SkillComposer.Goals.Predicates import DEFAULT_PREDICATES, PredicateDecl
from SkillComposer.Skills.SkillIds import SKILLS, Binding

WILDCARD = "*"

EntityKey = Tuple[int, str]
OperatorKey = Tuple[str, Tuple[EntityKey, ...]]


class OperatorSchema(NamedTuple):
    """A lifted skill operator.

    Parameters are `(variable, categories)` pairs. A negative precondition
    may use `*` for an argument, which forbids every fact matching the
    remaining arguments (`¬HOLDING(*)` means the hand is empty).
    """
    skill: str
    parameters: Tuple[Tuple[str, Tuple[str, ...]], ...]
    preconditions: Tuple[SignedLiteral, ...]
    add: Tuple[Atom, ...] = ()
    delete: Tuple[Atom, ...] = ()
    display: Tuple[str, ...] = ()  # parameters shown when printed; all when empty
    variant: str = ""

    def check(self, vocabulary: Mapping[str, PredicateDecl] = DEFAULT_PREDICATES):
        variables = {name for name, _ in self.parameters}
        for literal in self.preconditions:
            _check_atom(self, (literal.predicate, literal.args), vocabulary, variables, literal.positive)
        for atom in self.add + self.delete:
            _check_atom(self, atom, vocabulary, variables, True)


def _check_atom(schema: OperatorSchema, atom: Atom, vocabulary, variables, positive: bool):
    predicate, args = atom
    decl = vocabulary.get(predicate)
    if decl is None:
        raise ValueError(f"Operator {schema.skill} mentions undeclared predicate {predicate}")
    if len(args) != decl.arity:
        raise ValueError(f"Operator {schema.skill}: {predicate} takes {decl.arity} arguments")
    for arg in args:
        if arg == WILDCARD and positive:
            raise ValueError(f"Operator {schema.skill}: wildcards are only allowed in negative preconditions")
        if arg != WILDCARD and arg not in variables:
            raise ValueError(f"Operator {schema.skill}: {arg} is not a parameter")


class GroundedOperator(NamedTuple):
    binding: Binding
    key: OperatorKey
    preconditions: Tuple[SignedLiteral, ...]
    add: FrozenSet[Atom]
    delete: FrozenSet[Atom]
    variant: str = ""

    def applicable(self, facts: FrozenSet[Atom]) -> bool:
        for literal in self.preconditions:
            if literal.positive:
                if literal.atom not in facts:
                    return False
            elif WILDCARD in literal.args:
                if any(_matches(literal, fact) for fact in facts):
                    return False
            elif literal.atom in facts:
                return False
        return True

    def apply(self, facts: FrozenSet[Atom]) -> FrozenSet[Atom]:
        return (facts - self.delete) | self.add

    def __str__(self):
        return str(self.binding)


def _matches(pattern: SignedLiteral, fact: Atom) -> bool:
    predicate, args = fact
    if predicate != pattern.predicate or len(args) != len(pattern.args):
        return False
    return all(p == WILDCARD or p == a for p, a in zip(pattern.args, args))


def entity_key(entity: str, universe: Mapping[str, Sequence[str]]) -> EntityKey:
    for rank, category in enumerate(CATEGORY_ORDER):
        if entity in universe.get(category, ()):
            return rank, entity
    return len(CATEGORY_ORDER), entity


def _substitute(args: Tuple[str, ...], binding: Dict[str, str]) -> Tuple[str, ...]:
    return tuple(binding.get(arg, arg) for arg in args)


def ground_schema(schema: OperatorSchema, universe: Mapping[str, Sequence[str]]) -> Iterator[GroundedOperator]:
    domains: List[List[str]] = []
    for _, categories in schema.parameters:
        members = [entity for category in categories for entity in universe.get(category, ())]
        domains.append(sorted(set(members), key=lambda e: entity_key(e, universe)))
    names = [name for name, _ in schema.parameters]
    shown = schema.display or tuple(names)
    for values in product(*domains):
        if len(set(values)) != len(values):
            continue
        binding = dict(zip(names, values))
        args = tuple(values)
        display = tuple(binding[name] for name in shown)
        yield GroundedOperator(
            binding=Binding(schema.skill, args, display if display != args else ()),
            key=(schema.skill, tuple(entity_key(value, universe) for value in args)),
            preconditions=tuple(SignedLiteral(l.predicate, _substitute(l.args, binding), l.positive)
                                for l in schema.preconditions),
            add=frozenset((p, _substitute(a, binding)) for p, a in schema.add),
            delete=frozenset((p, _substitute(a, binding)) for p, a in schema.delete),
            variant=schema.variant,
        )


def ground_operators(schemas: Sequence[OperatorSchema], universe: Mapping[str, Sequence[str]]
                     ) -> List[GroundedOperator]:
    grounded = [op for schema in schemas for op in ground_schema(schema, universe)]
    return sorted(grounded, key=lambda op: op.key)


CONTAINERS = ("cupboards", "drawers")
ITEMS = ("objects", "cloths")
HAND_EMPTY = lit("HOLDING", WILDCARD, positive=False)


def default_schemas() -> Tuple[OperatorSchema, ...]:
    return (
        OperatorSchema("open", (("?c", CONTAINERS),),
                       (lit("OPENED", "?c", positive=False), HAND_EMPTY),
                       add=(("OPENED", ("?c",)),)),
        OperatorSchema("close", (("?c", CONTAINERS),),
                       (lit("OPENED", "?c"), HAND_EMPTY, lit("IN", WILDCARD, "?c", positive=False)),
                       delete=(("OPENED", ("?c",)),)),
        OperatorSchema("grasp", (("?o", ITEMS), ("?c", CONTAINERS)),
                       (lit("IN", "?o", "?c"), lit("OPENED", "?c"), HAND_EMPTY),
                       add=(("HOLDING", ("?o",)),), delete=(("IN", ("?o", "?c")),),
                       display=("?o",), variant="from-container"),
        OperatorSchema("grasp", (("?o", ITEMS),),
                       (lit("ONFLOOR", "?o"), HAND_EMPTY),
                       add=(("HOLDING", ("?o",)),), delete=(("ONFLOOR", ("?o",)),),
                       variant="from-floor"),
        OperatorSchema("place", (("?o", ITEMS), ("?b", ("buckets",))),
                       (lit("HOLDING", "?o"),),
                       add=(("IN", ("?o", "?b")),), delete=(("HOLDING", ("?o",)),)),
        OperatorSchema("wipe", (("?c", ("cupboards",)), ("?cl", ("cloths",))),
                       (lit("OPENED", "?c"), lit("HOLDING", "?cl")),
                       delete=(("DUSTY", ("?c",)),), display=("?c",)),
    )


def covers_all_skills(schemas: Sequence[OperatorSchema]) -> bool:
    return set(SKILLS) <= {schema.skill for schema in schemas}
