from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from SkillComposer import Logger
from SkillComposer.Exceptions.Exceptions import (ContainmentError, GroundingError, UnknownCategoryError,
                                                 UnknownEntityError)
from .GoalObjects import And, Forall, Formula, GoalSpec, GroundedGoal, Literal, Not, SignedLiteral, is_variable

logger = Logger.get_logger(__name__)


def resolve_constant(name: str, universe: Mapping[str, Sequence[str]]) -> str:
    """Maps a constant argument to an entity.

    Entity names resolve to themselves; a category named in singular or plural
    form (``bucket``, ``buckets``) resolves to its only member.
    """
    for members in universe.values():
        if name in members:
            return name
    for category in (name, name + "s", name + "es"):
        members = universe.get(category)
        if members is None:
            continue
        if len(members) == 1:
            return members[0]
        raise UnknownEntityError(f"Constant {name!r} is ambiguous: category {category} has {len(members)} members")
    raise UnknownEntityError(f"Constant {name!r} names no entity or single-member category")


def quantifier_domain(node: Forall, env: Mapping[str, str], universe: Mapping[str, Sequence[str]],
                      containment: Mapping[str, str]) -> Tuple[str, ...]:
    if node.over_containment:
        container = env[node.category]
        return tuple(sorted(e for e, c in containment.items() if c == container))
    if node.category not in universe:
        if not universe:
            return ()  # an empty universe declares nothing, every quantifier is vacuous
        raise UnknownCategoryError(f"Category {node.category!r} is not in the universe {sorted(universe)}")
    return tuple(universe[node.category])


def bind_args(literal: Literal, env: Mapping[str, str], universe: Mapping[str, Sequence[str]]) -> Tuple[str, ...]:
    return tuple(env[arg] if is_variable(arg) else resolve_constant(arg, universe) for arg in literal.args)


def _check_containment(universe: Mapping[str, Sequence[str]], containment: Mapping[str, str]):
    entities = {e for members in universe.values() for e in members}
    for entity, container in containment.items():
        if container not in entities:
            raise ContainmentError(f"Container {container!r} of {entity!r} is not in the universe")


def _expand(node: Formula, positive: bool, env: Dict[str, str], universe, containment,
            out: List[SignedLiteral]):
    if isinstance(node, Literal):
        out.append(SignedLiteral(node.predicate, bind_args(node, env, universe), positive))
    elif isinstance(node, Not):
        _expand(node.child, not positive, env, universe, containment, out)
    elif not positive:
        raise GroundingError("Negated 'and'/'forall' would need a disjunction, which goals cannot express")
    elif isinstance(node, And):
        for child in node.children:
            _expand(child, True, env, universe, containment, out)
    else:
        for entity in quantifier_domain(node, env, universe, containment):
            env[node.variable] = entity
            _expand(node.body, True, env, universe, containment, out)
        env.pop(node.variable, None)


def ground_quantifiers(goal: GoalSpec, universe: Mapping[str, Sequence[str]],
                       containment: Mapping[str, str]) -> GroundedGoal:
    """Expands every quantifier into a conjunction of signed grounded literals.

    ``(forall (?o in ?c) ...)`` ranges over the entities `containment` maps to
    the entity bound to ``?c`` (initial containment, fixed at reset).

    Only containers are checked against `universe`: the contained entities may
    be objects the universe does not list. A container missing from the
    universe raises ContainmentError.
    """
    _check_containment(universe, containment)
    literals: List[SignedLiteral] = []
    _expand(goal.root, True, {}, universe, containment, literals)
    grounded = GroundedGoal(literals)
    logger.debug(f"Grounded goal into {len(grounded)} literals")
    return grounded
