from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from SkillComposer import Logger
from SkillComposer.Exceptions.Exceptions import MissingDetectorError
from SkillComposer.Goals.GoalObjects import Atom, SymbolicState
from SkillComposer.Kitchen import KitchenEnv
from SkillComposer.Kitchen.KitchenObjects import Observation
from SkillComposer.Skills.SkillIds import PREDICATE_DETECTORS
from SkillComposer.Skills.SkillModel import SkillModel, encode

logger = Logger.get_logger(__name__)

Query = Tuple[str, str]  # (predicate, entity the observation is masked on)


def grounding_queries(universe: Mapping[str, Sequence[str]]) -> List[Query]:
    """Every (predicate, entity) pair a detector is asked about."""
    containers = list(universe.get("cupboards", ())) + list(universe.get("drawers", ()))
    items = list(universe.get("objects", ())) + list(universe.get("cloths", ()))
    queries: List[Query] = [("OPENED", c) for c in containers]
    queries += [("DUSTY", c) for c in universe.get("cupboards", ())]
    queries += [("HOLDING", o) for o in items]
    if universe.get("buckets"):
        queries += [("IN", o) for o in items]
    return queries


def _bucket(universe: Mapping[str, Sequence[str]]) -> Optional[str]:
    buckets = universe.get("buckets", ())
    return buckets[0] if buckets else None


def _atom(predicate: str, entity: str, universe) -> Atom:
    if predicate == "IN":
        return "IN", (entity, _bucket(universe))
    return predicate, (entity,)


def ground_state(observations: Mapping[Query, Observation], models: Mapping[str, SkillModel],
                 universe: Mapping[str, Sequence[str]]) -> SymbolicState:
    """Asks each predicate's detector about its entity; closed world for everything else.

    OPENED, HOLDING and IN(., bucket) are asserted when the open, grasp and
    place detectors fire. The wipe detector recognises clean cupboards, so
    DUSTY is asserted when it does not fire.
    """
    facts: List[Atom] = []
    negatives: List[Atom] = []
    for (predicate, entity), obs in sorted(observations.items()):
        skill = PREDICATE_DETECTORS.get(predicate)
        model = models.get(skill) if skill is not None else None
        if model is None:
            raise MissingDetectorError(f"No detector grounds {predicate} (needs the {skill or '?'} skill model)")
        fires = bool(model.detector_prob(encode(model, obs)) > 0.5)
        asserted = not fires if predicate == "DUSTY" else fires
        (facts if asserted else negatives).append(_atom(predicate, entity, universe))
    return SymbolicState(facts, universe, negatives)


def complete_believed_containment(state: SymbolicState, containment: Mapping[str, str]) -> SymbolicState:
    """Adds IN(o, initial container) for items neither held nor believed in a bucket."""
    buckets = set(state.universe.get("buckets", ()))
    added: List[Atom] = []
    for item, container in sorted(containment.items()):
        if container in buckets or item not in state.entities:
            continue
        if ("HOLDING", (item,)) in state.facts:
            continue
        if any(pred == "IN" and args[0] == item and args[1] in buckets for pred, args in state.facts):
            continue
        added.append(("IN", (item, container)))
    return SymbolicState(state.facts | frozenset(added), state.universe, state.negatives - frozenset(added))


class OracleGrounder:
    """Perfect grounding read off the simulator."""

    def ground(self, env: KitchenEnv) -> SymbolicState:
        return env.symbolic_state()


class DetectorGrounder:
    """Grounding by the skill detectors, one masked rendering per query."""

    def __init__(self, models: Mapping[str, SkillModel]):
        self.models = dict(models)

    def observations(self, env: KitchenEnv) -> Dict[Query, Observation]:
        return {(predicate, entity): env.render(entity) for predicate, entity in grounding_queries(env.universe)}

    def ground(self, env: KitchenEnv) -> SymbolicState:
        believed = ground_state(self.observations(env), self.models, env.universe)
        return complete_believed_containment(believed, env.containment)
