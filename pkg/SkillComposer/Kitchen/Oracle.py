from typing import List, Mapping, Optional, Sequence

from SkillComposer.Goals.GoalObjects import Atom, SymbolicState
from .KitchenObjects import OracleThresholds, SimState


def oracle_symbolic_state(state: SimState, universe: Mapping[str, Sequence[str]], containment: Mapping[str, str],
                          thresholds: Optional[OracleThresholds] = None) -> SymbolicState:
    """Ground-truth facts read straight off the simulator state.

    An item counts as in the bucket when its release point fell inside the
    bucket disc. `containment` is the initial containment map; it is accepted
    for symmetry with the learned estimator and does not change the facts.
    """
    thresholds = thresholds or OracleThresholds()
    facts: List[Atom] = []
    for name in state.scene.containers:
        if state.open[name] > thresholds.opened:
            facts.append(("OPENED", (name,)))
    for name, coverage in state.dust.items():
        if coverage > thresholds.dusty:
            facts.append(("DUSTY", (name,)))
    for name, item in state.items.items():
        if state.held == name:
            facts.append(("HOLDING", (name,)))
        elif item.container is not None:
            facts.append(("IN", (name, item.container)))
        else:
            facts.append(("ONFLOOR", (name,)))
    return SymbolicState(facts, universe)


def objects_left_inside(state: SimState, thresholds: Optional[OracleThresholds] = None) -> List[str]:
    """Items still sitting in a container that is closed."""
    thresholds = thresholds or OracleThresholds()
    return sorted(name for name, item in state.items.items()
                  if item.container in state.open and state.open[item.container] <= thresholds.opened)
