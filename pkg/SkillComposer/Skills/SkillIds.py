from typing import NamedTuple, Tuple

from SkillComposer.Exceptions.Exceptions import UnknownSkillError
from SkillComposer.Goals.GoalObjects import SignedLiteral, SymbolicState, lit

SKILLS: Tuple[str, ...] = ("grasp", "place", "open", "close", "wipe")

# predicate -> skill whose detector grounds it
PREDICATE_DETECTORS = {"OPENED": "open", "DUSTY": "wipe", "HOLDING": "grasp", "IN": "place"}


def check_skill(name: str) -> str:
    if name not in SKILLS:
        raise UnknownSkillError(f"Unknown skill {name!r}; choose one of: {', '.join(SKILLS)}")
    return name


class Binding(NamedTuple):
    """A skill invocation bound to entities.

    grasp(o), place(o, b), open(c), close(c), wipe(c, cloth). `display` holds
    the arguments shown to users when it differs from `args`.
    """
    skill: str
    args: Tuple[str, ...]
    display: Tuple[str, ...] = ()

    @property
    def target(self) -> str:
        return self.args[0]

    def __str__(self):
        shown = self.display or self.args
        return f"{self.skill}({','.join(shown)})"


def success_literal(binding: Binding) -> SignedLiteral:
    skill = check_skill(binding.skill)
    target = binding.target
    if skill == "grasp":
        return lit("HOLDING", target)
    if skill == "place":
        return lit("IN", target, binding.args[1])
    if skill == "open":
        return lit("OPENED", target)
    if skill == "close":
        return lit("OPENED", target, positive=False)
    return lit("DUSTY", target, positive=False)


def skill_succeeded(binding: Binding, state: SymbolicState) -> bool:
    return state.holds(success_literal(binding))
