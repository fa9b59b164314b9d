from dataclasses import dataclass
from typing import Dict, List, Tuple


@dataclass(frozen=True)
class ActivityDescriptor:
    """How many containers and items an activity puts into the kitchen.

    Objects are dealt round-robin over cupboards then drawers; every cupboard
    also holds one cloth.
    """
    name: str
    cupboards: int = 1
    drawers: int = 1
    objects: int = 2
    bucket: bool = True
    goal_file: str = ""

    def cupboard_names(self) -> List[str]:
        return [f"c{i + 1}" for i in range(self.cupboards)]

    def drawer_names(self) -> List[str]:
        return [f"d{i + 1}" for i in range(self.drawers)]

    def container_names(self) -> List[str]:
        return self.cupboard_names() + self.drawer_names()

    def object_names(self) -> List[str]:
        return [f"o{i + 1}" for i in range(self.objects)]

    def cloth_names(self) -> List[str]:
        return [f"cl{i + 1}" for i in range(self.cupboards)]

    def universe(self) -> Dict[str, Tuple[str, ...]]:
        return {
            "cupboards": tuple(self.cupboard_names()),
            "drawers": tuple(self.drawer_names()),
            "buckets": ("b1",) if self.bucket else (),
            "objects": tuple(self.object_names()),
            "cloths": tuple(self.cloth_names()),
        }

    def containment(self) -> Dict[str, str]:
        containers = self.container_names()
        placed: Dict[str, str] = {}
        if containers:
            for i, name in enumerate(self.object_names()):
                placed[name] = containers[i % len(containers)]
        for cloth, cupboard in zip(self.cloth_names(), self.cupboard_names()):
            placed[cloth] = cupboard
        return placed


CLEANING_KITCHEN = ActivityDescriptor("cleaning_kitchen", cupboards=1, drawers=1, objects=2,
                                      goal_file="goals/cleaning_kitchen.goal")
