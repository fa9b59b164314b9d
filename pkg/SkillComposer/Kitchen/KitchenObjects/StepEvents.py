from typing import NamedTuple


class StepEvents(NamedTuple):
    collision: bool = False
    dropped_unreachable: bool = False
    safety_stop_triggered: bool = False

    def any(self) -> bool:
        return self.collision or self.dropped_unreachable or self.safety_stop_triggered
