import time
from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class MetricsRow:
    run_id: str
    phase: str
    metrics: Dict[str, Any] = field(default_factory=dict)
    timestamp: Optional[float] = None

    def GetValue(self) -> dict:
        return {
            "run_id": self.run_id,
            "timestamp": self.timestamp if self.timestamp is not None else time.time(),
            "phase": self.phase,
            "metrics": self.metrics,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'MetricsRow':
        return cls(data["run_id"], data["phase"], dict(data.get("metrics", {})), data.get("timestamp"))
