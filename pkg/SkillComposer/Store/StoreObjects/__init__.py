from .Checkpoint import NET_NAMES, Checkpoint
from .FileHeader import FileHeader
from .FSHAHash import FSHAHash
from .MetricsRow import MetricsRow
from .QuantizedObservation import QuantizedObservation
from .TrajectoryRecord import RecordedTransition, TrajectoryRecord
