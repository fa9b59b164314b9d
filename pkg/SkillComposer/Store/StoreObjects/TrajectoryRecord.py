import json
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from SkillComposer.BinaryReader import BinaryStream
from SkillComposer.Kitchen.KitchenObjects import ACTION_DIM, Observation, StepEvents
from .QuantizedObservation import QuantizedObservation


@dataclass
class RecordedTransition:
    observation: QuantizedObservation  # observation the action was taken in
    action: np.ndarray
    label: bool  # oracle success of the next observation
    events: StepEvents = StepEvents()

    def __eq__(self, other):
        if not isinstance(other, RecordedTransition):
            return NotImplemented
        return (self.observation == other.observation and np.array_equal(self.action, other.action)
                and self.label == other.label and tuple(self.events) == tuple(other.events))


@dataclass
class TrajectoryRecord:
    episode_id: int
    skill: str
    config: dict  # EnvConfig.GetValue()
    transitions: List[RecordedTransition] = field(default_factory=list)

    def append(self, obs: Observation, action: np.ndarray, label: bool, events: Optional[StepEvents] = None):
        self.transitions.append(RecordedTransition(QuantizedObservation.from_observation(obs),
                                                   np.asarray(action, dtype=np.float64).copy(), bool(label),
                                                   events if events is not None else StepEvents()))

    def __len__(self):
        return len(self.transitions)

    @property
    def shape(self):
        """(images per observation, resolution, proprio length) or None when empty."""
        if not self.transitions:
            return None
        obs = self.transitions[0].observation
        return obs.num_images, obs.resolution, obs.proprio.shape[0]

    @classmethod
    def read(cls, reader: BinaryStream, shape) -> 'TrajectoryRecord':
        episode_id = reader.readInt64()
        skill = reader.readFString()
        config = json.loads(reader.readFString())
        count = reader.readUInt32()
        transitions = []
        for _ in range(count):
            obs = QuantizedObservation.read(reader, *shape)
            action = reader.readArray("<f8", (ACTION_DIM,))
            label = reader.readFlag()
            events = StepEvents(reader.readFlag(), reader.readFlag(), reader.readFlag())
            transitions.append(RecordedTransition(obs, action, label, events))
        return cls(episode_id, skill, config, transitions)

    def write(self, writer: BinaryStream):
        writer.writeInt64(self.episode_id)
        writer.writeFString(self.skill)
        writer.writeFString(json.dumps(self.config, sort_keys=True))
        writer.writeUInt32(len(self.transitions))
        for transition in self.transitions:
            transition.observation.write(writer)
            writer.writeArray(transition.action, "<f8")
            writer.writeFlag(transition.label)
            for flag in transition.events:
                writer.writeFlag(flag)
