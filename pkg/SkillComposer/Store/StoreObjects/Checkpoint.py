import json
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from SkillComposer.BinaryReader import BinaryStream
from SkillComposer.Exceptions.Exceptions import CorruptFileError
from SkillComposer.Versions import EStoreVersion

NET_NAMES = ("encoder", "decoder", "detector", "q", "q_target")


@dataclass
class Checkpoint:
    skill: str
    manifest: dict
    steps: int = 0
    rng_state: Optional[dict] = None
    arrays: Dict[str, np.ndarray] = field(default_factory=dict)  # net name -> flat float64 parameters
    version: EStoreVersion = EStoreVersion.LATEST

    @classmethod
    def read(cls, reader: BinaryStream, version: EStoreVersion) -> 'Checkpoint':
        skill = reader.readFString()
        manifest = json.loads(reader.readFString())
        steps = reader.readUInt64()
        rng_text = reader.readFString()
        arrays = {}
        for _ in range(reader.readUInt32()):
            name = reader.readFString()
            length = reader.readUInt64()
            if length * 8 > reader.remaining():
                raise CorruptFileError(f"Parameter array {name} runs past end of payload")
            arrays[name] = reader.readArray("<f8", (length,))
        return cls(skill, manifest, steps, json.loads(rng_text) if rng_text else None, arrays, version)

    def write(self, writer: BinaryStream):
        writer.writeFString(self.skill)
        writer.writeFString(json.dumps(self.manifest, sort_keys=True))
        writer.writeUInt64(self.steps)
        writer.writeFString(json.dumps(self.rng_state, sort_keys=True) if self.rng_state is not None else "")
        writer.writeUInt32(len(self.arrays))
        for name in sorted(self.arrays):
            writer.writeFString(name)
            writer.writeUInt64(self.arrays[name].size)
            writer.writeArray(self.arrays[name], "<f8")

    def __eq__(self, other):
        if not isinstance(other, Checkpoint):
            return NotImplemented
        return (self.skill == other.skill and self.manifest == other.manifest and self.steps == other.steps
                and self.rng_state == other.rng_state and self.arrays.keys() == other.arrays.keys()
                and all(np.array_equal(self.arrays[k], other.arrays[k]) for k in self.arrays))
