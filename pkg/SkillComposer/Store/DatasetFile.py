from typing import List, Sequence

from SkillComposer import Logger
from SkillComposer.BinaryReader import BinaryStream
from SkillComposer.Exceptions.Exceptions import CorruptFileError, DimensionInconsistencyError, StoreError
from SkillComposer.Versions import EStoreKind
from .StoreFile import attach_path, pack_container, read_file, unpack_container, write_file
from .StoreObjects import TrajectoryRecord

logger = Logger.get_logger(__name__)


def _common_shape(records: Sequence[TrajectoryRecord]):
    shape = None
    for record in records:
        for transition in record.transitions:
            obs = transition.observation
            current = (obs.num_images, obs.resolution, obs.proprio.shape[0])
            if shape is None:
                shape = current
            elif current != shape:
                raise DimensionInconsistencyError(f"Episode {record.episode_id} has observation shape {current}, "
                                                  f"earlier records have {shape}")
    return shape or (0, 0, 0)


def dump_dataset(records: Sequence[TrajectoryRecord]) -> bytes:
    shape = _common_shape(records)

    def write_payload(writer: BinaryStream):
        for value in shape:
            writer.writeUInt32(value)
        writer.writeTArray(list(records), lambda record: record.write(writer))
    return pack_container(EStoreKind.DATASET, write_payload)


def parse_dataset(data: bytes) -> List[TrajectoryRecord]:
    _, reader = unpack_container(data, EStoreKind.DATASET)
    shape = (reader.readUInt32(), reader.readUInt32(), reader.readUInt32())
    records = list(reader.readTArray(TrajectoryRecord.read, reader, shape))
    if reader.remaining():
        raise CorruptFileError(f"{reader.remaining()} trailing bytes after the last record")
    return records


def save_dataset(path: str, records: Sequence[TrajectoryRecord]) -> str:
    try:
        write_file(path, dump_dataset(records))
    except StoreError as e:
        raise attach_path(e, path)
    logger.info(f"Saved {len(records)} trajectories to {path}")
    return path


def load_dataset(path: str) -> List[TrajectoryRecord]:
    try:
        records = parse_dataset(read_file(path))
    except StoreError as e:
        raise attach_path(e, path)
    logger.info(f"Loaded {len(records)} trajectories from {path}")
    return records
