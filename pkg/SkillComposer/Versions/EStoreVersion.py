from enum import IntEnum


class EStoreVersion(IntEnum):
    INITIAL = 1
    QUANTIZED_OBSERVATIONS = 2  # uint8 images with a per-image scale
    RNG_STATE = 3  # checkpoints carry the generator state

    LAST = 4
    INVALID = 5
    LATEST = LAST - 1


class EStoreKind(IntEnum):
    DATASET = 1
    CHECKPOINT = 2
