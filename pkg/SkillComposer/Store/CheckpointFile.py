from typing import Optional

import numpy as np

from SkillComposer import Logger
from SkillComposer.Approx import Net
from SkillComposer.BinaryReader import BinaryStream
from SkillComposer.Exceptions.Exceptions import CorruptFileError, ManifestMismatchError, StoreError
from SkillComposer.Skills.SkillModel import SkillModel
from SkillComposer.Versions import EStoreKind
from .StoreFile import attach_path, pack_container, read_file, unpack_container, write_file
from .StoreObjects import NET_NAMES, Checkpoint

logger = Logger.get_logger(__name__)


def checkpoint_from_model(model: SkillModel, rng: Optional[np.random.Generator] = None) -> Checkpoint:
    arrays = {name: net.params.data.copy() for name, net in model.nets().items()}
    rng_state = rng.bit_generator.state if rng is not None else None
    return Checkpoint(model.skill, model.manifest(), model.steps, rng_state, arrays)


def model_from_checkpoint(checkpoint: Checkpoint) -> SkillModel:
    manifest = checkpoint.manifest
    nets = {}
    for name in NET_NAMES:
        layers = manifest.get("nets", {}).get(name)
        if layers is None or name not in checkpoint.arrays:
            raise ManifestMismatchError(f"Checkpoint lacks net {name!r}")
        net = Net([tuple(layer) for layer in layers])
        data = checkpoint.arrays[name]
        if data.shape != net.params.data.shape:
            raise ManifestMismatchError(f"Net {name!r} declares {net.params.data.size} parameters, "
                                        f"checkpoint holds {data.size}")
        nets[name] = net.with_params(net.params.with_data(data.copy()))
    return SkillModel(manifest["skill"], gamma=manifest["gamma"], bootstrap_gate=manifest["bootstrap_gate"],
                      recon_sigma=manifest["recon_sigma"], steps=checkpoint.steps, **nets)


def restore_rng(checkpoint: Checkpoint) -> Optional[np.random.Generator]:
    if checkpoint.rng_state is None:
        return None
    rng = np.random.default_rng()
    rng.bit_generator.state = checkpoint.rng_state
    return rng


def dump_checkpoint(checkpoint: Checkpoint) -> bytes:
    return pack_container(EStoreKind.CHECKPOINT, checkpoint.write)


def parse_checkpoint(data: bytes) -> Checkpoint:
    header, reader = unpack_container(data, EStoreKind.CHECKPOINT)
    checkpoint = Checkpoint.read(reader, header.Version)
    if reader.remaining():
        raise CorruptFileError(f"{reader.remaining()} trailing bytes after the checkpoint")
    return checkpoint


def save_checkpoint(path: str, checkpoint: Checkpoint) -> str:
    try:
        write_file(path, dump_checkpoint(checkpoint))
    except StoreError as e:
        raise attach_path(e, path)
    logger.info(f"Saved {checkpoint.skill} checkpoint at step {checkpoint.steps} to {path}")
    return path


def load_checkpoint(path: str, manifest: Optional[dict] = None) -> Checkpoint:
    """Reads a checkpoint; with `manifest`, the stored architecture must match it exactly."""
    try:
        checkpoint = parse_checkpoint(read_file(path))
        if manifest is not None and checkpoint.manifest != manifest:
            raise ManifestMismatchError(f"Checkpoint architecture differs from the expected one "
                                        f"(skill {checkpoint.skill})")
    except StoreError as e:
        raise attach_path(e, path)
    logger.info(f"Loaded {checkpoint.skill} checkpoint from {path}")
    return checkpoint
