import os
from typing import Callable

import lz4.frame

from SkillComposer import Logger
from SkillComposer.BinaryReader import BinaryStream
from SkillComposer.Exceptions.Exceptions import CorruptFileError, StoreError
from SkillComposer.Versions import EStoreKind
from .StoreObjects import FileHeader, FSHAHash

logger = Logger.get_logger(__name__)


def pack_container(kind: EStoreKind, write_payload: Callable[[BinaryStream], None]) -> bytes:
    """Header followed by the lz4-framed payload written by `write_payload`."""
    payload = BinaryStream()
    write_payload(payload)
    compressed = lz4.frame.compress(payload.getvalue())
    out = BinaryStream()
    FileHeader(kind, len(compressed), FSHAHash.of(compressed)).write(out)
    out.writeBytes(compressed)
    return out.getvalue()


def unpack_container(data: bytes, kind: EStoreKind):
    """Verifies header and digest; returns (header, payload stream)."""
    reader = BinaryStream(data)
    header = FileHeader.read(reader, kind)
    if reader.remaining() != header.PayloadSize:
        raise CorruptFileError(f"Payload is {reader.remaining()} bytes, header says {header.PayloadSize}")
    compressed = reader.readBytes(header.PayloadSize)
    if FSHAHash.of(compressed) != header.PayloadHash:
        raise CorruptFileError("Payload digest mismatch")
    try:
        raw = lz4.frame.decompress(compressed)
    except RuntimeError as e:
        raise CorruptFileError(f"Cannot decompress payload: {e}") from e
    return header, BinaryStream(raw)


def write_file(path: str, data: bytes):
    tmp = f"{path}.tmp"
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(tmp, "wb") as f:
        f.write(data)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)


def read_file(path: str) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def attach_path(error: StoreError, path: str) -> StoreError:
    error.path = path
    return error
