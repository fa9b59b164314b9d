import os
from io import BytesIO
from struct import pack, unpack, calcsize
from typing import Any, BinaryIO, Callable, Tuple, TypeVar, Union

import numpy as np

from SkillComposer import Logger
from SkillComposer.Exceptions.Exceptions import CorruptFileError

logging = Logger.get_logger(__name__)

T = TypeVar("T")


# noinspection PyTypeChecker
class BinaryStream:
    """Little-endian reader/writer over a file or an in-memory buffer.

    Every read checks that the requested number of bytes is actually present,
    so a truncated payload surfaces as `CorruptFileError` instead of a short
    read.
    """
    size = 0

    def __init__(self, fp: Union[BinaryIO, str, bytes, bytearray, None] = None, size: int = -1):
        if fp is None:
            self.base_stream = BytesIO()
            self.size = 0
        elif isinstance(fp, str):
            self.base_stream = open(fp, "rb")
            self.size = os.path.getsize(fp)
        elif isinstance(fp, (bytes, bytearray)):
            self.base_stream = BytesIO(fp)
            self.size = len(fp)
        else:
            self.base_stream = fp
            self.size = size

        self.close = self.base_stream.close
        self.tell = self.base_stream.tell

    def seek(self, offset, whence=1):
        return self.base_stream.seek(offset, whence)

    @property
    def position(self):
        return self.base_stream.tell()

    def remaining(self) -> int:
        return self.size - self.position

    def getvalue(self) -> bytes:
        return self.base_stream.getvalue()

    def readBytes(self, length: int) -> bytes:
        data = self.base_stream.read(length)
        if len(data) != length:
            raise CorruptFileError(f"Cannot read beyond end of stream (wanted {length}, got {len(data)})")
        return data

    def read(self, length=-1) -> bytes:
        if length >= 0:
            return self.readBytes(length)
        return self.base_stream.read()

    def readFlag(self) -> bool:
        val = self.readUInt8()
        if val not in [0, 1]:
            raise CorruptFileError("Invalid boolean value")
        return val != 0

    def readUInt8(self) -> int:
        return self.unpack('<B')

    def readInt32(self) -> int:
        return self.unpack('<i')

    def readUInt32(self) -> int:
        return self.unpack('<I')

    def readInt64(self) -> int:
        return self.unpack('<q')

    def readUInt64(self) -> int:
        return self.unpack('<Q')

    def readFloat(self) -> float:
        return self.unpack('<f')

    def readDouble(self) -> float:
        return self.unpack('<d')

    def readFString(self) -> str:
        length = self.readUInt32()
        if length == 0:
            return ""
        if length > self.remaining():
            raise CorruptFileError(f"String length {length} runs past end of stream")
        return self.readBytes(length).decode("utf-8")

    def readTArray(self, func: Callable[..., T], *args) -> Tuple[T, ...]:
        SerializeNum = self.readUInt32()
        return tuple(func(*args) for _ in range(SerializeNum))

    def readArray(self, dtype: str, shape: Tuple[int, ...]) -> np.ndarray:
        """Reads a little-endian array of `dtype` ("<f8", "u1", ...) with a known shape."""
        dt = np.dtype(dtype)
        count = int(np.prod(shape, dtype=np.int64)) if len(shape) else 1
        raw = self.readBytes(count * dt.itemsize)
        return np.frombuffer(raw, dtype=dt).reshape(shape).copy()

    def writeBytes(self, value: bytes):
        self.size += len(value)
        self.base_stream.write(value)

    def write(self, s: bytes) -> int:
        self.writeBytes(s)
        return len(s)

    def writeFlag(self, value: bool):
        self.pack('<B', 1 if value else 0)

    def writeUInt8(self, value):
        self.pack('<B', value)

    def writeInt32(self, value):
        self.pack('<i', value)

    def writeUInt32(self, value):
        self.pack('<I', value)

    def writeInt64(self, value):
        self.pack('<q', value)

    def writeUInt64(self, value):
        self.pack('<Q', value)

    def writeFloat(self, value):
        self.pack('<f', value)

    def writeDouble(self, value):
        self.pack('<d', value)

    def writeFString(self, value: str):
        data = value.encode("utf-8")
        self.writeUInt32(len(data))
        self.writeBytes(data)

    def writeTArray(self, items, func: Callable[[Any], None]):
        self.writeUInt32(len(items))
        for item in items:
            func(item)

    def writeArray(self, array: np.ndarray, dtype: str):
        self.writeBytes(np.ascontiguousarray(array, dtype=np.dtype(dtype)).tobytes())

    def pack(self, fmt, data):
        return self.writeBytes(pack(fmt, data))

    def unpack(self, fmt):
        return unpack(fmt, self.readBytes(calcsize(fmt)))[0]
