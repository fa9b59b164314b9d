from typing import Union

from Crypto.Hash import SHA1

from SkillComposer.BinaryReader import BinaryStream


class FSHAHash:
    __slots__ = ('Hash',)
    Hash: bytes

    def __init__(self, reader: Union[BinaryStream, bytes]) -> None:
        if isinstance(reader, (bytes, bytearray)):
            self.Hash = bytes(reader)
        else:
            self.Hash = reader.readBytes(20)

    @classmethod
    def of(cls, payload: bytes) -> 'FSHAHash':
        return cls(SHA1.new(payload).digest())

    def write(self, writer: BinaryStream):
        writer.writeBytes(self.Hash)

    def hex(self) -> str:
        return self.Hash.hex()

    def __eq__(self, other):
        return isinstance(other, FSHAHash) and self.Hash == other.Hash

    def __repr__(self):
        return f"<FSHAHash {self.hex()}>"
