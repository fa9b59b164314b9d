from SkillComposer.BinaryReader import BinaryStream
from SkillComposer.Exceptions.Exceptions import CorruptFileError, VersionMismatchError
from SkillComposer.Versions import EStoreKind, EStoreVersion
from .FSHAHash import FSHAHash


class FileHeader:
    STORE_FILE_MAGIC = 0x534B4331  # "SKC1"
    _SIZE = 4 + 4 + 4 + 8 + 20  # 40

    Version: EStoreVersion
    Kind: EStoreKind
    PayloadSize: int
    PayloadHash: FSHAHash

    def __init__(self, kind: EStoreKind, payload_size: int, payload_hash: FSHAHash,
                 version: EStoreVersion = EStoreVersion.LATEST) -> None:
        self.Version = version
        self.Kind = kind
        self.PayloadSize = payload_size
        self.PayloadHash = payload_hash

    @classmethod
    def read(cls, reader: BinaryStream, expected_kind: EStoreKind) -> 'FileHeader':
        if reader.size < cls._SIZE:
            raise CorruptFileError(f"File too short for a header ({reader.size} bytes)")
        magic = reader.readUInt32()
        if magic != cls.STORE_FILE_MAGIC:
            raise CorruptFileError(f"Bad magic {magic:#010x}")
        raw_version = reader.readUInt32()
        if raw_version != EStoreVersion.LATEST:
            raise VersionMismatchError(f"Unsupported store version {raw_version}, "
                                       f"expected {int(EStoreVersion.LATEST)}")
        raw_kind = reader.readUInt32()
        if raw_kind != expected_kind:
            raise CorruptFileError(f"File kind {raw_kind} is not {expected_kind.name}")
        payload_size = reader.readUInt64()
        payload_hash = FSHAHash(reader)
        return cls(EStoreKind(raw_kind), payload_size, payload_hash, EStoreVersion(raw_version))

    def write(self, writer: BinaryStream):
        writer.writeUInt32(self.STORE_FILE_MAGIC)
        writer.writeUInt32(int(self.Version))
        writer.writeUInt32(int(self.Kind))
        writer.writeUInt64(self.PayloadSize)
        self.PayloadHash.write(writer)
