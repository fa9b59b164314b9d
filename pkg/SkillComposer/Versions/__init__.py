from .EStoreVersion import EStoreVersion, EStoreKind
