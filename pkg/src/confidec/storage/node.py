"""A storage node bundles blobs, names and the notarization chain.

This is the untrusted persistence layer: everything it holds is either
ciphertext, a public name binding, or a chain entry.
"""

from __future__ import annotations

from pathlib import Path

from confidec.storage.chain import NotarizationLog
from confidec.storage.names import NameRegistry
from confidec.storage.store import BlobStore, DirectoryBlobStore, MemoryBlobStore


class StorageNode:
    def __init__(self, blobs: BlobStore, names: NameRegistry, chain: NotarizationLog):
        self.blobs = blobs
        self.names = names
        self.chain = chain

    @classmethod
    def in_memory(cls) -> "StorageNode":
        return cls(MemoryBlobStore(), NameRegistry(), NotarizationLog())

    @classmethod
    def at_directory(cls, root: str | Path) -> "StorageNode":
        root = Path(root)
        root.mkdir(parents=True, exist_ok=True)
        return cls(
            DirectoryBlobStore(root / "blobs"),
            NameRegistry(root / "names.jsonl"),
            NotarizationLog(root / "chain.jsonl"),
        )

    def publish(self, name: str, data: bytes) -> str:
        """Store a blob, bind the name to it, and notarize the binding."""
        address = self.blobs.put(data)
        self.names.publish(name, address)
        self.chain.notarize(name, address)
        return address

    def fetch(self, name: str) -> bytes:
        return self.blobs.get(self.names.resolve(name))
