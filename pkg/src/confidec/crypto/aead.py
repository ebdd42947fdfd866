"""Authenticated encryption: AES-256-GCM with random 96-bit nonces."""

from __future__ import annotations

import secrets
from dataclasses import dataclass

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from confidec.errors import AuthenticationFailure

NONCE_LEN = 12
TAG_LEN = 16
KEY_LEN = 32


@dataclass(frozen=True)
class Ciphertext:
    """Nonce, encrypted body and authentication tag for one message."""

    nonce: bytes
    body: bytes
    tag: bytes

    def __post_init__(self):
        if len(self.nonce) != NONCE_LEN:
            raise ValueError(f"nonce must be {NONCE_LEN} bytes")
        if len(self.tag) != TAG_LEN:
            raise ValueError(f"tag must be {TAG_LEN} bytes")

    def to_bytes(self) -> bytes:
        """Flat wire form: nonce || tag || body."""
        return self.nonce + self.tag + self.body

    @classmethod
    def from_bytes(cls, blob: bytes) -> "Ciphertext":
        if len(blob) < NONCE_LEN + TAG_LEN:
            raise ValueError("ciphertext blob too short")
        return cls(
            nonce=blob[:NONCE_LEN],
            tag=blob[NONCE_LEN : NONCE_LEN + TAG_LEN],
            body=blob[NONCE_LEN + TAG_LEN :],
        )


def _check_key(key: bytes) -> None:
    if len(key) != KEY_LEN:
        raise ValueError(f"key must be {KEY_LEN} bytes, got {len(key)}")


def ae_encrypt(key: bytes, plaintext: bytes, aad: bytes = b"") -> Ciphertext:
    """Encrypt under a fresh random nonce, binding aad to the ciphertext."""
    _check_key(key)
    nonce = secrets.token_bytes(NONCE_LEN)
    sealed = AESGCM(key).encrypt(nonce, plaintext, aad)
    return Ciphertext(nonce=nonce, body=sealed[:-TAG_LEN], tag=sealed[-TAG_LEN:])


def ae_decrypt(key: bytes, ct: Ciphertext, aad: bytes = b"") -> bytes:
    """Decrypt and authenticate; any mismatch raises AuthenticationFailure."""
    _check_key(key)
    try:
        return AESGCM(key).decrypt(ct.nonce, ct.body + ct.tag, aad)
    except InvalidTag as exc:
        raise AuthenticationFailure("ciphertext failed authentication") from exc
