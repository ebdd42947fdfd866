"""Lightweight attribute certificates.

A certificate binds a subject, its verification key and a flat attribute
map, signed by the issuing authority over the canonical JSON form of every
field except the signature itself.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from datetime import datetime
from typing import Mapping

from confidec.crypto.keys import SigningKeyPair, verify
from confidec.errors import (
    CertificateFormatError,
    CertificateSignatureError,
    CertificateValidityError,
)
from confidec.util import b64, format_rfc3339, parse_rfc3339, unb64, utcnow, canonical_json


@dataclass(frozen=True)
class Certificate:
    serial: str
    subject: str
    not_before: datetime
    not_after: datetime
    attributes: Mapping[str, str]
    subject_verify_key: bytes
    issuer_signature: bytes

    def signed_bytes(self) -> bytes:
        return _signed_bytes(
            self.serial,
            self.subject,
            self.not_before,
            self.not_after,
            self.attributes,
            self.subject_verify_key,
        )


def _signed_bytes(
    serial: str,
    subject: str,
    not_before: datetime,
    not_after: datetime,
    attributes: Mapping[str, str],
    subject_verify_key: bytes,
) -> bytes:
    return canonical_json(
        {
            "serial": serial,
            "subject": subject,
            "notBefore": format_rfc3339(not_before),
            "notAfter": format_rfc3339(not_after),
            "attributes": dict(attributes),
            "subjectVerifyKey": b64(subject_verify_key),
        }
    )


def issue_certificate(
    issuer: SigningKeyPair,
    subject: str,
    attributes: Mapping[str, str],
    subject_verify_key: bytes,
    not_before: datetime,
    not_after: datetime,
    serial: str | None = None,
) -> Certificate:
    """Sign a new certificate; serial defaults to a random 16-byte hex id."""
    if not_after <= not_before:
        raise ValueError("certificate validity window is empty")
    for key, value in attributes.items():
        if not isinstance(key, str) or not isinstance(value, str):
            raise ValueError("certificate attributes must map strings to strings")
    serial = serial or secrets.token_hex(16)
    payload = _signed_bytes(serial, subject, not_before, not_after, attributes, subject_verify_key)
    return Certificate(
        serial=serial,
        subject=subject,
        not_before=not_before,
        not_after=not_after,
        attributes=dict(attributes),
        subject_verify_key=subject_verify_key,
        issuer_signature=issuer.sign(payload),
    )


def verify_certificate(
    issuer_verify_key: bytes,
    cert: Certificate,
    now: datetime | None = None,
) -> Mapping[str, str]:
    """Check issuer signature and validity window; return the attributes.

    Raises CertificateSignatureError or CertificateValidityError; callers
    that need a boolean catch CertificateError.
    """
    now = now or utcnow()
    if not verify(issuer_verify_key, cert.signed_bytes(), cert.issuer_signature):
        raise CertificateSignatureError(
            f"certificate {cert.serial!r}: issuer signature does not verify"
        )
    if now < cert.not_before or now > cert.not_after:
        raise CertificateValidityError(
            f"certificate {cert.serial!r}: outside validity window at {format_rfc3339(now)}"
        )
    return dict(cert.attributes)


def certificate_to_obj(cert: Certificate) -> dict:
    return {
        "serial": cert.serial,
        "subject": cert.subject,
        "notBefore": format_rfc3339(cert.not_before),
        "notAfter": format_rfc3339(cert.not_after),
        "attributes": dict(cert.attributes),
        "subjectVerifyKey": b64(cert.subject_verify_key),
        "issuerSignature": b64(cert.issuer_signature),
    }


def certificate_from_obj(obj: Mapping) -> Certificate:
    try:
        return Certificate(
            serial=obj["serial"],
            subject=obj["subject"],
            not_before=parse_rfc3339(obj["notBefore"]),
            not_after=parse_rfc3339(obj["notAfter"]),
            attributes=dict(obj["attributes"]),
            subject_verify_key=unb64(obj["subjectVerifyKey"]),
            issuer_signature=unb64(obj["issuerSignature"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateFormatError(f"malformed certificate document: {exc}") from exc
