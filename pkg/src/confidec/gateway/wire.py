"""Wire envelopes exchanged through the gateway.

Requests carry the client certificate, a signed ephemeral key-agreement
public key, and the payload encrypted under the derived channel key. The
gateway forwards envelopes without being able to open them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from confidec.crypto.aead import Ciphertext
from confidec.crypto.certs import Certificate, certificate_from_obj, certificate_to_obj
from confidec.util import b64, unb64

REQUEST_TYPES = ("provision", "decision")


def envelope_signing_bytes(request_type: str, ephemeral_pub: bytes) -> bytes:
    """Bytes a client signs to bind its ephemeral key to the request."""
    return b"confidec/envelope/v1:" + request_type.encode("utf-8") + b":" + ephemeral_pub


@dataclass(frozen=True)
class RequestEnvelope:
    request_type: str
    client_cert: Certificate
    ephemeral_pub: bytes
    ephemeral_sig: bytes
    payload: Ciphertext

    def __post_init__(self):
        if self.request_type not in REQUEST_TYPES:
            raise ValueError(f"bad request type {self.request_type!r}")
        if len(self.ephemeral_pub) != 32:
            raise ValueError("ephemeral public key must be 32 bytes")


@dataclass(frozen=True)
class ResponseEnvelope:
    correlation_id: str
    status: str  # "ok" | "error"
    body: Ciphertext | None = None
    error: str | None = None

    def __post_init__(self):
        if self.status not in ("ok", "error"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "ok" and self.body is None:
            raise ValueError("ok response needs a body")
        if self.status == "error" and not self.error:
            raise ValueError("error response needs an error message")


def request_to_obj(env: RequestEnvelope) -> dict:
    return {
        "requestType": env.request_type,
        "clientCert": certificate_to_obj(env.client_cert),
        "ephemeralPub": b64(env.ephemeral_pub),
        "ephemeralSig": b64(env.ephemeral_sig),
        "payload": {
            "nonce": b64(env.payload.nonce),
            "body": b64(env.payload.body),
            "tag": b64(env.payload.tag),
        },
    }


def request_from_obj(obj: Mapping) -> RequestEnvelope:
    payload = obj["payload"]
    return RequestEnvelope(
        request_type=obj["requestType"],
        client_cert=certificate_from_obj(obj["clientCert"]),
        ephemeral_pub=unb64(obj["ephemeralPub"]),
        ephemeral_sig=unb64(obj["ephemeralSig"]),
        payload=Ciphertext(
            nonce=unb64(payload["nonce"]),
            body=unb64(payload["body"]),
            tag=unb64(payload["tag"]),
        ),
    )


def response_to_obj(env: ResponseEnvelope) -> dict:
    obj: dict = {"correlationId": env.correlation_id, "status": env.status}
    if env.body is not None:
        obj["body"] = {
            "nonce": b64(env.body.nonce),
            "body": b64(env.body.body),
            "tag": b64(env.body.tag),
        }
    if env.error is not None:
        obj["error"] = env.error
    return obj


def response_from_obj(obj: Mapping) -> ResponseEnvelope:
    body = None
    if "body" in obj:
        raw = obj["body"]
        body = Ciphertext(nonce=unb64(raw["nonce"]), body=unb64(raw["body"]), tag=unb64(raw["tag"]))
    return ResponseEnvelope(
        correlation_id=obj["correlationId"],
        status=obj["status"],
        body=body,
        error=obj.get("error"),
    )


def response_aad(correlation_id: str) -> bytes:
    return b"confidec/response/v1:" + correlation_id.encode("utf-8")
