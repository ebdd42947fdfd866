"""The confidential compute unit.

A unit owns a signing identity certified by the authority, a deployed
code bundle (policies, tables, aggregations), and, once seeded, the data
seed from which every record key derives. It answers exactly two request
kinds through the gateway: provisioning datasets and running decisions.

The seed never leaves a unit except sealed to the platform or encrypted
to another attested unit's channel key.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Set, Tuple

from confidec.crypto.aead import Ciphertext, ae_decrypt, ae_encrypt
from confidec.crypto.certs import Certificate, issue_certificate, verify_certificate
from confidec.crypto.keys import (
    SEED_LEN,
    KeyAgreementKeyPair,
    SigningKeyPair,
    derive_channel_key,
    derive_record_key,
    verify,
)
from confidec.dmn.model import Record
from confidec.dmn.tables import (
    parse_aggregation_spec,
    parse_decision_table,
    parse_record,
    record_to_obj,
)
from confidec.enclave.attestation import (
    AttestationReport,
    ChannelCertificate,
    Evidence,
    generate_report,
    issue_channel_certificate,
    verify_ccu,
)
from confidec.enclave.measurement import CodeBundle, compute_measurement
from confidec.enclave.sealing import SealedBlob, seal, unseal
from confidec.errors import (
    AttestationError,
    CertificateError,
    ConfidecError,
    DecisionRejected,
    MalformedRequestError,
    ServiceBuildError,
    StorageError,
    TableValidationError,
    UnitCertificateError,
    UnknownFunctionError,
)
from confidec.gateway.wire import (
    RequestEnvelope,
    ResponseEnvelope,
    envelope_signing_bytes,
    response_aad,
)
from confidec.policy.alfa import parse_policy_descriptor
from confidec.service.builder import (
    REJECT_CERTIFICATE,
    DecisionRequest,
    DecisionService,
    build_desobj,
    handle_decision as run_decision_handler,
)
from confidec.storage.node import StorageNode
from confidec.util import b64, canonical_json, length_prefixed, unb64, utcnow

RANDOMIZER_LEN = 16
FULL_SUFFIX = ".full"

Clock = Callable[[], datetime]


def generate_seed() -> bytes:
    """Fresh 32-byte data seed."""
    return secrets.token_bytes(SEED_LEN)


def _record_aad(dataset: str, record_id: str) -> bytes:
    return b"confidec/record/v1:" + length_prefixed(
        dataset.encode("utf-8"), record_id.encode("utf-8")
    )


@dataclass(frozen=True)
class DatasetInfo:
    name: str
    address: str
    records: int
    stored_bytes: int

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "address": self.address,
            "records": self.records,
            "storedBytes": self.stored_bytes,
        }


@dataclass(frozen=True)
class ProvisionReceipt:
    data_name: str
    structure: str
    light: bool
    slim: DatasetInfo
    full: DatasetInfo

    def to_obj(self) -> dict:
        return {
            "dataName": self.data_name,
            "structure": self.structure,
            "light": self.light,
            "slim": self.slim.to_obj(),
            "full": self.full.to_obj(),
        }


class Ccu:
    def __init__(
        self,
        name: str,
        authority_verify_key: bytes,
        identity_cert: Certificate,
        signing_key: SigningKeyPair,
        platform_secret: bytes,
        storage: StorageNode,
        clock: Clock | None = None,
        allow_light_encryption: bool = False,
    ):
        self.name = name
        self.authority_verify_key = authority_verify_key
        self.identity_cert = identity_cert
        self._signing_key = signing_key
        self._platform_secret = platform_secret
        self._storage = storage
        self._clock = clock or utcnow
        self.allow_light_encryption = allow_light_encryption

        self._seed: bytes | None = None
        self._ka = KeyAgreementKeyPair.generate()
        self._channel_cert = issue_channel_certificate(
            self._signing_key, self.name, self._ka.public_bytes
        )
        self._bundle: CodeBundle | None = None
        self._measurement: bytes | None = None
        self._services: Dict[str, DecisionService] = {}

        self._busy = threading.Lock()
        self.handled: List[dict] = []
        self.last_trace: List[str] = []
        self._current_envelope: RequestEnvelope | None = None

    @classmethod
    def boot(
        cls,
        name: str,
        authority: SigningKeyPair,
        platform_secret: bytes,
        storage: StorageNode,
        clock: Clock | None = None,
        validity: timedelta = timedelta(days=365),
        allow_light_encryption: bool = False,
    ) -> "Ccu":
        """Create a unit with a fresh identity certified by the authority."""
        signing_key = SigningKeyPair.generate()
        now = (clock or utcnow)()
        cert = issue_certificate(
            authority,
            subject=name,
            attributes={"Role": "CCU", "Unit": name},
            subject_verify_key=signing_key.verify_key,
            not_before=now,
            not_after=now + validity,
        )
        return cls(
            name=name,
            authority_verify_key=authority.verify_key,
            identity_cert=cert,
            signing_key=signing_key,
            platform_secret=platform_secret,
            storage=storage,
            clock=clock,
            allow_light_encryption=allow_light_encryption,
        )

    # --- deployment -------------------------------------------------------

    def deploy(self, bundle: CodeBundle) -> bytes:
        """Install a code bundle; returns its measurement."""
        policies = parse_policy_descriptor(bundle.policy_text)
        tables = [parse_decision_table(doc) for doc in bundle.table_docs()]
        aggregations = [parse_aggregation_spec(doc) for doc in bundle.aggregation_docs()]
        tables_by_name = {t.name: t for t in tables}
        if len(tables_by_name) != len(tables):
            raise ServiceBuildError("bundle holds two tables with one name")

        services: Dict[str, DecisionService] = {}
        for policy in policies:
            table = tables_by_name.get(policy.func_name)
            if table is None:
                raise ServiceBuildError(f"no table for policy {policy.func_name!r}")
            services[policy.func_name] = build_desobj(policy, table, aggregations)

        measurement = compute_measurement(bundle)
        if self._measurement is not None and measurement != self._measurement and self._seed is not None:
            # a different code identity must not inherit the seed
            self._seed = None
            self._ka = KeyAgreementKeyPair.generate()
            self._channel_cert = issue_channel_certificate(
                self._signing_key, self.name, self._ka.public_bytes
            )
        self._bundle = bundle
        self._measurement = measurement
        self._services = services
        return self._measurement

    @property
    def measurement(self) -> bytes | None:
        return self._measurement

    def service(self, func_name: str) -> DecisionService:
        try:
            return self._services[func_name]
        except KeyError:
            raise UnknownFunctionError(f"no deployed function {func_name!r}") from None

    def service_names(self) -> List[str]:
        return sorted(self._services)

    # --- seed and channel ---------------------------------------------------

    @property
    def has_seed(self) -> bool:
        return self._seed is not None

    def install_seed(self, seed: bytes) -> None:
        """Adopt a data seed; the channel key pair becomes seed-derived."""
        if len(seed) != SEED_LEN:
            raise ConfidecError(f"seed must be {SEED_LEN} bytes")
        self._seed = seed
        self._ka = KeyAgreementKeyPair.from_seed(seed)
        self._channel_cert = issue_channel_certificate(
            self._signing_key, self.name, self._ka.public_bytes
        )

    def seal_seed(self) -> SealedBlob:
        """Seal the seed to this platform and the deployed measurement."""
        if self._seed is None:
            raise ConfidecError("unit has no seed to seal")
        if self._measurement is None:
            raise ConfidecError("unit has no deployed bundle to seal against")
        return seal(self._platform_secret, "measurement", self._measurement, self._seed)

    def load_sealed_seed(self, blob: SealedBlob) -> None:
        if self._measurement is None:
            raise ConfidecError("deploy a bundle before unsealing the seed")
        self.install_seed(unseal(self._platform_secret, self._measurement, blob))

    @property
    def channel_certificate(self) -> ChannelCertificate:
        return self._channel_cert

    def evidence(self) -> Evidence:
        """Identity certificate, channel certificate and a fresh report."""
        if self._measurement is None:
            raise ConfidecError("unit has no deployed bundle to report")
        report = generate_report(
            self._signing_key, self._measurement, self._channel_cert.digest()
        )
        return Evidence(
            unit_cert=self.identity_cert, channel_cert=self._channel_cert, report=report
        )

    def _channel_key(self, ephemeral_pub: bytes) -> bytes:
        return derive_channel_key(self._ka, ephemeral_pub)

    # --- gateway entry point -------------------------------------------------

    def handle(self, correlation_id: str, envelope: RequestEnvelope) -> ResponseEnvelope:
        """Process one envelope; called by the gateway worker only."""
        if not self._busy.acquire(blocking=False):
            raise RuntimeError("unit asked to handle two requests at once")
        started = time.monotonic_ns()
        try:
            try:
                if envelope.request_type == "provision":
                    obj = self.handle_provision(envelope).to_obj()
                else:
                    obj = self.handle_decision(envelope)
                body = ae_encrypt(
                    self._channel_key(envelope.ephemeral_pub),
                    canonical_json(obj),
                    aad=response_aad(correlation_id),
                )
                return ResponseEnvelope(correlation_id=correlation_id, status="ok", body=body)
            except ConfidecError as exc:
                return ResponseEnvelope(
                    correlation_id=correlation_id, status="error", error=str(exc)
                )
        finally:
            self.handled.append(
                {"ticket": correlation_id, "start": started, "end": time.monotonic_ns()}
            )
            self._busy.release()

    # --- provisioning -----------------------------------------------------------

    def handle_provision(self, envelope: RequestEnvelope) -> ProvisionReceipt:
        """Store a dataset twice: full, and slimmed to decision fields."""
        attrs = self._check_envelope_certificate(envelope)
        if attrs is None:
            raise DecisionRejected(REJECT_CERTIFICATE)
        payload = self._open_payload(envelope)

        try:
            data_name = payload["dataName"]
            structure = payload["structure"]
            raw_records = payload["records"]
        except (KeyError, TypeError) as exc:
            raise MalformedRequestError(f"provision payload missing key: {exc}") from exc
        light = bool(payload.get("lightEncryption", False))
        if light and not self.allow_light_encryption:
            raise MalformedRequestError(
                "light encryption is a benchmark mode and is not accepted here"
            )
        if self._seed is None:
            raise ConfidecError("unit has no data seed installed")
        if not isinstance(data_name, str) or not data_name or data_name.endswith(FULL_SUFFIX):
            raise MalformedRequestError(f"bad dataset name {data_name!r}")

        slim_fields = self._slim_fields(structure)
        if slim_fields is None:
            raise UnknownFunctionError(f"no deployed function reads structure {structure!r}")

        records = [parse_record(obj) for obj in raw_records]
        seen: Set[str] = set()
        for record in records:
            if record.id in seen:
                raise TableValidationError(f"duplicate record id {record.id!r}")
            seen.add(record.id)

        full = self._store_dataset(data_name + FULL_SUFFIX, structure, records, None, light)
        slim = self._store_dataset(data_name, structure, records, slim_fields, light)
        return ProvisionReceipt(
            data_name=data_name, structure=structure, light=light, slim=slim, full=full
        )

    def _slim_fields(self, structure: str) -> Optional[Set[str]]:
        """Fields decisions can touch for a structure, or None if unknown."""
        fields: Set[str] = set()
        found = False
        for service in self._services.values():
            if service.data_name != structure:
                continue
            found = True
            for col in service.table.input_columns:
                fields.add(col.name)
            for agg in service.aggregations:
                fields.add(agg.target_field)
                for atom in agg.filter:
                    fields.add(atom.field)
        return fields if found else None

    def _store_dataset(
        self,
        name: str,
        structure: str,
        records: Sequence[Record],
        field_filter: Optional[Set[str]],
        light: bool,
    ) -> DatasetInfo:
        entries = []
        total = 0
        shared_t = secrets.token_bytes(RANDOMIZER_LEN) if light else None
        for record in records:
            if field_filter is None:
                view = record
            else:
                view = Record(
                    record.id,
                    {k: v for k, v in record.fields.items() if k in field_filter},
                )
            t = shared_t if light else secrets.token_bytes(RANDOMIZER_LEN)
            key = derive_record_key(self._seed, t)
            blob = ae_encrypt(
                key, canonical_json(record_to_obj(view)), aad=_record_aad(name, record.id)
            ).to_bytes()
            address = self._storage.blobs.put(blob)
            total += len(blob)
            entry = {"id": record.id, "address": address}
            if not light:
                entry["t"] = b64(t)
            entries.append(entry)

        manifest: dict = {
            "dataset": name,
            "structure": structure,
            "light": light,
            "records": entries,
        }
        if light:
            manifest["t"] = b64(shared_t)
        manifest_bytes = canonical_json(manifest)
        address = self._storage.blobs.put(manifest_bytes)
        total += len(manifest_bytes)
        self._storage.names.publish(name, address)
        self._storage.chain.notarize(name, address)
        return DatasetInfo(
            name=name, address=address, records=len(records), stored_bytes=total
        )

    # --- decisions ---------------------------------------------------------------

    def handle_decision(self, envelope: RequestEnvelope) -> dict:
        """Run the guarded handler named in the envelope payload."""
        payload = self._open_payload(envelope)
        try:
            func_name = payload["funcName"]
            data_name = payload["dataName"]
        except (KeyError, TypeError) as exc:
            raise MalformedRequestError(f"decision payload missing key: {exc}") from exc

        service = self.service(func_name)
        request = DecisionRequest(
            certificate=envelope.client_cert, func_name=func_name, data_name=data_name
        )
        self.last_trace = []
        self._current_envelope = envelope
        try:
            return run_decision_handler(service, request, self)
        finally:
            self._current_envelope = None

    # HandlerEnv implementation ----------------------------------------------

    def check_certificate(self, certificate: Certificate) -> Mapping[str, str] | None:
        envelope = self._current_envelope
        if envelope is not None and not verify(
            certificate.subject_verify_key,
            envelope_signing_bytes(envelope.request_type, envelope.ephemeral_pub),
            envelope.ephemeral_sig,
        ):
            return None
        try:
            return verify_certificate(self.authority_verify_key, certificate, now=self._clock())
        except CertificateError:
            return None

    def decrypt_data(self, data_name: str, structure: str) -> List[Record]:
        if self._seed is None:
            raise ConfidecError("unit has no data seed installed")
        manifest = json.loads(self._storage.fetch(data_name))
        if manifest.get("structure") != structure:
            raise StorageError(
                f"dataset {data_name!r} holds {manifest.get('structure')!r} records, "
                f"but the function reads {structure!r}"
            )
        light = bool(manifest.get("light", False))
        shared_t = unb64(manifest["t"]) if light else None
        records = []
        for entry in manifest["records"]:
            blob = self._storage.blobs.get(entry["address"])
            t = shared_t if light else unb64(entry["t"])
            plaintext = ae_decrypt(
                derive_record_key(self._seed, t),
                Ciphertext.from_bytes(blob),
                aad=_record_aad(manifest["dataset"], entry["id"]),
            )
            records.append(parse_record(json.loads(plaintext)))
        return records

    def trace(self, step: str) -> None:
        self.last_trace.append(step)

    # --- envelope plumbing ------------------------------------------------------

    def _check_envelope_certificate(self, envelope: RequestEnvelope) -> Mapping[str, str] | None:
        """Authority check plus ephemeral-key binding, None when invalid."""
        try:
            attrs = verify_certificate(
                self.authority_verify_key, envelope.client_cert, now=self._clock()
            )
        except CertificateError:
            return None
        ok = verify(
            envelope.client_cert.subject_verify_key,
            envelope_signing_bytes(envelope.request_type, envelope.ephemeral_pub),
            envelope.ephemeral_sig,
        )
        return attrs if ok else None

    def _open_payload(self, envelope: RequestEnvelope) -> dict:
        plaintext = ae_decrypt(
            self._channel_key(envelope.ephemeral_pub),
            envelope.payload,
            aad=envelope.request_type.encode(),
        )
        try:
            payload = json.loads(plaintext)
        except ValueError as exc:
            raise MalformedRequestError("request payload is not JSON") from exc
        if not isinstance(payload, dict):
            raise MalformedRequestError("request payload must be an object")
        return payload


def exchange_seed(source: Ccu, target: Ccu, now: datetime | None = None) -> None:
    """Move the data seed from one unit to another after mutual attestation.

    Both units must run the same deployed bundle. Either attestation
    failure aborts the exchange before any seed material moves; on success
    both units derive identical channel key pairs from the shared seed.
    """
    if source.measurement is None or target.measurement is None:
        raise AttestationError("both units need a deployed bundle before a seed exchange")

    target_attrs = verify_ccu(
        target.evidence(), source.authority_verify_key, source.measurement, now=now
    )
    if target_attrs.get("Role") != "CCU":
        raise UnitCertificateError("seed receiver is not certified as a unit")
    source_attrs = verify_ccu(
        source.evidence(), target.authority_verify_key, target.measurement, now=now
    )
    if source_attrs.get("Role") != "CCU":
        raise UnitCertificateError("seed sender is not certified as a unit")

    if not source.has_seed:
        source.install_seed(generate_seed())

    ephemeral = KeyAgreementKeyPair.generate()
    key = derive_channel_key(ephemeral, target.channel_certificate.ka_public)
    sealed = ae_encrypt(key, source._seed, aad=b"confidec/seed-transfer/v1")
    target_key = derive_channel_key(target._ka, ephemeral.public_bytes)
    target.install_seed(ae_decrypt(target_key, sealed, aad=b"confidec/seed-transfer/v1"))
