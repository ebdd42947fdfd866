"""Build decision services from a policy, a table and aggregation specs.

A service couples one guarded function with everything needed to run it:
the access condition, the decision table, and the aggregations it may
evaluate, in policy declaration order. handle_decision executes the fixed
handler skeleton; emit_audit_script prints that skeleton for review.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Protocol, Sequence, Tuple

from confidec.crypto.certs import Certificate
from confidec.dmn.aggregate import evaluate_aggregate
from confidec.dmn.engine import decide_records
from confidec.dmn.model import AggregationSpec, DecisionTable, Record
from confidec.errors import DecisionRejected, ServiceBuildError, UnknownFunctionError
from confidec.policy.alfa import format_expr
from confidec.policy.model import PolicySpec, check_access

REJECT_CERTIFICATE = "Invalid certificate"
REJECT_POLICY = "Access policy not satisfied"


@dataclass(frozen=True)
class DecisionService:
    spec: PolicySpec
    table: DecisionTable
    aggregations: Tuple[AggregationSpec, ...]
    include_aggregates: bool = False

    @property
    def func_name(self) -> str:
        return self.spec.func_name

    @property
    def data_name(self) -> str:
        return self.spec.data_name


@dataclass(frozen=True)
class DecisionRequest:
    certificate: Certificate
    func_name: str
    data_name: str


class HandlerEnv(Protocol):
    """Capabilities the enclosing unit grants to a decision handler."""

    def check_certificate(self, certificate: Certificate) -> Mapping[str, str] | None:
        """Attributes of a valid certificate, or None."""

    def decrypt_data(self, data_name: str, structure: str) -> Sequence[Record]:
        """Fetch and decrypt the records published under data_name."""

    def trace(self, step: str) -> None:
        """Record that a handler step ran."""


def build_desobj(
    policy: PolicySpec,
    table: DecisionTable,
    agg_specs: Sequence[AggregationSpec],
    include_aggregates: bool = False,
) -> DecisionService:
    """Validate that policy, table and aggregations fit, and bind them."""
    if policy.func_name != table.name:
        raise ServiceBuildError(
            f"policy guards {policy.func_name!r} but the table is {table.name!r}"
        )
    if policy.action != "decide":
        raise ServiceBuildError(f"policy action must be decide, not {policy.action!r}")

    by_name: Dict[str, AggregationSpec] = {}
    for spec in agg_specs:
        if spec.name in by_name:
            raise ServiceBuildError(f"aggregation {spec.name!r} defined twice")
        by_name[spec.name] = spec

    ordered: List[AggregationSpec] = []
    for name in policy.agg_names:
        if name not in by_name:
            raise ServiceBuildError(f"policy names unknown aggregation {name!r}")
        ordered.append(by_name[name])

    table_aggs = {c.name for c in table.aggregate_columns}
    declared = set(policy.agg_names)
    if table_aggs != declared:
        missing = sorted(table_aggs - declared)
        extra = sorted(declared - table_aggs)
        raise ServiceBuildError(
            f"table {table.name!r} aggregate inputs do not match the policy "
            f"(missing {missing}, extra {extra})"
        )

    return DecisionService(
        spec=policy,
        table=table,
        aggregations=tuple(ordered),
        include_aggregates=include_aggregates,
    )


def handle_decision(service: DecisionService, request: DecisionRequest, env: HandlerEnv) -> dict:
    """Run the guarded handler for one decision request.

    Steps run in a fixed order; certificate and policy failures raise
    DecisionRejected with the canonical message before any data is read.
    """
    env.trace("ParseDecisionReq")
    if request.func_name != service.func_name:
        raise UnknownFunctionError(
            f"handler for {service.func_name!r} got a request for {request.func_name!r}"
        )

    env.trace("CheckCertificate")
    attributes = env.check_certificate(request.certificate)
    if attributes is None:
        raise DecisionRejected(REJECT_CERTIFICATE)

    env.trace("CheckCallability")
    if not check_access(service.spec.condition, attributes):
        raise DecisionRejected(REJECT_POLICY)

    env.trace("DecryptData")
    records = env.decrypt_data(request.data_name, service.data_name)

    aggregates: Dict[str, float] = {}
    for agg in service.aggregations:
        env.trace(f"Aggregate {agg.name}")
        aggregates[agg.name] = evaluate_aggregate(agg, records)

    env.trace("Decide")
    results = decide_records(service.table, records, aggregates)

    env.trace("Return")
    payload: dict[str, Any] = {
        "funcName": service.func_name,
        "results": [
            {
                "recordId": r.record_id,
                "outcome": r.outcome,
                "values": list(r.values),
            }
            for r in results
        ],
    }
    if service.include_aggregates:
        payload["aggregates"] = dict(aggregates)
    return payload


def emit_audit_script(policy: PolicySpec) -> str:
    """Render the handler a policy compiles to, for offline review.

    Deterministic: equal policies always print the same script.
    """
    name = policy.func_name
    lines = [
        f"func {name}Handler(payload) {{",
        "    (cert, func, dataName) <- DecisionLib.ParseDecisionReq(payload)",
        "    (certVal, attr) <- DecisionLib.CheckCertificate(cert)",
        "    if certVal == true {",
        f"        calVal <- DecisionLib.CheckCallability({format_expr(policy.condition)}, attr)",
        "        if calVal == true {",
        f"            data <- DecisionLib.DecryptData(dataName, {policy.data_name})",
        "            aggrInputs <- []",
    ]
    for agg_name in policy.agg_names:
        lines.append(f"            aggrVar <- DecisionLib.Aggregate({agg_name}, data)")
        lines.append("            aggrInputs <- Append(aggrInputs, aggrVar)")
    lines += [
        f"            decision <- {name}(data, aggrInputs)",
        "            return decision",
        "        } else {",
        f'            except "{REJECT_POLICY}"',
        "        }",
        "    } else {",
        f'        except "{REJECT_CERTIFICATE}"',
        "    }",
        "}",
    ]
    return "\n".join(lines) + "\n"
