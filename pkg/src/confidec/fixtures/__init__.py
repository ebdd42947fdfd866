"""Bundled decision models: running-example tables, policies, aggregations."""

from __future__ import annotations

import json
from importlib import resources

from confidec.dmn.model import AggregationSpec, DecisionTable
from confidec.dmn.tables import parse_aggregation_spec, parse_decision_table

TABLE_FILES = {
    "PatientPrioritizationWithAggr": "patient_prioritization.json",
    "Restock": "center_restock.json",
    "ChooseCarrier": "carrier_selection.json",
    "CardApproval": "card_approval.json",
    "ClaimsCoverage": "claims_excerpt.json",
}


def _read(filename: str) -> str:
    return resources.files(__package__).joinpath(filename).read_text("utf-8")


def load_table_doc(name: str) -> dict:
    try:
        return json.loads(_read(TABLE_FILES[name]))
    except KeyError:
        raise KeyError(f"no bundled table named {name!r}") from None


def load_table(name: str) -> DecisionTable:
    return parse_decision_table(load_table_doc(name))


def load_patient_aggregation_docs() -> list:
    return json.loads(_read("patient_aggregations.json"))


def load_patient_aggregations() -> list[AggregationSpec]:
    return [parse_aggregation_spec(doc) for doc in load_patient_aggregation_docs()]


def load_policy_text() -> str:
    return _read("policies.alfa")
