"""JSON parsing, validation and serialization for tables and records."""

from __future__ import annotations

from typing import Any, Mapping, Sequence

from confidec.dmn.cells import format_condition, parse_condition
from confidec.dmn.model import (
    AggregationSpec,
    BooleanIs,
    ColumnRelation,
    ColumnSpec,
    Condition,
    DecisionTable,
    FilterAtom,
    Interval,
    NumericEquals,
    Record,
    Relational,
    Rule,
    TextSet,
    Wildcard,
    is_number,
)
from confidec.errors import TableValidationError

_NUMERIC_CONDS = (Relational, NumericEquals, Interval, ColumnRelation)


def _admissible(cond: Condition, column: ColumnSpec, by_name: Mapping[str, ColumnSpec]) -> str | None:
    """Return an error string if cond cannot apply to column, else None."""
    if isinstance(cond, Wildcard):
        return None
    vt = column.value_type
    if vt == "number":
        if not isinstance(cond, _NUMERIC_CONDS):
            return "only numeric conditions fit a number column"
        if isinstance(cond, ColumnRelation):
            ref = by_name.get(cond.column)
            if ref is None:
                return f"references unknown column {cond.column!r}"
            if ref.kind == "output":
                return f"references output column {cond.column!r}"
            if ref.value_type != "number":
                return f"references non-numeric column {cond.column!r}"
        return None
    if vt == "string":
        if not isinstance(cond, TextSet):
            return "only string sets fit a string column"
        return None
    if vt == "boolean":
        if not isinstance(cond, BooleanIs):
            return "only true/false fit a boolean column"
        return None
    return "datetime columns admit only the wildcard"


def _check_output_value(value: Any, column: ColumnSpec) -> str | None:
    vt = column.value_type
    if vt == "number" and not is_number(value):
        return "expected a number"
    if vt == "string" and not isinstance(value, str):
        return "expected a string"
    if vt == "boolean" and not isinstance(value, bool):
        return "expected a boolean"
    if vt == "datetime" and not isinstance(value, str):
        return "expected a datetime string"
    return None


def parse_decision_table(doc: Mapping[str, Any]) -> DecisionTable:
    """Build a validated DecisionTable from its JSON document."""
    try:
        name = doc["name"]
        raw_columns = doc["columns"]
        raw_rules = doc["rules"]
    except (KeyError, TypeError) as exc:
        raise TableValidationError(f"table document missing key: {exc}") from exc
    if not isinstance(name, str) or not name:
        raise TableValidationError("table name must be a non-empty string")

    columns = []
    seen = set()
    for i, rc in enumerate(raw_columns):
        try:
            col = ColumnSpec(name=rc["name"], kind=rc["kind"], value_type=rc["type"])
        except (KeyError, TypeError, ValueError) as exc:
            raise TableValidationError(f"column {i}: {exc}") from exc
        if col.name in seen:
            raise TableValidationError(f"duplicate column name {col.name!r}")
        seen.add(col.name)
        columns.append(col)

    cond_cols = [c for c in columns if c.kind != "output"]
    out_cols = [c for c in columns if c.kind == "output"]
    if not out_cols:
        raise TableValidationError(f"table {name!r} has no output column")
    by_name = {c.name: c for c in columns}

    rules = []
    for r, raw in enumerate(raw_rules):
        try:
            cells: Sequence[str] = raw["conditions"]
            outputs: Sequence[Any] = raw["outputs"]
        except (KeyError, TypeError) as exc:
            raise TableValidationError(f"rule {r}: missing key {exc}") from exc
        if len(cells) != len(cond_cols):
            raise TableValidationError(
                f"rule {r}: {len(cells)} conditions for {len(cond_cols)} condition columns"
            )
        if len(outputs) != len(out_cols):
            raise TableValidationError(
                f"rule {r}: {len(outputs)} outputs for {len(out_cols)} output columns"
            )
        conds = []
        for cell, col in zip(cells, cond_cols):
            cond = parse_condition(cell)
            problem = _admissible(cond, col, by_name)
            if problem:
                raise TableValidationError(f"rule {r}, column {col.name!r}: {problem}")
            conds.append(cond)
        for value, col in zip(outputs, out_cols):
            problem = _check_output_value(value, col)
            if problem:
                raise TableValidationError(f"rule {r}, output {col.name!r}: {problem}")
        rules.append(Rule(conditions=tuple(conds), outputs=tuple(outputs)))

    return DecisionTable(name=name, columns=tuple(columns), rules=tuple(rules))


def table_to_obj(table: DecisionTable) -> dict:
    """Serialize back to the JSON document shape accepted by the parser."""
    return {
        "name": table.name,
        "columns": [
            {"name": c.name, "kind": c.kind, "type": c.value_type} for c in table.columns
        ],
        "rules": [
            {
                "conditions": [format_condition(c) for c in rule.conditions],
                "outputs": list(rule.outputs),
            }
            for rule in table.rules
        ],
    }


def parse_aggregation_spec(doc: Mapping[str, Any]) -> AggregationSpec:
    """Build a validated AggregationSpec from its JSON document."""
    try:
        name = doc["name"]
        raw_filter = doc["filter"]
        target = doc["targetField"]
        reducer = doc["reducer"]
    except (KeyError, TypeError) as exc:
        raise TableValidationError(f"aggregation document missing key: {exc}") from exc
    if not isinstance(name, str) or not name:
        raise TableValidationError("aggregation name must be a non-empty string")
    if not isinstance(target, str) or not target:
        raise TableValidationError(f"aggregation {name!r}: bad targetField")
    atoms = []
    for i, raw in enumerate(raw_filter):
        try:
            field = raw["field"]
            cell = raw["cell"]
        except (KeyError, TypeError) as exc:
            raise TableValidationError(f"aggregation {name!r}, atom {i}: {exc}") from exc
        cond = parse_condition(cell)
        if isinstance(cond, ColumnRelation):
            raise TableValidationError(
                f"aggregation {name!r}, atom {i}: column references not allowed in filters"
            )
        atoms.append(FilterAtom(field=field, condition=cond))
    try:
        return AggregationSpec(name=name, filter=tuple(atoms), target_field=target, reducer=reducer)
    except ValueError as exc:
        raise TableValidationError(str(exc)) from exc


def aggregation_to_obj(spec: AggregationSpec) -> dict:
    return {
        "name": spec.name,
        "filter": [
            {"field": atom.field, "cell": format_condition(atom.condition)}
            for atom in spec.filter
        ],
        "targetField": spec.target_field,
        "reducer": spec.reducer,
    }


def parse_record(doc: Mapping[str, Any]) -> Record:
    """Build a Record from {"id": ..., "fields": {...}}."""
    try:
        rid = doc["id"]
        fields = doc["fields"]
    except (KeyError, TypeError) as exc:
        raise TableValidationError(f"record document missing key: {exc}") from exc
    if not isinstance(rid, str):
        raise TableValidationError("record id must be a string")
    if not isinstance(fields, Mapping):
        raise TableValidationError(f"record {rid!r}: fields must be an object")
    try:
        return Record(id=rid, fields=dict(fields))
    except ValueError as exc:
        raise TableValidationError(f"record {rid!r}: {exc}") from exc


def record_to_obj(record: Record) -> dict:
    fields = {}
    for name, value in record.fields.items():
        if hasattr(value, "isoformat"):
            fields[name] = value.isoformat()
        else:
            fields[name] = value
    return {"id": record.id, "fields": fields}
