"""Table and aggregation document parsing, validation and round-trips."""

from datetime import date, datetime

import pytest

from confidec.dmn.model import ColumnRelation, TextSet
from confidec.dmn.tables import (
    aggregation_to_obj,
    parse_aggregation_spec,
    parse_decision_table,
    parse_record,
    record_to_obj,
    table_to_obj,
)
from confidec.errors import TableValidationError
from confidec.fixtures import (
    TABLE_FILES,
    load_patient_aggregation_docs,
    load_table,
    load_table_doc,
)


def _doc(columns, rules):
    return {"name": "T", "columns": columns, "rules": rules}


_NUM = {"name": "n", "kind": "input", "type": "number"}
_STR = {"name": "s", "kind": "input", "type": "string"}
_BOOL = {"name": "b", "kind": "input", "type": "boolean"}
_OUT = {"name": "o", "kind": "output", "type": "string"}


def test_parses_minimal_table():
    table = parse_decision_table(_doc(
        [_NUM, _OUT],
        [{"conditions": ["<10"], "outputs": ["low"]}],
    ))
    assert table.name == "T"
    assert len(table.rules) == 1
    assert [c.name for c in table.condition_columns] == ["n"]


def test_all_bundled_tables_parse():
    for name in TABLE_FILES:
        table = load_table(name)
        assert table.rules, name
        assert table.output_columns, name


def test_round_trip_through_obj():
    for name in TABLE_FILES:
        doc = load_table_doc(name)
        table = load_table(name)
        assert parse_decision_table(table_to_obj(table)) == table
        assert table_to_obj(parse_decision_table(doc)) == table_to_obj(table)


def test_duplicate_column_names_rejected():
    with pytest.raises(TableValidationError):
        parse_decision_table(_doc(
            [_NUM, dict(_NUM), _OUT],
            [{"conditions": ["-", "-"], "outputs": ["x"]}],
        ))


def test_output_column_required():
    with pytest.raises(TableValidationError):
        parse_decision_table(_doc([_NUM], [{"conditions": ["-"], "outputs": []}]))


def test_condition_count_must_match_columns():
    with pytest.raises(TableValidationError):
        parse_decision_table(_doc(
            [_NUM, _STR, _OUT],
            [{"conditions": ["-"], "outputs": ["x"]}],
        ))


def test_output_count_must_match_output_columns():
    with pytest.raises(TableValidationError):
        parse_decision_table(_doc(
            [_NUM, _OUT],
            [{"conditions": ["-"], "outputs": ["x", "y"]}],
        ))


@pytest.mark.parametrize("col,cell", [
    (_NUM, '"word"'),      # text set on a number column
    (_NUM, "true"),        # boolean on a number column
    (_STR, "<10"),         # relational on a string column
    (_STR, "true"),
    (_BOOL, "<10"),
    (_BOOL, '"yes"'),
    ({"name": "d", "kind": "input", "type": "datetime"}, "<10"),  # datetime only wildcards
])
def test_condition_type_admissibility(col, cell):
    with pytest.raises(TableValidationError):
        parse_decision_table(_doc(
            [col, _OUT],
            [{"conditions": [cell], "outputs": ["x"]}],
        ))


def test_column_relation_must_reference_existing_numeric_column():
    # unknown reference
    with pytest.raises(TableValidationError):
        parse_decision_table(_doc(
            [_NUM, _OUT],
            [{"conditions": ["<= Ghost * 0.5"], "outputs": ["x"]}],
        ))
    # reference to a string column
    with pytest.raises(TableValidationError):
        parse_decision_table(_doc(
            [_NUM, _STR, _OUT],
            [{"conditions": ["<= s * 0.5", "-"], "outputs": ["x"]}],
        ))
    # reference to an output column
    with pytest.raises(TableValidationError):
        parse_decision_table(_doc(
            [_NUM, {"name": "m", "kind": "output", "type": "number"}],
            [{"conditions": ["<= m * 0.5"], "outputs": [1]}],
        ))


def test_output_values_checked_against_output_type():
    with pytest.raises(TableValidationError):
        parse_decision_table(_doc(
            [_NUM, {"name": "m", "kind": "output", "type": "number"}],
            [{"conditions": ["-"], "outputs": ["not a number"]}],
        ))


def test_unknown_column_kind_rejected():
    with pytest.raises(TableValidationError):
        parse_decision_table(_doc(
            [{"name": "n", "kind": "sideways", "type": "number"}, _OUT],
            [{"conditions": ["-"], "outputs": ["x"]}],
        ))


def test_bundled_aggregations_parse_and_round_trip():
    for doc in load_patient_aggregation_docs():
        spec = parse_aggregation_spec(doc)
        assert parse_aggregation_spec(aggregation_to_obj(spec)) == spec


def test_aggregation_filters_reject_column_relations():
    with pytest.raises(TableValidationError):
        parse_aggregation_spec({
            "name": "a", "reducer": "mean", "targetField": "Age",
            "filter": [{"field": "Age", "cell": "<= Cap * 0.5"}],
        })


def test_aggregation_reducer_validated():
    with pytest.raises(TableValidationError):
        parse_aggregation_spec({
            "name": "a", "reducer": "median", "targetField": "Age", "filter": [],
        })


def test_json_native_records_round_trip_exactly():
    rec = parse_record({
        "id": "r1",
        "fields": {
            "n": 3, "x": 2.5, "s": "word", "b": True,
            "d": "2026-01-15", "ts": "2026-01-15T10:30:00",
        },
    })
    assert rec.fields["d"] == "2026-01-15"  # wire values stay JSON-native
    assert parse_record(record_to_obj(rec)) == rec


def test_date_objects_serialize_to_iso_strings():
    from confidec.dmn.model import Record

    rec = Record(id="r2", fields={"d": date(2026, 1, 15), "ts": datetime(2026, 1, 15, 10, 30)})
    obj = record_to_obj(rec)
    assert obj["fields"]["d"] == "2026-01-15"
    assert obj["fields"]["ts"] == "2026-01-15T10:30:00"


def test_record_requires_id():
    with pytest.raises(TableValidationError):
        parse_record({"fields": {"a": 1}})
    with pytest.raises(TableValidationError):
        parse_record({"id": "", "fields": {"a": 1}})


def test_fixture_cells_survive_reprint():
    table = load_table("Restock")
    cond = table.rules[0].conditions[0]
    assert cond == ColumnRelation(op="<=", column="MaxStorageCapacity", factor=0.1)
    patient = load_table("PatientPrioritizationWithAggr")
    assert patient.rules[0].conditions[1] == TextSet(values=("Asthma", "Diabetes"))
