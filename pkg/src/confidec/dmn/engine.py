"""Condition evaluation and first-hit decisions over record batches.

Two evaluator backends execute the compiled opcode program: an optional C
extension and a pure-Python twin. The backend is chosen once at import.
Set CONFIDEC_KERNEL=c or CONFIDEC_KERNEL=py to force one; forcing the
compiled backend raises if the extension is not built.
"""

from __future__ import annotations

import os
from typing import List, Mapping, Sequence

from confidec.dmn import _kernel_py
from confidec.dmn.aggregate import evaluate_aggregate
from confidec.dmn.model import (
    AggregationSpec,
    BooleanIs,
    ColumnRelation,
    Condition,
    DecisionResult,
    DecisionTable,
    FieldValue,
    Interval,
    NumericEquals,
    Record,
    Relational,
    TextSet,
    Wildcard,
    is_number,
)
from confidec.dmn.program import (
    STATUS_ERROR,
    STATUS_NO_MATCH,
    build_matrix,
    check_aggregates,
    compile_table,
)
from confidec.errors import MissingFieldError, TypeMismatchError

try:
    from confidec.dmn import _speedups as _c_kernel
except ImportError:
    _c_kernel = None

_forced = os.environ.get("CONFIDEC_KERNEL", "").strip().lower()
if _forced == "py":
    _BACKEND = "py"
elif _forced == "c":
    if _c_kernel is None:
        raise ImportError("CONFIDEC_KERNEL=c but the compiled kernel is not built")
    _BACKEND = "c"
elif _forced:
    raise ImportError(f"CONFIDEC_KERNEL must be 'c' or 'py', not {_forced!r}")
else:
    _BACKEND = "c" if _c_kernel is not None else "py"


def kernel_backend() -> str:
    """Name of the active evaluator backend: "c" or "py"."""
    return _BACKEND


def eval_condition(
    cond: Condition,
    value: FieldValue,
    record: Record | Mapping[str, FieldValue] | None = None,
) -> bool:
    """Evaluate one condition against one value.

    record supplies the referenced column for ColumnRelation conditions;
    it may be a Record or a plain mapping. Raises TypeMismatchError when
    the value type does not fit the condition and MissingFieldError when a
    referenced column is absent.
    """
    if isinstance(cond, Wildcard):
        return True
    if isinstance(cond, Relational):
        _require_number(cond, value)
        return _compare(cond.op, value, cond.bound)
    if isinstance(cond, NumericEquals):
        _require_number(cond, value)
        return float(value) == cond.value
    if isinstance(cond, Interval):
        _require_number(cond, value)
        lo_ok = value > cond.lo if cond.lo_open else value >= cond.lo
        hi_ok = value < cond.hi if cond.hi_open else value <= cond.hi
        return lo_ok and hi_ok
    if isinstance(cond, TextSet):
        if not isinstance(value, str):
            raise TypeMismatchError(
                f"string condition applied to {type(value).__name__} value"
            )
        return value in cond.values
    if isinstance(cond, BooleanIs):
        if not isinstance(value, bool):
            raise TypeMismatchError(
                f"boolean condition applied to {type(value).__name__} value"
            )
        return value is cond.value
    if isinstance(cond, ColumnRelation):
        _require_number(cond, value)
        fields = record.fields if isinstance(record, Record) else (record or {})
        if cond.column not in fields:
            raise MissingFieldError(f"condition references absent field {cond.column!r}")
        ref = fields[cond.column]
        if not is_number(ref):
            raise TypeMismatchError(
                f"referenced column {cond.column!r} holds a {type(ref).__name__}"
            )
        return _compare(cond.op, value, ref * cond.factor)
    raise TypeError(f"not a condition: {cond!r}")


def _require_number(cond: Condition, value: object) -> None:
    if not is_number(value):
        raise TypeMismatchError(
            f"numeric condition applied to {type(value).__name__} value"
        )


def _compare(op: str, left: float, right: float) -> bool:
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    return left >= right


def decide_record(
    table: DecisionTable,
    record: Record,
    aggregates: Mapping[str, float] | None = None,
) -> DecisionResult:
    """Decide one record: first rule whose conditions all hold wins.

    Conditions are checked left to right; a missing field only raises if a
    non-wildcard condition actually reads it.
    """
    aggregates = aggregates or {}
    check_aggregates(table, aggregates)
    cond_cols = table.condition_columns
    overlay = dict(record.fields)
    overlay.update(aggregates)
    for r, rule in enumerate(table.rules):
        matched = True
        for cond, col in zip(rule.conditions, cond_cols):
            if isinstance(cond, Wildcard):
                continue
            if col.kind == "aggregateInput":
                value = aggregates[col.name]
            elif col.name in record.fields:
                value = record.fields[col.name]
            else:
                raise MissingFieldError(
                    f"record {record.id!r}: field {col.name!r} required by rule {r + 1}"
                )
            if not eval_condition(cond, value, overlay):
                matched = False
                break
        if matched:
            return DecisionResult(
                record_id=record.id, outcome="decided", values=rule.outputs, rule_index=r
            )
    return DecisionResult(record_id=record.id, outcome="noMatch")


def decide_records(
    table: DecisionTable,
    records: Sequence[Record],
    aggregates: Mapping[str, float] | None = None,
) -> List[DecisionResult]:
    """Decide a batch with precomputed aggregate values (kernel path)."""
    aggregates = aggregates or {}
    check_aggregates(table, aggregates)
    ct = compile_table(table)
    rows, bad = build_matrix(ct, records, aggregates)
    n = len(records)

    if _BACKEND == "c" and n:
        import numpy as np

        mat = np.asarray(rows, dtype=np.float64)
        if mat.ndim == 1:  # zero condition columns
            mat = mat.reshape(n, 0)
        status_arr = np.empty(n, dtype=np.intc)
        errcol_arr = np.empty(n, dtype=np.intc)
        _c_kernel.run_program(
            mat, ct.n_rules, **ct.numpy_arrays(),
            out_status=status_arr, out_errcol=errcol_arr,
        )
        status: Sequence[int] = status_arr.tolist()
        errcol: Sequence[int] = errcol_arr.tolist()
    else:
        status = [0] * n
        errcol = [0] * n
        _kernel_py.run_program(
            rows, ct.n_rules, ct.rule_starts, ct.op_code, ct.op_col, ct.op_a,
            ct.op_b, ct.op_flags, ct.op_ref, ct.op_len, ct.set_codes,
            status, errcol,
        )

    results = []
    for i, record in enumerate(records):
        st = status[i]
        if st == STATUS_ERROR:
            col = ct.slots[errcol[i]]
            reason = bad.get((i, errcol[i]), "missing")
            if reason == "type":
                raise TypeMismatchError(
                    f"record {record.id!r}: field {col.name!r} has the wrong type"
                )
            raise MissingFieldError(
                f"record {record.id!r}: field {col.name!r} required by a condition"
            )
        if st == STATUS_NO_MATCH:
            results.append(DecisionResult(record_id=record.id, outcome="noMatch"))
        else:
            results.append(
                DecisionResult(
                    record_id=record.id,
                    outcome="decided",
                    values=table.rules[st].outputs,
                    rule_index=st,
                )
            )
    return results


def decide_all(
    table: DecisionTable,
    records: Sequence[Record],
    agg_specs: Sequence[AggregationSpec] = (),
) -> List[DecisionResult]:
    """Evaluate aggregations over the batch, then decide every record."""
    aggregates = {spec.name: evaluate_aggregate(spec, records) for spec in agg_specs}
    return decide_records(table, records, aggregates)
