"""Filtered reductions over record batches."""

from __future__ import annotations

import math
from typing import List, Sequence

from confidec.dmn.model import AggregationSpec, Record, Wildcard, is_number
from confidec.errors import AggregationError, TypeMismatchError


def _passes(spec: AggregationSpec, record: Record) -> bool:
    """True when the record satisfies every filter atom.

    An atom on an absent or wrongly typed field does not select the record;
    filters never raise.
    """
    from confidec.dmn.engine import eval_condition

    for atom in spec.filter:
        if isinstance(atom.condition, Wildcard):
            continue
        if atom.field not in record.fields:
            return False
        try:
            if not eval_condition(atom.condition, record.fields[atom.field], record):
                return False
        except TypeMismatchError:
            return False
    return True


def evaluate_aggregate(spec: AggregationSpec, records: Sequence[Record]) -> float:
    """Reduce the target field over the records passing the filter.

    sum of an empty selection is 0; mean, max and min of an empty selection
    raise AggregationError. The result does not depend on record order
    (sums use exact accumulation).
    """
    values: List[float] = []
    for record in records:
        if not _passes(spec, record):
            continue
        if spec.target_field not in record.fields:
            raise AggregationError(
                f"aggregation {spec.name!r}: record {record.id!r} lacks "
                f"target field {spec.target_field!r}"
            )
        value = record.fields[spec.target_field]
        if not is_number(value):
            raise AggregationError(
                f"aggregation {spec.name!r}: target field {spec.target_field!r} "
                f"of record {record.id!r} is not numeric"
            )
        values.append(float(value))

    if spec.reducer == "sum":
        return math.fsum(values)
    if not values:
        raise AggregationError(
            f"aggregation {spec.name!r}: empty selection has no {spec.reducer}"
        )
    if spec.reducer == "mean":
        return math.fsum(values) / len(values)
    if spec.reducer == "max":
        return max(values)
    return min(values)
