"""The compiled evaluator and its pure-Python twin must agree bit for bit."""

import random
import subprocess
import sys

import pytest

from confidec.dmn import _kernel_py
from confidec.dmn.model import Record
from confidec.dmn.program import build_matrix, compile_table
from confidec.dmn.tables import parse_decision_table

try:
    from confidec.dmn import _speedups
except ImportError:
    _speedups = None

needs_extension = pytest.mark.skipif(_speedups is None, reason="compiled kernel not built")

_WORDS = ("oak", "pine", "fir", "elm", "yew")


def _random_table(rng, n_cols, n_rules):
    kinds = [rng.choice(["number", "string", "boolean", "number"]) for _ in range(n_cols)]
    columns = [{"name": f"c{i}", "kind": "input", "type": kinds[i]} for i in range(n_cols)]
    numeric = [f"c{i}" for i, k in enumerate(kinds) if k == "number"]
    columns.append({"name": "o", "kind": "output", "type": "string"})

    def cell(i):
        kind = kinds[i]
        if kind == "number":
            pick = rng.randrange(8)
            if pick == 0:
                return "-"
            if pick == 1:
                return f"<{rng.randint(0, 9)}"
            if pick == 2:
                return f">={rng.randint(0, 9)}"
            if pick == 3:
                return f"{rng.randint(0, 9)}"
            if pick == 4:
                lo = rng.randint(0, 5)
                return f"[{lo}..{lo + rng.randint(1, 4)}{rng.choice('[]')}"
            if pick == 5 and numeric:
                return f"<= {rng.choice(numeric)} * {rng.choice([0.5, 1, 2])}"
            if pick == 6:
                lo = rng.randint(0, 5)
                return f"]{lo}..{lo + rng.randint(1, 4)}{rng.choice('[]')}"
            return f">{rng.randint(0, 9)}"
        if kind == "string":
            if rng.random() < 0.3:
                return "-"
            members = rng.sample(_WORDS, rng.randint(1, 3))
            return ",".join(f'"{w}"' for w in members)
        return rng.choice(["-", "true", "false"])

    rules = [
        {"conditions": [cell(i) for i in range(n_cols)], "outputs": [f"r{j}"]}
        for j in range(n_rules)
    ]
    return parse_decision_table({"name": "P", "columns": columns, "rules": rules})


def _random_records(rng, table, count):
    records = []
    for i in range(count):
        fields = {}
        for col in table.input_columns:
            if rng.random() < 0.05:
                continue  # sometimes omit a field entirely
            if col.value_type == "number":
                if rng.random() < 0.05:
                    fields[col.name] = "wrong type"
                else:
                    fields[col.name] = rng.randint(0, 9)
            elif col.value_type == "string":
                fields[col.name] = rng.choice(_WORDS + ("unseen",))
            else:
                fields[col.name] = rng.random() < 0.5
        records.append(Record(id=f"p-{i}", fields=fields))
    return records


def _run_py(ct, rows):
    status = [0] * len(rows)
    errcol = [0] * len(rows)
    _kernel_py.run_program(
        rows, ct.n_rules, ct.rule_starts, ct.op_code, ct.op_col, ct.op_a,
        ct.op_b, ct.op_flags, ct.op_ref, ct.op_len, ct.set_codes,
        status, errcol,
    )
    return status, errcol


def _run_c(ct, rows):
    import numpy as np

    n = len(rows)
    mat = np.asarray(rows, dtype=np.float64)
    if mat.ndim == 1:
        mat = mat.reshape(n, 0)
    status = np.empty(n, dtype=np.intc)
    errcol = np.empty(n, dtype=np.intc)
    _speedups.run_program(
        mat, ct.n_rules, **ct.numpy_arrays(), out_status=status, out_errcol=errcol
    )
    return status.tolist(), errcol.tolist()


@needs_extension
def test_backends_agree_on_random_programs():
    rng = random.Random(20260814)
    for trial in range(60):
        table = _random_table(rng, rng.randint(1, 5), rng.randint(1, 8))
        records = _random_records(rng, table, rng.randint(0, 30))
        ct = compile_table(table)
        rows, _ = build_matrix(ct, records, {})
        assert _run_py(ct, rows) == _run_c(ct, rows), f"trial {trial}"


@needs_extension
def test_backends_agree_on_bundled_data():
    from confidec.bench.vax import VaxSpec, generate_vax
    from confidec.dmn.tables import record_to_obj  # noqa: F401  (documented shape)
    from confidec.fixtures import load_table

    for role, func in [("VaccinationCenter", "Restock"), ("Carrier", "ChooseCarrier")]:
        table = load_table(func)
        records = generate_vax(VaxSpec(role, 220, seed=1))
        ct = compile_table(table)
        rows, _ = build_matrix(ct, records, {})
        assert _run_py(ct, rows) == _run_c(ct, rows)


def test_env_var_forces_backend():
    code = (
        "from confidec.dmn.engine import kernel_backend; print(kernel_backend())"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True, env={"CONFIDEC_KERNEL": "py", "PATH": ""},
    )
    assert out.stdout.strip() == "py"


def test_bogus_backend_refused():
    code = "import confidec.dmn.engine"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True, env={"CONFIDEC_KERNEL": "fortran", "PATH": ""},
    )
    assert out.returncode != 0
    assert "CONFIDEC_KERNEL" in out.stderr
