# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluator backend; mirrors _kernel_py.run_program exactly."""

from libc.math cimport isnan

cdef enum:
    OP_LT = 1
    OP_LE = 2
    OP_GT = 3
    OP_GE = 4
    OP_EQ = 5
    OP_INTERVAL = 6
    OP_SET = 7
    OP_BOOL = 8
    OP_COL_LT = 9
    OP_COL_LE = 10
    OP_COL_GT = 11
    OP_COL_GE = 12

STATUS_NO_MATCH = -1
STATUS_ERROR = -2


def run_program(double[:, ::1] rows,
                int n_rules,
                int[::1] rule_starts,
                signed char[::1] op_code,
                int[::1] op_col,
                double[::1] op_a,
                double[::1] op_b,
                signed char[::1] op_flags,
                int[::1] op_ref,
                int[::1] op_len,
                double[::1] set_codes,
                int[::1] out_status,
                int[::1] out_errcol):
    cdef Py_ssize_t i, n = rows.shape[0]
    cdef int r, k, s, start, end, col
    cdef signed char code, fl
    cdef double v, a, b, ref
    cdef bint ok, err
    with nogil:
        for i in range(n):
            out_status[i] = -1
            out_errcol[i] = -1
            err = False
            ok = True
            for r in range(n_rules):
                ok = True
                start = rule_starts[r]
                end = rule_starts[r + 1]
                for k in range(start, end):
                    col = op_col[k]
                    v = rows[i, col]
                    if isnan(v):
                        out_status[i] = -2
                        out_errcol[i] = col
                        err = True
                        break
                    code = op_code[k]
                    a = op_a[k]
                    if code == OP_LT:
                        ok = v < a
                    elif code == OP_LE:
                        ok = v <= a
                    elif code == OP_GT:
                        ok = v > a
                    elif code == OP_GE:
                        ok = v >= a
                    elif code == OP_EQ:
                        ok = v == a
                    elif code == OP_INTERVAL:
                        fl = op_flags[k]
                        b = op_b[k]
                        ok = ((v > a) if (fl & 1) else (v >= a)) and \
                             ((v < b) if (fl & 2) else (v <= b))
                    elif code == OP_SET:
                        ok = False
                        for s in range(op_ref[k], op_ref[k] + op_len[k]):
                            if set_codes[s] == v:
                                ok = True
                                break
                    elif code == OP_BOOL:
                        ok = v == a
                    else:
                        ref = rows[i, op_ref[k]]
                        if isnan(ref):
                            out_status[i] = -2
                            out_errcol[i] = op_ref[k]
                            err = True
                            break
                        ref = ref * a
                        if code == OP_COL_LT:
                            ok = v < ref
                        elif code == OP_COL_LE:
                            ok = v <= ref
                        elif code == OP_COL_GT:
                            ok = v > ref
                        else:
                            ok = v >= ref
                    if not ok:
                        break
                if err:
                    break
                if ok:
                    out_status[i] = r
                    break
