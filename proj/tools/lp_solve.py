#!/usr/bin/env python3
"""Minimal MILP solver for CPLEX-LP files.

Reads the LP subset produced by the toolkit (named rows, Bounds, Binary,
General sections), solves with scipy's HiGHS backend and writes one
"<name> <value>" line per variable, plus an objective comment. Infeasible
models produce a single "# infeasible" marker line.

Usage: lp_solve.py MODEL.lp OUT.sol [--time-limit SECONDS]
"""

import argparse
import math
import re
import sys
from array import array

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

SECTIONS = {
    "minimize": "objective",
    "maximize": "objective",
    "subject to": "constraints",
    "st": "constraints",
    "s.t.": "constraints",
    "bounds": "bounds",
    "bound": "bounds",
    "binary": "binary",
    "binaries": "binary",
    "bin": "binary",
    "general": "general",
    "generals": "general",
    "gen": "general",
    "end": "end",
}

TOKEN = re.compile(r"<=|>=|[<>=:+-]|[A-Za-z_][A-Za-z0-9_.]*|[0-9][0-9.eE+-]*|\.[0-9][0-9.eE+-]*")
SENSES = ("<=", ">=", "<", ">", "=")


def is_number(tok):
    try:
        float(tok)
        return True
    except ValueError:
        return False


class Model:
    def __init__(self):
        self.maximize = False
        self.names = []
        self.index = {}
        self.obj = {}
        # constraint matrix in COO form plus row ranges
        self.c_data = array("d")
        self.c_row = array("q")
        self.c_col = array("q")
        self.row_lo = array("d")
        self.row_hi = array("d")
        self.lb = {}
        self.ub = {}
        self.integral = set()
        self.binary = set()

    def var(self, name):
        col = self.index.get(name)
        if col is None:
            col = len(self.names)
            self.index[name] = col
            self.names.append(name)
        return col

    def add_row(self, terms, sense, rhs):
        row = len(self.row_lo)
        for col, coef in terms:
            self.c_row.append(row)
            self.c_col.append(col)
            self.c_data.append(coef)
        if sense in ("<=", "<"):
            self.row_lo.append(-math.inf)
            self.row_hi.append(rhs)
        elif sense in (">=", ">"):
            self.row_lo.append(rhs)
            self.row_hi.append(math.inf)
        else:
            self.row_lo.append(rhs)
            self.row_hi.append(rhs)


def sections(path):
    """Yields (kind, line) pairs, comments stripped."""
    current = None
    with open(path, "r", encoding="utf-8") as f:
        for raw in f:
            line = raw.split("\\", 1)[0].strip()
            if not line:
                continue
            kind = SECTIONS.get(line.lower())
            if kind is not None:
                current = kind
                if kind == "end":
                    return
                yield kind, None
                continue
            if current is None:
                raise ValueError("content before first LP section: %r" % line)
            yield current, line


def parse_expression(tokens, pos, model, terms):
    """Parses [sign] [coef] name ... ; returns (pos, constant)."""
    constant = 0.0
    while pos < len(tokens):
        tok = tokens[pos]
        if tok in SENSES:
            break
        sign = 1.0
        while tok in ("+", "-"):
            if tok == "-":
                sign = -sign
            pos += 1
            if pos >= len(tokens):
                return pos, constant
            tok = tokens[pos]
        if tok in SENSES:
            break
        if is_number(tok):
            value = float(tok)
            pos += 1
            if pos < len(tokens) and tokens[pos][0].isalpha() or \
               pos < len(tokens) and tokens[pos][0] == "_":
                terms.append((model.var(tokens[pos]), sign * value))
                pos += 1
            else:
                constant += sign * value
        else:
            terms.append((model.var(tok), sign))
            pos += 1
    return pos, constant


def complete_row_end(tokens):
    """Index one past a full row's rhs, or None if tokens are incomplete."""
    for i, tok in enumerate(tokens):
        if tok in SENSES:
            j = i + 1
            if j < len(tokens) and tokens[j] in ("+", "-"):
                j += 1
            if j < len(tokens) and is_number(tokens[j]):
                return j + 1
            return None
    return None


def parse_row(tokens, model):
    pos = 0
    if len(tokens) >= 2 and tokens[1] == ":":
        pos = 2
    terms = []
    pos, constant = parse_expression(tokens, pos, model, terms)
    if pos >= len(tokens):
        raise ValueError("constraint without relational operator")
    sense = tokens[pos]
    pos += 1
    neg = False
    if tokens[pos] in ("+", "-"):
        neg = tokens[pos] == "-"
        pos += 1
    rhs = float(tokens[pos]) * (-1.0 if neg else 1.0) - constant
    model.add_row(terms, sense, rhs)


def parse_bounds_line(line, model):
    tokens = TOKEN.findall(line)
    if not tokens:
        return
    if len(tokens) == 2 and tokens[1].lower() == "free":
        col = model.var(tokens[0])
        model.lb[col] = -math.inf
        model.ub[col] = math.inf
    elif len(tokens) == 5 and is_number(tokens[0]) and is_number(tokens[4]):
        col = model.var(tokens[2])
        model.lb[col] = float(tokens[0])
        model.ub[col] = float(tokens[4])
    elif len(tokens) == 3 and not is_number(tokens[0]) and is_number(tokens[2]):
        col = model.var(tokens[0])
        if tokens[1] in ("<=", "<"):
            model.ub[col] = float(tokens[2])
        elif tokens[1] in (">=", ">"):
            model.lb[col] = float(tokens[2])
        elif tokens[1] == "=":
            model.lb[col] = model.ub[col] = float(tokens[2])
        else:
            raise ValueError("unsupported bound: %r" % line)
    elif len(tokens) == 3 and is_number(tokens[0]) and not is_number(tokens[2]):
        col = model.var(tokens[2])
        if tokens[1] in ("<=", "<"):
            model.lb[col] = float(tokens[0])
        elif tokens[1] in (">=", ">"):
            model.ub[col] = float(tokens[0])
        else:
            raise ValueError("unsupported bound: %r" % line)
    else:
        raise ValueError("unsupported bound: %r" % line)


def parse_lp(path):
    model = Model()
    obj_tokens = []
    row_buf = []
    for kind, line in sections(path):
        if line is None:
            continue
        if kind == "objective":
            obj_tokens.extend(TOKEN.findall(line))
        elif kind == "constraints":
            row_buf.extend(TOKEN.findall(line))
            while True:
                end = complete_row_end(row_buf)
                if end is None:
                    break
                parse_row(row_buf[:end], model)
                del row_buf[:end]
        elif kind == "bounds":
            parse_bounds_line(line, model)
        else:  # binary / general
            for name in TOKEN.findall(line):
                col = model.var(name)
                model.integral.add(col)
                if kind == "binary":
                    model.binary.add(col)
    if row_buf:
        raise ValueError("dangling constraint tokens: %s" % row_buf[:8])

    if obj_tokens and len(obj_tokens) >= 2 and obj_tokens[1] == ":":
        obj_tokens = obj_tokens[2:]
    terms = []
    pos, _ = parse_expression(obj_tokens, 0, model, terms)
    if pos != len(obj_tokens):
        raise ValueError("trailing objective tokens: %s" % obj_tokens[pos:])
    for col, coef in terms:
        model.obj[col] = model.obj.get(col, 0.0) + coef
    return model


def detect_maximize(path):
    with open(path, "r", encoding="utf-8") as f:
        for raw in f:
            line = raw.split("\\", 1)[0].strip()
            if line:
                return line.lower() == "maximize"
    return False


def solve(model, time_limit):
    n = len(model.names)
    c = np.zeros(n)
    for col, coef in model.obj.items():
        c[col] = -coef if model.maximize else coef

    lb = np.zeros(n)
    ub = np.full(n, math.inf)
    for col in model.binary:
        ub[col] = 1.0
    for col, v in model.lb.items():
        lb[col] = v
    for col, v in model.ub.items():
        ub[col] = v

    constraints = []
    rows = len(model.row_lo)
    if rows:
        a = sparse.csc_matrix(
            (
                np.frombuffer(model.c_data, dtype=np.float64),
                (
                    np.frombuffer(model.c_row, dtype=np.int64),
                    np.frombuffer(model.c_col, dtype=np.int64),
                ),
            ),
            shape=(rows, n),
        )
        constraints = [
            LinearConstraint(
                a,
                np.frombuffer(model.row_lo, dtype=np.float64),
                np.frombuffer(model.row_hi, dtype=np.float64),
            )
        ]

    integrality = np.zeros(n)
    for col in model.integral:
        integrality[col] = 1

    options = {}
    if time_limit is not None:
        options["time_limit"] = time_limit
    return milp(
        c=c,
        constraints=constraints,
        integrality=integrality,
        bounds=Bounds(lb, ub),
        options=options,
    )


def format_value(v):
    r = round(v)
    if abs(v - r) < 1e-6:
        return str(int(r))
    return repr(float(v))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("lp")
    ap.add_argument("sol")
    ap.add_argument("--time-limit", type=float, default=None)
    args = ap.parse_args()

    model = parse_lp(args.lp)
    model.maximize = detect_maximize(args.lp)
    res = solve(model, args.time_limit)

    with open(args.sol, "w", encoding="utf-8") as f:
        if res.status == 0:
            obj = res.fun if not model.maximize else -res.fun
            f.write("# objective %s\n" % format_value(obj))
            for name, col in model.index.items():
                f.write("%s %s\n" % (name, format_value(res.x[col])))
        elif res.status == 2:
            f.write("# infeasible\n")
        else:
            f.write("# error status %d: %s\n" % (res.status, res.message))
    if res.status not in (0, 2):
        print("solver failed: %s" % res.message, file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
