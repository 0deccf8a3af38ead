"""File formats: model JSON, data CSV, distribution CSV, result CSV.

All floats are serialized with Python's shortest round-trip repr, so every
double survives save -> load -> save byte-identically and files diff cleanly
across runs.
"""

import csv
import json

import numpy as np

from .dictionary import Dictionary
from .losses import CostParams, DiscreteDistribution
from .train import Model

__all__ = [
    "DataError",
    "FORMAT_VERSION",
    "save_model",
    "load_model",
    "load_data",
    "load_distribution",
    "write_rows_csv",
    "write_reports_csv",
]

FORMAT_VERSION = 1


class DataError(Exception):
    """A file exists but its contents do not fit the expected format."""


def _array_field(value):
    return None if value is None else np.asarray(value, dtype=float).tolist()


def save_model(model, path):
    """Write a fitted model as deterministic, sorted, indented JSON."""
    dic = model.dic
    if dic is None:
        raise DataError("model has no dictionary attached; cannot persist")
    doc = {
        "format_version": FORMAT_VERSION,
        "dictionary": {
            "kind": dic.kind,
            "dim": int(dic.dim),
            "M": int(dic.M),
            "C_F": float(dic.C_F),
            "C_F_estimated": bool(dic.C_F_estimated),
            "centers": _array_field(dic.centers),
            "beta": None if dic.beta is None else float(dic.beta),
            "grid": None if dic.grid is None else [int(g) for g in dic.grid],
            "box": _array_field(dic.box),
        },
        "lambda": [float(v) for v in model.lam],
        "d": float(model.cp.d),
        "a": float(model.cp.a),
        "tau": float(model.cp.tau),
        "r": float(model.r),
        "c_f": float(model.c_f),
        "c_f_estimated": bool(model.c_f_estimated),
        "train_meta": {
            "n": int(model.n_train),
            "objective": float(model.objective),
            "iterations": int(model.iterations),
        },
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_model(path):
    """Read a model file back; re-validates the cost-parameter identity."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DataError(f"not a model file: {exc}") from exc
    try:
        if doc["format_version"] != FORMAT_VERSION:
            raise DataError(
                f"unsupported format version {doc['format_version']!r}"
            )
        spec = doc["dictionary"]
        dic = Dictionary(
            kind=spec["kind"],
            dim=int(spec["dim"]),
            M=int(spec["M"]),
            C_F=float(spec["C_F"]),
            C_F_estimated=bool(spec["C_F_estimated"]),
            centers=None if spec["centers"] is None
            else np.asarray(spec["centers"], dtype=float),
            beta=spec["beta"],
            grid=None if spec["grid"] is None else tuple(spec["grid"]),
            box=None if spec["box"] is None
            else np.asarray(spec["box"], dtype=float),
        )
        # a and tau are cross-checked against d here
        cp = CostParams(d=float(doc["d"]), tau=float(doc["tau"]),
                        a=float(doc["a"]))
        meta = doc["train_meta"]
        return Model(
            lam=np.asarray(doc["lambda"], dtype=float),
            dic=dic,
            cp=cp,
            r=float(doc["r"]),
            n_train=int(meta["n"]),
            objective=float(meta["objective"]),
            iterations=int(meta["iterations"]),
            c_f=float(doc["c_f"]),
            c_f_estimated=bool(doc["c_f_estimated"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"malformed model file: {exc}") from exc


def _parse_float(token, where):
    token = token.strip()
    if token == "":
        raise DataError(f"missing value at {where}")
    try:
        return float(token)
    except ValueError as exc:
        raise DataError(f"non-numeric value {token!r} at {where}") from exc


def _read_table(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("empty file") from None
        header = [h.strip() for h in header]
        rows = []
        for k, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(f"line {k}: expected {len(header)} fields, "
                                f"got {len(row)}")
            rows.append(row)
    if not rows:
        raise DataError("no data rows")
    return header, rows


def load_data(path, require_y=False):
    """Read a feature CSV; returns (x, y) with y None when absent.

    The column named y, wherever it sits, holds labels in {-1, +1}; all
    other columns are features in file order.  Any missing or non-numeric
    cell is an error.
    """
    header, rows = _read_table(path)
    if "y" in header:
        y_col = header.index("y")
    else:
        y_col = None
        if require_y:
            raise DataError("data file lacks the y label column")
    feat_cols = [j for j in range(len(header)) if j != y_col]
    if not feat_cols:
        raise DataError("data file has no feature columns")
    x = np.empty((len(rows), len(feat_cols)))
    y = np.empty(len(rows)) if y_col is not None else None
    for i, row in enumerate(rows):
        for k, j in enumerate(feat_cols):
            x[i, k] = _parse_float(row[j], f"line {i + 2}, column {header[j]}")
        if y_col is not None:
            v = _parse_float(row[y_col], f"line {i + 2}, column y")
            if v not in (-1.0, 1.0):
                raise DataError(f"line {i + 2}: label {v!r} is not -1 or +1")
            y[i] = v
    return x, y


def load_distribution(path):
    """Read a finite-support distribution CSV: columns p, eta, features."""
    header, rows = _read_table(path)
    for col in ("p", "eta"):
        if col not in header:
            raise DataError(f"distribution file lacks the {col} column")
    p_col, e_col = header.index("p"), header.index("eta")
    feat_cols = [j for j in range(len(header)) if j not in (p_col, e_col)]
    if not feat_cols:
        raise DataError("distribution file has no feature columns")
    p = np.empty(len(rows))
    eta = np.empty(len(rows))
    x = np.empty((len(rows), len(feat_cols)))
    for i, row in enumerate(rows):
        p[i] = _parse_float(row[p_col], f"line {i + 2}, column p")
        eta[i] = _parse_float(row[e_col], f"line {i + 2}, column eta")
        for k, j in enumerate(feat_cols):
            x[i, k] = _parse_float(row[j], f"line {i + 2}, column {header[j]}")
    try:
        return DiscreteDistribution(x=x, p=p, eta=eta)
    except ValueError as exc:
        raise DataError(f"invalid distribution: {exc}") from exc


def _cell(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_rows_csv(path, rows, columns):
    """Write dict rows under a fixed column order with repr-exact floats."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in columns])


def write_reports_csv(path, reports):
    """One row per check: name, status, slack, witness."""
    rows = [
        {"name": rep.name, "status": rep.status, "slack": rep.slack,
         "witness": rep.witness}
        for rep in reports
    ]
    write_rows_csv(path, rows, ("name", "status", "slack", "witness"))
