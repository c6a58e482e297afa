"""Matrix ingestion and JSON report assembly for the command-line front end."""
import csv
import hashlib
import json
import math
from pathlib import Path

import numpy as np

from .core_eval import NonNegMatrix


class ParseError(ValueError):
    """Malformed matrix or lambda input."""


def _number(token, row, col):
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"non-numeric token {token!r} at row {row}, column {col}") from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite entry {token!r} at row {row}, column {col}")
    if value < 0:
        raise ParseError(f"negative entry {value!r} at row {row}, column {col}")
    return value


def _rows_from_csv(text):
    rows = [r for r in csv.reader(text.splitlines()) if any(cell.strip() for cell in r)]
    return [[_number(cell.strip(), i, j) for j, cell in enumerate(r)] for i, r in enumerate(rows)]


def _rows_from_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("matrix"), list):
        raise ParseError('JSON input must be an object with a "matrix" array of arrays')
    rows = []
    for i, r in enumerate(doc["matrix"]):
        if not isinstance(r, list):
            raise ParseError(f"row {i} is not an array")
        out = []
        for j, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"non-numeric token {v!r} at row {i}, column {j}")
            out.append(_number(v, i, j))
        rows.append(out)
    return rows


def parse_matrix_text(text, fmt="csv"):
    rows = _rows_from_json(text) if fmt == "json" else _rows_from_csv(text)
    if not rows:
        raise ParseError("matrix is empty")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ParseError(f"ragged rows: row {i} has {len(r)} entries, row 0 has {width}")
    if len(rows) >= width:
        raise ParseError(f"requires M < N, got {len(rows)}x{width}")
    try:
        return NonNegMatrix(np.array(rows, dtype=np.float64))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_matrix(path):
    """Read a CSV or JSON (by .json suffix) matrix file into a NonNegMatrix."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix_text(text, "json" if path.suffix.lower() == ".json" else "csv")


def parse_lambda(source, n):
    """Comma list ("1,0.5,2") or path to a one-row CSV; must have n entries."""
    path = Path(source)
    text = path.read_text() if path.is_file() else source
    rows = [r for r in csv.reader(text.splitlines()) if any(c.strip() for c in r)]
    if len(rows) != 1:
        raise ParseError("lambda must be a single row")
    values = []
    for j, cell in enumerate(rows[0]):
        try:
            values.append(float(cell))
        except ValueError:
            raise ParseError(f"non-numeric lambda entry {cell!r} at position {j}") from None
    if len(values) != n:
        raise ParseError(f"lambda has {len(values)} entries, matrix has N={n} columns")
    return np.array(values)


def inputs_digest(matrix, **inputs):
    """SHA-256 over the matrix entries and the run inputs, canonical JSON."""
    payload = {"matrix": matrix.entries.tolist(), **inputs}
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def render_report(report):
    """Serialize with insertion key order preserved; wall_time stays last."""
    return json.dumps(report, indent=2) + "\n"
