"""JSON and CSV formats for states, count records, scans, verdicts and grids.

Schemas live in ``spinwigner/schemas``. Parsers raise :class:`SchemaError`
carrying a JSON pointer to the offending field; range violations inside an
otherwise well-formed state spec surface as :class:`InvalidArgument` from the
constructor, with ``field`` set.
"""

import csv
import json
from functools import lru_cache
from importlib import resources
from io import StringIO

import jsonschema
import numpy as np

from . import states
from .errors import InvalidArgument, SchemaError
from .tomography import CountRecord, MeasurementSetting, ReconstructionResult
from .wigner import SliceGrid
from .witness import EquatorScanResult


class MalformedDocument(SchemaError):
    """Input is not parseable JSON."""


class UnknownKind(SchemaError):
    """State spec names a constructor that does not exist."""


@lru_cache(maxsize=None)
def load_schema(name):
    text = resources.files(__package__).joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def _pointer(path):
    return "".join(f"/{str(p).replace('~', '~0').replace('/', '~1')}" for p in path)


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{exc.msg} at line {exc.lineno} column {exc.colno}") from exc


def _validate(doc, schema_name):
    validator = jsonschema.Draft202012Validator(load_schema(schema_name))
    error = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if error is None:
        return
    pointer = _pointer(error.absolute_path)
    if schema_name == "state_spec" and error.validator == "enum" and pointer.endswith("/kind"):
        raise UnknownKind(f"unknown state kind {error.instance!r}", pointer)
    raise SchemaError(error.message, pointer)


# ---------------------------------------------------------------- state specs

STATE_KINDS = ("ghz", "bell", "w", "clock", "product", "ghz_family", "mixture", "superpose")


def _build_state(spec, path):
    kind = spec.get("kind") if isinstance(spec, dict) else None
    if kind not in STATE_KINDS:
        raise UnknownKind(f"unknown state kind {kind!r}", path + "/kind")
    try:
        if kind == "ghz":
            return states.ghz(spec["n"])
        if kind == "w":
            return states.w_state(spec["n"])
        if kind == "clock":
            return states.clock_state(spec["n"])
        if kind == "bell":
            return states.bell(spec["which"])
        if kind == "ghz_family":
            return states.ghz_family(spec["n"], spec["gamma"])
        if kind == "product":
            if "bits" in spec:
                return states.basis_state(spec["bits"])
            return states.product_state([tuple(a) for a in spec["angles"]])
        if kind == "superpose":
            a = _build_state(spec["a"], path + "/a")
            b = _build_state(spec["b"], path + "/b")
            if a.ndim != 1 or b.ndim != 1:
                raise InvalidArgument("superpose needs two pure states", field="a")
            return states.superpose(a, b)
        terms = [
            (t["weight"], _build_state(t["state"], f"{path}/terms/{i}/state"))
            for i, t in enumerate(spec["terms"])
        ]
        return states.mixture(terms)
    except InvalidArgument as exc:
        if exc.field and not exc.field.startswith("/"):
            exc.field = f"{path}/{exc.field}"
        raise


def state_from_spec(doc):
    """Build a state from an already decoded spec (dict)."""
    _validate(doc, "state_spec")
    return _build_state(doc, "")


def parse_state_spec(text):
    """Parse a JSON state spec and return a ket (pure kinds) or density matrix."""
    return state_from_spec(_loads(text))


def load_state_arg(arg):
    """A CLI ``--state`` argument: inline JSON, or a path to a JSON file."""
    text = arg.strip()
    if not text.startswith("{"):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    return parse_state_spec(text)


# -------------------------------------------------------------- count records

def record_to_dict(record):
    return {
        "angles": record.point.tolist(),
        "shots": int(record.shots),
        "counts": {k: int(v) for k, v in sorted(record.counts.items())},
    }


def record_from_dict(doc, pointer=""):
    angles = doc["angles"]
    n = len(angles)
    for key in doc["counts"]:
        if len(key) != n:
            raise SchemaError(
                f"bitstring {key!r} has {len(key)} bits, angles describe {n} qubits",
                f"{pointer}/counts/{key}",
            )
    total = sum(doc["counts"].values())
    if total != doc["shots"]:
        raise SchemaError(f"counts sum to {total} but shots is {doc['shots']}", f"{pointer}/counts")
    return CountRecord(MeasurementSetting(np.array(angles, dtype=float), doc["shots"]), dict(doc["counts"]))


def parse_count_records(text):
    """Parse a batch document; returns ``(records, meta)``."""
    doc = _loads(text)
    _validate(doc, "count_records")
    meta, items, base = {}, doc, ""
    if isinstance(doc, dict):
        meta, items, base = doc.get("meta", {}), doc["records"], "/records"
    return [record_from_dict(r, f"{base}/{i}") for i, r in enumerate(items)], meta


def read_count_records(path):
    with open(path, encoding="utf-8") as fh:
        records, _ = parse_count_records(fh.read())
    return records


def dumps_count_records(records, meta=None):
    body = [record_to_dict(r) for r in records]
    doc = body if meta is None else {"meta": meta, "records": body}
    return json.dumps(doc, indent=1) + "\n"


def write_count_records(records, path, meta=None):
    """Write a batch; a bare JSON array unless ``meta`` is given."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_count_records(records, meta))


# ---------------------------------------------------------------- phase points

def parse_phase_points(text):
    doc = _loads(text)
    _validate(doc, "phase_points")
    pts = [np.array(p["angles"], dtype=float) for p in doc]
    if len({p.shape for p in pts}) > 1:
        raise SchemaError("all phase points must have the same number of qubits", "/")
    return np.stack(pts) if pts else np.zeros((0, 0, 3))


def dumps_phase_points(points):
    return json.dumps([{"angles": np.asarray(p).tolist()} for p in points]) + "\n"


# ----------------------------------------------------------------------- scans

def parse_scan(text):
    """Parse a scan document; returns ``(EquatorScanResult, convention, n)``.

    Hardware-convention angles are halved on ingestion.
    """
    doc = _loads(text)
    _validate(doc, "scan")
    data = np.array(doc["samples"], dtype=float).reshape(-1, 3)
    convention = doc["angle_convention"]
    phi = data[:, 0] / 2 if convention == "hardware" else data[:, 0]
    return EquatorScanResult(phi, data[:, 1], data[:, 2]), convention, doc.get("n")


def dumps_scan(scan, n=None, angle_convention="paper", meta=None):
    phi = scan.phi_values * (2 if angle_convention == "hardware" else 1)
    doc = {
        "angle_convention": angle_convention,
        "samples": [[float(a), float(b), float(c)] for a, b, c in zip(phi, scan.estimates, scan.std_errors)],
    }
    if n is not None:
        doc["n"] = int(n)
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, indent=1) + "\n"


# -------------------------------------------------------------------- verdicts

def dumps_verdict(verdict, meta=None):
    doc = verdict.to_dict()
    doc["label"] = verdict.label
    if meta:
        doc["meta"] = meta
    _validate(doc, "verdict")
    return json.dumps(doc, indent=1) + "\n"


def parse_verdict(text):
    doc = _loads(text)
    _validate(doc, "verdict")
    return doc


# ------------------------------------------------------------- reconstruction

def matrix_to_pairs(m):
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def pairs_to_matrix(pairs):
    a = np.asarray(pairs, dtype=float)
    return a[..., 0] + 1j * a[..., 1]


def dumps_reconstruction(result, fidelity=None, meta=None):
    doc = {
        "rho_hat": matrix_to_pairs(result.rho_hat),
        "residual_norm": result.residual_norm,
        "condition_number": result.condition_number,
        "projected": result.projected,
        "rank": result.rank,
    }
    if fidelity is not None:
        doc["fidelity"] = fidelity
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, indent=1) + "\n"


def parse_reconstruction(text):
    doc = _loads(text)
    return ReconstructionResult(
        rho_hat=pairs_to_matrix(doc["rho_hat"]),
        residual_norm=doc["residual_norm"],
        condition_number=doc["condition_number"],
        projected=doc["projected"],
        rank=doc.get("rank", 0),
        meta=doc.get("meta", {}),
    )


# ----------------------------------------------------------------------- grids

def dumps_grid_csv(grid, meta=None):
    """One ``axis1,axis2,value`` row per grid cell, 17 significant digits.

    ``meta`` entries are written as leading ``# key: value`` comment lines.
    """
    buf = StringIO()
    for key, value in (meta or {}).items():
        buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["axis1", "axis2", "value"])
    a1, a2 = grid.axis_values
    for i, x in enumerate(a1):
        for j, y in enumerate(a2):
            writer.writerow([f"{x:.17g}", f"{y:.17g}", f"{grid.values[i, j]:.17g}"])
    return buf.getvalue()


def export_grid_csv(grid, path, meta=None):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(dumps_grid_csv(grid, meta))


def import_grid_csv(path, axis_names=("axis1", "axis2")):
    """Inverse of :func:`export_grid_csv`."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    if not rows or rows[0] != ["axis1", "axis2", "value"]:
        raise SchemaError("missing axis1,axis2,value header", "/0")
    data = np.array([[float(v) for v in r] for r in rows[1:]]).reshape(-1, 3)
    a1 = list(dict.fromkeys(data[:, 0]))
    a2 = list(dict.fromkeys(data[:, 1]))
    if len(a1) * len(a2) != len(data):
        raise SchemaError("CSV rows do not form a full grid", "/")
    return SliceGrid(list(axis_names), [a1, a2], data[:, 2].reshape(len(a1), len(a2)))


def dumps_grid_json(grid):
    return json.dumps(grid.to_dict()) + "\n"
