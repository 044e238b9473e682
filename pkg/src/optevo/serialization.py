"""JSON interchange for states, operators, and trajectories.

Complex numbers travel as two-element arrays [re, im]. Floats are written
with Python's shortest round-trip representation, so encode followed by
decode reproduces every finite double bit for bit. Non-finite values are
rejected in both directions.
"""

from __future__ import annotations

import hashlib
import json
import math

import numpy as np

from .errors import SerializationError
from .evolution import Trajectory
from .numerics import as_matrix
from .quantum_states import DensityMatrix, PureState, Units

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "state_to_json",
    "state_from_json",
    "trajectory_to_json",
    "trajectory_from_json",
    "load_document",
    "save_document",
    "file_digest",
]

MATRIX_KINDS = ("hermitian", "skew-hermitian", "density", "unitary")


def _finite(x) -> float:
    v = float(x)
    if not math.isfinite(v):
        raise SerializationError(f"non-finite value {x!r}")
    return v


def _pair(z: complex) -> list[float]:
    return [_finite(z.real), _finite(z.imag)]


def _complex_from(obj) -> complex:
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2):
        raise SerializationError(f"expected a [re, im] pair, got {obj!r}")
    if any(isinstance(part, bool) or not isinstance(part, (int, float)) for part in obj):
        raise SerializationError(f"pair entries must be numbers, got {obj!r}")
    return complex(_finite(obj[0]), _finite(obj[1]))


def matrix_to_json(m, kind: str) -> dict:
    """Encode a square complex matrix with its structural tag."""
    if kind not in MATRIX_KINDS:
        raise SerializationError(f"unknown matrix kind {kind!r}")
    a = as_matrix(m)
    return {
        "n": int(a.shape[0]),
        "kind": kind,
        "rows": [[_pair(complex(z)) for z in row] for row in a],
    }


def matrix_from_json(doc) -> tuple[np.ndarray, str]:
    """Decode a matrix document, returning the matrix and its kind tag."""
    if not isinstance(doc, dict):
        raise SerializationError("matrix document must be an object")
    for key in ("n", "kind", "rows"):
        if key not in doc:
            raise SerializationError(f"matrix document lacks {key!r}")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SerializationError(f"bad dimension {n!r}")
    kind = doc["kind"]
    if kind not in MATRIX_KINDS:
        raise SerializationError(f"unknown matrix kind {kind!r}")
    rows = doc["rows"]
    if not isinstance(rows, list) or len(rows) != n:
        raise SerializationError(f"expected {n} rows")
    out = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise SerializationError(f"row {i} does not have {n} entries")
        for j, entry in enumerate(row):
            out[i, j] = _complex_from(entry)
    return out, kind


def state_to_json(phi: PureState, units: Units | None = None) -> dict:
    """Encode a pure state, optionally with its unit system."""
    doc = {
        "n": int(phi.n),
        "amplitudes": [_pair(complex(z)) for z in phi.amplitudes],
    }
    if units is not None:
        doc["units"] = {"hbar": _finite(units.hbar)}
    return doc


def state_from_json(doc) -> tuple[PureState, Units | None]:
    """Decode a pure state document; returns the state and optional units."""
    if not isinstance(doc, dict):
        raise SerializationError("state document must be an object")
    for key in ("n", "amplitudes"):
        if key not in doc:
            raise SerializationError(f"state document lacks {key!r}")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SerializationError(f"bad dimension {n!r}")
    amps = doc["amplitudes"]
    if not isinstance(amps, list) or len(amps) != n:
        raise SerializationError(f"expected {n} amplitudes")
    vec = np.array([_complex_from(entry) for entry in amps], dtype=complex)
    units = None
    if "units" in doc:
        block = doc["units"]
        if not isinstance(block, dict) or "hbar" not in block:
            raise SerializationError("units block must carry hbar")
        try:
            units = Units(_finite(block["hbar"]))
        except ValueError as exc:
            raise SerializationError(str(exc)) from exc
    try:
        state = PureState(vec)
    except ValueError as exc:
        raise SerializationError(str(exc)) from exc
    return state, units


def trajectory_to_json(traj: Trajectory) -> dict:
    """Encode a sampled trajectory."""
    if traj.kind == "pure":
        states = [[_pair(complex(z)) for z in s.amplitudes] for s in traj.states]
    else:
        states = [
            [[_pair(complex(z)) for z in row] for row in s.matrix] for s in traj.states
        ]
    n = traj.states[0].n if traj.states else 0
    return {
        "times": [_finite(t) for t in traj.times],
        "states": states,
        "kind": traj.kind,
        "n": int(n),
        "units": {"hbar": _finite(traj.units.hbar)},
    }


def trajectory_from_json(doc) -> Trajectory:
    """Decode a trajectory document (generator is not part of the format)."""
    if not isinstance(doc, dict):
        raise SerializationError("trajectory document must be an object")
    for key in ("times", "states", "kind", "n"):
        if key not in doc:
            raise SerializationError(f"trajectory document lacks {key!r}")
    times = [
        _finite(t) for t in (doc["times"] if isinstance(doc["times"], list) else ())
    ]
    if len(times) != len(doc["states"]):
        raise SerializationError("times and states lengths differ")
    units = Units(_finite(doc.get("units", {}).get("hbar", 1.0)))
    n = doc["n"]
    states: list = []
    try:
        if doc["kind"] == "pure":
            for amps in doc["states"]:
                states.append(
                    PureState(np.array([_complex_from(e) for e in amps], dtype=complex))
                )
        elif doc["kind"] == "density":
            for rows in doc["states"]:
                states.append(
                    DensityMatrix(
                        np.array(
                            [[_complex_from(e) for e in row] for row in rows],
                            dtype=complex,
                        )
                    )
                )
        else:
            raise SerializationError(f"unknown trajectory kind {doc['kind']!r}")
    except ValueError as exc:
        raise SerializationError(str(exc)) from exc
    if any(s.n != n for s in states):
        raise SerializationError("state dimensions disagree with the header")
    return Trajectory(np.array(times, dtype=float), tuple(states), None, units)


def load_document(path: str):
    """Parse a JSON file, mapping syntax errors to SerializationError."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SerializationError(f"cannot read {path}: {exc}") from exc


def save_document(doc, path: str) -> None:
    """Write a JSON document compactly; rejects non-finite floats."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, allow_nan=False, separators=(",", ":"))
        fh.write("\n")


def file_digest(path: str) -> str:
    """Hex sha256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()
