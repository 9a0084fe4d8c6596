"""JSON and CSV formats for states, density matrices and constellations.

JSON numbers are written with 17 significant digits, CSV with 12.  Complex
numbers are ``[re, im]`` pairs.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

import numpy as np

from .majorana import Constellation, Star
from .mixed import MixedConstellation
from .qstate import DensityMatrix, PureState


class SchemaError(ValueError):
    """Input document does not follow the expected layout."""


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _complex(x: Any) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
        return complex(x[0], x[1])
    raise SchemaError(f"expected a number or [re, im], got {x!r}")


def state_to_json(state: PureState) -> dict:
    return {"n": state.n, "amps": [_pair(a) for a in state.amp]}


def state_from_json(doc: Any) -> PureState:
    if not isinstance(doc, dict) or "amps" not in doc:
        raise SchemaError('state JSON needs an "amps" list')
    amps = doc["amps"]
    if not isinstance(amps, list):
        raise SchemaError('"amps" must be a list')
    vec = np.array([_complex(a) for a in amps], dtype=complex)
    n = doc.get("n")
    if n is not None and (not isinstance(n, int) or len(vec) != 2**n):
        raise SchemaError(f'"n" = {n!r} does not match {len(vec)} amplitudes')
    if len(vec) < 2 or len(vec) & (len(vec) - 1):
        raise SchemaError(f"amplitude count {len(vec)} is not a power of two")
    return PureState(vec)


def matrix_to_json(m: np.ndarray) -> list:
    return [[_pair(v) for v in row] for row in np.asarray(m)]


def density_to_json(rho: DensityMatrix) -> dict:
    return {"dim": rho.dim, "rho": matrix_to_json(rho.rho)}


def density_from_json(doc: Any) -> DensityMatrix:
    if not isinstance(doc, dict) or "rho" not in doc:
        raise SchemaError('density JSON needs a "rho" matrix')
    rows = doc["rho"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError('"rho" must be a list of rows')
    mat = np.array([[_complex(v) for v in r] for r in rows], dtype=complex)
    dim = doc.get("dim", len(rows))
    if mat.ndim != 2 or mat.shape != (dim, dim):
        raise SchemaError(f"rho shape {mat.shape} does not match dim {dim}")
    return DensityMatrix(mat)


def star_to_json(s: Star) -> dict:
    return {"theta": s.theta, "phi": s.phi, "mult": s.multiplicity}


def constellation_to_json(c: Constellation) -> dict:
    return {"degree": c.degree, "stars": [star_to_json(s) for s in c.stars]}


def constellation_from_json(doc: Any) -> Constellation:
    try:
        stars = tuple(Star(float(s["theta"]), float(s["phi"]), int(s["mult"])) for s in doc["stars"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad constellation JSON: {exc}") from None
    c = Constellation(stars)
    if "degree" in doc and doc["degree"] != c.degree:
        raise SchemaError(f"degree {doc['degree']} does not match the stars ({c.degree})")
    return c


def mixed_to_json(j: float, spheres: list[MixedConstellation]) -> dict:
    return {
        "j": j,
        "spheres": [{"k": s.k, "r": s.radius, "constellation": constellation_to_json(s.constellation)} for s in spheres],
    }


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj) + 0.0  # folds -0.0 into 0.0
        if not np.isfinite(x):
            raise ValueError("non-finite number in output")
        text = format(x, ".17g")
        # keep floats recognizable as floats
        return text if any(ch in text for ch in ".en") else text + ".0"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text with 17 significant digits for every float."""
    return _encode(obj, indent, 0) + "\n"


CSV_FIELDS = ["theta", "phi", "mult", "x", "y", "z"]


def emit_plot_csv(c: Constellation, extra: dict | None = None) -> str:
    """One row per star in canonical order; ``extra`` columns are prepended."""
    buf = io.StringIO()
    lead = list(extra) if extra else []
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(lead + CSV_FIELDS)
    for s in c.stars:
        v = s.vector
        row = [s.theta, s.phi, s.multiplicity, *v]
        w.writerow([_g12(x) for x in (extra or {}).values()] + [_g12(x) for x in row])
    return buf.getvalue()


def _g12(x: Any) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def constellation_from_csv(text: str) -> Constellation:
    rows = list(csv.DictReader(io.StringIO(text)))
    try:
        return Constellation(tuple(Star(float(r["theta"]), float(r["phi"]), int(r["mult"])) for r in rows))
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"bad constellation CSV: {exc}") from None
