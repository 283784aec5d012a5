"""Reading complexes with filtrations and writing reports."""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

from .complex import ComplexError, SimplicialComplex, VectorFiltration, build_complex


class InputError(ValueError):
    """Unreadable or malformed input file."""


def coerce(x, exact: bool):
    if isinstance(x, bool):
        raise InputError(f"expected a number, got {x!r}")
    if exact:
        try:
            return Fraction(x)
        except (TypeError, ValueError) as exc:
            raise InputError(f"not a rational number: {x!r}") from exc
    try:
        return float(x)
    except (TypeError, ValueError) as exc:
        raise InputError(f"not a number: {x!r}") from exc


def complex_from_dict(data: dict, exact: bool = True) -> tuple[SimplicialComplex, VectorFiltration]:
    """``{"n": ..., "vertex_values": [[...], ...], "simplices": [[...], ...]}``.

    Every vertex with a value belongs to the complex, listed in
    ``simplices`` or not.
    """
    try:
        values = data["vertex_values"]
        simplices = data.get("simplices", [])
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError("input needs 'vertex_values' (and usually 'simplices')") from exc
    if not values:
        raise InputError("empty complex: no vertex values")
    rows = [[coerce(x, exact) for x in (row if isinstance(row, list) else [row])] for row in values]
    n = data.get("n", len(rows[0]))
    if any(len(r) != n for r in rows):
        raise InputError(f"every vertex needs exactly n={n} values")
    try:
        K = build_complex([[i] for i in range(len(rows))] + list(simplices), vertex_count=len(rows))
        phi = VectorFiltration(tuple(tuple(r) for r in rows))
    except (ComplexError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    return K, phi


def complex_to_dict(K: SimplicialComplex, phi: VectorFiltration) -> dict:
    top = [list(s) for s in K.simplices
           if not any(set(s) < set(t) for t in K.simplices if len(t) == len(s) + 1)]
    return {"n": phi.n, "vertex_values": [[json_number(x) for x in row] for row in phi.values],
            "simplices": top}


def read_off(text: str) -> list[list[int]]:
    """Faces of an OFF mesh, polygons fan-triangulated, plus all vertices."""
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.append(line.split())
    if not tokens or not tokens[0][0].upper().endswith("OFF"):
        raise InputError("not an OFF file")
    head = tokens[0][1:] or tokens[1]
    body = tokens[1:] if tokens[0][1:] else tokens[2:]
    try:
        nv, nf = int(head[0]), int(head[1])
        faces = []
        for row in body[nv:nv + nf]:
            k = int(row[0])
            idx = [int(x) for x in row[1:1 + k]]
            if len(idx) != k:
                raise InputError(f"truncated OFF face {row}")
            if k >= 3:
                faces.extend([idx[0], idx[i], idx[i + 1]] for i in range(1, k - 1))
            elif k:
                faces.append(idx)
    except (IndexError, ValueError) as exc:
        raise InputError("malformed OFF file") from exc
    if len(body) < nv + nf:
        raise InputError("OFF file shorter than its header says")
    return [[i] for i in range(nv)] + faces


def read_values_csv(text: str, exact: bool = True) -> list[list]:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows:
        try:
            float(rows[0][0])
        except ValueError:
            rows = rows[1:]  # header
    if not rows:
        raise InputError("values CSV has no rows")
    return [[coerce(c.strip(), exact) for c in r] for r in rows]


def load_complex(path: str | Path, values: str | Path | None = None,
                 exact: bool = True) -> tuple[SimplicialComplex, VectorFiltration]:
    """Load ``.json`` input, or an ``.off`` mesh with a per-vertex values CSV."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".off":
        if values is None:
            raise InputError("an OFF mesh needs a CSV of vertex values")
        try:
            vtext = Path(values).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {values}: {exc}") from exc
        rows = read_values_csv(vtext, exact)
        return complex_from_dict({"vertex_values": rows, "simplices": read_off(text)}, exact)
    try:
        data = json.loads(text, parse_float=Fraction if exact else float)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("top-level JSON must be an object")
    return complex_from_dict(data, exact)


def json_number(x):
    """Floats for JSON, with ``"inf"`` for infinity; integers stay integers."""
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return int(x) if Fraction(x).denominator == 1 else float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def exact_string(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return repr(x)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
