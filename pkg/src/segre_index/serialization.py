"""
JSON input and output.

Schemas::

    field    {"kind": "Q"} | {"kind": "fp", "p": 101}
             | {"kind": "ext", "base": <field>, "min_poly": ["1", "1", "1"]}
    element  "3/4" | 5 | ["c0", "c1", ...]          (power-basis coordinates)
    poly     {"nvars": 4, "terms": [{"exps": [3, 0, 0, 0], "coeff": 1}, ...]}
    line     {"n": 2, "F": <poly>, "line": {"span": [[...], [...]], "field": <field>}}
    catalog  {"n": 2, "F": <poly>, "lines": [{"span": ..., "field": ...}, ...]}
    model    {"n": 4, "B": [["bx", "by"], ...], "Q": [[q00, q01, q02], ...], "field": <field>}

A model may give ``"B_projective"`` (points [Z : X : Y]) together with a 3×3
``"change"`` instead of affine ``"B"``; the change is then applied to both the
points and the conic. Extension fields of lines are always rebuilt over the
ground field chosen for the hypersurface.
"""

import json
from pathlib import Path
from typing import Any, Optional, Union

from segre_index.conic_model import ConicModel, affine_points, transform_forms
from segre_index.errors import FieldMismatchError, SchemaError
from segre_index.fields import (
    RATIONALS,
    FieldDescriptor,
    FieldElement,
    FieldKind,
    format_scalar,
    make_extension,
    prime_field,
)
from segre_index.line_index import LineOnHypersurface
from segre_index.polynomials import BinaryForm, ExactMatrix, MultiPoly


def _require(obj: dict, key: str, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"Missing key '{key}' in {where}")
    return obj[key]


def parse_field_option(text: str) -> FieldDescriptor:
    """
    Parse a ground-field option: ``Q`` or ``fp:P``.

    Raises:
        SchemaError: On any other spelling or a bad modulus.
    """
    spec = text.strip()
    if spec.upper() == "Q":
        return RATIONALS
    if spec.lower().startswith("fp:"):
        try:
            return prime_field(int(spec[3:]))
        except ValueError:
            raise SchemaError(f"Bad modulus in field option {text!r}")
    raise SchemaError(f"Field must be 'Q' or 'fp:P', got {text!r}")


def field_from_json(obj: Union[dict, str], ground: Optional[FieldDescriptor] = None) -> FieldDescriptor:
    """
    Read a field description.

    Args:
        obj: A field object or one of the option strings ``Q``, ``fp:P``.
        ground (FieldDescriptor, optional): When given, extensions are built
            over it and a ground field in ``obj`` must agree with it.
    """
    if isinstance(obj, str):
        desc = parse_field_option(obj)
    else:
        kind = _require(obj, "kind", "field")
        if kind == FieldKind.EXTENSION.value:
            base = ground or field_from_json(obj.get("base", {"kind": "Q"}))
            return make_extension(base, _require(obj, "min_poly", "extension field"))
        if kind == FieldKind.RATIONAL.value:
            desc = RATIONALS
        elif kind == FieldKind.PRIME.value:
            desc = prime_field(_require(obj, "p", "prime field"))
        else:
            raise SchemaError(f"Unknown field kind {kind!r}")
    if ground is not None and desc != ground:
        raise FieldMismatchError(f"Input field {desc} differs from the ground field {ground}")
    return desc


def field_to_json(desc: FieldDescriptor) -> dict:
    if desc.kind is FieldKind.RATIONAL:
        return {"kind": "Q"}
    if desc.kind is FieldKind.PRIME:
        return {"kind": "fp", "p": desc.modulus}
    return {
        "kind": "ext",
        "base": field_to_json(desc.base),
        "min_poly": [format_scalar(c) for c in desc.min_poly],
    }


def element_from_json(value: Any, desc: FieldDescriptor) -> FieldElement:
    if isinstance(value, float):
        raise SchemaError(f"Use exact rationals such as '1/3', not floats: {value!r}")
    return desc.element(value)


def element_to_json(x: FieldElement) -> Union[str, list]:
    if x.descriptor.is_extension:
        return [format_scalar(c) for c in x.coords]
    return format_scalar(x.coords[0])


def poly_from_json(obj: dict, desc: FieldDescriptor) -> MultiPoly:
    nvars = _require(obj, "nvars", "polynomial")
    coeffs: dict = {}
    for term in _require(obj, "terms", "polynomial"):
        exps = tuple(_require(term, "exps", "term"))
        value = element_from_json(_require(term, "coeff", "term"), desc)
        coeffs[exps] = coeffs.get(exps, desc.zero()) + value
    return MultiPoly.from_dict(desc, nvars, coeffs)


def poly_to_json(poly: MultiPoly) -> dict:
    return {
        "nvars": poly.nvars,
        "terms": [
            {"exps": list(exps), "coeff": element_to_json(c)} for exps, c in poly.terms
        ],
    }


def form_from_json(coeffs: list, desc: FieldDescriptor) -> BinaryForm:
    return BinaryForm.from_coeffs([element_from_json(c, desc) for c in coeffs], desc)


def _line_entry(entry: dict, n: int, F: MultiPoly, ground: FieldDescriptor) -> LineOnHypersurface:
    field = entry.get("field")
    desc = ground if field is None else field_from_json(field, ground)
    rows = [
        [element_from_json(c, desc) for c in row] for row in _require(entry, "span", "line")
    ]
    return LineOnHypersurface(n=n, F=F, span=ExactMatrix.from_rows(rows, desc))


def _hypersurface(obj: dict, ground: Optional[FieldDescriptor]) -> tuple:
    if ground is None:
        ground = field_from_json(obj["field"]) if "field" in obj else RATIONALS
    n = _require(obj, "n", "input")
    if not isinstance(n, int):
        raise SchemaError(f"n must be an integer, got {n!r}")
    F = poly_from_json(_require(obj, "F", "input"), ground)
    return n, F, ground


def load_line(obj: dict, ground: Optional[FieldDescriptor] = None) -> tuple:
    """Return (line, ground field) from a single-line document."""
    n, F, ground = _hypersurface(obj, ground)
    return _line_entry(_require(obj, "line", "input"), n, F, ground), ground


def load_catalog(obj: dict, ground: Optional[FieldDescriptor] = None) -> tuple:
    """Return (lines, ground field) from a catalog document."""
    n, F, ground = _hypersurface(obj, ground)
    entries = _require(obj, "lines", "catalog")
    if not isinstance(entries, list):
        raise SchemaError("'lines' must be a list")
    return [_line_entry(entry, n, F, ground) for entry in entries], ground


def load_model(obj: dict, ground: Optional[FieldDescriptor] = None) -> ConicModel:
    """
    Read a conic model, applying a recorded change of coordinates if present.

    Raises:
        SchemaError: On missing keys or malformed entries.
    """
    desc = ground or (field_from_json(obj["field"]) if "field" in obj else RATIONALS)
    n = _require(obj, "n", "model")
    Q = tuple(form_from_json(q, desc) for q in _require(obj, "Q", "model"))
    if "B" in obj:
        B = tuple(
            tuple(element_from_json(c, desc) for c in point) for point in obj["B"]
        )
        if any(len(point) != 2 for point in B):
            raise SchemaError("Affine points of B need two coordinates")
        return ConicModel(n=n, B=B, Q=Q)
    projective = _require(obj, "B_projective", "model")
    change = ExactMatrix.from_rows(
        [[element_from_json(c, desc) for c in row] for row in _require(obj, "change", "model")],
        desc,
    )
    if (change.rows, change.cols) != (3, 3):
        raise SchemaError("The change of coordinates must be a 3x3 matrix")
    return ConicModel(n=n, B=affine_points(projective, change), Q=transform_forms(Q, change))


def model_to_json(model: ConicModel) -> dict:
    return {
        "n": model.n,
        "field": field_to_json(model.descriptor),
        "B": [[element_to_json(c) for c in point] for point in model.B],
        "Q": [[element_to_json(c) for c in q.coeffs] for q in model.Q],
    }


def read_json(path: Path) -> Any:
    """
    Read a UTF-8 JSON document.

    Raises:
        SchemaError: If the file is not valid JSON.
    """
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")
