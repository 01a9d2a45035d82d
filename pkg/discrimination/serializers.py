"""JSON and CSV codecs for ensembles, POVMs and oracle results.

Complex matrix entries are written as ``[re, im]`` pairs in row-major order.
JSON floats are emitted with ``repr`` precision so files round-trip exactly;
CSV numbers use ``settings.SIGNIFICANT_DIGITS`` significant digits.
"""
from django.core.exceptions import ValidationError
from typing import Dict, Any
import json
import math
import numpy as np
import pandas as pd

from accinfo.utils import convert_information, float_format

from .ensembles import Ensemble
from .lookups import ERROR_CONVERSION, ERROR_INVALID
from .oracle import sweep_to_frame
from .povm import Povm, Rank1Real, to_rank1_real


def vector_to_list(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


def matrix_to_list(A):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(A, dtype=complex)]


def _number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _entry(value, where):
    if _number(value):
        return complex(value, 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(_number(v) for v in value):
        return complex(value[0], value[1])
    raise ValidationError(f"{where}: expected a finite number or an [re, im] pair, got {value!r}", code=ERROR_CONVERSION)


def _list_to_matrix(rows, dim, where):
    if not isinstance(rows, list) or len(rows) != dim:
        raise ValidationError(f"{where}: expected {dim} rows", code=ERROR_CONVERSION)
    out = np.zeros((dim, dim), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ValidationError(f"{where}: row {i} does not have {dim} entries", code=ERROR_CONVERSION)
        for j, value in enumerate(row):
            out[i, j] = _entry(value, f"{where}, entry ({i}, {j})")
    return out


def _require(data, keys, what):
    if not isinstance(data, dict):
        raise ValidationError(f"{what} must be a JSON object", code=ERROR_CONVERSION)
    missing = [key for key in keys if key not in data]
    if missing:
        raise ValidationError(f"{what} is missing {', '.join(missing)}", code=ERROR_CONVERSION)


def _dim(data, what):
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValidationError(f"{what} dim must be a positive integer, got {dim!r}", code=ERROR_INVALID)
    return dim


def ensemble_serializer(obj) -> Dict[str, Any]:
    return {
        "dim": obj.dim,
        "priors": list(obj.priors),
        "states": [matrix_to_list(state) for state in obj.states],
    }


def ensemble_from_dict(data):
    """Build an Ensemble from its JSON object; the first violated invariant is
    reported with its index.
    """
    _require(data, ("dim", "priors", "states"), "Ensemble")
    dim = _dim(data, "Ensemble")
    if not isinstance(data["states"], list) or not isinstance(data["priors"], list):
        raise ValidationError("Ensemble states and priors must be lists", code=ERROR_CONVERSION)
    states = [_list_to_matrix(rows, dim, f"State {i}") for i, rows in enumerate(data["states"])]
    priors = [_entry(p, f"Prior {i}").real for i, p in enumerate(data["priors"])]
    return Ensemble(states=states, priors=priors, dim=dim)


def povm_serializer(obj) -> Dict[str, Any]:
    return {
        "dim": obj.dim,
        "elements": [matrix_to_list(element) for element in obj.elements],
    }


def rank1_serializer(obj) -> Dict[str, Any]:
    return {
        "weights": list(obj.weights),
        "angles_rad": list(obj.angles),
    }


def povm_from_dict(data):
    """Accepts the full form {"dim", "elements"} or the compact rank-1 real form
    {"weights", "angles_rad"}; the full form wins when both are present.
    Validity is left to ``povm.validate``.
    """
    if isinstance(data, dict) and "weights" in data and "elements" not in data:
        _require(data, ("weights", "angles_rad"), "Rank-1 POVM")
        if not isinstance(data["weights"], list) or not isinstance(data["angles_rad"], list):
            raise ValidationError("Rank-1 POVM weights and angles_rad must be lists", code=ERROR_CONVERSION)
        weights = [_entry(w, f"Weight {i}").real for i, w in enumerate(data["weights"])]
        angles = [_entry(a, f"Angle {i}").real for i, a in enumerate(data["angles_rad"])]
        return Rank1Real(weights=weights, angles=angles).to_povm()
    _require(data, ("dim", "elements"), "POVM")
    dim = _dim(data, "POVM")
    if not isinstance(data["elements"], list):
        raise ValidationError("POVM elements must be a list", code=ERROR_CONVERSION)
    elements = [_list_to_matrix(rows, dim, f"Element {i}") for i, rows in enumerate(data["elements"])]
    return Povm(elements=elements, dim=dim)


def povm_to_dict(povm, compact=False):
    """Full form, or the rank-1 real form when ``compact`` and the POVM has one."""
    if compact:
        return rank1_serializer(to_rank1_real(povm))
    return povm_serializer(povm)


def w3_params_serializer(obj) -> Dict[str, Any]:
    return {
        "M": obj.M,
        "m": obj.m,
        "n": obj.n,
        "a2": obj.a2,
        "b2": obj.b2,
        "c2": obj.c2,
        "element_count": obj.element_count,
    }


def scan_result_serializer(obj, unit="nats") -> Dict[str, Any]:
    return {
        "M": obj.M,
        "grid_n": obj.grid_n,
        "best_theta": obj.best_theta,
        "best_phi_a": obj.best_phi_a,
        "best_phi_b": obj.best_phi_b,
        f"best_value_{unit}": convert_information(obj.best_value, unit),
        "grid_points_evaluated": obj.grid_points_evaluated,
        "grid_points_skipped": obj.grid_points_skipped,
        "refined": obj.refined,
    }


def sweep_serializer(obj, unit="nats") -> Dict[str, Any]:
    return {
        "M": obj.M,
        "eps": obj.eps,
        "theta_rad": [float(t) for t in obj.thetas],
        f"info_{unit}": [convert_information(v, unit) for v in obj.values],
    }


def report_serializer(obj) -> Dict[str, Any]:
    return obj.as_dict()


def dumps(data):
    return json.dumps(data, indent=2) + "\n"


def loads(text, what="JSON document"):
    try:
        return json.loads(text)
    except ValueError as e:
        raise ValidationError(f"{what} is not valid JSON: {e}", code=ERROR_CONVERSION)


def load_json_file(path):
    """Parse a JSON file. OSError is left to the caller."""
    with open(path, encoding="utf-8") as f:
        try:
            text = f.read()
        except UnicodeDecodeError as e:
            raise ValidationError(f"{path} is not UTF-8 text: {e}", code=ERROR_CONVERSION)
    return loads(text, what=str(path))


def sweep_to_csv(curve, unit="nats", digits=None):
    return sweep_to_frame(curve, unit).to_csv(index=False, float_format=float_format(digits), lineterminator="\n")


def scan_to_csv(result, unit="nats", digits=None):
    return pd.DataFrame([scan_result_serializer(result, unit)]).to_csv(
        index=False, float_format=float_format(digits), lineterminator="\n",
    )
