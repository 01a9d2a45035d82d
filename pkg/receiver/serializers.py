from typing import Dict, Any
import pandas as pd

from accinfo.utils import float_format
from discrimination.serializers import matrix_to_list, vector_to_list

from .naimark import circuit_unitary


def plan_serializer(obj) -> Dict[str, Any]:
    return {
        "M": obj.M,
        "m": obj.m,
        "gamma": obj.gamma,
        "cos_half_gamma": obj.cos_half,
        "sin_half_gamma": obj.sin_half,
        "omega_vecs": [vector_to_list(v) for v in obj.omega_vecs],
        "Omega_vecs": [vector_to_list(v) for v in obj.Omega_vecs],
        "U1": matrix_to_list(obj.U1),
        "U2": matrix_to_list(obj.U2),
        "circuit": matrix_to_list(circuit_unitary(obj)),
        # JSON object keys are strings.
        "outcome_map": {f"E{port}": outcome for port, outcome in sorted(obj.outcome_map.items())},
    }


def detection_stats_serializer(obj, counts=None) -> Dict[str, Any]:
    data = {"probs": list(obj.probs)}
    if counts is not None:
        data["counts"] = list(counts)
    return data


def detection_stats_to_frame(obj):
    return pd.DataFrame({"port": range(len(obj.probs)), "probability": obj.probs})


def detection_stats_to_csv(obj, digits=None):
    return detection_stats_to_frame(obj).to_csv(index=False, float_format=float_format(digits), lineterminator="\n")
