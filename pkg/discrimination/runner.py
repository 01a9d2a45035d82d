"""Dispatch of the command-line verbs.

A ``RunConfig`` is built by each management command from its parsed options;
``run`` evaluates it and returns the exit status together with the serialized
artifact. Information values stay in nats until they are serialized.
"""
from dataclasses import dataclass, replace
from typing import Optional
from django.conf import settings
from django.core.exceptions import ValidationError
import logging
import math

from accinfo.utils import UNIT_CHOICES, convert_information, write_output
from receiver.naimark import build_plan, sample_counts, simulate, simulated_information, verify_dilation
from receiver.serializers import detection_stats_serializer, detection_stats_to_csv, plan_serializer

from . import serializers
from .ensembles import make_double_em, make_mixed_em
from .lookups import (
    FAMILY_COVARIANT,
    FAMILY_COVARIANT_FROM_W,
    FAMILY_GENERAL_W,
    FAMILY_MU4,
    FAMILY_PAIRS,
    FAMILY_STATE_DIRECTIONS,
    FAMILY_SUBGROUP,
    FAMILY_VON_NEUMANN,
    FAMILY_W,
    FORMAT_CSV,
    FORMAT_JSON,
    FORMAT_RANK1,
    ERROR_INVALID,
)
from .measures import check_pe_optimal, error_probability, i_theta_mixed, mutual_information, output_distribution
from .oracle import DEFAULT_REFINE_ITERS, build_general_w, scan3, theta_sweep
from .povm import element_count_bound, tensor_product, to_rank1_real, validate
from .strategies import (
    covariant_am,
    covariant_povm,
    covariant_from_w,
    feasible_pairs,
    lemma7_check,
    mu4_povm,
    state_direction_povm,
    subgroup_povm,
    theorem2_w,
    von_neumann_pair,
    w_classes,
)

LOGGER = logging.getLogger("accinfo")

COMMANDS = ("info", "sweep", "scan", "construct", "naimark", "pe-check", "validate")
DEFAULT_FORMATS = {"sweep": FORMAT_CSV}
DEFAULT_FAMILIES = {"info": FAMILY_COVARIANT, "pe-check": FAMILY_STATE_DIRECTIONS}

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_IO = 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    M: Optional[int] = None
    unit: str = "nats"
    output_path: Optional[str] = None
    format: Optional[str] = None
    family: Optional[str] = None
    m: Optional[int] = None
    n: Optional[int] = None
    k: Optional[int] = None
    l: Optional[int] = None  # noqa: E741
    eps: float = 0.0
    double: bool = False
    lam: Optional[float] = None
    theta: Optional[float] = None
    phi_a: Optional[float] = None
    phi_b: Optional[float] = None
    points: Optional[int] = None
    grid_n: Optional[int] = None
    refine_iters: int = DEFAULT_REFINE_ITERS
    shots: Optional[int] = None
    seed: Optional[int] = None
    ensemble_file: Optional[str] = None
    povm_file: Optional[str] = None
    file: Optional[str] = None

    @property
    def output_format(self):
        return self.format or DEFAULT_FORMATS.get(self.command, FORMAT_JSON)


@dataclass(frozen=True)
class RunResult:
    status: int
    output: str = ""
    message: str = ""


def _need(config, *names):
    missing = [name for name in names if getattr(config, name) is None]
    if missing:
        flags = ", ".join("--" + name.replace("_", "-") for name in missing)
        what = " ".join(filter(None, [config.command, config.family]))
        raise ValidationError(f"{what} needs {flags}", code=ERROR_INVALID)


def _formats(config, *allowed):
    if config.output_format not in allowed:
        raise ValidationError(
            f"{config.command} writes {' or '.join(allowed)}, not {config.output_format}",
            code=ERROR_INVALID,
        )
    return config.output_format


def build_family(config):
    """POVM of the requested strategy family for E_M."""
    family = config.family
    _need(config, "M")
    M = config.M
    if family == FAMILY_COVARIANT:
        return covariant_am(M) if config.theta is None else covariant_povm(M, config.theta)
    if family == FAMILY_W:
        _need(config, "m", "n")
        return theorem2_w(M, config.m, config.n)
    if family == FAMILY_SUBGROUP:
        _need(config, "k")
        return subgroup_povm(M, config.k, config.l or 0)
    if family == FAMILY_MU4:
        _need(config, "lam")
        if M != 5:
            raise ValidationError(f"The mu4 family is built for M=5, got M={M}", code=ERROR_INVALID)
        return mu4_povm(config.lam)
    if family == FAMILY_COVARIANT_FROM_W:
        _need(config, "m", "n")
        return covariant_from_w(M, config.m, config.n)
    if family == FAMILY_GENERAL_W:
        _need(config, "theta", "phi_a", "phi_b")
        return build_general_w(config.theta, config.phi_a, config.phi_b)
    if family == FAMILY_STATE_DIRECTIONS:
        return state_direction_povm(M)
    if family == FAMILY_VON_NEUMANN:
        return von_neumann_pair(M)
    raise ValidationError(f"Unknown strategy family {family!r}", code=ERROR_INVALID)


def _angles_on_lattice(M, povm):
    if povm.dim != 2:
        return None
    try:
        return lemma7_check(M, to_rank1_real(povm))
    except ValidationError:
        return None


def _info(config):
    _formats(config, FORMAT_JSON)
    _need(config, "M")
    if config.double and (config.ensemble_file or config.eps):
        raise ValidationError("--double takes neither --ensemble-file nor --eps", code=ERROR_INVALID)
    if config.ensemble_file:
        ensemble = serializers.ensemble_from_dict(serializers.load_json_file(config.ensemble_file))
        accessible = None
    elif config.double:
        ensemble = make_double_em(config.M)
        accessible = None
        LOGGER.warning("Exploratory run on the two-copy source for M=%d; values are not claimed optimal", config.M)
    else:
        ensemble = make_mixed_em(config.M, config.eps)
        accessible = convert_information(i_theta_mixed(config.M, math.pi / 2, config.eps), config.unit)
    if config.povm_file:
        povm = serializers.povm_from_dict(serializers.load_json_file(config.povm_file))
        family = None
    else:
        povm = build_family(config)
        family = config.family
        if config.double:
            povm = tensor_product(povm, povm)
    data = {
        "M": config.M,
        "family": family,
        "source": "double" if config.double else "single",
        "eps": config.eps,
        "unit": config.unit,
        "accessible_information": accessible,
        "mutual_information": convert_information(mutual_information(ensemble, povm), config.unit),
        "error_probability": error_probability(ensemble, povm) if len(povm) == len(ensemble) else None,
        "output_distribution": [float(x) for x in output_distribution(ensemble, povm)],
        "element_count": len(povm),
        "element_count_bound": element_count_bound(povm.dim, real=ensemble.is_real),
        "angles_on_optimal_lattice": _angles_on_lattice(config.M, povm),
    }
    return EXIT_OK, serializers.dumps(data), ""


def _sweep(config):
    output_format = _formats(config, FORMAT_CSV, FORMAT_JSON)
    _need(config, "M", "points")
    curve = theta_sweep(config.M, config.points, config.eps)
    if output_format == FORMAT_CSV:
        return EXIT_OK, serializers.sweep_to_csv(curve, config.unit), ""
    return EXIT_OK, serializers.dumps(serializers.sweep_serializer(curve, config.unit)), ""


def _scan(config):
    output_format = _formats(config, FORMAT_JSON, FORMAT_CSV)
    _need(config, "M", "grid_n")
    result = scan3(config.M, config.grid_n, config.refine_iters)
    if output_format == FORMAT_CSV:
        return EXIT_OK, serializers.scan_to_csv(result, config.unit), ""
    return EXIT_OK, serializers.dumps(serializers.scan_result_serializer(result, config.unit)), ""


def _construct(config):
    output_format = _formats(config, FORMAT_JSON, FORMAT_RANK1)
    if config.family == FAMILY_PAIRS:
        _need(config, "M")
        data = {
            "M": config.M,
            "pairs": [serializers.w3_params_serializer(params) for params in feasible_pairs(config.M)],
            "class_count": len(w_classes(config.M)),
        }
        return EXIT_OK, serializers.dumps(data), ""
    povm = build_family(config)
    if output_format == FORMAT_RANK1:
        return EXIT_OK, serializers.dumps(serializers.povm_to_dict(povm, compact=True)), ""
    data = {"family": config.family, "M": config.M}
    data.update(serializers.povm_serializer(povm))
    data["weights"] = [float(element.trace().real) for element in povm.elements]
    return EXIT_OK, serializers.dumps(data), ""


def _pe_check(config):
    _formats(config, FORMAT_JSON)
    _need(config, "M")
    ensemble = make_mixed_em(config.M, config.eps)
    povm = build_family(config)
    report = check_pe_optimal(ensemble, povm)
    data = {
        "M": config.M,
        "family": config.family,
        "eps": config.eps,
        "error_probability": error_probability(ensemble, povm) if len(povm) == len(ensemble) else None,
    }
    data.update(serializers.report_serializer(report))
    if report.passed:
        return EXIT_OK, serializers.dumps(data), ""
    failed = ", ".join(check.name for check in report.failures())
    return EXIT_PRECONDITION, serializers.dumps(data), f"Minimum-error conditions fail: {failed}"


def _naimark(config):
    output_format = _formats(config, FORMAT_JSON, FORMAT_CSV)
    _need(config, "M", "m")
    plan = build_plan(config.M, config.m)
    theta = config.theta if config.theta is not None else 0.0
    stats = simulate(plan, theta)
    if output_format == FORMAT_CSV:
        return EXIT_OK, detection_stats_to_csv(stats), ""
    counts = None
    if config.shots is not None:
        seed = config.seed if config.seed is not None else settings.DEFAULT_SEED
        counts = sample_counts(stats, config.shots, seed)
    report = verify_dilation(plan)
    data = {
        "plan": plan_serializer(plan),
        "verification": serializers.report_serializer(report),
        "input_theta": theta,
        "detection": detection_stats_serializer(stats, counts),
        f"information_{config.unit}": convert_information(simulated_information(plan), config.unit),
    }
    return EXIT_OK, serializers.dumps(data), ""


def _validate(config):
    _formats(config, FORMAT_JSON)
    _need(config, "file")
    povm = serializers.povm_from_dict(serializers.load_json_file(config.file))
    violations = validate(povm)
    data = {
        "valid": not violations,
        "dim": povm.dim,
        "element_count": len(povm),
        "violations": [violation._asdict() for violation in violations],
    }
    if not violations:
        return EXIT_OK, serializers.dumps(data), ""
    first = violations[0]
    return EXIT_PRECONDITION, serializers.dumps(data), f"Not a valid POVM: element {first.index} fails {first.property}"


HANDLERS = {
    "info": _info,
    "sweep": _sweep,
    "scan": _scan,
    "construct": _construct,
    "naimark": _naimark,
    "pe-check": _pe_check,
    "validate": _validate,
}


def run(config):
    """Evaluate one command. Status 0 on success, 1 for a violated precondition,
    2 when a file cannot be read or written.
    """
    LOGGER.info("Running %s for M=%s", config.command, config.M)
    try:
        if config.command not in HANDLERS:
            raise ValidationError(f"Unknown command {config.command!r}; expected one of {', '.join(COMMANDS)}", code=ERROR_INVALID)
        if config.unit not in dict(UNIT_CHOICES):
            raise ValidationError(f"Unknown information unit {config.unit!r}", code=ERROR_INVALID)
        if config.family is None and config.command in DEFAULT_FAMILIES:
            config = replace(config, family=DEFAULT_FAMILIES[config.command])
        status, output, message = HANDLERS[config.command](config)
        write_output(output, config.output_path)
    except ValidationError as e:
        message = "; ".join(e.messages)
        LOGGER.warning("%s failed: %s", config.command, message)
        return RunResult(status=EXIT_PRECONDITION, message=message)
    except OSError as e:
        LOGGER.error("%s failed: %s", config.command, e)
        return RunResult(status=EXIT_IO, message=str(e))
    LOGGER.info("Finished %s with status %d", config.command, status)
    return RunResult(status=status, output=output, message=message)
