"""Scalar figures of merit of a detection strategy: channel matrix, Shannon
mutual information (direct and closed forms), Bayes cost, error probability
and the minimum-error optimality certificate.

Information is always in nats; conversion to bits happens at the output
boundary (see ``accinfo.utils.convert_information``).
"""
from collections import namedtuple
from django.core.exceptions import ValidationError
import math
import numpy as np

from . import matcore
from .lookups import (
    DEFAULT_TOL,
    PROBABILITY_FLOOR,
    ZERO_PROBABILITY,
    ERROR_CONTRACT,
    ERROR_DIMENSION,
    ERROR_INVALID,
)

Check = namedtuple("Check", ["name", "passed", "detail"])


class Report:
    """Ordered collection of named pass/fail checks."""

    def __init__(self, checks=None):
        self.checks = list(checks or [])

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return f"<Report passed={self.passed} checks={len(self.checks)}>"

    def as_dict(self):
        return {
            "passed": self.passed,
            "checks": [check._asdict() for check in self.checks],
        }


def _check_dims(e, p):
    if e.dim != p.dim:
        raise ValidationError(f"Ensemble dimension {e.dim} does not match POVM dimension {p.dim}", code=ERROR_DIMENSION)


def channel_matrix(e, p):
    """P(j|i) = Tr(pi_j rho_i), rows indexed by outcome j, columns by input i.

    Pure sources with known vectors use <psi_i|pi_j|psi_i> directly.
    """
    _check_dims(e, p)
    elements = np.array(p.elements)
    if e.vectors is not None:
        vectors = np.array(e.vectors)
        channel = np.einsum("ia,jab,ib->ji", np.conj(vectors), elements, vectors).real
    else:
        channel = np.einsum("jab,iba->ji", elements, np.array(e.states)).real
    if channel.min() < -PROBABILITY_FLOOR:
        raise ValidationError(
            f"Negative conditional probability {channel.min():.3g}; the POVM is not positive",
            code=ERROR_CONTRACT,
        )
    return np.clip(channel, 0.0, 1.0)


def output_distribution(e, p):
    return channel_matrix(e, p) @ np.array(e.priors)


def mutual_information_from_channel(channel, priors):
    """Shannon mutual information (nats) of a channel matrix P(j|i) with input priors."""
    channel = np.asarray(channel, dtype=float)
    priors = np.asarray(priors, dtype=float)
    marginal = channel @ priors
    joint = channel * priors[np.newaxis, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = channel / marginal[:, np.newaxis]
    mask = (joint > ZERO_PROBABILITY) & (marginal[:, np.newaxis] > ZERO_PROBABILITY)
    value = float(np.sum(joint[mask] * np.log(ratio[mask])))
    return max(value, 0.0)


def mutual_information(e, p):
    """I(X:Y) in nats for source ``e`` measured with ``p``."""
    return mutual_information_from_channel(channel_matrix(e, p), e.priors)


def _xlogx(x):
    """x ln x with the x -> 0 limit taken as 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    mask = x > ZERO_PROBABILITY
    out[mask] = x[mask] * np.log(x[mask])
    return out


def i_theta(M, theta):
    """Mutual information of E_M with the covariant POVM seeded at angle theta.

    Accepts scalar or array ``theta``; periodic with period pi/M and maximal at pi/2.
    """
    return i_theta_mixed(M, theta, 0.0)


def i_theta_mixed(M, theta, eps):
    """``i_theta`` for the noisy source, cosines damped by (1 - eps)."""
    if M < 2:
        raise ValidationError(f"M must be at least 2, got {M!r}", code=ERROR_INVALID)
    if not 0 <= eps <= 1:
        raise ValidationError(f"eps must lie in [0, 1], got {eps!r}", code=ERROR_INVALID)
    theta = np.asarray(theta, dtype=float)
    k = np.arange(M)
    x = 1 + (1 - eps) * np.cos(2 * theta[..., np.newaxis] - 2 * k * math.pi / M)
    value = np.sum(_xlogx(x), axis=-1) / M
    return float(value) if value.ndim == 0 else value


def lemma6_info(M, r):
    """Mutual information of E_M with a real rank-1 POVM: sum of weight/2 * i_theta(angle)."""
    r.check()
    return float(sum(weight / 2 * i_theta(M, angle) for weight, angle in zip(r.weights, r.angles)))


def bayes_cost(e, p, c):
    """Average cost sum_ij C_ij xi_i P(j|i) for a cost matrix shaped inputs x outputs."""
    c = np.asarray(c, dtype=float)
    if c.shape != (len(e), len(p)):
        raise ValidationError(
            f"Cost matrix has shape {c.shape}, expected {(len(e), len(p))}",
            code=ERROR_INVALID,
        )
    if not np.all(np.isfinite(c)):
        raise ValidationError("Cost matrix has non-finite entries", code=ERROR_INVALID)
    channel = channel_matrix(e, p)
    return float(np.sum(c * np.array(e.priors)[:, np.newaxis] * channel.T))


def error_probability(e, p):
    """P_e = 1 - sum_k xi_k P(k|k); outcome k is the guess for input k."""
    if len(p) != len(e):
        raise ValidationError(
            f"Error probability needs one outcome per input: {len(p)} elements for {len(e)} states",
            code=ERROR_INVALID,
        )
    channel = channel_matrix(e, p)
    value = 1 - float(np.dot(np.array(e.priors), np.diag(channel)))
    return min(max(value, 0.0), 1.0)


def check_pe_optimal(e, p, tol=DEFAULT_TOL):
    """Minimum-error optimality certificate (Holevo/Helstrom conditions).

    With Gamma = sum_k xi_k rho_k pi_k, the POVM minimises P_e iff Gamma is
    hermitian and Gamma - xi_j rho_j is positive semidefinite for every j.
    """
    report = Report()
    if len(p) != len(e) or p.dim != e.dim:
        report.add("shape", False, f"{len(p)} elements of dimension {p.dim} for {len(e)} states of dimension {e.dim}")
        return report
    gamma = sum(xi * rho @ pi for xi, rho, pi in zip(e.priors, e.states, p.elements))
    asymmetry = matcore.max_norm(gamma - matcore.adjoint(gamma))
    report.add("gamma_hermitian", asymmetry <= tol, f"max |G - G^+| = {asymmetry:.3g}")
    if asymmetry > tol:
        return report
    gamma = (gamma + matcore.adjoint(gamma)) / 2
    for j, (xi, rho) in enumerate(zip(e.priors, e.states)):
        lowest = matcore.min_eigenvalue(gamma - xi * rho, tol)
        report.add(f"gamma_minus_state_{j}", lowest >= -tol, f"min eigenvalue {lowest:.3g}")
    return report
