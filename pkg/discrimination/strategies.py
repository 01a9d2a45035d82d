"""Constructors for the optimal detection strategies of the symmetric sources E_M.

All POVMs here are real with rank-1 elements whose directions sit at
pi/2 + integer * pi/M, which makes every one of them reach the accessible
information i_theta(M, pi/2).
"""
from dataclasses import dataclass
from django.core.exceptions import ValidationError
import logging
import math
import numpy as np

from . import matcore
from .ensembles import rotation_gen, signal_vector
from .lookups import ANGLE_TOL, DEFAULT_TOL, FEASIBILITY_TOL, ERROR_INFEASIBLE, ERROR_INVALID
from .measures import i_theta
from .povm import Povm, assert_valid, convex_combine, group_average, shift

LOGGER = logging.getLogger("accinfo")


def _check_m(M, minimum=2):
    if not isinstance(M, (int, np.integer)) or M < minimum:
        raise ValidationError(f"M must be an integer >= {minimum}, got {M!r}", code=ERROR_INVALID)


def _element(weight, angle):
    return weight * matcore.projector(matcore.real_direction(angle))


def covariant_povm(M, theta):
    """M elements (2/M)|a_j><a_j|, a_j = V^j a_0 with a_0 at angle ``theta``.

    I(E_M : result) = i_theta(M, theta).
    """
    _check_m(M)
    if not math.isfinite(theta):
        raise ValidationError(f"theta must be a finite angle, got {theta!r}", code=ERROR_INVALID)
    elements = [_element(2 / M, theta + j * math.pi / M) for j in range(M)]
    return assert_valid(Povm(elements=elements, dim=2), context=f"Covariant POVM for M={M}, theta={theta:.6g}")


def covariant_am(M):
    """The optimal covariant POVM: a_j orthogonal to the signal psi_j."""
    return covariant_povm(M, math.pi / 2)


@dataclass(frozen=True)
class W3Params:
    """Weights of the 3-element optimal POVM W(m, n) for E_M."""
    M: int
    m: int
    n: int
    a2: float
    b2: float
    c2: float

    @property
    def element_count(self):
        return sum(1 for w in (self.a2, self.b2, self.c2) if w > DEFAULT_TOL)

    def weight_key(self, digits=9):
        return tuple(sorted(round(w, digits) for w in (self.a2, self.b2, self.c2)))


def w3_params(M, m, n, tol=FEASIBILITY_TOL):
    """Solve for (a^2, b^2, c^2) and check feasibility; raises ValidationError naming
    the violated inequality.
    """
    if M <= 2:
        raise ValidationError(f"The 3-element construction needs M > 2, got {M}", code=ERROR_INVALID)
    if m < 1 or n < 1:
        raise ValidationError(f"m and n must be positive integers, got m={m}, n={n}", code=ERROR_INVALID)
    sin_m = math.sin(m * math.pi / M)
    sin_n = math.sin(n * math.pi / M)
    sin_mn = math.sin((m + n) * math.pi / M)
    if abs(sin_m) < tol or abs(sin_n) < tol or abs(sin_mn) < tol:
        raise ValidationError(
            f"W(m={m}, n={n}) is undefined for M={M}: sin(m pi/M), sin(n pi/M) and sin((m+n) pi/M) must be non-zero",
            code=ERROR_INFEASIBLE,
        )
    a2 = math.cos(n * math.pi / M) / (sin_m * sin_mn)
    b2 = math.cos(m * math.pi / M) / (sin_n * sin_mn)
    if a2 < -tol:
        raise ValidationError(f"W(m={m}, n={n}) for M={M} violates a^2 >= 0 (a^2 = {a2:.6g})", code=ERROR_INFEASIBLE)
    if b2 < -tol:
        raise ValidationError(f"W(m={m}, n={n}) for M={M} violates b^2 >= 0 (b^2 = {b2:.6g})", code=ERROR_INFEASIBLE)
    if a2 + b2 > 2 + tol:
        raise ValidationError(f"W(m={m}, n={n}) for M={M} violates a^2 + b^2 <= 2 (sum = {a2 + b2:.6g})", code=ERROR_INFEASIBLE)
    a2, b2 = max(a2, 0.0), max(b2, 0.0)
    return W3Params(M=M, m=m, n=n, a2=a2, b2=b2, c2=max(2 - a2 - b2, 0.0))


def theorem2_w(M, m, n):
    """The optimal POVM with at most three real rank-1 elements.

    omega_0 = (0, c), omega_1 = a(-sin(m pi/M), cos(m pi/M)), omega_2 = b(sin(n pi/M), cos(n pi/M));
    zero-norm elements are dropped.
    """
    params = w3_params(M, m, n)
    vectors = [
        np.array([0.0, math.sqrt(params.c2)]),
        math.sqrt(params.a2) * np.array([-math.sin(m * math.pi / M), math.cos(m * math.pi / M)]),
        math.sqrt(params.b2) * np.array([math.sin(n * math.pi / M), math.cos(n * math.pi / M)]),
    ]
    povm = Povm.from_elements([matcore.projector(v) for v in vectors])
    return assert_valid(povm, context=f"W(m={m}, n={n}) for M={M}")


def feasible_pairs(M):
    """Every feasible (m, n) with 1 <= m, n <= M-1, as W3Params."""
    _check_m(M, minimum=3)
    pairs = []
    for m in range(1, M):
        for n in range(1, M):
            try:
                pairs.append(w3_params(M, m, n))
            except ValidationError:
                continue
    LOGGER.debug("Found %d feasible (m, n) pairs for M=%d", len(pairs), M)
    return pairs


def w_classes(M):
    """Feasible pairs grouped by their sorted weight multiset.

    Different classes are not equivalent under the source symmetry; no claim is
    made that the grouping captures every inequivalence.
    """
    classes = {}
    for params in feasible_pairs(M):
        classes.setdefault(params.weight_key(), []).append(params)
    return classes


def subgroup_povm(M, k, l):
    """k elements (2/k)|a><a| at angles pi/2 + (l + j M/k) pi/M, for a subgroup Z_k of Z_M."""
    _check_m(M)
    if k < 2:
        raise ValidationError(f"k must be at least 2, got {k}", code=ERROR_INVALID)
    if M % k:
        raise ValidationError(f"k={k} does not divide M={M}", code=ERROR_INVALID)
    stride = M // k
    if not 0 <= l < stride:
        raise ValidationError(f"l must lie in [0, {stride}), got {l}", code=ERROR_INVALID)
    elements = [_element(2 / k, math.pi / 2 + (l + j * stride) * math.pi / M) for j in range(k)]
    return assert_valid(Povm(elements=elements, dim=2), context=f"Subgroup POVM M={M}, k={k}, l={l}")


def von_neumann_pair(M):
    """Orthogonal pair of signal directions, optimal for even M."""
    _check_m(M)
    if M % 2:
        raise ValidationError(f"An orthogonal pair of signals needs even M, got {M}", code=ERROR_INVALID)
    return subgroup_povm(M, 2, 0)


def lemma7_check(M, r, tol=DEFAULT_TOL):
    """True iff every angle equals pi/2 + integer * pi/M within tol."""
    step = math.pi / M
    for angle in r.angles:
        residual = (angle - math.pi / 2) % step
        if min(residual, step - residual) > tol:
            return False
    return True


def mu4_povm(lam, angle_tol=ANGLE_TOL):
    """(1 - lam) W + lam V^2 W V^2+ for M=5, amalgamating parallel elements."""
    if not 0 <= lam <= 1:
        raise ValidationError(f"lambda must lie in [0, 1], got {lam!r}", code=ERROR_INVALID)
    w = theorem2_w(5, 2, 2)
    shifted = shift(w, rotation_gen(5), 2)
    return convex_combine([(1 - lam, w), (lam, shifted)], angle_tol=angle_tol)


def covariant_from_w(M, m, n, angle_tol=ANGLE_TOL):
    """Uniform combination of all M shifts of W(m, n); parallel elements amalgamate
    into the covariant M-element POVM.
    """
    return group_average(theorem2_w(M, m, n), rotation_gen(M), angle_tol=angle_tol)


def state_direction_povm(M):
    """{(2/M)|psi_k><psi_k|}: the minimum-error strategy for E_M."""
    _check_m(M)
    elements = [(2 / M) * matcore.projector(signal_vector(M, k)) for k in range(M)]
    return assert_valid(Povm(elements=elements, dim=2), context=f"State-direction POVM for M={M}")


def accessible_information(M):
    """Accessible information of E_M, reached by every constructor in this module."""
    return i_theta(M, math.pi / 2)
