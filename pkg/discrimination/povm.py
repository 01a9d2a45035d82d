"""POVM values and the transforms used to reduce any detection strategy for a
real symmetric source to a real, rank-1, covariant one: realification, rank-1
refinement, group shifting and convex combination with amalgamation of
parallel elements.
"""
from collections import namedtuple
from dataclasses import dataclass
from typing import Tuple
from django.core.exceptions import ValidationError
import logging
import math
import numpy as np

from . import matcore
from .lookups import (
    ANGLE_TOL,
    DEFAULT_TOL,
    PRIOR_TOL,
    ERROR_CONTRACT,
    ERROR_CONVERSION,
    ERROR_DIMENSION,
    ERROR_INVALID,
)

LOGGER = logging.getLogger("accinfo")

Violation = namedtuple("Violation", ["index", "property", "detail"])


@dataclass(frozen=True)
class Povm:
    elements: Tuple[np.ndarray, ...]
    dim: int

    def __post_init__(self):
        elements = tuple(matcore.frozen(matcore.as_cmat(e)) for e in self.elements)
        if not elements:
            raise ValidationError("A POVM needs at least one element", code=ERROR_INVALID)
        for i, e in enumerate(elements):
            if e.shape != (self.dim, self.dim):
                raise ValidationError(
                    f"Element {i} has shape {e.shape}, expected dimension {self.dim}",
                    code=ERROR_DIMENSION,
                )
        object.__setattr__(self, "elements", elements)

    @classmethod
    def from_elements(cls, elements, tol=DEFAULT_TOL):
        """Build a POVM, silently dropping elements of trace <= tol."""
        elements = [np.asarray(e, dtype=complex) for e in elements]
        kept = [e for e in elements if matcore.trace(e).real > tol]
        return cls(elements=kept, dim=elements[0].shape[0])

    def __len__(self):
        return len(self.elements)

    def total(self):
        return sum(self.elements, np.zeros((self.dim, self.dim), dtype=complex))


def validate(p, tol=DEFAULT_TOL):
    """Return a list of violations; empty when every element is hermitian and
    positive and the elements resolve the identity.
    """
    violations = []
    for i, element in enumerate(p.elements):
        if not matcore.is_hermitian(element, tol):
            violations.append(Violation(i, "hermitian", f"max |A - A^+| = {matcore.max_norm(element - matcore.adjoint(element)):.3g}"))
            continue
        lowest = matcore.min_eigenvalue(element, tol)
        if lowest < -tol:
            violations.append(Violation(i, "positive", f"min eigenvalue {lowest:.3g}"))
    deviation = matcore.max_norm(p.total() - np.eye(p.dim))
    if deviation > tol:
        violations.append(Violation(None, "identity", f"max |sum - I| = {deviation:.3g}"))
    return violations


def assert_valid(p, tol=DEFAULT_TOL, context="POVM"):
    violations = validate(p, tol)
    if violations:
        first = violations[0]
        raise ValidationError(
            f"{context} is not a valid POVM: element {first.index} fails {first.property} ({first.detail})",
            code=ERROR_CONTRACT,
        )
    return p


def element_count_bound(dim, real=True):
    """Largest element count of an extreme-point POVM: d(d+1)/2 for real
    ensembles, d^2 otherwise.
    """
    return dim * (dim + 1) // 2 if real else dim * dim


def realify(p, tol=DEFAULT_TOL):
    """Replace every element by its entrywise real part.

    For a real ensemble the channel matrix is unchanged, since Tr(A rho) = Tr(Re(A) rho)
    whenever rho is real symmetric.
    """
    result = Povm(elements=[np.real(e) for e in p.elements], dim=p.dim)
    return assert_valid(result, tol, context="Realified POVM")


def refine_rank1(p, tol=DEFAULT_TOL):
    """Split every element into its eigenvalue-weighted eigenprojectors."""
    elements = []
    for element in p.elements:
        for value, vector in matcore.hermitian_eigen(element, tol):
            if value > tol:
                elements.append(value * matcore.projector(vector))
    result = Povm(elements=elements, dim=p.dim)
    return assert_valid(result, tol, context="Rank-1 refinement")


def shift(p, g, l, tol=DEFAULT_TOL):
    """Conjugate every element by V^l, V being the source symmetry generator."""
    if p.dim != 2:
        raise ValidationError(f"Shifts act on qubit POVMs, got dimension {p.dim}", code=ERROR_DIMENSION)
    V = g.power(l)
    Vd = matcore.adjoint(V)
    result = Povm(elements=[V @ e @ Vd for e in p.elements], dim=p.dim)
    return assert_valid(result, tol, context="Shifted POVM")


def rank1_direction(element, tol=DEFAULT_TOL):
    """Unit direction of a rank-1 element, or None when the element has higher rank.
    Rank 1 means the second eigenvalue is at most tol * (first + 1).
    """
    eigenpairs = matcore.hermitian_eigen(element, tol)
    top_value, top_vector = eigenpairs[0]
    if len(eigenpairs) > 1 and eigenpairs[1][0] > tol * (top_value + 1):
        return None
    return top_vector


def angle_between(u, v):
    """Projective angle between two unit vectors, in [0, pi/2]."""
    residual = v - (np.conj(u) @ v) * u
    return math.asin(min(1.0, float(np.linalg.norm(residual))))


def convex_combine(terms, angle_tol=ANGLE_TOL, tol=DEFAULT_TOL):
    """Weighted union of several POVMs.

    Rank-1 elements whose directions agree within ``angle_tol`` (projectively) are
    summed into one element, in order of first appearance.
    """
    terms = list(terms)
    if not terms:
        raise ValidationError("Nothing to combine", code=ERROR_INVALID)
    for i, (weight, _) in enumerate(terms):
        if weight < 0:
            raise ValidationError(f"Weight {i} is negative ({weight})", code=ERROR_INVALID)
    total = sum(weight for weight, _ in terms)
    if abs(total - 1) > PRIOR_TOL:
        raise ValidationError(f"Weights sum to {total!r}, not 1", code=ERROR_INVALID)
    dims = {p.dim for _, p in terms}
    if len(dims) != 1:
        raise ValidationError(f"Cannot combine POVMs of dimensions {sorted(dims)}", code=ERROR_DIMENSION)

    merged = []  # [element, direction or None]
    for weight, p in terms:
        if weight == 0:
            continue
        for element in p.elements:
            element = weight * np.asarray(element)
            if matcore.trace(element).real <= tol:
                continue
            direction = rank1_direction(element, tol)
            if direction is not None:
                for slot, entry in enumerate(merged):
                    if entry[1] is not None and angle_between(entry[1], direction) <= angle_tol:
                        entry[0] = entry[0] + element
                        LOGGER.debug("Amalgamated parallel element into slot %d", slot)
                        break
                else:
                    merged.append([element, direction])
            else:
                merged.append([element, None])
    result = Povm(elements=[entry[0] for entry in merged], dim=dims.pop())
    return assert_valid(result, tol, context="Convex combination")


def group_average(p, g, angle_tol=ANGLE_TOL, tol=DEFAULT_TOL):
    """Uniform mixture of the M shifts V^l p V^-l, parallel elements amalgamated.

    The result is covariant under the source symmetry and, for E_M, carries the
    same mutual information as ``p``.
    """
    return convex_combine([(1 / g.M, shift(p, g, l, tol)) for l in range(g.M)], angle_tol=angle_tol, tol=tol)


def tensor_product(p, q, tol=DEFAULT_TOL):
    """Product measurement {A (x) B}, outcomes ordered with ``p`` major."""
    elements = [matcore.tensor_op(a, b) for a in p.elements for b in q.elements]
    result = Povm(elements=elements, dim=p.dim * q.dim)
    return assert_valid(result, tol, context="Product POVM")


@dataclass(frozen=True)
class Rank1Real:
    """Real qubit POVM with rank-1 elements weight * |a><a|, |a> = (cos angle, sin angle)."""
    weights: Tuple[float, ...]
    angles: Tuple[float, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.angles):
            raise ValidationError(
                f"{len(self.weights)} weights but {len(self.angles)} angles",
                code=ERROR_INVALID,
            )
        for i, weight in enumerate(self.weights):
            if not 0 < weight <= 2 + DEFAULT_TOL:
                raise ValidationError(f"Weight {i} must lie in (0, 2], got {weight!r}", code=ERROR_INVALID)
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "angles", tuple(_reduce_angle(a) for a in self.angles))

    def to_povm(self):
        return Povm(
            elements=[w * matcore.projector(matcore.real_direction(a)) for w, a in zip(self.weights, self.angles)],
            dim=2,
        )

    def is_valid(self, tol=DEFAULT_TOL):
        if abs(sum(self.weights) - 2) > tol:
            return False
        return not validate(self.to_povm(), tol)

    def check(self, tol=DEFAULT_TOL):
        if not self.is_valid(tol):
            raise ValidationError(
                f"Weights {self.weights} at angles {self.angles} do not resolve the identity",
                code=ERROR_INVALID,
            )
        return self


def _reduce_angle(angle):
    reduced = float(np.mod(angle, math.pi))
    return 0.0 if reduced >= math.pi else reduced


def from_rank1_real(r):
    return r.to_povm()


def to_rank1_real(p, tol=DEFAULT_TOL):
    """Express a real qubit POVM with rank-1 elements as (weights, angles)."""
    if p.dim != 2:
        raise ValidationError(f"Only qubit POVMs have a rank-1 real form, got dimension {p.dim}", code=ERROR_CONVERSION)
    weights, angles = [], []
    for i, element in enumerate(p.elements):
        direction = rank1_direction(element, tol)
        if direction is None:
            raise ValidationError(f"Element {i} is not rank 1", code=ERROR_CONVERSION)
        # Remove the global phase before testing for a real direction.
        pivot = direction[np.argmax(np.abs(direction))]
        direction = direction * np.conj(pivot) / abs(pivot)
        if np.max(np.abs(direction.imag)) > tol:
            raise ValidationError(f"Element {i} does not have a real direction", code=ERROR_CONVERSION)
        weights.append(matcore.trace(element).real)
        angles.append(math.atan2(direction[1].real, direction[0].real))
    return Rank1Real(weights=weights, angles=angles)
