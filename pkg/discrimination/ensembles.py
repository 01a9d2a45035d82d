"""Information sources.

An ``Ensemble`` is a list of density matrices with prior probabilities. The
symmetric sources E_M hold M equiprobable real qubit states spaced by pi/M
around the real great circle of the Bloch sphere:

    psi_k = (cos(k pi / M), sin(k pi / M)),  k = 0..M-1

States are always stored as density matrices so pure and noisy sources share
one code path; the pure vectors are kept alongside when known.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple
from django.core.exceptions import ValidationError
import math
import numpy as np

from . import matcore
from .lookups import (
    DEFAULT_TOL,
    PRIOR_TOL,
    MAX_M,
    ERROR_INVALID,
    ERROR_CONTRACT,
    ERROR_DIMENSION,
)


@dataclass(frozen=True)
class Ensemble:
    states: Tuple[np.ndarray, ...]
    priors: Tuple[float, ...]
    dim: int
    vectors: Optional[Tuple[np.ndarray, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(matcore.frozen(s) for s in self.states))
        object.__setattr__(self, "priors", tuple(float(p) for p in self.priors))
        if self.vectors is not None:
            object.__setattr__(self, "vectors", tuple(matcore.frozen(v) for v in self.vectors))
        check_ensemble(self)

    def __len__(self):
        return len(self.states)

    @property
    def is_real(self):
        return all(np.max(np.abs(s.imag)) <= DEFAULT_TOL for s in self.states)


def check_ensemble(ensemble, tol=DEFAULT_TOL, prior_tol=PRIOR_TOL):
    """Raise ValidationError describing the first violated ensemble invariant."""
    if len(ensemble.states) == 0:
        raise ValidationError("Ensemble has no states", code=ERROR_INVALID)
    if len(ensemble.states) != len(ensemble.priors):
        raise ValidationError(
            f"Ensemble has {len(ensemble.states)} states but {len(ensemble.priors)} priors",
            code=ERROR_INVALID,
        )
    if ensemble.vectors is not None and len(ensemble.vectors) != len(ensemble.states):
        raise ValidationError(
            f"Ensemble has {len(ensemble.states)} states but {len(ensemble.vectors)} vectors",
            code=ERROR_INVALID,
        )
    for i, prior in enumerate(ensemble.priors):
        if not math.isfinite(prior):
            raise ValidationError(f"Prior {i} is not a finite number ({prior})", code=ERROR_INVALID)
        if prior < 0:
            raise ValidationError(f"Prior {i} is negative ({prior})", code=ERROR_INVALID)
    total = sum(ensemble.priors)
    if not abs(total - 1) <= prior_tol:
        raise ValidationError(f"Priors sum to {total!r}, not 1", code=ERROR_INVALID)
    for i, state in enumerate(ensemble.states):
        if state.shape != (ensemble.dim, ensemble.dim):
            raise ValidationError(
                f"State {i} has shape {state.shape}, expected dimension {ensemble.dim}",
                code=ERROR_DIMENSION,
            )
        if not np.all(np.isfinite(state)):
            raise ValidationError(f"State {i} has non-finite entries", code=ERROR_CONTRACT)
        if not matcore.is_hermitian(state, tol):
            raise ValidationError(f"State {i} is not hermitian", code=ERROR_CONTRACT)
        if not matcore.is_psd(state, tol):
            raise ValidationError(f"State {i} is not positive semidefinite", code=ERROR_CONTRACT)
        tr = matcore.trace(state)
        if abs(tr - 1) > tol:
            raise ValidationError(f"State {i} has trace {tr.real!r}, not 1", code=ERROR_CONTRACT)


@dataclass(frozen=True)
class RotationGen:
    """Generator of the Z_M symmetry: rotation by pi/M in the real plane, V = exp(-i (pi/M) sigma_y)."""
    M: int
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", matcore.frozen(self.matrix))

    def power(self, l):
        """V^l for any integer l; V^M = -I."""
        return matcore.real_rotation(l * math.pi / self.M)


def check_m(M):
    """M must be an integer in [2, MAX_M]."""
    if not isinstance(M, (int, np.integer)) or M < 2:
        raise ValidationError(f"M must be an integer >= 2, got {M!r}", code=ERROR_INVALID)
    if M > MAX_M:
        raise ValidationError(f"M must not exceed {MAX_M}, got {M}", code=ERROR_INVALID)


def rotation_gen(M):
    check_m(M)
    return RotationGen(M=M, matrix=matcore.real_rotation(math.pi / M))


def signal_vector(M, k):
    """psi_k of E_M."""
    return matcore.real_direction(k * math.pi / M)


def make_em(M):
    """The pure symmetric source E_M with equal priors."""
    check_m(M)
    vectors = [signal_vector(M, k) for k in range(M)]
    return Ensemble(
        states=[matcore.projector(v) for v in vectors],
        priors=[1 / M] * M,
        dim=2,
        vectors=vectors,
    )


def make_mixed_em(M, eps):
    """E_M with every signal mixed with the maximally mixed state: (1-eps)|psi_k><psi_k| + eps I/2."""
    check_m(M)
    if not 0 <= eps <= 1:
        raise ValidationError(f"eps must lie in [0, 1], got {eps!r}", code=ERROR_INVALID)
    pure = make_em(M)
    if eps == 0:
        return pure
    states = [(1 - eps) * s + eps * matcore.IDENTITY_2 / 2 for s in pure.states]
    return Ensemble(states=states, priors=pure.priors, dim=2)


def make_double_em(M):
    """Two copies of each signal, |psi_k> (x) |psi_k>, as a 4-dimensional source.

    Only the construction is provided; strategies evaluated on it are exploratory.
    """
    check_m(M)
    vectors = [matcore.tensor(signal_vector(M, k), signal_vector(M, k)) for k in range(M)]
    return Ensemble(
        states=[matcore.projector(v) for v in vectors],
        priors=[1 / M] * M,
        dim=4,
        vectors=vectors,
    )
