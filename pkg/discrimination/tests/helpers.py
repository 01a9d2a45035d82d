"""Random ensembles and POVMs for the property suites."""
import math
import numpy as np

from discrimination.ensembles import Ensemble
from discrimination.povm import Povm, Rank1Real


def inverse_sqrt(S):
    values, vectors = np.linalg.eigh(S)
    return vectors @ np.diag(values ** -0.5) @ vectors.conj().T


def random_povm(rng, dim, count, real=False):
    """count elements of full rank made to resolve the identity."""
    raw = []
    for _ in range(count):
        G = rng.normal(size=(dim, dim))
        if not real:
            G = G + 1j * rng.normal(size=(dim, dim))
        raw.append(G @ G.conj().T)
    T = inverse_sqrt(sum(raw))
    return Povm(elements=[T @ A @ T.conj().T for A in raw], dim=dim)


def random_ensemble(rng, dim, count, real=False):
    states = []
    for _ in range(count):
        B = rng.normal(size=(dim, dim))
        if not real:
            B = B + 1j * rng.normal(size=(dim, dim))
        rho = B @ B.conj().T
        states.append(rho / np.trace(rho).real)
    priors = rng.random(count) + 0.1
    return Ensemble(states=states, priors=list(priors / priors.sum()), dim=dim)


def random_rank1_real(rng, count):
    """Rank-1 real qubit POVM with count elements in general position."""
    angles = rng.uniform(0, math.pi, size=count)
    vectors = [np.array([math.cos(a), math.sin(a)]) for a in angles]
    T = inverse_sqrt(sum(np.outer(v, v) for v in vectors))
    weights, directions = [], []
    for v in vectors:
        u = T @ v
        weights.append(float(u @ u))
        directions.append(math.atan2(u[1], u[0]))
    return Rank1Real(weights=weights, angles=directions)


def unmatched_elements(p, q, atol=1e-9):
    """Indices of elements of ``p`` with no counterpart in ``q``, order ignored."""
    free = list(range(len(q)))
    missing = []
    for i, a in enumerate(p.elements):
        for slot in free:
            if np.max(np.abs(a - q.elements[slot])) <= atol:
                free.remove(slot)
                break
        else:
            missing.append(i)
    return missing + [f"extra {slot}" for slot in free]
