"""Dilation of the symmetric three-outcome strategy W(m, m) for odd M into a
von Neumann measurement on two optical ports, and its simulation.

The four-dimensional space is spanned by the port/polarisation modes
    E_0 = up on a,  E_1 = down on a,  E_2 = up on b,  E_3 = down on b.
The signal enters port a with port b in the vacuum, passes the circuit
U2 @ U1 and is detected by photon counting on the four modes.
"""
from dataclasses import dataclass
from typing import Dict, Optional, Tuple
from django.core.exceptions import ValidationError
import logging
import math
import numpy as np

from discrimination import matcore
from discrimination.ensembles import signal_vector
from discrimination.lookups import DEFAULT_TOL, PROBABILITY_FLOOR, ERROR_INVALID
from discrimination.measures import Report, mutual_information_from_channel

LOGGER = logging.getLogger("accinfo")

PORT_COUNT = 4
# Detector mode -> index of the POVM outcome it reports; E_3 never fires.
OUTCOME_MAP = {2: 0, 1: 1, 0: 2, 3: None}


def ry_gate(gamma):
    """Polarisation rotator [[cos g/2, sin g/2], [-sin g/2, cos g/2]]."""
    c, s = math.cos(gamma / 2), math.sin(gamma / 2)
    return np.array([[c, s], [-s, c]], dtype=complex)


def _embed_block(block, offset):
    out = np.eye(PORT_COUNT, dtype=complex)
    out[offset:offset + 2, offset:offset + 2] = block
    return out


def u1_matrix(gamma):
    """Rotator acting on the (E_1, E_2) pair."""
    return _embed_block(ry_gate(gamma), 1)


def u2_matrix():
    """Balanced rotation of the two port-a modes (E_0, E_1)."""
    return _embed_block(ry_gate(math.pi / 2), 0)


def embed_signal(psi):
    """|psi>_a |0>_b in the E basis: (psi_up, psi_down, 0, 0)."""
    psi = matcore.as_cvec(psi)
    if psi.shape != (2,):
        raise ValidationError(f"The signal must be a qubit vector, got shape {psi.shape}", code=ERROR_INVALID)
    return np.concatenate([psi, np.zeros(2, dtype=complex)])


@dataclass(frozen=True)
class NaimarkPlan:
    M: int
    m: int
    gamma: float
    omega_vecs: Tuple[np.ndarray, ...]
    Omega_vecs: Tuple[np.ndarray, ...]
    U1: np.ndarray
    U2: np.ndarray
    outcome_map: Dict[int, Optional[int]]

    def __post_init__(self):
        object.__setattr__(self, "omega_vecs", tuple(matcore.frozen(v) for v in self.omega_vecs))
        object.__setattr__(self, "Omega_vecs", tuple(matcore.frozen(v) for v in self.Omega_vecs))
        object.__setattr__(self, "U1", matcore.frozen(self.U1))
        object.__setattr__(self, "U2", matcore.frozen(self.U2))
        object.__setattr__(self, "outcome_map", dict(self.outcome_map))

    @property
    def cos_half(self):
        return math.cos(self.gamma / 2)

    @property
    def sin_half(self):
        return math.sin(self.gamma / 2)


def circuit_unitary(plan):
    return plan.U2 @ plan.U1


def build_plan(M, m):
    """Measurement vectors, orthogonal extension and circuit for W(m, m) on E_M.

    cos(gamma/2) = cot(m pi/M) and sin(gamma/2) = -sqrt(1 - cot^2(m pi/M)), which
    needs M odd and M/4 < m < M/2.
    """
    if not isinstance(M, (int, np.integer)) or M < 3 or M % 2 == 0:
        raise ValidationError(f"The receiver is built for odd M >= 3, got {M!r}", code=ERROR_INVALID)
    if not isinstance(m, (int, np.integer)) or not M < 4 * m < 2 * M:
        raise ValidationError(f"m must satisfy M/4 < m < M/2, got m={m!r} for M={M}", code=ERROR_INVALID)
    c = 1 / math.tan(m * math.pi / M)
    s = -math.sqrt(1 - c * c)
    gamma = 2 * math.atan2(s, c)
    root = 1 / math.sqrt(2)
    omega_vecs = (
        np.array([0.0, -s]),
        np.array([-root, root * c]),
        np.array([root, root * c]),
    )
    Omega_vecs = (
        np.array([0.0, -s, c, 0.0]),
        root * np.array([-1.0, c, s, 0.0]),
        root * np.array([1.0, c, s, 0.0]),
        np.array([0.0, 0.0, 0.0, 1.0]),
    )
    LOGGER.debug("Built receiver plan for M=%d, m=%d: gamma=%.12g", M, m, gamma)
    return NaimarkPlan(
        M=M,
        m=m,
        gamma=gamma,
        omega_vecs=omega_vecs,
        Omega_vecs=Omega_vecs,
        U1=u1_matrix(gamma),
        U2=u2_matrix(),
        outcome_map=OUTCOME_MAP,
    )


def _detector_for(plan, outcome):
    for port, label in plan.outcome_map.items():
        if label == outcome:
            return port
    raise ValidationError(f"No detector reports outcome {outcome}", code=ERROR_INVALID)


def verify_dilation(plan, tol=DEFAULT_TOL):
    """Channel equality against both the extension vectors and the realised
    circuit, orthogonality of U2 U1, the detector-basis relations and
    orthonormality of the extension vectors. Never raises.
    """
    report = Report()
    U = circuit_unitary(plan)
    Omegas = np.array(plan.Omega_vecs)

    worst = 0.0
    for i in range(plan.M):
        psi = signal_vector(plan.M, i)
        signal = embed_signal(psi)
        for j, omega in enumerate(plan.omega_vecs):
            direct = np.vdot(omega, psi)
            extended = np.vdot(Omegas[j], signal)
            circuit = (U @ signal)[_detector_for(plan, j)]
            worst = max(worst, abs(direct - extended), abs(direct - circuit))
    report.add("channel_equality", worst <= tol, f"max amplitude deviation {worst:.3g}")

    deviation = matcore.max_norm(matcore.adjoint(U) @ U - np.eye(PORT_COUNT))
    imaginary = matcore.max_norm(U.imag)
    report.add("circuit_orthogonal", deviation <= tol and imaginary <= tol, f"max |U^T U - I| = {deviation:.3g}")

    worst = 0.0
    for port, outcome in plan.outcome_map.items():
        index = 3 if outcome is None else outcome
        worst = max(worst, matcore.max_norm(U[port] - np.conj(Omegas[index])))
    report.add("basis_relations", worst <= tol, f"max row deviation {worst:.3g}")

    gram = np.conj(Omegas) @ Omegas.T
    deviation = matcore.max_norm(gram - np.eye(PORT_COUNT))
    report.add("extension_orthonormal", deviation <= tol, f"max |G - I| = {deviation:.3g}")
    return report


@dataclass(frozen=True)
class DetectionStats:
    probs: Tuple[float, ...]

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if len(probs) != PORT_COUNT:
            raise ValidationError(f"Expected {PORT_COUNT} port probabilities, got {len(probs)}", code=ERROR_INVALID)
        for port, p in enumerate(probs):
            if p < -PROBABILITY_FLOOR:
                raise ValidationError(f"Port {port} has negative probability {p!r}", code=ERROR_INVALID)
        if abs(sum(probs) - 1) > DEFAULT_TOL:
            raise ValidationError(f"Port probabilities sum to {sum(probs)!r}, not 1", code=ERROR_INVALID)
        object.__setattr__(self, "probs", probs)

    def outcome_probabilities(self, plan):
        """Probabilities of the three POVM outcomes, read off their detectors."""
        out = [0.0, 0.0, 0.0]
        for port, outcome in plan.outcome_map.items():
            if outcome is not None:
                out[outcome] += self.probs[port]
        return out


def simulate(plan, input_theta):
    """Exact photon-counting statistics for the real signal at angle ``input_theta``."""
    amplitudes = circuit_unitary(plan) @ embed_signal(matcore.real_direction(input_theta))
    return DetectionStats(probs=np.abs(amplitudes) ** 2)


def simulated_channel(plan):
    """P(j|i) over the M signals of E_M, outcomes as rows."""
    columns = [simulate(plan, i * math.pi / plan.M).outcome_probabilities(plan) for i in range(plan.M)]
    return np.array(columns).T


def simulated_information(plan):
    """Mutual information (nats) from the simulated statistics of all M signals."""
    return mutual_information_from_channel(simulated_channel(plan), [1 / plan.M] * plan.M)


def sample_counts(stats, shots, seed):
    """Seeded multinomial photon counts per port."""
    if not isinstance(shots, (int, np.integer)) or shots < 1:
        raise ValidationError(f"shots must be a positive integer, got {shots!r}", code=ERROR_INVALID)
    probs = np.clip(np.array(stats.probs), 0.0, None)
    rng = np.random.default_rng(seed)
    return [int(n) for n in rng.multinomial(shots, probs / probs.sum())]
