"""Two-spin states, local rotations, spin correlations and CHSH combinations.

States are 4-vectors of complex amplitudes ordered (uu, ud, du, dd); the first
factor is the particle moving towards +Phi, the second towards -Phi.
Measurement axes are real unit 3-vectors expressed in each observer's own
local triad (axes 1, 2, 3 = r, theta, phi directions).
"""

from __future__ import annotations

import math

import numpy as np

from .transport import PAULI, SIGMA_Y

SQRT2 = math.sqrt(2.0)
TSIRELSON = 2.0 * SQRT2


def singlet() -> np.ndarray:
    return np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / SQRT2


def triplet_even() -> np.ndarray:
    """(uu + dd)/sqrt(2), the triplet component the singlet mixes into."""
    return np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / SQRT2


def axis2_rotation(angle: float) -> np.ndarray:
    """exp(-i sigma_y angle / 2)."""
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def pair_rotations(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Spin rotations picked up by the +/- particles: exp(-+ i sigma_y Theta / 2)."""
    return axis2_rotation(theta), axis2_rotation(-theta)


def evolve_pair(state: np.ndarray, u_plus: np.ndarray, u_minus: np.ndarray) -> np.ndarray:
    return np.kron(u_plus, u_minus) @ np.asarray(state, dtype=complex)


def mixed_singlet(angle: float) -> np.ndarray:
    """cos(angle) singlet + sin(angle) (uu + dd)/sqrt(2)."""
    return math.cos(angle) * singlet() + math.sin(angle) * triplet_even()


def primed_basis_rotation(phi: float, side: int) -> np.ndarray:
    """Columns are the primed kets of observer ``side`` (+1 at +Phi, -1 at -Phi) in the unprimed basis.

    The primed basis undoes the trivial rotation of the static frame by rotating
    about axis 2 through -+Phi.
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    return axis2_rotation(side * phi)


def to_primed_basis(state: np.ndarray, phi: float) -> np.ndarray:
    """Amplitudes of ``state`` with respect to the primed product basis."""
    b_plus = primed_basis_rotation(phi, 1)
    b_minus = primed_basis_rotation(phi, -1)
    return np.kron(b_plus.conj().T, b_minus.conj().T) @ np.asarray(state, dtype=complex)


def spin_operator(axis) -> np.ndarray:
    a = np.asarray(axis, dtype=float)
    return a[0] * PAULI[0] + a[1] * PAULI[1] + a[2] * PAULI[2]


def correlation(state: np.ndarray, a, b) -> float:
    """<(a.sigma) x (b.sigma)>."""
    op = np.kron(spin_operator(a), spin_operator(b))
    psi = np.asarray(state, dtype=complex)
    return float(np.real(psi.conj() @ op @ psi))


def chsh(state: np.ndarray, Q, R, S, T) -> float:
    """<QS> + <RS> + <RT> - <QT>; Q, R act on the + particle and S, T on the - particle."""
    return (correlation(state, Q, S) + correlation(state, R, S)
            + correlation(state, R, T) - correlation(state, Q, T))


def _axes_rotated(angle: float):
    c, s = math.cos(angle), math.sin(angle)
    Q = np.array([c, 0.0, -s])
    R = np.array([0.0, 1.0, 0.0])
    S = np.array([-c, -1.0, -s]) / SQRT2
    T = np.array([c, -1.0, s]) / SQRT2
    return Q, R, S, T


def standard_chsh_axes(kind: str = "unprimed", angle: float = 0.0):
    """(Q, R, S, T) for ``kind`` in {"unprimed", "primed", "optimal"}.

    ``angle`` is Phi for the primed set (trivial frame rotation removed) and
    Theta for the optimal set (full Wigner rotation compensated).
    """
    if kind == "unprimed":
        return _axes_rotated(0.0)
    if kind in ("primed", "optimal"):
        return _axes_rotated(angle)
    raise ValueError(f"unknown axis set {kind!r}")


def rotate_axis_about_2(axis, angle: float) -> np.ndarray:
    """Rotate a measurement direction about local axis 2 by ``angle`` (right-handed)."""
    c, s = math.cos(angle), math.sin(angle)
    R = np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    return R @ np.asarray(axis, dtype=float)


def reduced_density_matrix(state: np.ndarray) -> np.ndarray:
    """Partial trace over the second particle."""
    psi = np.asarray(state, dtype=complex).reshape(2, 2)
    return psi @ psi.conj().T


def entanglement_entropy(state: np.ndarray) -> float:
    """Von Neumann entropy (bits) of the reduced state of one particle."""
    w = np.linalg.eigvalsh(reduced_density_matrix(state))
    w = w[w > 1e-300]
    return float(-np.sum(w * np.log2(w)))


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    return float(abs(np.vdot(a, b)) ** 2)


def sample_correlation(state: np.ndarray, a, b, shots: int, seed: int) -> float:
    """Monte-Carlo estimate of ``correlation`` from simulated +-1 outcomes."""
    rng = np.random.default_rng(seed)
    # eigenbasis of each spin operator; eigh sorts eigenvalues as (-1, +1)
    _, va = np.linalg.eigh(spin_operator(a))
    _, vb = np.linalg.eigh(spin_operator(b))
    basis = np.kron(va, vb)
    probs = np.abs(basis.conj().T @ np.asarray(state, dtype=complex)) ** 2
    probs = probs / probs.sum()
    outcome_products = np.array([1.0, -1.0, -1.0, 1.0])
    draws = rng.choice(4, size=shots, p=probs)
    return float(outcome_products[draws].mean())
