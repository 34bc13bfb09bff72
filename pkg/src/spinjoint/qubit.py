"""Exact small-dimension complex algebra for spin-1/2.

Pauli matrices, Bloch-vector density matrices, two-qubit tensor products
and closed-form Hermitian eigenvalues.  Everything is dense 2x2 / 4x4
arithmetic; the default absolute tolerance for exactness checks is 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BlochOutOfBall, InvalidState, NotHermitian, NotUnit

ATOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)
ID4 = np.eye(4, dtype=complex)


def vec3(v) -> np.ndarray:
    """Coerce to a finite float 3-vector."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector components must be finite")
    return arr


def norm3(v) -> float:
    arr = np.asarray(v, dtype=float)
    return math.sqrt(float(arr @ arr))


def unit3(v, tol: float = ATOL) -> np.ndarray:
    """Coerce to a 3-vector and require unit norm within ``tol``."""
    arr = vec3(v)
    n = norm3(arr)
    if abs(n - 1.0) > tol:
        raise NotUnit(f"|v| = {n!r}, expected 1 within {tol}")
    return arr


def normalize(v, eps: float = 1e-15) -> np.ndarray:
    arr = vec3(v)
    n = norm3(arr)
    if n < eps:
        raise ValueError("cannot normalize a (near-)zero vector")
    return arr / n


def pauli_dot(v) -> np.ndarray:
    """v . sigma = x*sigma_x + y*sigma_y + z*sigma_z, Hermitian traceless."""
    x, y, z = vec3(v)
    return np.array([[z, x - 1j * y], [x + 1j * y, -z]], dtype=complex)


def is_hermitian(mat, tol: float = ATOL) -> bool:
    m = np.asarray(mat, dtype=complex)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def hermitian_eigenvalues(mat, tol: float = ATOL) -> tuple[float, float]:
    """Eigenvalues of a Hermitian 2x2 matrix as an ascending pair.

    Closed form (tr +- sqrt(tr^2 - 4 det))/2, evaluated as
    tr/2 +- hypot((a - d)/2, |b|) which is exact and never takes the
    square root of a negative rounding residue.
    """
    m = np.asarray(mat, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    if not is_hermitian(m, tol):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    a = m[0, 0].real
    d = m[1, 1].real
    half_tr = 0.5 * (a + d)
    r = math.hypot(0.5 * (a - d), abs(m[0, 1]))
    return (half_tr - r, half_tr + r)


def tensor2(a, b) -> np.ndarray:
    """Kronecker product, qubit-1-major ordering."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


@dataclass(frozen=True)
class QubitState:
    """Single-qubit density matrix rho = (1 + m.sigma)/2.

    Construction validates Hermiticity, unit trace and positivity; the
    stored array is read-only afterwards.
    """

    rho: np.ndarray

    def __post_init__(self):
        m = np.array(self.rho, dtype=complex)
        if m.shape != (2, 2):
            raise InvalidState(f"expected a 2x2 density matrix, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidState("density matrix entries must be finite")
        if not is_hermitian(m, ATOL):
            raise InvalidState("density matrix must be Hermitian")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > ATOL:
            raise InvalidState(f"trace = {tr}, expected 1")
        lo, _ = hermitian_eigenvalues(m, ATOL)
        if lo < -ATOL:
            raise InvalidState(f"negative eigenvalue {lo}")
        m.setflags(write=False)
        object.__setattr__(self, "rho", m)

    @property
    def bloch_vector(self) -> np.ndarray:
        r = self.rho
        return np.array(
            [2 * r[1, 0].real, 2 * r[1, 0].imag, (r[0, 0] - r[1, 1]).real]
        )


@dataclass(frozen=True)
class TwoQubitState:
    """Two-qubit density matrix in qubit-1-major (Kronecker) ordering."""

    rho4: np.ndarray

    def __post_init__(self):
        m = np.array(self.rho4, dtype=complex)
        if m.shape != (4, 4):
            raise InvalidState(f"expected a 4x4 density matrix, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidState("density matrix entries must be finite")
        if not is_hermitian(m, ATOL):
            raise InvalidState("density matrix must be Hermitian")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > ATOL:
            raise InvalidState(f"trace = {tr}, expected 1")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < -1e-10:
            raise InvalidState(f"negative eigenvalue {lo}")
        m.setflags(write=False)
        object.__setattr__(self, "rho4", m)

    def reduced_state(self, qubit: int) -> QubitState:
        """Partial trace onto one qubit (1 or 2)."""
        r = self.rho4.reshape(2, 2, 2, 2)
        if qubit == 1:
            red = np.einsum("ijkj->ik", r)
        elif qubit == 2:
            red = np.einsum("ijik->jk", r)
        else:
            raise ValueError("qubit must be 1 or 2")
        return QubitState(red)


def state_from_bloch(m) -> QubitState:
    """rho = (1 + m.sigma)/2 for a Bloch vector inside the unit ball."""
    arr = vec3(m)
    n = norm3(arr)
    if n > 1.0 + ATOL:
        raise BlochOutOfBall(f"|m| = {n} > 1")
    return QubitState(0.5 * (ID2 + pauli_dot(arr)))


def expectation(obs, state: QubitState, tol: float = ATOL) -> float:
    """Born-rule expectation Re tr(obs rho); obs must be Hermitian."""
    m = np.asarray(obs, dtype=complex)
    if not is_hermitian(m, tol):
        raise NotHermitian("observable must be Hermitian")
    if not isinstance(state, QubitState):
        raise InvalidState("expected a QubitState")
    return float(np.trace(m @ state.rho).real)
