"""Hamiltonians over a photonic basis, unitary propagation, the four-state
secular model and the double-slit superposition demo.

The diagonal carries the photonic energy level of each element; off-diagonal
entries are externally driven couplings.  Eigendecompositions go through the
cyclic Jacobi kernel in ``_kernels``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import jacobi_eigh
from .basis import Basis, element_level
from .labels import CouplingModel
from .qstate import QState

__all__ = [
    "Hamiltonian",
    "SecularSolution",
    "build_hamiltonian",
    "propagate",
    "solve_secular",
    "perturbative_amplitudes",
    "double_slit_pattern",
    "visibility",
    "fringe_half_width",
]

_HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class Hamiltonian:
    basis: Basis
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        n = len(self.basis)
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} != basis size {n}")
        scale = max(float(np.linalg.norm(m)), 1.0)
        if np.max(np.abs(m - m.conj().T)) > _HERMITICITY_TOL * scale:
            raise ValueError("Hamiltonian must be Hermitian")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SecularSolution:
    """Full eigendecomposition with a distinguished root: the eigenpair whose
    eigenvalue lies nearest a requested anchor level."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    root_index: int

    @property
    def root_value(self) -> float:
        return float(self.eigenvalues[self.root_index])

    @property
    def root_vector(self) -> np.ndarray:
        return self.eigenvectors[:, self.root_index]


def build_hamiltonian(b: Basis, cm: CouplingModel) -> Hamiltonian:
    """Diagonal from photonic levels, off-diagonal from drive couplings."""
    cm.check_hermitian()
    n = len(b)
    m = np.zeros((n, n), dtype=np.complex128)
    for i, e in enumerate(b):
        m[i, i] = element_level(e)
    for i, j in cm.drive_pairs:
        if i >= n or j >= n:
            raise ValueError(f"drive coupling ({i},{j}) outside basis of size {n}")
        m[i, j] = cm.drive(i, j)
        m[j, i] = cm.drive(j, i)
    return Hamiltonian(b, m)


def _eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Jacobi eigendecomposition sorted ascending (ties by original index),
    with each eigenvector's largest-magnitude component made real positive."""
    w, v = jacobi_eigh(matrix)
    order = np.lexsort((np.arange(len(w)), w))
    w = w[order]
    v = v[:, order]
    for k in range(v.shape[1]):
        col = v[:, k]
        pivot = int(np.argmax(np.abs(col)))
        phase = col[pivot] / abs(col[pivot])
        v[:, k] = col / phase
    return w, v


def propagate(s: QState, H: Hamiltonian, dt: float) -> QState:
    """Apply exp(-i H dt) via eigendecomposition; norm-preserving."""
    if H.basis != s.basis:
        raise ValueError("Hamiltonian and state are over different bases")
    if not np.isfinite(dt):
        raise ValueError("dt must be finite")
    w, v = _eigh(H.matrix)
    phases = np.exp(-1j * w * dt)
    amps = v @ (phases * (v.conj().T @ s.amps))
    return QState(s.basis, amps, s.time_tag + dt)


def solve_secular(H: Hamiltonian | np.ndarray, anchor: float) -> SecularSolution:
    """Eigendecomposition with the root chosen nearest the anchor level."""
    matrix = H.matrix if isinstance(H, Hamiltonian) else np.asarray(H, dtype=np.complex128)
    scale = max(float(np.linalg.norm(matrix)), 1.0)
    if np.max(np.abs(matrix - matrix.conj().T)) > _HERMITICITY_TOL * scale:
        raise ValueError("secular matrix must be Hermitian")
    w, v = _eigh(matrix)
    root = int(np.argmin(np.abs(w - anchor)))
    return SecularSolution(eigenvalues=w, eigenvectors=v, root_index=root)


def perturbative_amplitudes(H: Hamiltonian | np.ndarray, root: int,
                            degeneracy_tol: float = 1e-9) -> np.ndarray:
    """First-order amplitudes V_i,root / (E_root - E_i), 1 at the root;
    unnormalized.  Independent check for the secular root vector."""
    matrix = H.matrix if isinstance(H, Hamiltonian) else np.asarray(H, dtype=np.complex128)
    n = matrix.shape[0]
    e_root = matrix[root, root].real
    out = np.zeros(n, dtype=np.complex128)
    out[root] = 1.0
    for i in range(n):
        if i == root:
            continue
        gap = e_root - matrix[i, i].real
        if abs(matrix[i, root]) > 0 and abs(gap) <= degeneracy_tol:
            raise ValueError(f"degenerate levels at indices {root} and {i}: gap {gap}")
        if abs(gap) > degeneracy_tol:
            out[i] = matrix[i, root] / gap
    return out


def visibility(C1: complex, C2: complex) -> float:
    """Closed-form fringe visibility 2|C1||C2| / (|C1|^2 + |C2|^2)."""
    a, b = abs(C1), abs(C2)
    total = a * a + b * b
    if total == 0:
        raise ValueError("both amplitudes are zero")
    return 2.0 * a * b / total


def fringe_half_width(d: float, L: float, kappa: float) -> float:
    """Screen position of the first-order dark fringe (path difference pi/kappa).

    Points of constant path difference D lie on a hyperbola with the slits as
    foci; intersecting it with the screen plane gives
    x = (D/2) * sqrt(1 + L^2 / ((d/2)^2 - (D/2)^2)).  Requires kappa*d > pi.
    """
    delta = np.pi / kappa
    if delta >= d:
        raise ValueError("no first-order minimum: need kappa*d > pi")
    a = delta / 2.0
    b2 = (d / 2.0) ** 2 - a * a
    return float(a * np.sqrt(1.0 + L * L / b2))


def double_slit_pattern(C1: complex, C2: complex, d: float, L: float,
                        kappa: float, samples: int,
                        norm_tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Two-path interference intensity over a symmetric screen window.

    Returns (positions, intensities) with intensity(x) =
    |C1 exp(i kappa r1) + C2 exp(i kappa r2)|^2, r1/r2 the exact path lengths
    from the two slits.  The window spans the central fringe between the
    first-order minima, so with an odd sample count the grid hits the exact
    maximum (x = 0) and minima (endpoints).
    """
    if abs((abs(C1) ** 2 + abs(C2) ** 2) - 1.0) > norm_tol:
        raise ValueError("|C1|^2 + |C2|^2 must be 1")
    if d <= 0 or L <= 0 or kappa <= 0:
        raise ValueError("geometry parameters must be positive")
    if samples < 1:
        raise ValueError("need at least one sample")
    half = fringe_half_width(d, L, kappa)
    x = np.linspace(-half, half, samples)
    r1 = np.sqrt(L * L + (x - d / 2.0) ** 2)
    r2 = np.sqrt(L * L + (x + d / 2.0) ** 2)
    field = C1 * np.exp(1j * kappa * r1) + C2 * np.exp(1j * kappa * r2)
    return x, np.abs(field) ** 2
