"""Cyclic Jacobi eigensolver for dense complex Hermitian matrices.

Two implementations of the sweep kernel: a numba-compiled loop version and a
vectorized pure-numpy fallback.  Set the environment variable
``PHOTONSIM_NO_NUMBA=1`` to force the fallback (it is also used automatically
when numba is unavailable).

Convergence: off-diagonal Frobenius norm below tol_factor * ||H||_F.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = ["jacobi_eigh", "numba_enabled"]

_MAX_SWEEPS = 100


def _want_numba() -> bool:
    return os.environ.get("PHOTONSIM_NO_NUMBA", "").strip() not in ("1", "true", "yes")


def _rotation(app: float, aqq: float, apq: complex):
    """Return (c, s, phase) zeroing the (p, q) entry: tan(2theta) from the
    usual stable quadratic root, phase = apq / |apq|."""
    absapq = abs(apq)
    phase = apq / absapq
    tau = (aqq - app) / (2.0 * absapq)
    if tau >= 0.0:
        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c, phase


def _sweep_numpy(A: np.ndarray, V: np.ndarray) -> None:
    """One cyclic sweep over all (p, q) pivots, in place."""
    n = A.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = A[p, q]
            if abs(apq) == 0.0:
                continue
            c, s, e = _rotation(A[p, p].real, A[q, q].real, apq)
            se = s * e
            sec = s * np.conj(e)
            # A <- R^H A R with R[p,p]=R[q,q]=c, R[p,q]=s*e, R[q,p]=-s*conj(e)
            colp = A[:, p].copy()
            colq = A[:, q].copy()
            A[:, p] = c * colp - sec * colq
            A[:, q] = se * colp + c * colq
            rowp = A[p, :].copy()
            rowq = A[q, :].copy()
            A[p, :] = c * rowp - se * rowq
            A[q, :] = sec * rowp + c * rowq
            A[p, q] = 0.0
            A[q, p] = 0.0
            A[p, p] = A[p, p].real
            A[q, q] = A[q, q].real
            vp = V[:, p].copy()
            vq = V[:, q].copy()
            V[:, p] = c * vp - sec * vq
            V[:, q] = se * vp + c * vq


def _offdiag_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.linalg.norm(off))


def _jacobi_numpy(H: np.ndarray, tol_factor: float, max_sweeps: int):
    A = np.array(H, dtype=np.complex128)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    threshold = tol_factor * max(float(np.linalg.norm(A)), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        if _offdiag_norm(A) <= threshold:
            break
        _sweep_numpy(A, V)
    return np.real(np.diag(A)).copy(), V


_jacobi_numba = None
if _want_numba():
    try:
        from numba import njit

        @njit(cache=True)
        def _jacobi_numba_impl(H, tol_factor, max_sweeps):  # pragma: no cover - compiled
            n = H.shape[0]
            A = H.copy()
            V = np.eye(n, dtype=np.complex128)
            fro = 0.0
            for i in range(n):
                for j in range(n):
                    fro += abs(A[i, j]) ** 2
            threshold = tol_factor * math.sqrt(fro)
            if threshold <= 0.0:
                threshold = tol_factor
            for _ in range(max_sweeps):
                off = 0.0
                for i in range(n):
                    for j in range(n):
                        if i != j:
                            off += abs(A[i, j]) ** 2
                if math.sqrt(off) <= threshold:
                    break
                for p in range(n - 1):
                    for q in range(p + 1, n):
                        apq = A[p, q]
                        absapq = abs(apq)
                        if absapq == 0.0:
                            continue
                        e = apq / absapq
                        tau = (A[q, q].real - A[p, p].real) / (2.0 * absapq)
                        if tau >= 0.0:
                            t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                        else:
                            t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                        c = 1.0 / math.sqrt(1.0 + t * t)
                        s = t * c
                        se = s * e
                        sec = s * np.conj(e)
                        for k in range(n):
                            akp = A[k, p]
                            akq = A[k, q]
                            A[k, p] = c * akp - sec * akq
                            A[k, q] = se * akp + c * akq
                        for k in range(n):
                            apk = A[p, k]
                            aqk = A[q, k]
                            A[p, k] = c * apk - se * aqk
                            A[q, k] = sec * apk + c * aqk
                        A[p, q] = 0.0
                        A[q, p] = 0.0
                        A[p, p] = complex(A[p, p].real, 0.0)
                        A[q, q] = complex(A[q, q].real, 0.0)
                        for k in range(n):
                            vkp = V[k, p]
                            vkq = V[k, q]
                            V[k, p] = c * vkp - sec * vkq
                            V[k, q] = se * vkp + c * vkq
            eig = np.empty(n, dtype=np.float64)
            for i in range(n):
                eig[i] = A[i, i].real
            return eig, V

        _jacobi_numba = _jacobi_numba_impl
    except ImportError:  # pragma: no cover
        _jacobi_numba = None


def numba_enabled() -> bool:
    """Whether the compiled kernel is active (vs the pure-numpy fallback)."""
    return _jacobi_numba is not None


def jacobi_eigh(H: np.ndarray, tol_factor: float = 1e-12, max_sweeps: int = _MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns (eigenvalues, eigenvectors) unsorted; eigenvectors are the columns
    of a unitary matrix with H = V diag(w) V^H.
    """
    H = np.asarray(H, dtype=np.complex128)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError("matrix must be square")
    if H.shape[0] == 1:
        return np.array([H[0, 0].real]), np.eye(1, dtype=np.complex128)
    if _jacobi_numba is not None:
        return _jacobi_numba(np.ascontiguousarray(H), float(tol_factor), int(max_sweeps))
    return _jacobi_numpy(H, float(tol_factor), int(max_sweeps))
