"""Small dense complex linear algebra and entropies (all logarithms base 2).

Matrices are plain ``numpy`` arrays of dtype complex128 with shape (2, 2)
or (4, 4). Functions here validate shape and finiteness on entry and never
mutate their arguments.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, DomainError, NonHermitianInput, NotDensityMatrix

STRUCT_TOL = 1e-10
EIG_CLAMP = 1e-10
BINARY_SLACK = 1e-12

ComplexMatrix = np.ndarray


def as_matrix(m, dims=(2, 4)) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] not in dims:
        raise DimensionMismatch(f"matrix dimension {arr.shape[0]} not in {dims}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("matrix has non-finite entries")
    return arr


def adjoint(m) -> np.ndarray:
    return as_matrix(m).conj().T


def multiply(m1, m2) -> np.ndarray:
    a, b = as_matrix(m1), as_matrix(m2)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kronecker(m2a, m2b) -> np.ndarray:
    """Tensor product of two 2x2 matrices; row (j, m) of the result is 2*j + m."""
    a, b = as_matrix(m2a, dims=(2,)), as_matrix(m2b, dims=(2,))
    return np.kron(a, b)


def is_hermitian(m, tol: float = STRUCT_TOL) -> bool:
    a = as_matrix(m)
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def is_unitary(m, tol: float = STRUCT_TOL) -> bool:
    a = as_matrix(m)
    return bool(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))) <= tol)


def _density_spectrum(a: np.ndarray, tol: float) -> tuple[np.ndarray | None, tuple[str, str] | None]:
    herm = np.max(np.abs(a - a.conj().T))
    if herm > tol:
        return None, ("hermitian", f"max |m - m^dag| = {herm:.3e}")
    tr = np.trace(a).real
    if abs(tr - 1.0) > tol:
        return None, ("trace", f"trace = {tr!r}")
    evals = _eigvalsh(0.5 * (a + a.conj().T))
    if evals[-1] < -tol:
        return evals, ("positivity", f"min eigenvalue = {evals[-1]:.3e}")
    return evals, None


def is_density(m, tol: float = STRUCT_TOL) -> bool:
    return _density_spectrum(as_matrix(m), tol)[1] is None


def _eigvalsh(a: np.ndarray) -> np.ndarray:
    # Assumes Hermitian input; returns descending order.
    if a.shape[0] == 2:
        p, q = a[0, 0].real, a[1, 1].real
        mean = 0.5 * (p + q)
        r = np.hypot(0.5 * (p - q), abs(a[0, 1]))
        return np.array([mean + r, mean - r])
    return np.linalg.eigvalsh(a)[::-1]


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted in descending order.

    2x2 inputs use the closed form ``(p+q)/2 +- hypot((p-q)/2, |b|)``;
    4x4 inputs go through LAPACK's Hermitian solver.
    """
    a = as_matrix(m)
    herm = np.max(np.abs(a - a.conj().T))
    if herm > STRUCT_TOL:
        raise NonHermitianInput(f"max |m - m^dag| = {herm:.3e} exceeds {STRUCT_TOL}")
    a = 0.5 * (a + a.conj().T)
    return _eigvalsh(a)


def shannon_entropy(probs) -> float:
    """Entropy in bits of a probability vector, with 0 log 0 = 0."""
    p = np.asarray(probs, dtype=float)
    if np.any(p < -EIG_CLAMP):
        raise DomainError(f"negative probability {p.min():.3e}")
    p = p[p > 0.0]
    return float(-np.sum(p * np.log2(p))) + 0.0


def von_neumann_entropy(m) -> float:
    """S(rho) = -Tr(rho log2 rho) in bits.

    Eigenvalues in [-1e-10, 0) are treated as zero; anything more negative
    raises :class:`NotDensityMatrix`.
    """
    evals, problem = _density_spectrum(as_matrix(m), STRUCT_TOL)
    if problem is not None:
        raise NotDensityMatrix(*problem)
    return max(shannon_entropy(np.clip(evals, 0.0, None)), 0.0)


def binary_entropy(x):
    """H(x) = -x log2 x - (1-x) log2(1-x). Accepts scalars or arrays."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -BINARY_SLACK) or np.any(arr > 1.0 + BINARY_SLACK) or np.any(np.isnan(arr)):
        raise DomainError(f"binary entropy argument outside [0, 1]: {x!r}")
    arr = np.clip(arr, 0.0, 1.0)
    y = 1.0 - arr
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -np.where(arr > 0, arr * np.log2(arr), 0.0) - np.where(y > 0, y * np.log2(y), 0.0)
    if h.ndim == 0:
        return float(h)
    return h
