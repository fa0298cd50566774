"""Small dense linear algebra kernels.

Everything here works on plain ``numpy`` arrays of modest size (a few dozen
rows at most); the algorithms are the textbook ones and favour robustness
over speed.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import config


class NotConvergedError(RuntimeError):
    pass


class SingularMatrixError(np.linalg.LinAlgError):
    pass


class MatrixOverflowError(OverflowError):
    pass


def _square(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def dominant_left_eigenpair(m, tol: float = config.POWER_TOL, max_iter: int = config.POWER_MAX_ITER,
                            start=None) -> tuple[float, np.ndarray]:
    """Perron eigenvalue and positive left eigenvector of a nonnegative irreducible matrix.

    Runs power iteration with the transpose of ``m + I``; the shift leaves the
    eigenvectors alone and makes periodic matrices converge. The vector is
    scaled to have maximum entry 1.
    """
    m = _square(m)
    n = m.shape[0]
    if np.any(m < 0):
        raise ValueError("matrix must be nonnegative")
    shifted = m.T + np.eye(n)
    x = np.ones(n) if start is None else np.array(start, dtype=float)
    if x.shape != (n,) or np.any(x < 0) or not np.any(x > 0):
        raise ValueError("start vector must be nonnegative and nonzero")
    x = x / x.max()
    for _ in range(max_iter):
        y = shifted @ x
        top = y.max()
        y /= top
        if np.max(np.abs(y - x)) < tol:
            return float(top - 1.0), y
        x = y
    raise NotConvergedError(f"power iteration did not converge in {max_iter} steps")


def symmetric_eigendecomposition(m, tol: float = config.JACOBI_TOL, max_sweeps: int = 100):
    """Eigenvalues (ascending) and orthonormal eigenvectors via cyclic Jacobi rotations."""
    m = _square(m)
    top = np.max(np.abs(m), initial=0.0)
    if np.max(np.abs(m - m.T), initial=0.0) > 1e-12 * max(top, 1e-300):
        raise ValueError("matrix is not symmetric")
    # exact power-of-two scaling keeps the squared entries in range
    exponent = int(np.frexp(top)[1])
    a = np.ldexp(0.5 * (m + m.T), -exponent)
    scale = np.linalg.norm(a)
    n = a.shape[0]
    v = np.eye(n)
    limit = tol * scale
    mask = ~np.eye(n, dtype=bool)

    def off(x):
        # summed directly; subtracting the diagonal from the total cancels badly
        return np.sqrt(np.sum(x[mask] ** 2))

    for _ in range(max_sweeps):
        if off(a) <= limit:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                gap = a[q, q] - a[p, p]
                if apq == 0.0:
                    continue
                if abs(gap) > 1e300 * abs(apq):
                    # rotation angle below double precision
                    a[p, q] = a[q, p] = 0.0
                    continue
                tau = gap / (2.0 * apq)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        if off(a) > limit:
            raise NotConvergedError("Jacobi iteration did not converge")
    evals = np.ldexp(np.diag(a), exponent)
    order = np.argsort(evals, kind="stable")
    return evals[order], v[:, order]


def spectral_norm(m, rel_tol: float = config.NORM_REL_TOL, max_iter: int = config.POWER_MAX_ITER) -> float:
    """Largest singular value, from power iteration on ``m^T m``."""
    m = np.asarray(m, dtype=float)
    scale = np.max(np.abs(m), initial=0.0)
    if scale == 0.0:
        return 0.0
    m = m / scale  # keeps m^T m clear of underflow and overflow
    p = m.T @ m
    # fixed seed: a generic start avoids being orthogonal to the top eigenvector
    x = np.random.default_rng(0).uniform(0.5, 1.5, p.shape[0])
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(max_iter):
        y = p @ x
        lam = float(x @ y)
        if lam <= 0.0:
            x = y / np.linalg.norm(y)
            continue
        residual = np.linalg.norm(y - lam * x)
        # Rayleigh quotient error is bounded by residual^2 / gap
        if residual <= 0.01 * rel_tol * lam:
            return float(scale * np.sqrt(lam))
        x = y / np.linalg.norm(y)
    raise NotConvergedError("spectral norm power iteration did not converge")


def solve(m, b) -> np.ndarray:
    """Solve ``m x = b`` by Gaussian elimination with partial pivoting."""
    a = _square(m).copy()
    x = np.array(b, dtype=float)
    n = a.shape[0]
    if x.shape != (n,):
        raise ValueError("right-hand side has the wrong length")
    threshold = config.PIVOT_TOL * np.max(np.sum(np.abs(a), axis=1), initial=0.0)
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[piv, k]) <= threshold:
            raise SingularMatrixError(f"matrix is singular to working precision (column {k})")
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            x[[k, piv]] = x[[piv, k]]
        factors = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(factors, a[k, k:])
        x[k + 1:] -= factors * x[k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


class ExpDiagonal(NamedTuple):
    """Diagonal of ``exp(m)`` stored as ``values * e**shift``."""

    values: np.ndarray
    shift: float

    def unshifted(self) -> np.ndarray:
        return self.values * np.exp(self.shift)


def expm_taylor(m) -> np.ndarray:
    """Matrix exponential by scaling and squaring of a truncated Taylor series."""
    m = _square(m)
    n = m.shape[0]
    norm = np.max(np.sum(np.abs(m), axis=1), initial=0.0)
    squarings = 0
    s = 1.0
    while norm / s > 0.5:
        s *= 2.0
        squarings += 1
    x = m / s
    total = np.eye(n)
    term = np.eye(n)
    for k in range(1, 60):
        term = term @ x / k
        total += term
        if np.max(np.abs(term)) < 1e-16 * np.max(np.abs(total)):
            break
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(squarings):
            total = total @ total
            if not np.all(np.isfinite(total)):
                raise MatrixOverflowError(
                    "matrix exponential overflows double precision; "
                    "use the shifted symmetric path (exp_diagonal with symmetric=True)"
                )
    return total


def exp_diagonal(m, symmetric: bool | None = None) -> ExpDiagonal:
    """Diagonal of ``exp(m)``.

    Symmetric input goes through an eigendecomposition and is returned shifted
    by the largest eigenvalue, which keeps every term at most 1 in size.
    Anything else uses :func:`expm_taylor` with zero shift.
    """
    m = _square(m)
    if symmetric is None:
        symmetric = bool(np.array_equal(m, m.T))
    if symmetric:
        evals, vecs = symmetric_eigendecomposition(m)
        top = float(evals[-1]) if evals.size else 0.0
        return ExpDiagonal((vecs ** 2) @ np.exp(evals - top), top)
    return ExpDiagonal(np.diag(expm_taylor(m)).copy(), 0.0)
