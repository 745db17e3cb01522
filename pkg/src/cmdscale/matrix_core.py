"""Symmetric matrix storage and a cyclic Jacobi eigensolver.

numpy is used only as an array container here; the eigendecomposition is
computed by plane rotations, without ``numpy.linalg``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AsymmetryExceedsTolerance, InvalidDimension, NonConvergence

DEFAULT_TOL = 1e-12
DEFAULT_MAX_SWEEPS = 100


def _frozen(arr):
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SymMatrix:
    """Dense real symmetric matrix.

    The constructor averages ``m`` with its transpose so that symmetry holds
    exactly, after checking the original asymmetry is at most ``asym_tol``
    times the largest absolute entry.
    """

    entries: np.ndarray

    def __init__(self, entries, asym_tol: float = 1e-9):
        m = np.asarray(entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidDimension(f"expected a square matrix, got shape {m.shape}")
        if m.shape[0] < 1:
            raise InvalidDimension("matrix must have at least one row")
        scale = max(1.0, float(np.max(np.abs(m))))
        asym = float(np.max(np.abs(m - m.T)))
        if asym > asym_tol * scale:
            raise AsymmetryExceedsTolerance(
                f"max |m[i,j] - m[j,i]| = {asym:.3g} exceeds {asym_tol:g} * scale",
                max_asymmetry=asym,
            )
        object.__setattr__(self, "entries", _frozen(0.5 * (m + m.T)))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, idx):
        return self.entries[idx]

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def frobenius(self) -> float:
        return float(math.sqrt(np.sum(self.entries**2)))


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending by signed value, with matching unit
    eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _frozen(self.eigenvalues))
        object.__setattr__(self, "eigenvectors", _frozen(self.eigenvectors))

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        g = self.eigenvectors
        return (g * self.eigenvalues) @ g.T


def _off_norm(a):
    upper = np.triu(a, 1)
    return math.sqrt(2.0 * float(np.sum(upper * upper)))


def _rotate(a, v, p, q):
    apq = a[p, q]
    if apq == 0.0:
        return
    h = a[q, q] - a[p, p]
    if abs(h) > 1e100 * abs(apq):
        # rotation angle below resolution; avoid overflowing theta**2
        t = apq / h
    else:
        theta = h / (2.0 * apq)
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def _fix_signs(vectors, rel_tie=1e-9):
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        mags = np.abs(col)
        top = mags.max()
        # lowest index among entries tied (to rounding) with the largest magnitude
        lead = int(np.flatnonzero(mags >= top * (1.0 - rel_tie))[0])
        if col[lead] < 0:
            out[:, k] = -col
    return out


def jacobi_eigh(m: SymMatrix, tol: float = DEFAULT_TOL,
                max_sweeps: int = DEFAULT_MAX_SWEEPS) -> Spectrum:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Sweeps stop once the off-diagonal Frobenius norm of the rotated matrix is
    at most ``tol * ||m||_F``. Eigenvalues come back in descending order and
    each eigenvector column is signed so its largest-magnitude entry is
    nonnegative.

    Raises NonConvergence if ``max_sweeps`` is exhausted first.
    """
    if not isinstance(m, SymMatrix):
        m = SymMatrix(m)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_sweeps < 1:
        raise ValueError("max_sweeps must be at least 1")

    a = np.array(m.entries, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    target = tol * m.frobenius()

    sweeps = 0
    off = _off_norm(a)
    while off > target:
        if sweeps >= max_sweeps:
            raise NonConvergence(
                f"Jacobi did not converge in {max_sweeps} sweeps",
                residual_off_diagonal=off,
                target=target,
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
        off = _off_norm(a)

    evals = np.diag(a).copy()
    order = np.argsort(-evals, kind="stable")
    return Spectrum(evals[order], _fix_signs(v[:, order]), sweeps)


def helmert_matrix(n: int) -> np.ndarray:
    """Orthogonal Helmert matrix with first row ``(1, ..., 1)/sqrt(n)``.

    Row ``k`` (k >= 1) contrasts the first ``k`` points with point ``k + 1``;
    rows are ordered and signed so that the 3x3 case reads

        [ 1/sqrt3   1/sqrt3  1/sqrt3 ]
        [-1/sqrt2   0        1/sqrt2 ]
        [ 1/sqrt6  -2/sqrt6  1/sqrt6 ]
    """
    if n < 2:
        raise InvalidDimension(f"Helmert matrix needs n >= 2, got {n}")
    r = np.zeros((n, n))
    r[0, :] = 1.0 / math.sqrt(n)
    if n == 3:
        # the conventional 3x3 rotation pairs points 1 and 3 first
        r[1] = np.array([-1.0, 0.0, 1.0]) / math.sqrt(2.0)
        r[2] = np.array([1.0, -2.0, 1.0]) / math.sqrt(6.0)
        return r
    for k in range(1, n):
        r[k, :k] = -1.0
        r[k, k] = k
        r[k] /= math.sqrt(k * (k + 1))
    return r
