"""Classical MDS: dissimilarities -> doubly centred matrix -> principal coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import (
    AsymmetryExceedsTolerance,
    DegenerateAllZero,
    DimensionOutOfRange,
    InvalidDimension,
    NegativeEigenvalueRetained,
    NegativeEntry,
    NonzeroDiagonal,
    NotSquare,
    NumericalError,
)
from .matrix_core import DEFAULT_MAX_SWEEPS, DEFAULT_TOL, Spectrum, SymMatrix, jacobi_eigh

NEG_EIG_RTOL = 1e-8


@dataclass(frozen=True)
class DissimilarityMatrix:
    """Square, symmetric, nonnegative matrix with zero diagonal.

    Asymmetry and diagonal deviations up to ``asym_tol * scale`` are repaired
    (the matrix is averaged with its transpose and the diagonal zeroed);
    anything larger raises.
    """

    values: np.ndarray

    def __init__(self, values, asym_tol: float = 1e-9):
        d = np.asarray(values, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise NotSquare(f"dissimilarity matrix must be square, got shape {d.shape}")
        if d.shape[0] < 1:
            raise NotSquare("dissimilarity matrix is empty")
        if not np.all(np.isfinite(d)):
            raise NotSquare("dissimilarity matrix contains non-finite entries")
        if np.any(d < 0):
            i, j = np.argwhere(d < 0)[0]
            raise NegativeEntry(f"negative dissimilarity {d[i, j]} at ({i + 1}, {j + 1})",
                                row=int(i) + 1, col=int(j) + 1)
        limit = asym_tol * max(1.0, float(np.max(d)) ** 2)
        asym = np.abs(d - d.T)
        if np.max(asym) > limit:
            i, j = np.unravel_index(int(np.argmax(asym)), asym.shape)
            raise AsymmetryExceedsTolerance(
                f"d[{i + 1},{j + 1}] = {d[i, j]} but d[{j + 1},{i + 1}] = {d[j, i]}",
                row=int(i) + 1, col=int(j) + 1, max_asymmetry=float(asym[i, j]))
        diag = np.abs(np.diag(d))
        if np.max(diag) > limit:
            i = int(np.argmax(diag))
            raise NonzeroDiagonal(f"diagonal entry ({i + 1}, {i + 1}) is {d[i, i]}",
                                  row=i + 1, col=i + 1)
        d = 0.5 * (d + d.T)
        np.fill_diagonal(d, 0.0)
        d.setflags(write=False)
        object.__setattr__(self, "values", d)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def scale(self) -> float:
        """Largest squared dissimilarity, floored at 1 so tolerances stay usable
        for all-zero input."""
        return max(1.0, float(np.max(self.values)) ** 2)


@dataclass(frozen=True)
class CenteredGram:
    b: SymMatrix


@dataclass(frozen=True)
class Embedding:
    coords: np.ndarray
    retained_eigenvalues: np.ndarray
    excluded_eigenvalues: np.ndarray
    spectrum: Spectrum = field(repr=False)

    @property
    def p(self) -> int:
        return self.coords.shape[1]

    def distances(self) -> np.ndarray:
        diff = self.coords[:, None, :] - self.coords[None, :, :]
        return np.sqrt(np.sum(diff * diff, axis=-1))


class TraceIdentity(NamedTuple):
    lhs: float  # sum of eigenvalues
    rhs: float  # sum_{i<j} d_ij^2 / n


def _as_dissimilarity(d):
    return d if isinstance(d, DissimilarityMatrix) else DissimilarityMatrix(d)


def build_a(d) -> SymMatrix:
    """``a_ij = -d_ij**2 / 2``."""
    d = _as_dissimilarity(d)
    return SymMatrix(-0.5 * d.values**2)


def double_center(a) -> CenteredGram:
    """``B = H A H`` with ``H = I - 11'/n``, computed by subtracting row and
    column means and adding back the grand mean."""
    a = a if isinstance(a, SymMatrix) else SymMatrix(a)
    m = a.entries
    row = m.mean(axis=1, keepdims=True)
    col = m.mean(axis=0, keepdims=True)
    b = m - row - col + m.mean()
    return CenteredGram(SymMatrix(b))


def spectrum_of(d, tol: float = DEFAULT_TOL, max_sweeps: int = DEFAULT_MAX_SWEEPS) -> Spectrum:
    """Eigendecomposition of the doubly centred matrix of ``d``."""
    return jacobi_eigh(double_center(build_a(d)).b, tol=tol, max_sweeps=max_sweeps)


def negative_tolerance(eigenvalues) -> float:
    return NEG_EIG_RTOL * float(np.max(np.abs(eigenvalues), initial=0.0))


def max_usable_dims(eigenvalues) -> int:
    """Number of leading eigenvalues that are nonnegative up to tolerance."""
    tol = negative_tolerance(eigenvalues)
    k = 0
    for lam in eigenvalues:
        if lam < -tol:
            break
        k += 1
    return k


def embed_spectrum(spec: Spectrum, p: int) -> Embedding:
    n = spec.n
    if not 1 <= p <= n:
        raise DimensionOutOfRange(f"dims must lie in 1..{n}, got {p}", p=p, n=n)
    lam = spec.eigenvalues
    tol = negative_tolerance(lam)
    bad = [k for k in range(p) if lam[k] < -tol]
    if bad:
        k = bad[0]
        usable = max_usable_dims(lam)
        raise NegativeEigenvalueRetained(
            f"eigenvalue {k + 1} is {lam[k]:.6g} < 0; at most {usable} dimension(s) "
            "have nonnegative eigenvalues",
            index=k + 1, eigenvalue=float(lam[k]), max_usable_dims=usable)
    # |lambda| <= tol_neg is a numerical zero on either side
    kept = np.where(np.abs(lam[:p]) <= tol, 0.0, lam[:p])
    coords = spec.eigenvectors[:, :p] * np.sqrt(kept)
    return Embedding(coords, lam[:p].copy(), lam[p:].copy(), spec)


def embed(d, p: int, tol: float = DEFAULT_TOL, max_sweeps: int = DEFAULT_MAX_SWEEPS) -> Embedding:
    """Principal-coordinate embedding of ``d`` in ``p`` dimensions.

    Column ``k`` of the result is ``sqrt(lambda_k) * gamma_k``. Eigenvalues
    with ``|lambda| <= tol_neg = 1e-8 * max|lambda|`` count as zero; a
    genuinely negative eigenvalue among the first ``p`` raises
    NegativeEigenvalueRetained.
    """
    d = _as_dissimilarity(d)
    if not 1 <= p <= d.n:
        raise DimensionOutOfRange(f"dims must lie in 1..{d.n}, got {p}", p=p, n=d.n)
    return embed_spectrum(spectrum_of(d, tol, max_sweeps), p)


def verify_trace_identity(d, spec: Spectrum | None = None) -> TraceIdentity:
    """Both sides of ``sum(lambda) == sum_{i<j} d_ij^2 / n``.

    Also checks the consequence that the top eigenvalue is positive.
    """
    d = _as_dissimilarity(d)
    if d.n < 2:
        raise InvalidDimension("trace identity needs at least two points")
    if not np.any(d.values):
        raise DegenerateAllZero("all dissimilarities are zero; every eigenvalue is 0")
    spec = spec or spectrum_of(d)
    lhs = float(np.sum(spec.eigenvalues))
    rhs = float(np.sum(np.triu(d.values, 1) ** 2)) / d.n
    if abs(lhs - rhs) > 1e-9 * d.scale:
        raise NumericalError(f"trace identity off by {lhs - rhs:.3g}", lhs=lhs, rhs=rhs)
    if not spec.eigenvalues[0] > 0:
        raise NumericalError("largest eigenvalue is not positive",
                             eigenvalue=float(spec.eigenvalues[0]))
    return TraceIdentity(lhs, rhs)


def collinear_lambda(n: int, scaled: bool = False) -> float:
    """Sole nonzero eigenvalue for points ``1, ..., n`` on a line.

    With ``scaled`` the points are first rescaled to span ``[0, 1]``.
    """
    if n < 2:
        raise InvalidDimension(f"need n >= 2, got {n}")
    lam = n * (n * n - 1) / 12.0
    if scaled:
        lam /= (n - 1) ** 2
    return lam
