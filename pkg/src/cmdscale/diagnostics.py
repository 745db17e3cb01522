"""Per-eigenvalue decomposition of the error of a low-dimensional MDS fit.

For points ``i`` and ``j`` the squared dissimilarity splits exactly as

    delta_ij^2 = sum_l lambda_l * (gamma_il - gamma_jl)^2 = sum_l g_ij^(l)

and a ``p``-dimensional fit keeps only ``l <= p``, so the gap
``delta^2 - d^2`` is the sum of the excluded terms. Excluded positive
eigenvalues make the fit understate a dissimilarity, negative ones make it
overstate.

Indices are 0-based throughout this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional

import numpy as np

from .errors import DimensionOutOfRange, IndexOutOfRange, SameIndex
from .matrix_core import Spectrum
from .pipeline import DissimilarityMatrix, embed_spectrum, spectrum_of

CLUSTER_RTOL = 1e-8


class GTerm(NamedTuple):
    i: int
    j: int
    ell: int
    value: float


class MetricViolation(NamedTuple):
    i: int
    j: int
    k: int
    lhs: float  # d[i, k]
    rhs: float  # d[i, j] + d[j, k]

    @property
    def excess(self) -> float:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class PairDistortion:
    i: int
    j: int
    delta_sq: float
    d_sq: float
    gap: float
    excluded_terms: tuple
    dominant_term: Optional[GTerm]
    dominant_eigenvalue: Optional[float]

    @property
    def dissimilarity(self) -> float:
        return float(np.sqrt(self.delta_sq))

    @property
    def fitted_distance(self) -> float:
        return float(np.sqrt(max(self.d_sq, 0.0)))

    @property
    def excluded_sum(self) -> float:
        return float(sum(t.value for t in self.excluded_terms))

    @property
    def effect(self) -> str:
        """'understated' when the fit is shorter than the dissimilarity,
        'overstated' when longer, 'exact' when neither beyond rounding."""
        if self.dominant_term is None or self.dominant_term.value == 0.0:
            return "exact"
        return "understated" if self.dominant_term.value > 0 else "overstated"


@dataclass(frozen=True)
class DistortionReport:
    p: int
    eigenvalues: np.ndarray
    pairs: tuple
    spectrum: Spectrum

    def pair(self, i: int, j: int) -> PairDistortion:
        i, j = min(i, j), max(i, j)
        for pd in self.pairs:
            if (pd.i, pd.j) == (i, j):
                return pd
        raise IndexOutOfRange(f"pair ({i}, {j}) not in report")


def _check_index(n, *idx):
    for k in idx:
        if not 0 <= k < n:
            raise IndexOutOfRange(f"index {k} outside 0..{n - 1}", index=k, n=n)


def g_terms(spec: Spectrum, i: int, j: int) -> list:
    """``g_ij^(l) = lambda_l * (gamma_il - gamma_jl)^2`` for every ``l``."""
    _check_index(spec.n, i, j)
    if i == j:
        raise SameIndex(f"g-terms need two distinct points, got ({i}, {i})", index=i)
    diff = spec.eigenvectors[i] - spec.eigenvectors[j]
    vals = spec.eigenvalues * diff * diff
    return [GTerm(i, j, ell, float(v)) for ell, v in enumerate(vals)]


def eigenvalue_clusters(eigenvalues, rtol: float = CLUSTER_RTOL, scale: float = 1.0):
    """Group consecutive (sorted) eigenvalues closer than ``rtol * scale``."""
    clusters = []
    for ell, lam in enumerate(eigenvalues):
        if clusters and abs(eigenvalues[clusters[-1][-1]] - lam) < rtol * scale:
            clusters[-1].append(ell)
        else:
            clusters.append([ell])
    return clusters


def _dominant(terms, clusters, eigenvalues):
    # per-cluster sums are basis independent; pick largest |sum|, lower l wins ties
    by_ell = {t.ell: t for t in terms}
    best = None
    for cl in clusters:
        members = [by_ell[ell] for ell in cl if ell in by_ell]
        if not members:
            continue
        total = sum(t.value for t in members)
        if best is None or abs(total) > abs(best.value):
            best = GTerm(members[0].i, members[0].j, members[0].ell, total)
    if best is None:
        return None, None
    return best, float(eigenvalues[best.ell])


def distortion_report(d, p: int, pairs=None, spec: Spectrum | None = None) -> DistortionReport:
    """Decompose ``delta^2 - d^2`` for a ``p``-dimensional fit.

    ``pairs`` restricts the report to the given ``(i, j)`` pairs; by default
    every pair ``i < j`` is included.
    """
    d = d if isinstance(d, DissimilarityMatrix) else DissimilarityMatrix(d)
    n = d.n
    if not 1 <= p < n:
        raise DimensionOutOfRange(f"dims must lie in 1..{n - 1}, got {p}", p=p, n=n)
    spec = spec or spectrum_of(d)
    emb = embed_spectrum(spec, p)
    fitted = emb.distances()
    clusters = eigenvalue_clusters(spec.eigenvalues, scale=d.scale)

    if pairs is None:
        pairs = list(combinations(range(n), 2))
    out = []
    for i, j in pairs:
        _check_index(n, i, j)
        if i == j:
            raise SameIndex(f"pair ({i}, {j}) repeats a point", index=i)
        i, j = min(i, j), max(i, j)
        terms = g_terms(spec, i, j)
        excluded = tuple(terms[p:])
        dom, dom_lam = _dominant(excluded, clusters, spec.eigenvalues)
        delta_sq = float(d.values[i, j] ** 2)
        d_sq = float(fitted[i, j] ** 2)
        out.append(PairDistortion(i, j, delta_sq, d_sq, delta_sq - d_sq,
                                  excluded, dom, dom_lam))
    return DistortionReport(p, spec.eigenvalues, tuple(out), spec)


def eigenvector_difference_table(spec: Spectrum, pairs, ells) -> dict:
    """``{(i, j): {l: |gamma_il - gamma_jl|}}`` for the requested pairs and
    eigenvector indices."""
    g = spec.eigenvectors
    table = {}
    for i, j in pairs:
        _check_index(spec.n, i, j)
        row = {}
        for ell in ells:
            _check_index(spec.n, ell)
            row[ell] = float(abs(g[i, ell] - g[j, ell]))
        table[(i, j)] = row
    return table


def scan_triangle_violations(d, rtol: float = 1e-12) -> list:
    """Every ``(i, j, k)`` with ``i < k``, ``j`` distinct from both, and
    ``d[i, k] > d[i, j] + d[j, k]``; largest excess first."""
    d = d if isinstance(d, DissimilarityMatrix) else DissimilarityMatrix(d)
    v = d.values
    n = d.n
    slack = rtol * float(np.max(v, initial=0.0))
    found = []
    for i, k in combinations(range(n), 2):
        for j in range(n):
            if j == i or j == k:
                continue
            lhs, rhs = float(v[i, k]), float(v[i, j] + v[j, k])
            if lhs - rhs > slack:
                found.append(MetricViolation(i, j, k, lhs, rhs))
    found.sort(key=lambda m: (-m.excess, m.i, m.j, m.k))
    return found
