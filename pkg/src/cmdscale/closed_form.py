"""Exact principal coordinates for two and three points.

Side labelling follows the 3x3 distance matrix::

        [0 a b]
    D = [a 0 c]
        [b c 0]

so ``a = |AB|``, ``b = |AC|``, ``c = |BC|`` for vertices A, B, C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    DegenerateFormula,
    FlatOrNonEuclidean,
    IndexOutOfRange,
    NonEuclidean,
    NonPositiveDistance,
)
from .matrix_core import helmert_matrix
from .pipeline import build_a, double_center, embed

TOL_DEGENERATE = 1e-10
EUCLIDEAN_RTOL = 1e-12


@dataclass(frozen=True)
class TriangleSides:
    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise NonPositiveDistance(f"side {name} must be positive, got {v}",
                                          side=name, value=v)

    @property
    def squares(self):
        return self.a * self.a, self.b * self.b, self.c * self.c

    @property
    def scale(self) -> float:
        return max(self.squares)

    def distance_matrix(self) -> np.ndarray:
        a, b, c = self.a, self.b, self.c
        return np.array([[0.0, a, b], [a, 0.0, c], [b, c, 0.0]])


@dataclass(frozen=True)
class TriangleSolution:
    """Planar coordinates of A, B, C (rows) with the quantities that produced
    them. ``w1``, ``w2`` and ``little_delta`` are None when the coordinates
    came from the general eigensolver path."""

    sides: TriangleSides
    delta: float
    lambda1: float
    lambda2: float
    coords: np.ndarray
    w1: Optional[float] = None
    w2: Optional[float] = None
    little_delta: Optional[float] = None
    method: str = "closed_form"

    def distances(self):
        """``(|AB|, |AC|, |BC|)`` of the returned coordinates."""
        x = self.coords
        return (float(np.linalg.norm(x[0] - x[1])),
                float(np.linalg.norm(x[0] - x[2])),
                float(np.linalg.norm(x[1] - x[2])))


class TwoPointSolution(NamedTuple):
    x1: float
    x2: float

    @property
    def shifted(self):
        """Same pair with the origin moved onto the second point."""
        return (self.x1 - self.x2, 0.0)


class EuclideanVerdict(NamedTuple):
    euclidean: bool
    margin: float  # a^2 + b^2 + c^2 - 2*Delta, equal to 6 * lambda2

    @property
    def label(self) -> str:
        return "Euclidean" if self.euclidean else "NonEuclidean"


def _sides(s) -> TriangleSides:
    if isinstance(s, TriangleSides):
        return s
    return TriangleSides(*map(float, s))


def solve_two_points(d: float) -> TwoPointSolution:
    if not (math.isfinite(d) and d > 0):
        raise NonPositiveDistance(f"distance must be positive, got {d}", value=d)
    return TwoPointSolution(d / 2.0, -d / 2.0)


def triangle_delta(s) -> float:
    """``sqrt(a^4 + b^4 + c^4 - a^2 b^2 - a^2 c^2 - b^2 c^2)``.

    Evaluated through the equivalent sum of squared differences, which cannot
    go negative under rounding.
    """
    a2, b2, c2 = _sides(s).squares
    return math.sqrt(((a2 - b2) ** 2 + (a2 - c2) ** 2 + (b2 - c2) ** 2) / 2.0)


def triangle_eigenvalues(s):
    s = _sides(s)
    total = sum(s.squares)
    delta = triangle_delta(s)
    return (total + 2 * delta) / 6.0, (total - 2 * delta) / 6.0


def euclidean_check(s, rtol: float = EUCLIDEAN_RTOL) -> EuclideanVerdict:
    """Three dissimilarities embed in the plane iff ``a^2+b^2+c^2 >= 2*Delta``."""
    s = _sides(s)
    margin = sum(s.squares) - 2.0 * triangle_delta(s)
    return EuclideanVerdict(margin >= -rtol * s.scale, margin)


def _raise_non_euclidean(s, verdict):
    raise NonEuclidean(
        f"sides ({s.a:g}, {s.b:g}, {s.c:g}) are not Euclidean: lambda2 = "
        f"{verdict.margin / 6:.6g} < 0",
        margin=verdict.margin, lambda2=verdict.margin / 6.0)


def solve_triangle(s) -> TriangleSolution:
    """Closed-form planar coordinates for three points.

    Eigenvectors of B are obtained by a Helmert rotation to a nested 2x2 block;
    their unnormalised forms have squared lengths ``2*delta`` and ``6*delta``
    with ``delta = Delta * (2*Delta - a^2 + 2*b^2 - c^2)``, giving weights
    ``w1 = sqrt(lambda1 / (2*delta))`` and ``w2 = sqrt(lambda2 / (6*delta))``.

    Raises NonEuclidean when lambda2 < 0 and DegenerateFormula when ``delta``
    is too small for the formula (equilateral and near-equilateral input);
    use :func:`solve_triangle_general` there.
    """
    s = _sides(s)
    verdict = euclidean_check(s)
    if not verdict.euclidean:
        _raise_non_euclidean(s, verdict)
    a2, b2, c2 = s.squares
    delta = triangle_delta(s)
    little = delta * (2 * delta - a2 + 2 * b2 - c2)
    if delta <= TOL_DEGENERATE * s.scale or little <= TOL_DEGENERATE * s.scale**2:
        raise DegenerateFormula(
            f"Delta = {delta:.3g}, delta = {little:.3g}: closed form is 0/0 here",
            delta=delta, little_delta=little)
    lam1, lam2 = triangle_eigenvalues(s)
    lam2 = max(lam2, 0.0)
    w1 = math.sqrt(lam1 / (2.0 * little))
    w2 = math.sqrt(lam2 / (6.0 * little))
    g1 = np.array([b2 - c2 + delta, -a2 + c2, a2 - b2 - delta])
    g2 = np.array([2 * a2 - b2 - c2 - delta,
                   -a2 + 2 * b2 - c2 + 2 * delta,
                   -a2 - b2 + 2 * c2 - delta])
    coords = np.column_stack([w1 * g1, w2 * g2])
    return TriangleSolution(s, delta, lam1, lam2, coords, w1, w2, little)


def solve_triangle_general(s) -> TriangleSolution:
    """Planar coordinates via the eigensolver; works where the closed form
    degenerates (equilateral, collinear)."""
    s = _sides(s)
    verdict = euclidean_check(s)
    if not verdict.euclidean:
        _raise_non_euclidean(s, verdict)
    emb = embed(s.distance_matrix(), 2)
    lam1, lam2 = (float(v) for v in emb.retained_eigenvalues)
    return TriangleSolution(s, triangle_delta(s), lam1, max(lam2, 0.0),
                            np.array(emb.coords), method="eigensolver")


def solve_triangle_any(s) -> TriangleSolution:
    try:
        return solve_triangle(s)
    except DegenerateFormula:
        return solve_triangle_general(s)


def helmert_block(s) -> np.ndarray:
    """``R B R'`` for the 3x3 Helmert matrix R: zero first row/column and a
    2x2 block ``[[b^2/2, (c^2-a^2)/(2 sqrt3)], [., (2a^2-b^2+2c^2)/6]]``."""
    r = helmert_matrix(3)
    b = double_center(build_a(_sides(s).distance_matrix())).b.entries
    return r @ b @ r.T


@dataclass(frozen=True)
class IsoscelesSolution:
    solution: TriangleSolution
    e: float

    @property
    def rescaled(self) -> np.ndarray:
        """Coordinates scaled so A and C sit at x = +1 and -1:
        ``A=(1,-e), B=(0,2e), C=(-1,-e)``."""
        e = self.e
        return np.array([[1.0, -e], [0.0, 2 * e], [-1.0, -e]])


def isosceles_coords(a: float, b: float) -> IsoscelesSolution:
    """Coordinates for the isosceles triangle with ``|AB| = |BC| = a`` and
    base ``|AC| = b``.

    ``A = (b/2, -h)``, ``B = (0, 2h)``, ``C = (-b/2, -h)`` with
    ``h = sqrt(4a^2 - b^2) / 6``. Valid for any ``0 < b < 2a``; for ``b < a``
    the base direction carries the smaller eigenvalue, so ``lambda1`` and
    ``lambda2`` are reported sorted rather than by axis.
    """
    s = TriangleSides(a, b, a)
    if b >= 2 * a:
        raise FlatOrNonEuclidean(f"b = {b:g} >= 2a = {2 * a:g}: triangle is flat or "
                                 "not Euclidean", a=a, b=b)
    root = math.sqrt(4 * a * a - b * b)
    x1, y1 = b / 2.0, -root / 6.0
    coords = np.array([[x1, y1], [0.0, -2 * y1], [-x1, y1]])
    base = b * b / 2.0
    height = (4 * a * a - b * b) / 6.0
    sol = TriangleSolution(s, abs(b * b - a * a), max(base, height), min(base, height),
                           coords, method="isosceles")
    return IsoscelesSolution(sol, root / (3.0 * b))


def shift_to_vertex(sol: TriangleSolution, vertex_index: int) -> TriangleSolution:
    """Translate so that vertex ``vertex_index`` (1-based) sits at the origin."""
    if vertex_index not in (1, 2, 3):
        raise IndexOutOfRange(f"vertex index must be 1, 2 or 3, got {vertex_index}",
                               index=vertex_index)
    coords = sol.coords - sol.coords[vertex_index - 1]
    return replace(sol, coords=coords)
