import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cmdscale.errors import (
    AsymmetryExceedsTolerance,
    DegenerateAllZero,
    DimensionOutOfRange,
    InvalidDimension,
    NegativeEigenvalueRetained,
    NegativeEntry,
    NonzeroDiagonal,
    NotSquare,
)
from cmdscale.pipeline import (
    DissimilarityMatrix,
    build_a,
    collinear_lambda,
    double_center,
    embed,
    max_usable_dims,
    spectrum_of,
    verify_trace_identity,
)

from conftest import RAIL, oracle_gram, pairwise


def test_build_a():
    assert build_a([[0, 2], [2, 0]]).entries.tolist() == [[0, -2], [-2, 0]]
    assert build_a(RAIL)[0, 1] == -264.5
    assert not np.any(build_a(np.zeros((3, 3))).entries)


@pytest.mark.parametrize("d", [0.5, 2.0, 7.0])
def test_double_center_two_points(d):
    b = double_center(build_a([[0, d], [d, 0]])).b.entries
    q = d * d / 4
    assert np.allclose(b, [[q, -q], [-q, q]], atol=1e-15)


def test_double_center_three_points_closed_form():
    a, b, c = 3.0, 4.0, 5.0
    a2, b2, c2 = a * a, b * b, c * c
    expected = np.array([
        [4 * a2 + 4 * b2 - 2 * c2, -5 * a2 + b2 + c2, a2 - 5 * b2 + c2],
        [-5 * a2 + b2 + c2, 4 * a2 - 2 * b2 + 4 * c2, a2 + b2 - 5 * c2],
        [a2 - 5 * b2 + c2, a2 + b2 - 5 * c2, -2 * a2 + 4 * b2 + 4 * c2],
    ]) / 18
    got = double_center(build_a([[0, a, b], [a, 0, c], [b, c, 0]])).b.entries
    assert np.allclose(got, expected, atol=1e-12)


def test_double_center_kills_constants():
    b = double_center(np.full((4, 4), 3.7)).b.entries
    assert np.max(np.abs(b)) < 1e-14


def test_double_center_matches_explicit_centring():
    b = double_center(build_a(RAIL)).b.entries
    assert np.allclose(b, oracle_gram(RAIL), atol=1e-9 * 71**2)
    assert np.max(np.abs(b.sum(axis=0))) < 1e-9 * 71**2


def test_embed_two_points():
    emb = embed([[0, 6.0], [6.0, 0]], 1)
    assert sorted(emb.coords[:, 0]) == pytest.approx([-3.0, 3.0], abs=1e-12)
    assert emb.excluded_eigenvalues == pytest.approx([0.0], abs=1e-12)


def test_embed_rail_distances():
    dist = embed(RAIL, 2).distances()
    assert dist[0, 4] == pytest.approx(45.5, abs=0.1)
    # exact value of the 2-D fit; see the decisions ledger for the 7.1 discrepancy
    assert dist[1, 2] == pytest.approx(3.851714669813, abs=1e-9)


def test_embed_rail_matches_lapack_oracle():
    w, v = np.linalg.eigh(oracle_gram(RAIL))
    order = np.argsort(w)[::-1]
    x = v[:, order[:2]] * np.sqrt(w[order[:2]])
    assert np.allclose(embed(RAIL, 2).distances(), pairwise(x), atol=1e-9)


def test_embed_collinear_three():
    d = pairwise([0.0, 1.0, 2.0])
    emb = embed(d, 1)
    assert emb.retained_eigenvalues[0] == pytest.approx(2.0, abs=1e-12)
    assert np.allclose(emb.distances(), d, atol=1e-12)


def test_embed_rejects_negative_retained():
    with pytest.raises(NegativeEigenvalueRetained) as exc:
        embed(RAIL, 5)
    assert exc.value.details["max_usable_dims"] == 4
    assert exc.value.details["index"] == 5


def test_embed_dimension_range():
    with pytest.raises(DimensionOutOfRange):
        embed(RAIL, 0)
    with pytest.raises(DimensionOutOfRange):
        embed(RAIL, 6)


def test_embed_allows_coincident_points():
    d = pairwise([0.0, 0.0, 3.0])
    emb = embed(d, 1)
    assert np.allclose(emb.distances(), d, atol=1e-12)


def test_max_usable_dims_rail():
    assert max_usable_dims(spectrum_of(RAIL).eigenvalues) == 4


def test_trace_identity_rail():
    lhs, rhs = verify_trace_identity(RAIL)
    squares = sum(RAIL[i, j] ** 2 for i in range(5) for j in range(i + 1, 5))
    assert rhs == pytest.approx(squares / 5)
    assert squares == 18727
    assert lhs == pytest.approx(3745.4, abs=1e-9 * 71**2)


def test_trace_identity_two_points():
    lhs, rhs = verify_trace_identity([[0, 2], [2, 0]])
    assert lhs == pytest.approx(2.0) and rhs == pytest.approx(2.0)


def test_trace_identity_line():
    d = pairwise(np.arange(1.0, 6.0))
    spec = spectrum_of(d)
    assert spec.eigenvalues[0] == pytest.approx(10.0, abs=1e-9 * 16)
    assert verify_trace_identity(d).lhs == pytest.approx(10.0)


def test_trace_identity_all_zero():
    with pytest.raises(DegenerateAllZero):
        verify_trace_identity(np.zeros((3, 3)))
    with pytest.raises(InvalidDimension):
        verify_trace_identity([[0.0]])


def test_collinear_lambda_values():
    assert collinear_lambda(5) == 10
    assert collinear_lambda(2, scaled=True) == 0.5
    assert embed([[0, 1.0], [1.0, 0]], 1).retained_eigenvalues[0] == pytest.approx(0.5)
    with pytest.raises(InvalidDimension):
        collinear_lambda(1)


def test_collinear_lambda_scaled_pipeline():
    x = np.linspace(0.0, 1.0, 10)
    lam = spectrum_of(pairwise(x)).eigenvalues
    assert lam[0] == pytest.approx(collinear_lambda(10, scaled=True), abs=1e-9)
    assert np.all(np.abs(lam[1:]) < 1e-9)


@pytest.mark.parametrize("bad, err", [
    ([[0, 1], [2, 0]], AsymmetryExceedsTolerance),
    ([[0, -1], [-1, 0]], NegativeEntry),
    ([[1, 1], [1, 0]], NonzeroDiagonal),
    ([[0, 1, 2], [1, 0, 3]], NotSquare),
    ([[0, np.nan], [np.nan, 0]], NotSquare),
])
def test_dissimilarity_validation(bad, err):
    with pytest.raises(err):
        DissimilarityMatrix(bad)


def test_dissimilarity_symmetrises_within_tolerance():
    d = DissimilarityMatrix([[0, 1.0], [1.0 + 1e-12, 1e-13]])
    assert d.values[0, 1] == d.values[1, 0]
    assert d.values[1, 1] == 0.0


@st.composite
def point_clouds(draw):
    k = draw(st.integers(1, 4))
    n = draw(st.integers(2, 10))
    pts = draw(st.lists(st.lists(st.floats(-10, 10, allow_nan=False), min_size=k, max_size=k),
                        min_size=n, max_size=n))
    return np.array(pts), k


@settings(max_examples=300, deadline=None)
@given(point_clouds())
def test_exact_recovery(cloud):
    pts, k = cloud
    d = pairwise(pts)
    p = min(k, d.shape[0])
    emb = embed(d, p)
    scale = max(1.0, float(np.max(d)) ** 2)
    assert np.max(np.abs(emb.distances() - d)) <= 1e-6 * scale
    assert np.max(np.abs(emb.coords.mean(axis=0))) <= 1e-9 * scale


@st.composite
def dissimilarities(draw, max_n=8):
    n = draw(st.integers(2, max_n))
    vals = draw(st.lists(st.floats(0, 100, allow_nan=False), min_size=n * (n - 1) // 2,
                         max_size=n * (n - 1) // 2))
    d = np.zeros((n, n))
    d[np.triu_indices(n, 1)] = vals
    return d + d.T


@settings(max_examples=300, deadline=None)
@given(dissimilarities())
def test_spectrum_invariants(d):
    dm = DissimilarityMatrix(d)
    spec = spectrum_of(dm)
    lam = spec.eigenvalues
    n = dm.n
    trace_rhs = np.sum(np.triu(d, 1) ** 2) / n
    assert abs(lam.sum() - trace_rhs) <= 1e-9 * dm.scale
    # the ones vector is always an eigenvector with eigenvalue zero
    ones = np.ones(n) / np.sqrt(n)
    b = double_center(build_a(dm)).b.entries
    assert np.max(np.abs(b @ ones)) <= 1e-9 * dm.scale
    k = int(np.argmax(np.abs(spec.eigenvectors.T @ ones)))
    assert abs(lam[k]) <= 1e-8 * dm.scale
    if np.any(d * d):  # squares of ~1e-160 underflow to zero
        assert lam[0] > 0
