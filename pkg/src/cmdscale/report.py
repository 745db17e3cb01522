"""Build report documents for the CLI and render them as text or JSON.

Reports are plain nested dicts with a fixed key order. JSON keeps full double
precision; text prints 6 significant digits. Point indices are 1-based here.
"""

from __future__ import annotations

import json

import numpy as np

from .closed_form import (
    TriangleSides,
    euclidean_check,
    shift_to_vertex,
    solve_triangle_any,
    triangle_delta,
    triangle_eigenvalues,
)
from .diagnostics import distortion_report, eigenvector_difference_table, scan_triangle_violations
from .errors import DegenerateAllZero, IndexOutOfRange
from .pipeline import (
    embed,
    embed_spectrum,
    max_usable_dims,
    negative_tolerance,
    spectrum_of,
    verify_trace_identity,
)


def _labels(labels, n):
    return list(labels) if labels else [str(k + 1) for k in range(n)]


def _floats(arr):
    return [float(v) for v in arr]


def _coord_rows(coords, labels):
    return [[lab, *_floats(row)] for lab, row in zip(labels, coords)]


def _spectrum_section(eigenvalues):
    tol = negative_tolerance(eigenvalues)
    return {
        "eigenvalues": _floats(eigenvalues),
        "max_usable_dims": max_usable_dims(eigenvalues),
        "euclidean": bool(np.all(eigenvalues >= -tol)),
    }


def embed_report(d, labels, p):
    spec = spectrum_of(d)
    emb = embed_spectrum(spec, p)
    labels = _labels(labels, d.n)
    try:
        ti = verify_trace_identity(d, spec)
        trace = {"lhs": ti.lhs, "rhs": ti.rhs}
    except DegenerateAllZero:
        trace = None
    doc = {"command": "embed", "n": d.n, "dims": p, "labels": labels}
    doc.update(_spectrum_section(spec.eigenvalues))
    doc["coordinates"] = _coord_rows(emb.coords, labels)
    doc["trace_identity"] = trace
    return doc, emb


def _term(t, eigenvalues):
    return {"ell": t.ell + 1, "eigenvalue": float(eigenvalues[t.ell]), "value": t.value}


def diagnose_report(d, labels, p, pairs=None):
    """``pairs`` are 0-based index pairs; None reports all pairs."""
    labels = _labels(labels, d.n)
    spec = spectrum_of(d)
    rep = distortion_report(d, p, pairs=pairs, spec=spec)
    lam = spec.eigenvalues
    doc = {"command": "diagnose", "n": d.n, "dims": p, "labels": labels}
    doc.update(_spectrum_section(lam))
    doc["pairs"] = [
        {
            "i": pd.i + 1,
            "j": pd.j + 1,
            "labels": [labels[pd.i], labels[pd.j]],
            "dissimilarity": pd.dissimilarity,
            "fitted_distance": pd.fitted_distance,
            "delta_sq": pd.delta_sq,
            "d_sq": pd.d_sq,
            "gap": pd.gap,
            "gap_from_terms": pd.excluded_sum,
            "effect": pd.effect,
            "dominant": None if pd.dominant_term is None else _term(pd.dominant_term, lam),
            "excluded_terms": [_term(t, lam) for t in pd.excluded_terms],
        }
        for pd in rep.pairs
    ]
    excluded = list(range(p, d.n))
    table_pairs = [(pd.i, pd.j) for pd in rep.pairs]
    table = eigenvector_difference_table(spec, table_pairs, excluded)
    doc["eigenvector_differences"] = [
        {"i": i + 1, "j": j + 1, "abs_differences": {str(ell + 1): v for ell, v in row.items()}}
        for (i, j), row in table.items()
    ]
    doc["violations"] = violations_section(d, labels)
    return doc, rep


def violations_section(d, labels):
    return [
        {
            "i": v.i + 1, "j": v.j + 1, "k": v.k + 1,
            "labels": [labels[v.i], labels[v.j], labels[v.k]],
            "lhs": v.lhs, "rhs": v.rhs, "excess": v.excess,
        }
        for v in scan_triangle_violations(d)
    ]


def triangle_report(a, b, c, shift_vertex=None):
    """Returns ``(doc, coords)``; coords is 2-D for Euclidean sides and 1-D
    otherwise."""
    s = TriangleSides(a, b, c)
    verdict = euclidean_check(s)
    lam1, lam2 = triangle_eigenvalues(s)
    doc = {
        "command": "triangle",
        "sides": {"a": s.a, "b": s.b, "c": s.c},
        "verdict": verdict.label,
        "margin": verdict.margin,
        "delta": triangle_delta(s),
        "lambda1": lam1,
        "lambda2": lam2,
    }
    labels = ["A", "B", "C"]
    if verdict.euclidean:
        sol = solve_triangle_any(s)
        if shift_vertex is not None:
            sol = shift_to_vertex(sol, shift_vertex)
        doc.update({
            "method": sol.method,
            "w1": sol.w1,
            "w2": sol.w2,
            "little_delta": sol.little_delta,
            "dims": 2,
        })
        coords = sol.coords
    else:
        # lambda2 < 0: only the one-dimensional solution is real
        emb = embed(s.distance_matrix(), 1)
        coords = np.array(emb.coords)
        if shift_vertex is not None:
            if shift_vertex not in (1, 2, 3):
                raise IndexOutOfRange(f"vertex index must be 1, 2 or 3, got {shift_vertex}",
                                      index=shift_vertex)
            coords = coords - coords[shift_vertex - 1]
        doc.update({"method": "eigensolver", "w1": None, "w2": None,
                    "little_delta": None, "dims": 1})
    doc["shifted_to_vertex"] = shift_vertex
    doc["coordinates"] = _coord_rows(coords, labels)
    return doc, coords


def to_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _fmt(v):
    if isinstance(v, bool) or v is None:
        return str(v).lower() if isinstance(v, bool) else "-"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _render(obj, indent, lines):
    pad = "  " * indent
    for key, val in obj.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            _render(val, indent + 1, lines)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(f"{pad}  -")
                _render(item, indent + 2, lines)
        elif isinstance(val, list) and val and isinstance(val[0], list):
            lines.append(f"{pad}{key}:")
            for row in val:
                lines.append(f"{pad}  " + "  ".join(_fmt(x) for x in row))
        elif isinstance(val, list):
            lines.append(f"{pad}{key}: " + ("  ".join(_fmt(x) for x in val) if val else "(none)"))
        else:
            lines.append(f"{pad}{key}: {_fmt(val)}")


def to_text(doc) -> str:
    lines = []
    _render(doc, 0, lines)
    return "\n".join(lines) + "\n"
