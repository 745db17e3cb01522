"""CSV reading for dissimilarity matrices, and the bundled fixture."""

from __future__ import annotations

import csv
import io
from importlib import resources

import numpy as np

from .errors import NotSquare, ParseError
from .pipeline import DissimilarityMatrix


def _is_number(tok: str) -> bool:
    try:
        float(tok)
    except ValueError:
        return False
    return True


def parse_matrix_csv(content: str):
    """Parse comma-separated dissimilarities.

    A non-numeric first cell means the file carries a header row of labels
    and a leading label column (the top-left cell may be empty). Returns
    ``(DissimilarityMatrix, labels)``; labels are None when absent.
    """
    rows = [r for r in csv.reader(io.StringIO(content)) if any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty matrix file")
    rows = [[c.strip() for c in r] for r in rows]

    labels = None
    row_offset = col_offset = 0
    if not _is_number(rows[0][0]):
        row_offset = 1
        n_body = len(rows) - 1
        header = rows[0]
        labels = header[1:] if len(header) == n_body + 1 else header
        if rows[1:] and len(rows[1]) == n_body + 1 and not _is_number(rows[1][0]):
            col_offset = 1

    body = rows[row_offset:]
    n = len(body)
    values = np.empty((n, n))
    for r, row in enumerate(body):
        cells = row[col_offset:]
        if len(cells) != n:
            raise NotSquare(f"row {r + 1 + row_offset} has {len(cells)} values, expected {n}",
                            row=r + 1 + row_offset)
        for c, tok in enumerate(cells):
            try:
                values[r, c] = float(tok)
            except ValueError:
                raise ParseError(f"cannot parse {tok!r} at row {r + 1 + row_offset}, "
                                 f"column {c + 1 + col_offset}",
                                 row=r + 1 + row_offset, col=c + 1 + col_offset,
                                 token=tok) from None
    if labels is not None:
        if len(labels) != n:
            raise ParseError(f"{len(labels)} labels for {n} rows", labels=len(labels), n=n)
        if len(set(labels)) != n:
            raise ParseError("labels are not unique")
        if col_offset:
            row_labels = [r[0] for r in body]
            if row_labels != labels:
                raise ParseError("row labels do not match header labels")
    return DissimilarityMatrix(values), labels


def read_matrix_csv(path):
    if str(path) == "-":
        import sys
        return parse_matrix_csv(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_matrix_csv(fh.read())


def rail_fixture_text() -> str:
    """Journey-time dissimilarities (minutes) between five Yorkshire stations."""
    return resources.files("cmdscale").joinpath("fixtures/rail_yorkshire.csv").read_text("utf-8")


def rail_fixture():
    return parse_matrix_csv(rail_fixture_text())
