"""Deterministic SVG scatter plot of a two-dimensional configuration."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .errors import WrongDimension

SIZE = 480
MARGIN = 60
PAD = 0.12


def _nice_step(span, target=5):
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 5, 10):
        if m * mag >= raw:
            return m * mag
    return 10 * mag


def viewport(coords):
    """Data window ``(xmin, ymax, scale)`` mapping data units to pixels with the
    same scale on both axes."""
    coords = np.asarray(coords, dtype=float)
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    span *= 1 + 2 * PAD
    mid = (lo + hi) / 2
    scale = (SIZE - 2 * MARGIN) / span
    return float(mid[0] - span / 2), float(mid[1] + span / 2), scale


def pixel_coords(coords):
    xmin, ymax, scale = viewport(coords)
    coords = np.asarray(coords, dtype=float)
    px = MARGIN + (coords[:, 0] - xmin) * scale
    py = MARGIN + (ymax - coords[:, 1]) * scale
    return np.column_stack([px, py])


def _num(v):
    return f"{v:.2f}"


def _tick_label(v, step):
    decimals = max(0, -int(math.floor(math.log10(step))))
    return f"{v:.{decimals}f}"


def render_svg(coords, labels=None, title=None) -> str:
    coords = np.asarray(coords, dtype=float)
    if coords.ndim != 2 or coords.shape[1] != 2:
        raise WrongDimension(f"SVG output needs a 2-D configuration, got {coords.shape[-1]} "
                             "dimension(s)", dims=int(coords.shape[-1]))
    n = coords.shape[0]
    labels = labels or [str(k + 1) for k in range(n)]
    xmin, ymax, scale = viewport(coords)
    span = (SIZE - 2 * MARGIN) / scale
    lo, hi = MARGIN, SIZE - MARGIN
    step = _nice_step(span)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" '
        f'height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<rect x="{lo}" y="{lo}" width="{hi - lo}" height="{hi - lo}" fill="none" '
        'stroke="black" stroke-width="1"/>',
    ]
    if title:
        out.append(f'<text x="{SIZE / 2:.2f}" y="{MARGIN / 2:.2f}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">{escape(title)}</text>')

    for axis in (0, 1):
        start = (xmin if axis == 0 else ymax - span)
        first = math.ceil(start / step - 1e-9)
        last = math.floor((start + span) / step + 1e-9)
        for k in range(first, last + 1):
            v = k * step
            text = _tick_label(v, step)
            if axis == 0:
                px = MARGIN + (v - xmin) * scale
                out.append(f'<line x1="{_num(px)}" y1="{hi}" x2="{_num(px)}" y2="{hi + 5}" '
                           'stroke="black"/>')
                out.append(f'<text x="{_num(px)}" y="{hi + 18}" text-anchor="middle" '
                           f'font-family="sans-serif" font-size="10">{text}</text>')
            else:
                py = MARGIN + (ymax - v) * scale
                out.append(f'<line x1="{lo - 5}" y1="{_num(py)}" x2="{lo}" y2="{_num(py)}" '
                           'stroke="black"/>')
                out.append(f'<text x="{lo - 8}" y="{_num(py + 3)}" text-anchor="end" '
                           f'font-family="sans-serif" font-size="10">{text}</text>')

    out.append(f'<text x="{SIZE / 2:.2f}" y="{SIZE - 15}" text-anchor="middle" '
               'font-family="sans-serif" font-size="12">coordinate 1</text>')
    out.append(f'<text x="15" y="{SIZE / 2:.2f}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12" '
               f'transform="rotate(-90 15 {SIZE / 2:.2f})">coordinate 2</text>')

    for (px, py), label in zip(pixel_coords(coords), labels):
        out.append(f'<circle cx="{_num(px)}" cy="{_num(py)}" r="4" fill="steelblue" '
                   'stroke="black" stroke-width="0.5"/>')
        out.append(f'<text x="{_num(px + 6)}" y="{_num(py - 6)}" font-family="sans-serif" '
                   f'font-size="11">{escape(str(label))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(coords, labels, path, title=None) -> None:
    text = render_svg(coords, labels, title)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
