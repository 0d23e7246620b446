"""SVG rasters of the dual chart z = 1 of a plane curve.

Pixel (i, j) stands for the line u . x = 0 with u = (a, b, 1), where (a, b)
is the exact rational pixel centre.  Each raster row is one pencil of lines,
so its wall polynomial cuts the row into gaps of constant label: a pixel
centre is placed in its gap by comparing it with the isolating intervals
(with a Sturm count inside an interval), and a centre that is itself a root
is classified directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

from . import classify as cl
from .classify import HYPERSURFACE, VarietySpec, Verdict
from .poly import InputError, _variations, _zsign_at, _zsquarefree, _zsturm_chain

AVOIDANT_FILL = "#2f4b7c"
NONTRANSVERSE_FILL = "#d62728"
UNAVOIDANT_FILLS = ["#f2f2f2", "#dcdcdc", "#c4c4c4", "#acacac", "#949494", "#7c7c7c"]


@dataclass
class Raster:
    width: int
    height: int
    bounds: tuple
    labels: list
    direct: int

    def centre(self, i, j):
        xmin, xmax, ymin, ymax = self.bounds
        a = xmin + (Fraction(2 * i + 1, 2 * self.width)) * (xmax - xmin)
        b = ymax - (Fraction(2 * j + 1, 2 * self.height)) * (ymax - ymin)
        return a, b


def fill_for(label):
    verdict = label[0]
    if verdict == Verdict.AVOIDANT.value:
        return AVOIDANT_FILL
    if verdict == Verdict.UNAVOIDANT.value:
        k = min(label[1] // 2, len(UNAVOIDANT_FILLS) - 1)
        return UNAVOIDANT_FILLS[k]
    return NONTRANSVERSE_FILL


def _direct(X, a, b):
    return cl.classify_dual_line(X, [a, b, Fraction(1)]).label


def _row_labels(X, b, width, xmin, xmax):
    centres = [xmin + Fraction(2 * i + 1, 2 * width) * (xmax - xmin) for i in range(width)]
    try:
        w = cl.dual_wall_polynomial(X, [xmin, b, 1], [xmax, b, 1])
    except cl.SegmentInDiscriminant:
        return [_direct(X, a, b) for a in centres], width
    # the wall is parametrized by integer multiples alpha (xmin, b, 1) and
    # beta (xmax, b, 1); their third coordinates give the scales
    alpha = cl._int_vec([xmin, b, 1])[2]
    beta = cl._int_vec([xmax, b, 1])[2]
    g = [int(c) for c in w.g.coeffs]
    chain = _zsturm_chain(_zsquarefree(g)) if w.intervals else None
    out = []
    direct = 0
    for a in centres:
        t = alpha * (a - xmin) / (beta * (xmax - a) + alpha * (a - xmin))
        k = 0
        for lo, hi in w.intervals:
            if hi <= t:
                k += 1
            elif lo < t:
                # one root in (lo, hi); Sturm decides on which side of t it lies
                if _zsign_at(g, t) == 0:
                    k = None
                elif _variations(chain, lo) - _variations(chain, t) > 0:
                    k += 1
                break
            else:
                break
        if k is None:
            out.append(_direct(X, a, b))
            direct += 1
        else:
            out.append(w.gap_labels[k])
    return out, direct


def classify_dual_chart(X: VarietySpec, width=600, height=600, bounds=(-5, 5, -5, 5)) -> Raster:
    if X.kind != HYPERSURFACE or X.n != 3:
        raise InputError("plots are drawn for plane curves")
    if width < 1 or height < 1:
        raise InputError("raster size must be positive")
    xmin, xmax, ymin, ymax = (Fraction(v) for v in bounds)
    if not (xmin < xmax and ymin < ymax):
        raise InputError("empty chart bounds")
    labels = []
    direct = 0
    for j in range(height):
        b = ymax - Fraction(2 * j + 1, 2 * height) * (ymax - ymin)
        row, nd = _row_labels(X, b, width, xmin, xmax)
        labels.append(row)
        direct += nd
    return Raster(width, height, (xmin, xmax, ymin, ymax), labels, direct)


def raster_to_svg(R: Raster, title="", scale=1):
    """SVG 1.1 document; equal-fill runs of a row are merged into one rect."""
    W, H = R.width * scale, R.height * scale
    parts = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
             f'viewBox="0 0 {R.width} {R.height}" shape-rendering="crispEdges">']
    xmin, xmax, ymin, ymax = R.bounds
    parts.append(f"<title>{escape(title)}</title>")
    parts.append(f"<desc>dual chart z=1 over [{xmin},{xmax}]x[{ymin},{ymax}]; "
                 f"avoidant {AVOIDANT_FILL}, nontransverse {NONTRANSVERSE_FILL}, "
                 f"unavoidant shades by real point count</desc>")
    for j, row in enumerate(R.labels):
        i = 0
        while i < R.width:
            f = fill_for(row[i])
            k = i
            while k + 1 < R.width and fill_for(row[k + 1]) == f:
                k += 1
            parts.append(f'<rect x="{i}" y="{j}" width="{k - i + 1}" height="1" fill="{f}"/>')
            i = k + 1
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def svg_fills(svg_text, width, height):
    """Per-pixel fills read back from an SVG written by ``raster_to_svg``."""
    import xml.etree.ElementTree as ET

    root = ET.fromstring(svg_text)
    grid = [[None] * width for _ in range(height)]
    for el in root.iter("{http://www.w3.org/2000/svg}rect"):
        x, y, w = int(el.get("x")), int(el.get("y")), int(el.get("width"))
        for i in range(x, x + w):
            grid[y][i] = el.get("fill")
    return grid
