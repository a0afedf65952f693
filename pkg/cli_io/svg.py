"""
Phase Diagram SVG
Grayscale heatmap of mean <u_hat_1, u_1>^2 over the (alpha, gamma) grid
"""

import logging
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from common.errors import IoError, ValidationError
from regime import LabelKind, RegimeLabel

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
CELL = 40
LEFT = 80
TOP = 40
LEGEND_GAP = 30
LEGEND_WIDTH = 16
BOUNDARY_STROKE = "#d62728"


@dataclass(frozen=True)
class DiagramFile:
    path: Path
    rows: int
    cols: int
    boundary_nodes: int


def shade(value: Optional[float]) -> Optional[str]:
    """0 -> white, 1 -> black; None/NaN -> no fill"""
    if value is None or not math.isfinite(value):
        return None
    v = min(max(float(value), 0.0), 1.0)
    g = int(round(255 * (1.0 - v)))
    return f"rgb({g},{g},{g})"


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip('0').rstrip('.')


def _axis_map(values: Sequence[float], origin: float) -> Tuple[float, float]:
    """(offset, scale) such that value v sits at offset + scale * v"""
    lo, hi = values[0], values[-1]
    count = len(values)
    if count == 1 or hi == lo:
        return origin + 0.5 * CELL - lo * CELL, CELL
    scale = (count - 1) * CELL / (hi - lo)
    return origin + 0.5 * CELL - lo * scale, scale


def _boundary_segment(alphas: Sequence[float], gammas: Sequence[float]) -> Tuple[float, float, float, float]:
    """alpha + gamma = 1 clipped to the grid's extreme alpha and gamma values"""
    a_min, a_max = min(alphas), max(alphas)
    g_min, g_max = min(gammas), max(gammas)
    lo = max(a_min, 1.0 - g_max)
    hi = min(a_max, 1.0 - g_min)
    if lo > hi:
        lo, hi = a_min, a_max
    return lo, 1.0 - lo, hi, 1.0 - hi


def _sub(parent: ET.Element, tag: str, text: Optional[str] = None, **attrs: str) -> ET.Element:
    el = ET.SubElement(parent, tag, {k.replace('_', '-'): v for k, v in attrs.items()})
    if text is not None:
        el.text = text
    return el


def emit_phase_svg(matrix: Union[np.ndarray, Sequence[Sequence[Optional[float]]]],
                   labels: Optional[Sequence[Sequence[RegimeLabel]]],
                   path: Union[str, Path],
                   alpha_values: Optional[Sequence[float]] = None,
                   gamma_values: Optional[Sequence[float]] = None) -> DiagramFile:
    """
    Write the phase diagram

    Row 0 of the matrix is the top row (largest gamma), column 0 the smallest
    alpha. Nodes labelled Boundary get a "B" glyph.

    Args:
        matrix: Mean inner_sq per node, NaN or None where unknown
        labels: Classifier labels with the same shape, or None
        path: Output file
        alpha_values: Column values; defaults to an even grid on [0, 1]
        gamma_values: Row values (descending); defaults to an even grid on [1, 0]

    Returns:
        DiagramFile
    """
    rows_in = [list(row) for row in matrix]
    if not rows_in or not rows_in[0] or any(len(row) != len(rows_in[0]) for row in rows_in):
        raise ValidationError('matrix', "phase matrix must be rectangular and nonempty")
    rows, cols = len(rows_in), len(rows_in[0])
    if labels is not None and (len(labels) != rows or any(len(r) != cols for r in labels)):
        raise ValidationError('labels', f"expected a {rows} x {cols} label grid")

    alphas = [float(a) for a in alpha_values] if alpha_values is not None else list(np.linspace(0.0, 1.0, cols))
    gammas = [float(g) for g in gamma_values] if gamma_values is not None else list(np.linspace(1.0, 0.0, rows))
    if len(alphas) != cols or len(gammas) != rows:
        raise ValidationError('matrix', "axis values do not match the matrix shape")

    width = LEFT + cols * CELL + LEGEND_GAP + LEGEND_WIDTH + 50
    height = TOP + rows * CELL + 60

    root = ET.Element('svg', {
        'xmlns': SVG_NS,
        'version': '1.1',
        'width': str(width),
        'height': str(height),
        'viewBox': f"0 0 {width} {height}",
    })
    _sub(root, 'title', "Mean squared inner product of the first sample eigenvector")

    defs = _sub(root, 'defs')
    grad = _sub(defs, 'linearGradient', id='legend', x1='0', y1='0', x2='0', y2='1')
    _sub(grad, 'stop', offset='0', stop_color='rgb(0,0,0)')
    _sub(grad, 'stop', offset='1', stop_color='rgb(255,255,255)')

    cells = _sub(root, 'g', id='cells', stroke='#999999', stroke_width='0.5')
    glyphs = _sub(root, 'g', id='boundary-nodes', fill=BOUNDARY_STROKE, font_family='sans-serif',
                  font_size='14', text_anchor='middle')
    boundary_nodes = 0
    for r in range(rows):
        for c in range(cols):
            x, y = LEFT + c * CELL, TOP + r * CELL
            fill = shade(rows_in[r][c])
            _sub(cells, 'rect', x=str(x), y=str(y), width=str(CELL), height=str(CELL), fill=fill or 'none')
            if labels is not None and labels[r][c].kind is LabelKind.BOUNDARY:
                boundary_nodes += 1
                _sub(glyphs, 'text', "B", x=str(x + CELL // 2), y=str(y + CELL // 2 + 5))

    ax_off, ax_scale = _axis_map(alphas, LEFT)
    g_asc = gammas[::-1]
    gy_off, gy_scale = _axis_map(g_asc, 0.0)

    def gy(g: float) -> float:
        # rows run top-down over descending gamma
        return TOP + rows * CELL - (gy_off + gy_scale * g)

    a0, g0, a1, g1 = _boundary_segment(alphas, gammas)
    _sub(root, 'line',
         x1=_fmt(ax_off + ax_scale * a0), y1=_fmt(gy(g0)),
         x2=_fmt(ax_off + ax_scale * a1), y2=_fmt(gy(g1)),
         stroke=BOUNDARY_STROKE, stroke_width='2', stroke_dasharray='6,4')

    bottom = TOP + rows * CELL
    right = LEFT + cols * CELL
    _sub(root, 'path', d=f"M {LEFT} {TOP} V {bottom} H {right}", fill='none', stroke='#000000')

    ticks = _sub(root, 'g', id='ticks', font_family='sans-serif', font_size='10', fill='#000000')
    for c, a in enumerate(alphas):
        _sub(ticks, 'text', _fmt(a), x=str(LEFT + c * CELL + CELL // 2), y=str(bottom + 14), text_anchor='middle')
    for r, g in enumerate(gammas):
        _sub(ticks, 'text', _fmt(g), x=str(LEFT - 6), y=str(TOP + r * CELL + CELL // 2 + 4), text_anchor='end')

    _sub(root, 'text', "alpha (spike index)", x=str(LEFT + cols * CELL // 2), y=str(bottom + 34),
         text_anchor='middle', font_family='sans-serif', font_size='12')
    mid = TOP + rows * CELL // 2
    _sub(root, 'text', "gamma (sample index)", x='20', y=str(mid), text_anchor='middle',
         font_family='sans-serif', font_size='12', transform=f"rotate(-90 20 {mid})")

    lx = right + LEGEND_GAP
    _sub(root, 'polygon', points=f"{lx},{TOP} {lx + LEGEND_WIDTH},{TOP} {lx + LEGEND_WIDTH},{bottom} {lx},{bottom}",
         fill='url(#legend)', stroke='#000000', stroke_width='0.5')
    _sub(root, 'text', "1", x=str(lx + LEGEND_WIDTH + 4), y=str(TOP + 10), font_family='sans-serif', font_size='10')
    _sub(root, 'text', "0", x=str(lx + LEGEND_WIDTH + 4), y=str(bottom), font_family='sans-serif', font_size='10')

    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        ET.ElementTree(root).write(path, encoding='utf-8', xml_declaration=True)
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e

    logger.info(f"Wrote {rows} x {cols} phase diagram to {path}")
    return DiagramFile(path=path, rows=rows, cols=cols, boundary_nodes=boundary_nodes)
