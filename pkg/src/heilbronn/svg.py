"""Plain SVG 1.1 drawing of a grid with a witness multiset."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .geometry import Grid, Orientation
from .oracle import max_cell_triple

VIEWPORT = 600
MARGIN = 20


def emit_svg(result, grid: Grid | None = None) -> str:
    """Render ``result`` (a BoundResult) over its grid.

    Witness cells are shaded (segments are drawn thick) and the maximizing
    triangle of the witness triple that realizes the bound is outlined.
    """
    if grid is None:
        from .geometry import GridSpec
        grid = Grid(GridSpec(result.P, result.variant))
    P = grid.P
    scale = max(1, VIEWPORT // P)
    size = P * scale + 2 * MARGIN

    def xy(p):
        return MARGIN + p[0] * scale, MARGIN + (P - p[1]) * scale

    def pts(vertices):
        return " ".join("%d,%d" % xy(v) for v in vertices)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<title>{escape(f'N={result.N} P={P} {grid.variant.value}: bound {result.k}/{P * P}')}</title>",
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]

    # Grid lines parallel to the three sides.
    lines = []
    for t in range(P + 1):
        lines.append((xy((0, t)), xy((P - t, t))))
        lines.append((xy((t, 0)), xy((t, P - t))))
        lines.append((xy((t, 0)), xy((0, t))))
    out.append('<g stroke="#c8c8c8" stroke-width="1">')
    out += [f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}"/>' for a, b in lines]
    out.append("</g>")

    out.append('<g class="witness">')
    for cid in sorted(set(result.witness)):
        cell = grid[cid]
        mult = result.witness.count(cid)
        if cell.orientation is Orientation.SEGMENT:
            (a, b) = (xy(v) for v in cell.vertices)
            out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" '
                       f'stroke="#1f6fb4" stroke-width="{max(4, scale)}" '
                       f'stroke-linecap="round" data-cell="{cid}" data-count="{mult}"/>')
        else:
            out.append(f'<polygon points="{pts(cell.vertices)}" fill="#1f6fb4" '
                       f'fill-opacity="0.7" data-cell="{cid}" data-count="{mult}"/>')
    out.append("</g>")

    a, b, c = result.argmin_triple()
    tri = max_cell_triple(grid[a], grid[b], grid[c]).argmax_vertices
    out.append(f'<polygon class="argmin" points="{pts(tri)}" fill="none" '
               f'stroke="#d62728" stroke-width="2"/>')
    out.append(f'<polygon points="{pts([(0, 0), (P, 0), (0, P)])}" fill="none" '
               f'stroke="black" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
