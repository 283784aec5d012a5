"""Static SVG rendering of a persistence diagram."""
from __future__ import annotations

from .diagram import PersistenceDiagram

SIZE = 400
MARGIN = 40


def diagram_svg(D: PersistenceDiagram, title: str | None = None) -> str:
    """Proper cornerpoints as dots (labelled with multiplicity > 1), cornerpoints at infinity as vertical rays."""
    coords = [float(u) for u, _, _ in D.proper] + [float(v) for _, v, _ in D.proper]
    coords += [float(u) for u, _ in D.essential]
    lo, hi = (min(coords), max(coords)) if coords else (0.0, 1.0)
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.1 * (hi - lo)
    lo, hi = lo - pad, hi + 2 * pad  # headroom for the rays
    span = SIZE - 2 * MARGIN

    def x(val: float) -> float:
        return round(MARGIN + (val - lo) / (hi - lo) * span, 3)

    def y(val: float) -> float:
        return round(SIZE - MARGIN - (val - lo) / (hi - lo) * span, 3)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="4" refY="4" orient="auto">'
        '<path d="M0,0 L8,4 L0,8 z" fill="#c0392b"/></marker></defs>',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        # the open half-plane above the diagonal
        f'<polygon points="{x(lo)},{y(lo)} {x(hi)},{y(hi)} {x(lo)},{y(hi)}" fill="#f4f6fb"/>',
        f'<line x1="{x(lo)}" y1="{y(lo)}" x2="{x(hi)}" y2="{y(hi)}" stroke="#555" stroke-width="1"/>',
        f'<line x1="{MARGIN}" y1="{SIZE - MARGIN}" x2="{SIZE - MARGIN}" y2="{SIZE - MARGIN}" stroke="#000"/>',
        f'<line x1="{MARGIN}" y1="{SIZE - MARGIN}" x2="{MARGIN}" y2="{MARGIN}" stroke="#000"/>',
        f'<text x="{SIZE - MARGIN + 8}" y="{SIZE - MARGIN + 4}" font-size="12">u</text>',
        f'<text x="{MARGIN - 4}" y="{MARGIN - 10}" font-size="12">v</text>',
        f'<text x="{MARGIN}" y="{SIZE - 12}" font-size="10">{lo:.3g}</text>',
        f'<text x="{SIZE - MARGIN - 20}" y="{SIZE - 12}" font-size="10">{hi:.3g}</text>',
    ]
    if title:
        out.append(f'<text x="{SIZE / 2}" y="18" font-size="13" text-anchor="middle">{title}</text>')
    for u, m in D.essential:
        out.append(f'<line x1="{x(float(u))}" y1="{y(float(u))}" x2="{x(float(u))}" y2="{MARGIN + 6}" '
                   'stroke="#c0392b" stroke-width="2" marker-end="url(#arrow)"/>')
        if m > 1:
            out.append(f'<text x="{x(float(u)) + 4}" y="{MARGIN + 14}" font-size="10">x{m}</text>')
    for u, v, m in D.proper:
        cx, cy = x(float(u)), y(float(v))
        out.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="#2c6fbb"/>')
        if m > 1:
            out.append(f'<text x="{cx + 6}" y="{cy - 6}" font-size="10">x{m}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
