"""Deterministic SVG pictures of planar configurations and triangulations."""

import os
from fractions import Fraction

from .errors import InputError
from .weights import massive_simplices

CELL = 60      # pixels per lattice unit
MARGIN = 30

__all__ = ["polytope_svg", "triangulation_svg", "write_svgs"]


class _Canvas:
    def __init__(self, points):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        self.x0, self.y1 = min(xs), max(ys)
        self.width = (max(xs) - self.x0) * CELL + 2 * MARGIN
        self.height = (self.y1 - min(ys)) * CELL + 2 * MARGIN
        self.items = []

    def xy(self, p):
        # y axis points up in the picture
        return (p[0] - self.x0) * CELL + MARGIN, (self.y1 - p[1]) * CELL + MARGIN

    def polygon(self, pts, style):
        coords = " ".join(f"{x},{y}" for x, y in (self.xy(p) for p in pts))
        self.items.append(f'<polygon points="{coords}" {style}/>')

    def line(self, a, b, style):
        (x1, y1), (x2, y2) = self.xy(a), self.xy(b)
        self.items.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>')

    def dot(self, p, filled, label=None):
        x, y = self.xy(p)
        fill = "#222" if filled else "#fff"
        self.items.append(f'<circle cx="{x}" cy="{y}" r="4" fill="{fill}" stroke="#222"/>')
        if label is not None:
            self.items.append(
                f'<text x="{x + 6}" y="{y - 6}" font-family="monospace" font-size="11">{label}</text>'
            )

    def render(self, title):
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">'
        )
        return "\n".join([head, f"<title>{title}</title>", *self.items, "</svg>"]) + "\n"


def _ordered_boundary(config):
    """Vertices of the polygon P in counter-clockwise order."""
    pts = config.points
    verts = list(config.hull.vertices)
    cx = Fraction(sum(pts[v][0] for v in verts), len(verts))
    cy = Fraction(sum(pts[v][1] for v in verts), len(verts))

    def key(v):
        # exact angular order: quadrant, then cross-product comparison via slope
        dx, dy = pts[v][0] - cx, pts[v][1] - cy
        half = 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1
        return half, _Slope(dx, dy)

    return [pts[v] for v in sorted(verts, key=key)]


class _Slope:
    """Orders direction vectors within a half plane counter-clockwise."""

    def __init__(self, dx, dy):
        self.dx, self.dy = dx, dy

    def __lt__(self, other):
        return self.dx * other.dy - self.dy * other.dx > 0

    def __eq__(self, other):
        return self.dx * other.dy - self.dy * other.dx == 0


def _require_planar(config):
    if config.dim != 2:
        raise InputError("SVG output is only available for n = 2")


def polytope_svg(config, title="P"):
    _require_planar(config)
    canvas = _Canvas(config.points)
    canvas.polygon(_ordered_boundary(config), 'fill="#e8eef8" stroke="#235" stroke-width="2"')
    for k, p in enumerate(config.points):
        canvas.dot(p, True, k)
    return canvas.render(title)


def triangulation_svg(tri, title="T"):
    config = tri.config
    _require_planar(config)
    canvas = _Canvas(config.points)
    pts = config.points
    for cell in tri.cells:
        canvas.polygon([pts[i] for i in cell], 'fill="#f4f1e6" stroke="#777" stroke-width="1"')
    for edge, _ in massive_simplices(tri, 1):
        canvas.line(pts[edge[0]], pts[edge[1]], 'stroke="#c0392b" stroke-width="3"')
    used = set(tri.used_vertices)
    for k, p in enumerate(pts):
        canvas.dot(p, k in used, k)
    return canvas.render(title)


def write_svgs(directory, config, tris, stem):
    """Write P and every triangulation; returns the file paths in order."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    target = os.path.join(directory, f"{stem}-P.svg")
    with open(target, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(polytope_svg(config, f"{stem} polytope"))
    paths.append(target)
    width = max(3, len(str(len(tris))))
    for k, t in enumerate(tris):
        target = os.path.join(directory, f"{stem}-T{k:0{width}d}.svg")
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(triangulation_svg(t, f"{stem} triangulation {k}"))
        paths.append(target)
    return paths
