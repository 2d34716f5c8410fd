"""Interchange writers: triangle meshes to OBJ, sample tables to CSV,
parameter-domain level sets to SVG.

All writers are deterministic byte-for-byte: floats are written with 17
significant digits (lossless for 64-bit values), lines end with LF, and
element order is fixed by the input order.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from xml.etree import ElementTree as ET

import numpy as np

from .curve import FrenetSample
from .errors import ExprDomainError, G3Error
from .isophote import IsophoteSet, Polyline
from .surface import DarbouxSample, SurfaceSpec, _coordinate_jets


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


@dataclass(frozen=True)
class TriMesh:
    """Vertices, triangle faces (0-based index triples), and the grid
    dimensions the mesh was tessellated from."""

    vertices: list[tuple[float, float, float]]
    faces: list[tuple[int, int, int]]
    provenance: tuple[int, int]

    def __post_init__(self):
        nv = len(self.vertices)
        for f in self.faces:
            if len(set(f)) != 3:
                raise G3Error(f"degenerate face {f}")
            if any(i < 0 or i >= nv for i in f):
                raise G3Error(f"face index out of range in {f}")


def tessellate(surface: SurfaceSpec, n1: int, n2: int) -> TriMesh:
    """Regular-grid tessellation: (n1+1)x(n2+1) vertices in row-major
    order (u1 rows), two triangles per cell."""
    if n1 < 1 or n2 < 1:
        raise ValueError("n1 and n2 must be >= 1")
    U1, U2 = surface.grid(n1 + 1, n2 + 1)
    G1, G2 = U1[:, None], U2[None, :]
    try:
        jx, jy, jz = _coordinate_jets(surface, G1, G2)
    except ExprDomainError:
        # locate the offending grid point for the report
        jx, jy, jz = _coordinate_jets(surface, G1, G2, check=False)
        bad = ~(np.isfinite(jx.value) & np.isfinite(jy.value) & np.isfinite(jz.value))
        i, j = map(int, np.argwhere(bad)[0])
        raise G3Error(
            f"surface evaluation failed at grid point ({i},{j}) = "
            f"(u1,u2)=({float(U1[i]):.6g},{float(U2[j]):.6g})") from None
    X = np.broadcast_to(jx.value, (n1 + 1, n2 + 1))
    Y = np.broadcast_to(jy.value, (n1 + 1, n2 + 1))
    Z = np.broadcast_to(jz.value, (n1 + 1, n2 + 1))
    vertices = [(float(X[i, j]), float(Y[i, j]), float(Z[i, j]))
                for i in range(n1 + 1) for j in range(n2 + 1)]
    faces = []
    for i in range(n1):
        for j in range(n2):
            v00 = i * (n2 + 1) + j
            v10 = (i + 1) * (n2 + 1) + j
            v11 = (i + 1) * (n2 + 1) + j + 1
            v01 = i * (n2 + 1) + j + 1
            faces.append((v00, v10, v11))
            faces.append((v00, v11, v01))
    return TriMesh(vertices, faces, (n1, n2))


def write_obj(obj: TriMesh | IsophoteSet | list[Polyline]) -> bytes:
    """Wavefront OBJ bytes: `v` lines then 1-based `f` triangles for a
    mesh, or `l` polylines for extracted level sets."""
    out = io.StringIO()
    out.write("# g3geom OBJ export\n")
    if isinstance(obj, TriMesh):
        for v in obj.vertices:
            out.write(f"v {_fmt(v[0])} {_fmt(v[1])} {_fmt(v[2])}\n")
        for f in obj.faces:
            out.write(f"f {f[0] + 1} {f[1] + 1} {f[2] + 1}\n")
        return out.getvalue().encode("ascii")
    polylines = obj.polylines if isinstance(obj, IsophoteSet) else obj
    base = 1
    chunks = []
    for pl in polylines:
        for p in pl.points:
            out.write(f"v {_fmt(p[2])} {_fmt(p[3])} {_fmt(p[4])}\n")
        idx = list(range(base, base + len(pl.points)))
        if pl.closed:
            idx.append(base)
        chunks.append(idx)
        base += len(pl.points)
    for idx in chunks:
        out.write("l " + " ".join(str(i) for i in idx) + "\n")
    return out.getvalue().encode("ascii")


_CSV_COLUMNS = {
    FrenetSample: ("s", "kappa", "tau"),
    DarbouxSample: ("s", "kg", "kn", "taug", "phi"),
}


def write_csv(samples, columns: tuple[str, ...] | None = None) -> bytes:
    """CSV bytes with a header row; columns are inferred from the sample
    type (Frenet: s,kappa,tau; Darboux: s,kg,kn,taug,phi; IsophoteSet:
    polyline,u1,u2,x,y,z) or passed explicitly for mapping rows."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if isinstance(samples, IsophoteSet):
        writer.writerow(columns or ("polyline", "u1", "u2", "x", "y", "z"))
        for k, pl in enumerate(samples.polylines):
            for p in pl.points:
                writer.writerow([str(k)] + [_fmt(v) for v in p])
        return out.getvalue().encode("ascii")
    samples = list(samples)
    if not samples:
        writer.writerow(columns or ())
        return out.getvalue().encode("ascii")
    first = samples[0]
    if isinstance(first, FrenetSample):
        cols = columns or _CSV_COLUMNS[FrenetSample]
        rows = [(x.s, x.kappa, x.tau) for x in samples]
    elif isinstance(first, DarbouxSample):
        cols = columns or _CSV_COLUMNS[DarbouxSample]
        rows = [(x.s, x.kg, x.kn, x.tau_g, x.phi) for x in samples]
    else:
        cols = tuple(columns) if columns else tuple(sorted(first))
        rows = [tuple(row[c] for c in cols) for row in samples]
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return out.getvalue().encode("ascii")


_SVG_SIZE = 800
_SVG_MARGIN = 60


def write_svg(isoset: IsophoteSet, domain) -> bytes:
    """Parameter-domain plot of an IsophoteSet in a fixed 800x800 viewBox.

    A constant-field result is drawn as a shaded full-domain rectangle
    with the constant value annotated; otherwise each polyline becomes an
    SVG polyline element.  The level value sits in the document title.
    """
    (a1, b1), (a2, b2) = domain
    span = _SVG_SIZE - 2 * _SVG_MARGIN

    def sx(u1: float) -> float:
        return _SVG_MARGIN + (u1 - a1) / (b1 - a1) * span

    def sy(u2: float) -> float:
        return _SVG_SIZE - _SVG_MARGIN - (u2 - a2) / (b2 - a2) * span

    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "viewBox": f"0 0 {_SVG_SIZE} {_SVG_SIZE}",
    })
    title = ET.SubElement(svg, "title")
    title.text = f"level = {_fmt(isoset.level)}"
    ET.SubElement(svg, "rect", {
        "x": str(_SVG_MARGIN), "y": str(_SVG_MARGIN),
        "width": str(span), "height": str(span),
        "fill": "white", "stroke": "black", "stroke-width": "1",
    })
    labels = [
        (_SVG_MARGIN, _SVG_SIZE - _SVG_MARGIN + 24, f"u1 = {a1:.6g}", "start"),
        (_SVG_SIZE - _SVG_MARGIN, _SVG_SIZE - _SVG_MARGIN + 24, f"u1 = {b1:.6g}", "end"),
        (_SVG_MARGIN - 8, _SVG_SIZE - _SVG_MARGIN, f"u2 = {a2:.6g}", "end"),
        (_SVG_MARGIN - 8, _SVG_MARGIN + 6, f"u2 = {b2:.6g}", "end"),
    ]
    for x, y, text, anchor in labels:
        el = ET.SubElement(svg, "text", {
            "x": str(x), "y": str(y), "font-size": "14", "text-anchor": anchor,
        })
        el.text = text
    if isoset.constant_field is not None:
        ET.SubElement(svg, "rect", {
            "x": str(_SVG_MARGIN), "y": str(_SVG_MARGIN),
            "width": str(span), "height": str(span),
            "fill": "#9ecae1" if isoset.constant_field.matches_level else "#eeeeee",
            "fill-opacity": "0.6",
        })
        note = ET.SubElement(svg, "text", {
            "x": str(_SVG_SIZE // 2), "y": str(_SVG_SIZE // 2),
            "font-size": "16", "text-anchor": "middle",
        })
        kind = ("entire domain is an isophote"
                if isoset.constant_field.matches_level else "constant field")
        note.text = (f"{kind}: value = {_fmt(isoset.constant_field.value)}, "
                     f"spread = {_fmt(isoset.constant_field.spread)}")
    for pl in isoset.polylines:
        pts = [(sx(p[0]), sy(p[1])) for p in pl.points]
        if pl.closed and pts:
            pts.append(pts[0])
        ET.SubElement(svg, "polyline", {
            "points": " ".join(f"{x:.3f},{y:.3f}" for x, y in pts),
            "fill": "none", "stroke": "#d62728", "stroke-width": "1.5",
        })
    return ET.tostring(svg, encoding="utf-8", xml_declaration=True) + b"\n"
