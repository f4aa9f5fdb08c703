"""Minimal SVG line plots (axes, polylines, legend) with no plotting dependency."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import Dict, Sequence

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")


def _finite(xs, ys):
    return [(float(x), float(y)) for x, y in zip(xs, ys) if x is not None and y is not None
            and math.isfinite(float(x)) and math.isfinite(float(y))]


def line_plot(
    series: Dict[str, tuple],
    xlabel: str = "",
    ylabel: str = "",
    title: str = "",
    width: int = 640,
    height: int = 420,
) -> str:
    """Render ``{name: (xs, ys)}`` as an SVG document string.

    Missing or non-finite points are skipped, breaking nothing else.
    """
    margin_l, margin_r, margin_t, margin_b = 64, 160, 36, 48
    pts = {k: _finite(*v) for k, v in series.items()}
    allp = [p for v in pts.values() for p in v]
    if allp:
        x0, x1 = min(p[0] for p in allp), max(p[0] for p in allp)
        y0, y1 = min(p[1] for p in allp), max(p[1] for p in allp)
    else:
        x0, x1, y0, y1 = 0.0, 1.0, 0.0, 1.0
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    y0 = min(y0, 0.0)
    pw, ph = width - margin_l - margin_r, height - margin_t - margin_b

    def sx(x):
        return margin_l + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return margin_t + ph - (y - y0) / (y1 - y0) * ph

    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(width), height=str(height),
                     viewBox=f"0 0 {width} {height}")
    ET.SubElement(svg, "rect", x="0", y="0", width=str(width), height=str(height), fill="white")
    axes = ET.SubElement(svg, "g", stroke="black", fill="none")
    ET.SubElement(axes, "rect", x=f"{margin_l}", y=f"{margin_t}", width=f"{pw}", height=f"{ph}")
    labels = ET.SubElement(svg, "g", fill="black", style="font: 11px sans-serif")
    for i in range(6):
        xv = x0 + (x1 - x0) * i / 5
        yv = y0 + (y1 - y0) * i / 5
        t = ET.SubElement(labels, "text", x=f"{sx(xv):.1f}", y=f"{margin_t + ph + 16}", attrib={"text-anchor": "middle"})
        t.text = f"{xv:.3g}"
        t = ET.SubElement(labels, "text", x=f"{margin_l - 6}", y=f"{sy(yv) + 4:.1f}", attrib={"text-anchor": "end"})
        t.text = f"{yv:.3g}"
    if xlabel:
        t = ET.SubElement(labels, "text", x=f"{margin_l + pw / 2}", y=f"{height - 10}", attrib={"text-anchor": "middle"})
        t.text = xlabel
    if ylabel:
        t = ET.SubElement(labels, "text", x="14", y=f"{margin_t + ph / 2}",
                          transform=f"rotate(-90 14 {margin_t + ph / 2})", attrib={"text-anchor": "middle"})
        t.text = ylabel
    if title:
        t = ET.SubElement(labels, "text", x=f"{width / 2}", y="20", attrib={"text-anchor": "middle"})
        t.text = title

    for i, (name, p) in enumerate(pts.items()):
        color = COLORS[i % len(COLORS)]
        if p:
            ET.SubElement(svg, "polyline", fill="none", stroke=color, attrib={"stroke-width": "1.5"},
                          points=" ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in p))
        ly = margin_t + 14 + 16 * i
        ET.SubElement(svg, "line", x1=f"{width - margin_r + 10}", x2=f"{width - margin_r + 30}",
                      y1=f"{ly}", y2=f"{ly}", stroke=color, attrib={"stroke-width": "2"})
        t = ET.SubElement(labels, "text", x=f"{width - margin_r + 36}", y=f"{ly + 4}")
        t.text = name
    return ET.tostring(svg, encoding="unicode")


def plot_rows(rows: Sequence[dict], x: str, ys: Sequence[str], **kw) -> str:
    """Plot columns ``ys`` of CSV-style rows against column ``x``."""
    xs = [r.get(x) for r in rows]
    return line_plot({y: (xs, [r.get(y) for r in rows]) for y in ys}, xlabel=kw.pop("xlabel", x), **kw)
