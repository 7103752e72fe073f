"""Minimal static SVG line charts (no charting dependencies)."""

from __future__ import annotations

import math

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _nice_ticks(lo: float, hi: float, target: int = 6):
    if not (hi > lo):
        hi = lo + 1.0
    span = hi - lo
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * span:
        ticks.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return ticks


def _fmt(x: float) -> str:
    return "%.6g" % x


def line_chart(series, path, title="", xlabel="", ylabel="", width=720, height=480, logx=False):
    """Write a line chart to path.

    series: list of (x values, y values, label)."""
    margin_l, margin_r, margin_t, margin_b = 70, 20, 36, 52
    plot_w = width - margin_l - margin_r
    plot_h = height - margin_t - margin_b

    xs_all, ys_all = [], []
    for xs, ys, _ in series:
        xs_all.extend(math.log10(x) if logx else x for x in xs)
        ys_all.extend(ys)
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    def px(x):
        v = math.log10(x) if logx else x
        return margin_l + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return margin_t + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%d" height="%d" viewBox="0 0 %d %d">' % (width, height, width, height),
        '<rect width="%d" height="%d" fill="white"/>' % (width, height),
        '<rect x="%d" y="%d" width="%d" height="%d" fill="none" stroke="#333"/>' % (
            margin_l, margin_t, plot_w, plot_h),
    ]
    if title:
        parts.append('<text x="%d" y="22" font-size="15" font-family="sans-serif" '
                     'text-anchor="middle">%s</text>' % (width // 2, title))

    for t in _nice_ticks(y_lo, y_hi):
        y = py(t)
        parts.append('<line x1="%d" y1="%.2f" x2="%d" y2="%.2f" stroke="#ddd"/>' % (
            margin_l, y, margin_l + plot_w, y))
        parts.append('<text x="%d" y="%.2f" font-size="11" font-family="sans-serif" '
                     'text-anchor="end">%s</text>' % (margin_l - 6, y + 4, _fmt(t)))
    for t in _nice_ticks(x_lo, x_hi):
        x = margin_l + (t - x_lo) / (x_hi - x_lo) * plot_w
        label = "1e%g" % t if logx else _fmt(t)
        parts.append('<line x1="%.2f" y1="%d" x2="%.2f" y2="%d" stroke="#ddd"/>' % (
            x, margin_t, x, margin_t + plot_h))
        parts.append('<text x="%.2f" y="%d" font-size="11" font-family="sans-serif" '
                     'text-anchor="middle">%s</text>' % (x, margin_t + plot_h + 16, label))

    for i, (xs, ys, label) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join("%.2f,%.2f" % (px(x), py(y)) for x, y in zip(xs, ys))
        parts.append('<polyline points="%s" fill="none" stroke="%s" stroke-width="1.6"/>' % (
            pts, color))
        if label:
            ly = margin_t + 16 + 16 * i
            parts.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="%s" '
                         'stroke-width="2"/>' % (margin_l + 8, ly - 4, margin_l + 28, ly - 4, color))
            parts.append('<text x="%d" y="%d" font-size="12" font-family="sans-serif">%s</text>' % (
                margin_l + 34, ly, label))

    if xlabel:
        parts.append('<text x="%d" y="%d" font-size="13" font-family="sans-serif" '
                     'text-anchor="middle">%s</text>' % (margin_l + plot_w // 2, height - 14, xlabel))
    if ylabel:
        parts.append('<text x="16" y="%d" font-size="13" font-family="sans-serif" '
                     'text-anchor="middle" transform="rotate(-90 16 %d)">%s</text>' % (
                         margin_t + plot_h // 2, margin_t + plot_h // 2, ylabel))
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")
