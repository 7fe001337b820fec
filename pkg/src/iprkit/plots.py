"""Static plot rendering: hand-built SVG files plus plain-text fallbacks.

Every renderer is a pure function from data to a string, with no timestamps,
random identifiers, or environment-dependent content, so identical inputs
produce byte-identical files. The SVG layer is deliberately small: a fixed
canvas, linear scales, a polyline or stem group, and text labels.
"""

import math

__all__ = [
    "line_plot_svg",
    "stem_plot_svg",
    "forecast_plot_svg",
    "line_plot_ascii",
    "stem_plot_ascii",
    "forecast_plot_ascii",
]

_WIDTH = 720
_HEIGHT = 360
_MARGIN_LEFT = 72
_MARGIN_RIGHT = 16
_MARGIN_TOP = 32
_MARGIN_BOTTOM = 40


def _finite_range(values):
    lo = min(values)
    hi = max(values)
    if lo == hi:  # flat data still needs a non-degenerate scale
        pad = 1.0 if lo == 0.0 else abs(lo) * 0.1
        lo, hi = lo - pad, hi + pad
    return lo, hi


class _Scale:
    """Linear data-to-pixel mapping for one axis."""

    def __init__(self, lo, hi, pixel_lo, pixel_hi):
        self.lo = lo
        self.hi = hi
        self.pixel_lo = pixel_lo
        self.pixel_hi = pixel_hi

    def __call__(self, v):
        frac = (v - self.lo) / (self.hi - self.lo)
        return self.pixel_lo + frac * (self.pixel_hi - self.pixel_lo)


def _svg_open(title):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<title>{title}</title>',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH // 2}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
    ]


def _axes(sx, sy, x_labels, y_values):
    """Axis lines plus a handful of tick labels."""
    parts = [
        f'<line x1="{_MARGIN_LEFT}" y1="{_HEIGHT - _MARGIN_BOTTOM}" '
        f'x2="{_WIDTH - _MARGIN_RIGHT}" y2="{_HEIGHT - _MARGIN_BOTTOM}" '
        'stroke="black"/>',
        f'<line x1="{_MARGIN_LEFT}" y1="{_MARGIN_TOP}" '
        f'x2="{_MARGIN_LEFT}" y2="{_HEIGHT - _MARGIN_BOTTOM}" '
        'stroke="black"/>',
    ]
    for value in y_values:
        y = sy(value)
        parts.append(
            f'<text x="{_MARGIN_LEFT - 6}" y="{y:.1f}" text-anchor="end" '
            f'dominant-baseline="middle" font-family="sans-serif" '
            f'font-size="10">{value:.4g}</text>')
        parts.append(
            f'<line x1="{_MARGIN_LEFT - 4}" y1="{y:.1f}" '
            f'x2="{_MARGIN_LEFT}" y2="{y:.1f}" stroke="black"/>')
    for position, label in x_labels:
        x = sx(position)
        parts.append(
            f'<text x="{x:.1f}" y="{_HEIGHT - _MARGIN_BOTTOM + 14}" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'font-size="10">{label}</text>')
        parts.append(
            f'<line x1="{x:.1f}" y1="{_HEIGHT - _MARGIN_BOTTOM}" '
            f'x2="{x:.1f}" y2="{_HEIGHT - _MARGIN_BOTTOM + 4}" '
            'stroke="black"/>')
    return parts


def _x_label_picks(labels):
    """Up to six evenly spaced (index, label) ticks."""
    n = len(labels)
    if n <= 6:
        picks = range(n)
    else:
        step = (n - 1) / 5.0
        picks = sorted({round(i * step) for i in range(6)})
    return [(i, labels[i]) for i in picks]


def _y_ticks(lo, hi):
    return [lo, (lo + hi) / 2.0, hi]


def line_plot_svg(values, labels, title):
    """Series line plot; `labels` supplies x-axis tick text per point."""
    lo, hi = _finite_range(values)
    sx = _Scale(0, max(len(values) - 1, 1), _MARGIN_LEFT,
                _WIDTH - _MARGIN_RIGHT)
    sy = _Scale(lo, hi, _HEIGHT - _MARGIN_BOTTOM, _MARGIN_TOP)
    parts = _svg_open(title)
    parts += _axes(sx, sy, _x_label_picks(list(labels)), _y_ticks(lo, hi))
    pts = " ".join(f"{sx(i):.1f},{sy(v):.1f}" for i, v in enumerate(values))
    parts.append(
        f'<polyline points="{pts}" fill="none" stroke="steelblue" '
        'stroke-width="1.5"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def stem_plot_svg(values, bound, title, first_lag=1):
    """Correlogram stems with dashed significance bounds at ±bound."""
    lo, hi = _finite_range(list(values) + [bound, -bound, 0.0])
    lags = [first_lag + i for i in range(len(values))]
    sx = _Scale(lags[0] - 1, lags[-1] + 1, _MARGIN_LEFT,
                _WIDTH - _MARGIN_RIGHT)
    sy = _Scale(lo, hi, _HEIGHT - _MARGIN_BOTTOM, _MARGIN_TOP)
    parts = _svg_open(title)
    ticks = _x_label_picks([str(lag) for lag in lags])
    parts += _axes(sx, sy, [(lags[i], lab) for i, lab in ticks],
                   _y_ticks(lo, hi))
    zero_y = sy(0.0)
    parts.append(
        f'<line x1="{_MARGIN_LEFT}" y1="{zero_y:.1f}" '
        f'x2="{_WIDTH - _MARGIN_RIGHT}" y2="{zero_y:.1f}" stroke="gray"/>')
    for sign in (1.0, -1.0):
        y = sy(sign * bound)
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{y:.1f}" '
            f'x2="{_WIDTH - _MARGIN_RIGHT}" y2="{y:.1f}" stroke="blue" '
            'stroke-dasharray="4 3"/>')
    for lag, value in zip(lags, values):
        x = sx(lag)
        parts.append(
            f'<line x1="{x:.1f}" y1="{zero_y:.1f}" x2="{x:.1f}" '
            f'y2="{sy(value):.1f}" stroke="black" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def forecast_plot_svg(history, result, title):
    """History line plus forecast path and one shaded band per level."""
    all_values = list(history)
    for level in result.bands:
        lower, upper = result.bands[level]
        all_values += list(lower) + list(upper)
    lo, hi = _finite_range(all_values)
    n = len(history)
    h = result.horizon
    sx = _Scale(0, n + h - 1, _MARGIN_LEFT, _WIDTH - _MARGIN_RIGHT)
    sy = _Scale(lo, hi, _HEIGHT - _MARGIN_BOTTOM, _MARGIN_TOP)
    parts = _svg_open(title)
    x_labels = _x_label_picks([""] * n + list(result.labels))
    x_labels = [(i, lab) for i, lab in x_labels if lab]
    parts += _axes(sx, sy, x_labels, _y_ticks(lo, hi))
    for level in sorted(result.bands, reverse=True):  # widest band first
        lower, upper = result.bands[level]
        ring = [(n - 1 + j, v) for j, v in enumerate((history[-1],)
                                                     + tuple(upper))]
        ring += [(n - 1 + j, v)
                 for j, v in enumerate((history[-1],) + tuple(lower))][::-1]
        pts = " ".join(f"{sx(i):.1f},{sy(v):.1f}" for i, v in ring)
        parts.append(
            f'<polygon points="{pts}" fill="lightsteelblue" '
            'fill-opacity="0.5" stroke="none"/>')
    hist_pts = " ".join(
        f"{sx(i):.1f},{sy(v):.1f}" for i, v in enumerate(history))
    parts.append(
        f'<polyline points="{hist_pts}" fill="none" stroke="black" '
        'stroke-width="1.5"/>')
    path = [(n - 1, history[-1])] + [(n + j, v)
                                     for j, v in enumerate(result.points)]
    path_pts = " ".join(f"{sx(i):.1f},{sy(v):.1f}" for i, v in path)
    parts.append(
        f'<polyline points="{path_pts}" fill="none" stroke="steelblue" '
        'stroke-width="1.5" stroke-dasharray="5 3"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# ASCII fallbacks
# ---------------------------------------------------------------------------

_ASCII_WIDTH = 72
_ASCII_HEIGHT = 16


def _ascii_canvas():
    return [[" "] * _ASCII_WIDTH for _ in range(_ASCII_HEIGHT)]


def _ascii_render(grid, lo, hi, title):
    lines = [title]
    for i, row in enumerate(grid):
        if i == 0:
            prefix = f"{hi:>10.4g} |"
        elif i == _ASCII_HEIGHT - 1:
            prefix = f"{lo:>10.4g} |"
        else:
            prefix = " " * 10 + " |"
        lines.append(prefix + "".join(row).rstrip())
    lines.append(" " * 11 + "+" + "-" * (_ASCII_WIDTH - 1))
    return "\n".join(lines) + "\n"


def _ascii_place(grid, col_frac, value, lo, hi, mark):
    col = min(int(round(col_frac * (_ASCII_WIDTH - 1))), _ASCII_WIDTH - 1)
    frac = (value - lo) / (hi - lo)
    row = (_ASCII_HEIGHT - 1) - min(
        int(round(frac * (_ASCII_HEIGHT - 1))), _ASCII_HEIGHT - 1)
    grid[row][col] = mark
    return row, col


def line_plot_ascii(values, title):
    """Character-grid rendering of a series."""
    lo, hi = _finite_range(values)
    grid = _ascii_canvas()
    denom = max(len(values) - 1, 1)
    for i, v in enumerate(values):
        _ascii_place(grid, i / denom, v, lo, hi, "*")
    return _ascii_render(grid, lo, hi, title)


def stem_plot_ascii(values, bound, title, first_lag=1):
    """Character-grid correlogram: stems from the zero row, b = bounds."""
    lo, hi = _finite_range(list(values) + [bound, -bound, 0.0])
    grid = _ascii_canvas()
    zero_row, _ = _ascii_place(grid, 0.0, 0.0, lo, hi, " ")
    for sign in (1.0, -1.0):
        row, _ = _ascii_place(grid, 0.0, sign * bound, lo, hi, " ")
        for col in range(_ASCII_WIDTH):
            grid[row][col] = "b"
    denom = max(len(values) - 1, 1)
    for i, v in enumerate(values):
        row, col = _ascii_place(grid, i / denom, v, lo, hi, "*")
        step = 1 if row < zero_row else -1
        for r in range(row + step, zero_row + step, step):
            if grid[r][col] == " ":
                grid[r][col] = "|"
    lines = _ascii_render(grid, lo, hi, title)
    lags = f"lags {first_lag}..{first_lag + len(values) - 1}, " \
           f"bounds ±{bound:.4g}"
    return lines + lags + "\n"


def forecast_plot_ascii(history, result, title):
    """History as '*', forecast path as 'o', band edges as '.'."""
    all_values = list(history)
    level = min(result.bands)
    lower, upper = result.bands[level]
    all_values += list(lower) + list(upper)
    lo, hi = _finite_range(all_values)
    grid = _ascii_canvas()
    total = len(history) + result.horizon - 1
    for i, v in enumerate(history):
        _ascii_place(grid, i / total, v, lo, hi, "*")
    for j in range(result.horizon):
        frac = (len(history) + j) / total
        _ascii_place(grid, frac, lower[j], lo, hi, ".")
        _ascii_place(grid, frac, upper[j], lo, hi, ".")
        _ascii_place(grid, frac, result.points[j], lo, hi, "o")
    lines = _ascii_render(grid, lo, hi, title)
    note = f"o = forecast, . = {100 * level:g}% band"
    return lines + note + "\n"
