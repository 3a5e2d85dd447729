# render scale x time matrices as static SVG heatmaps

import logging
from xml.sax.saxutils import escape

import contourpy
import matplotlib
import matplotlib.colors
import numpy as np

from pycycles import DataError

logger = logging.getLogger(__name__)

COLORMAP = 'viridis'

WIDTH = 720
HEIGHT = 400

# plot area margins: left, top, right, bottom
MARGINS = (60, 30, 90, 45)

DEFAULT_ARROW_STEP = 6


class _Document(object):
    # accumulates SVG elements, numbers printed at fixed precision

    def __init__(self, width, height):
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n',
            '<svg version="1.1" xmlns="http://www.w3.org/2000/svg" '
            'width="{0}" height="{1}" viewBox="0 0 {0} {1}">\n'.format(
                width, height),
        ]

    def add(self, text):
        self.parts.append(text)

    def rect(self, x, y, width, height, fill, extra=''):
        self.add('<rect x="{0:.2f}" y="{1:.2f}" width="{2:.2f}" '
                 'height="{3:.2f}" fill="{4}"{5}/>\n'.format(
                     x, y, width, height, fill, extra))

    def line(self, x1, y1, x2, y2, stroke, extra=''):
        self.add('<line x1="{0:.2f}" y1="{1:.2f}" x2="{2:.2f}" y2="{3:.2f}" '
                 'stroke="{4}"{5}/>\n'.format(x1, y1, x2, y2, stroke, extra))

    def polyline(self, points, stroke, extra=''):
        coords = ' '.join('{0:.2f},{1:.2f}'.format(x, y) for x, y in points)
        self.add('<polyline points="{0}" fill="none" stroke="{1}"{2}/>\n'
                 .format(coords, stroke, extra))

    def polygon(self, points, fill, extra=''):
        coords = ' '.join('{0:.2f},{1:.2f}'.format(x, y) for x, y in points)
        self.add('<polygon points="{0}" fill="{1}"{2}/>\n'.format(
            coords, fill, extra))

    def text(self, x, y, string, extra=''):
        self.add('<text x="{0:.2f}" y="{1:.2f}" font-family="sans-serif" '
                 'font-size="11"{2}>{3}</text>\n'.format(
                     x, y, extra, escape(string)))

    def getvalue(self):
        return ''.join(self.parts) + '</svg>\n'


class _Frame(object):
    # maps grid rows (log2 period, small at the top) and columns to pixels

    def __init__(self, times, periods, width, height):
        left, top, right, bottom = MARGINS
        self.left = left
        self.top = top
        self.plot_width = width - left - right
        self.plot_height = height - top - bottom
        self.times = np.asarray(times, dtype=np.float64)
        self.log_periods = np.log2(np.asarray(periods, dtype=np.float64))
        self.cell_width = self.plot_width / self.times.size
        self.cell_height = self.plot_height / self.log_periods.size

    @property
    def bottom(self):
        return self.top + self.plot_height

    @property
    def right(self):
        return self.left + self.plot_width

    def column_x(self, k):
        return self.left + (np.asarray(k) + 0.5) * self.cell_width

    def row_y(self, j):
        return self.top + (np.asarray(j) + 0.5) * self.cell_height

    def period_y(self, period):
        """Pixel y of a period, clipped to the plot area."""

        lp = self.log_periods
        with np.errstate(divide='ignore'):
            log_period = np.log2(np.asarray(period, dtype=np.float64))
        if lp.size > 1:
            rows = (log_period - lp[0]) / (lp[-1] - lp[0]) * (lp.size - 1)
        else:
            rows = np.zeros_like(log_period)

        return np.clip(self.row_y(rows), self.top, self.bottom)


def _colors(matrix, vmin, vmax):
    cmap = matplotlib.colormaps[COLORMAP]
    span = vmax - vmin
    if span > 0:
        normalized = np.clip((matrix - vmin) / span, 0.0, 1.0)
    else:
        normalized = np.zeros_like(matrix)

    # quantize so equal inputs always give equal hex strings
    levels = np.round(normalized * (cmap.N - 1)).astype(int)
    palette = [matplotlib.colors.to_hex(cmap(i)) for i in range(cmap.N)]

    return [[palette[v] for v in row] for row in levels]


def contour_lines(mask):
    """Outlines of the true regions of a bool mask, by marching squares.

    Args:
        mask (numpy.ndarray): a 2-D bool array, rows x columns

    Returns:
        list of (n, 2) arrays of (column, row) grid coordinates

    """

    mask = np.asarray(mask, dtype=np.float64)
    if mask.ndim != 2 or min(mask.shape) < 2 or not mask.any():
        return []

    # pad with false so regions touching the border close
    padded = np.pad(mask, 1)
    rows = np.arange(-1, mask.shape[0] + 1, dtype=np.float64)
    columns = np.arange(-1, mask.shape[1] + 1, dtype=np.float64)
    generator = contourpy.contour_generator(
        columns, rows, padded, line_type=contourpy.LineType.Separate)
    lines = generator.lines(0.5)
    for line in lines:
        np.clip(line[:, 0], 0, mask.shape[1] - 1, out=line[:, 0])
        np.clip(line[:, 1], 0, mask.shape[0] - 1, out=line[:, 1])

    return lines


def _year_ticks(times):
    first, last = times[0], times[-1]
    span = max(last - first, 1)
    step = max(1, int(10 ** np.floor(np.log10(span))))
    if span / step < 3:
        step = max(1, step // 2)
    start = int(np.ceil(first / step) * step)

    return [t for t in range(start, int(last) + 1, step)]


def _period_ticks(periods):
    low = int(np.ceil(np.log2(periods[0])))
    high = int(np.floor(np.log2(periods[-1])))

    return [2 ** e for e in range(low, high + 1)]


def emit_svg_heatmap(matrix, times, periods, coi=None, sig90=None,
                     sig95=None, phase=None, arrow_step=DEFAULT_ARROW_STEP,
                     title='', vmin=None, vmax=None, width=WIDTH,
                     height=HEIGHT):
    """Render a scale x time matrix as an SVG 1.1 document.

    Rows are scales with the smallest period at the top on a log2 axis and
    columns are years. Values are coloured on the viridis ramp, the region
    outside the cone of influence is hatched, the 90% mask is outlined in
    black and the 95% mask in white. A legend bar is drawn on the right.

    The output depends only on the arguments, so equal inputs render to
    equal bytes.

    Args:
        matrix (numpy.ndarray): real values, n_scales x n_times
        times: the year of each column
        periods: the Fourier period of each row, increasing
        coi: per column, the longest period free of edge effects
        sig90 (numpy.ndarray): bool mask outlined in black
        sig95 (numpy.ndarray): bool mask outlined in white
        phase (numpy.ndarray): angles drawn as arrows every arrow_step
            rows and columns, 0 pointing right and pi / 2 up
        arrow_step (int): arrow spacing in grid points
        title (str): drawn above the plot
        vmin (float): the value at the bottom of the ramp
        vmax (float): the value at the top of the ramp
        width (int): document width in pixels
        height (int): document height in pixels

    Returns:
        str

    Raises:
        :class:`.DataError` for a non-finite or misshapen matrix

    """

    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.size == 0:
        raise DataError('heatmap needs a non-empty 2-D matrix',
                        'shape is {0}'.format(matrix.shape))
    if not np.all(np.isfinite(matrix)):
        raise DataError('heatmap matrix holds non-finite values')
    if len(periods) != matrix.shape[0] or len(times) != matrix.shape[1]:
        raise DataError('heatmap axes do not match the matrix',
                        '{0} periods, {1} times for shape {2}'.format(
                            len(periods), len(times), matrix.shape))

    vmin = float(matrix.min()) if vmin is None else vmin
    vmax = float(matrix.max()) if vmax is None else vmax
    frame = _Frame(times, periods, width, height)
    doc = _Document(width, height)
    doc.add('<defs><pattern id="hatch" width="6" height="6" '
            'patternUnits="userSpaceOnUse" '
            'patternTransform="rotate(45)">'
            '<line x1="0" y1="0" x2="0" y2="6" stroke="#ffffff" '
            'stroke-width="1.5"/></pattern></defs>\n')
    if title:
        doc.text(frame.left, frame.top - 10, title,
                 ' font-weight="bold"')

    colors = _colors(matrix, vmin, vmax)
    doc.add('<g id="cells" shape-rendering="crispEdges">\n')
    for j, row in enumerate(colors):
        y = frame.top + j * frame.cell_height
        for k, color in enumerate(row):
            doc.rect(frame.left + k * frame.cell_width, y,
                     frame.cell_width + 0.01, frame.cell_height + 0.01,
                     color)
    doc.add('</g>\n')

    if coi is not None:
        xs = frame.column_x(np.arange(len(times)))
        ys = frame.period_y(coi)
        points = [(frame.left, frame.bottom), (frame.left, ys[0])] + \
            list(zip(xs, ys)) + \
            [(frame.right, ys[-1]), (frame.right, frame.bottom)]
        doc.polygon(points, 'url(#hatch)', ' id="coi" opacity="0.6"')

    for mask, stroke, name in ((sig90, '#000000', 'sig90'),
                               (sig95, '#ffffff', 'sig95')):
        if mask is None:
            continue
        doc.add('<g id="{0}">\n'.format(name))
        for line in contour_lines(mask):
            points = zip(frame.column_x(line[:, 0]), frame.row_y(line[:, 1]))
            doc.polyline(points, stroke, ' stroke-width="1.2"')
        doc.add('</g>\n')

    if phase is not None:
        length = 0.4 * arrow_step * min(frame.cell_width, frame.cell_height)
        doc.add('<g id="phase" stroke-width="1">\n')
        for j in range(arrow_step // 2, matrix.shape[0], arrow_step):
            for k in range(arrow_step // 2, matrix.shape[1], arrow_step):
                x, y = frame.column_x(k), frame.row_y(j)
                angle = phase[j, k]
                doc.line(x, y, x + length * np.cos(angle),
                         y - length * np.sin(angle), '#000000')
        doc.add('</g>\n')

    doc.rect(frame.left, frame.top, frame.plot_width, frame.plot_height,
             'none', ' stroke="#000000"')
    for year in _year_ticks(frame.times):
        k = np.interp(year, frame.times, np.arange(frame.times.size))
        x = frame.column_x(k)
        doc.line(x, frame.bottom, x, frame.bottom + 4, '#000000')
        doc.text(x - 12, frame.bottom + 16, str(year))
    for period in _period_ticks(np.asarray(periods)):
        y = frame.period_y(period)
        doc.line(frame.left - 4, y, frame.left, y, '#000000')
        doc.text(frame.left - 30, y + 4, str(period))
    doc.text(frame.left + frame.plot_width / 2 - 12, height - 8, 'year')
    doc.text(14, frame.top + frame.plot_height / 2, 'period',
             ' transform="rotate(-90 14 {0:.2f})"'.format(
                 frame.top + frame.plot_height / 2))

    bar_left = frame.right + 20
    steps = 32
    step_height = frame.plot_height / steps
    ramp = _colors(np.linspace(1.0, 0.0, steps)[:, np.newaxis], 0.0, 1.0)
    for i, (color,) in enumerate(ramp):
        doc.rect(bar_left, frame.top + i * step_height, 14,
                 step_height + 0.01, color)
    doc.text(bar_left + 18, frame.top + 8, '{0:.3g}'.format(vmax))
    doc.text(bar_left + 18, frame.bottom, '{0:.3g}'.format(vmin))

    svg = doc.getvalue()
    logger.debug('emit_svg_heatmap: %dx%d matrix, %d bytes',
                 matrix.shape[0], matrix.shape[1], len(svg))

    return svg


def _coi_period(coi, omega0_periods, scales):
    # coi is held in scale units, the axis is in periods
    return coi * omega0_periods[0] / scales[0]


def scalogram_svg(sc, title=None):
    """Heatmap of scalogram power with its cone and significance masks."""

    return emit_svg_heatmap(sc.power, sc.times, sc.periods,
                            coi=_coi_period(sc.coi, sc.periods, sc.scales),
                            sig90=sc.siglevels.get(0.90),
                            sig95=sc.siglevels.get(0.95),
                            title=sc.label if title is None else title)


def cross_svg(c, arrow_step=DEFAULT_ARROW_STEP, title=None):
    """Heatmap of cross power with masks and phase arrows."""

    if title is None:
        title = '{0} x {1}'.format(*c.labels)

    return emit_svg_heatmap(c.power, c.times, c.periods,
                            coi=_coi_period(c.coi, c.periods, c.scales),
                            sig90=c.siglevels.get(0.90),
                            sig95=c.siglevels.get(0.95),
                            phase=c.phase, arrow_step=arrow_step,
                            title=title)


def coherence_svg(m, arrow_step=DEFAULT_ARROW_STEP, title=None):
    """Heatmap of squared coherence on a fixed 0 - 1 ramp."""

    if title is None:
        title = '{0} ~ {1}'.format(*m.labels)

    return emit_svg_heatmap(m.rsq, m.times, m.periods,
                            coi=_coi_period(m.coi, m.periods, m.scales),
                            sig95=m.significant, phase=m.phase,
                            arrow_step=arrow_step, title=title,
                            vmin=0.0, vmax=1.0)


__all__ = [
    'COLORMAP',
    'contour_lines',
    'emit_svg_heatmap',
    'scalogram_svg',
    'cross_svg',
    'coherence_svg',
]
