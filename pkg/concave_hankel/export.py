"""
CSV, JSON and SVG renderings of reports and region samples. Every
function here returns text; the CLI decides where it goes.
"""
import csv
import io
import json
import logging
import sys

import matplotlib
import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

logger = logging.getLogger(__name__)

BOUNDS_HEADER = ('p', 'one_third_p', 'lower', 'm_estimate', 'upper', 'outer_upper')
REGION_HEADER = ('re', 'im', 'kind')


def format_float(value):
    """Shortest decimal string that reads back as the same double."""
    return repr(float(value))


def plain(value):
    """Convert numpy scalars, arrays and complex numbers to JSON-ready values."""
    if isinstance(value, dict):
        return {str(key): plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [plain(item) for item in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def dumps_json(payload):
    return json.dumps(plain(payload), indent=2, sort_keys=True) + '\n'


def dumps_csv(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(item) if isinstance(item, (float, np.floating)) else item for item in row])
    return buffer.getvalue()


def bounds_row(report):
    one_third = 1 / (3 * report.p)
    return (report.p, one_third, report.lower, report.m_estimate, report.upper, one_third + 2 / 3)


def bounds_csv(reports):
    return dumps_csv(BOUNDS_HEADER, [bounds_row(report) for report in reports])


def bounds_table(reports):
    lines = ['  '.join('%12s' % name for name in BOUNDS_HEADER)]
    for report in reports:
        lines.append('  '.join('%12.6f' % value for value in bounds_row(report)))
    return '\n'.join(lines) + '\n'


def region_rows(omega=None, hankel=None):
    rows = []
    if hankel is not None:
        rows += [(float(z.real), float(z.imag), 'cloud') for z in hankel.points]
        rows += [(float(z.real), float(z.imag), 'boundary') for z in hankel.boundary]
    if omega is not None:
        rows += [(float(z.real), float(z.imag), 'omega_boundary') for z in omega.boundary]
    return rows


def region_csv(omega=None, hankel=None):
    return dumps_csv(REGION_HEADER, region_rows(omega, hankel))


def region_json(omega=None, hankel=None):
    payload = {}
    for name, region in (('omega', omega), ('hankel', hankel)):
        if region is not None:
            payload[name] = {'points': region.points, 'boundary': region.boundary, 'meta': region.meta}
    return dumps_json(payload)


def region_svg(omega=None, hankel=None):
    """
    Dots for the H(Co_p) cloud, a stroked Omega_p boundary and the unit
    circle for reference, in a square frame of half-width at least 1.5.
    """
    figure = Figure(figsize=(6, 6))
    FigureCanvasSVG(figure)
    axes = figure.add_subplot()
    extent = 1.5
    circle = np.exp(1j * np.linspace(0, 2 * np.pi, 361))
    axes.plot(circle.real, circle.imag, color='0.7', linewidth=0.8, label='unit circle')
    if hankel is not None:
        axes.scatter(hankel.points.real, hankel.points.imag, s=1, color='tab:blue', label='H(Co_p)')
        extent = max(extent, 1.05 * float(np.abs(hankel.points).max()))
    if omega is not None:
        axes.plot(omega.boundary.real, omega.boundary.imag, color='tab:red', linewidth=1.2, label='Omega_p')
        extent = max(extent, 1.05 * float(np.abs(omega.boundary).max()))
    axes.set_xlim(-extent, extent)
    axes.set_ylim(-extent, extent)
    axes.set_aspect('equal')
    axes.legend(loc='upper right', fontsize='small')
    buffer = io.StringIO()
    # A fixed hash salt and no date keep the output byte-stable.
    with matplotlib.rc_context({'svg.hashsalt': 'concave-hankel', 'svg.fonttype': 'path'}):
        figure.savefig(buffer, format='svg', metadata={'Date': None})
    return buffer.getvalue()


def write_output(text, path=None):
    if path is None or path == '-':
        sys.stdout.write(text)
        return
    with open(path, 'w', newline='') as handle:
        handle.write(text)
    logger.info('Wrote %s.', path)
