"""
Charts of spectral sequence pages: SVG through matplotlib, ASCII grids, JSON and CSV.

SVG output is deterministic (fixed hash salt, no date) and embeds the page JSON as its description, so a
chart can be read back with `read_svg_page`.

Date: October 2026
Author: equicones developers
"""

import io
import json
import xml.etree.ElementTree as ET

import matplotlib
matplotlib.use('Agg')
import matplotlib.pylab as plt  # noqa: E402

from equicones.barss import E2Table, Page  # noqa: E402
from equicones.coeffs import BiDegree, GradedModule, Region  # noqa: E402


FORMATS = ('json', 'csv', 'svg', 'ascii')
DC_DESCRIPTION = '{http://purl.org/dc/elements/1.1/}description'

# one colour per filtration, cycled
COLORS = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b', '#e377c2', '#17becf']


def module_page(M: GradedModule, region: Region = None) -> Page:
    """A module as a page with a single filtration and no differentials."""
    return Page.from_json({'r': 1, 'filtrations': {'0': M.to_json()}, 'd': []}, region)


def page_json(page: Page) -> str:
    return json.dumps(page.to_json(), indent=2, sort_keys=True)


def page_csv(page: Page, region: Region = None) -> str:
    """Per bidegree dimensions of every filtration of a page, columns p,q,t,dim."""
    region = region or page.region
    lines = ['p,q,t,dim']
    for x in region.bidegrees():
        for t in sorted(page.filtrations):
            if t > page.t_max:
                continue
            n = page.filtrations[t].dim(x)
            if n:
                lines.append('{},{},{},{}'.format(x.p, x.q, t, n))
    return '\n'.join(lines) + '\n'


def _glyph(summand, x: BiDegree) -> str:
    if not summand.dim(x):
        return ''
    if not summand.is_cone:
        return '‖'
    d = x - summand.shift
    if d.p == 0 and d.q == 0:
        return '*'
    if d.p == 0 and d.q == 2:
        return 'o'
    if d.p == d.q or d.q - d.p == 2:
        return '\\'
    return '|'


def page_ascii(page: Page, region: Region = None) -> str:
    """
    Grid with q growing upwards: '*' cone generator, 'o' theta class, a backslash for a-multiples, '|' for
    the other cone classes, a double bar for towers, digits where several summands overlap.
    """
    region = region or page.region
    summands = [s for t, m in sorted(page.filtrations.items()) if t <= page.t_max for s in m]
    width = max(len(str(region.p_min)), len(str(region.p_max))) + 1
    lines = ['E{} {}'.format(page.r, page.name).rstrip()]
    for q in range(region.q_max, region.q_min - 1, -1):
        row = []
        for p in range(region.p_min, region.p_max + 1):
            x = BiDegree(p, q)
            glyphs = [g for g in (_glyph(s, x) for s in summands) if g]
            if not glyphs:
                cell = '.'
            elif len(glyphs) == 1:
                cell = glyphs[0]
            else:
                cell = str(min(len(glyphs), 9))
            row.append(cell.rjust(width))
        lines.append('{:>4} '.format(q) + ''.join(row))
    lines.append('     ' + ''.join(str(p).rjust(width) for p in range(region.p_min, region.p_max + 1)))
    return '\n'.join(lines) + '\n'


def _cone_segments(shift: BiDegree, region: Region):
    """Boundary rays of a cone clipped to the region: a-ray, u-column, and the theta rays."""
    low = min(shift.p - region.p_min, shift.q - region.q_min)
    down = shift.q - region.q_min
    segs = [((shift.p, shift.q), (shift.p - max(low, 0), shift.q - max(low, 0))),
            ((shift.p, shift.q), (shift.p, shift.q - max(down, 0)))]
    top = (shift.p, shift.q + 2)
    up = region.q_max - top[1]
    right = min(region.p_max - top[0], up)
    if up >= 0:
        segs.append((top, (top[0], top[1] + up)))
    if right >= 0:
        segs.append((top, (top[0] + right, top[1] + right)))
    return segs


def page_svg(page: Page, region: Region = None) -> str:
    """Deterministic SVG chart of a page with the page JSON as its description."""
    region = region or page.region
    matplotlib.rcParams['svg.hashsalt'] = 'equicones'
    fig, ax = plt.subplots(figsize=(8, 6))
    position = {}
    for t, module in sorted(page.filtrations.items()):
        if t > page.t_max:
            continue
        color = COLORS[t % len(COLORS)]
        for i, s in enumerate(module):
            if s.is_cone:
                for (x0, y0), (x1, y1) in _cone_segments(s.shift, region):
                    ax.plot([x0, x1], [y0, y1], color=color, linewidth=0.8)
                ax.plot([s.shift.p], [s.shift.q], 'o', color=color, markersize=3)
                position[(t, i)] = (s.shift.p, s.shift.q)
            else:
                ax.plot([s.p0, s.p0], [region.q_min, region.q_max], color=color, linewidth=2.0)
                position[(t, i)] = (s.p0, region.q_min)
    for f in page.differentials:
        if f.source in position and f.target in position:
            (x0, y0), (x1, y1) = position[f.source], position[f.target]
            ax.annotate('', xy=(x1, y1), xytext=(x0, y0), arrowprops={'arrowstyle': '->', 'color': 'gray'})
    ax.set_xlim(region.p_min - 0.5, region.p_max + 0.5)
    ax.set_ylim(region.q_min - 0.5, region.q_max + 0.5)
    ax.set_xlabel('p'), ax.set_ylabel('q')
    ax.set_title('E{} {}'.format(page.r, page.name))
    ax.grid(True, linewidth=0.3)

    buf = io.StringIO()
    fig.savefig(buf, format='svg', metadata={'Date': None, 'Description': page_json(page)})
    plt.close(fig)
    return buf.getvalue()


def read_svg_page(svg_text: str) -> dict:
    """Page JSON embedded in an SVG chart."""
    root = ET.fromstring(svg_text)
    for node in root.iter(DC_DESCRIPTION):
        return json.loads(node.text)
    raise ValueError('The SVG has no embedded page description.')


def emit_chart(page, fmt: str, region: Region = None) -> str:
    """
    Render a page (or an E2 table for the csv and json formats) in one of FORMATS.

    Parameters
    ----------
    page : Page or E2Table
    fmt : str
        One of 'json', 'csv', 'svg', 'ascii'.
    region : Region
        Chart window, the page region by default.
    """
    if fmt not in FORMATS:
        raise ValueError('Unknown chart format {}; use one of {}.'.format(fmt, ', '.join(FORMATS)))
    if isinstance(page, GradedModule):
        page = module_page(page, region)
    if isinstance(page, E2Table):
        if fmt == 'csv':
            return page.to_csv()
        if fmt == 'json':
            return json.dumps(page.to_json(), indent=2, sort_keys=True)
        raise ValueError('E2 tables are written as csv or json, not {}.'.format(fmt))
    if fmt == 'json':
        return page_json(page)
    if fmt == 'csv':
        return page_csv(page, region)
    if fmt == 'ascii':
        return page_ascii(page, region)
    return page_svg(page, region)


def load_page(path: str) -> Page:
    """Read a page from its JSON file or from an SVG chart."""
    with open(path) as f:
        text = f.read()
    data = read_svg_page(text) if text.lstrip().startswith('<') else json.loads(text)
    if 'filtrations' not in data:
        return module_page(GradedModule.from_json(data))
    return Page.from_json(data)
