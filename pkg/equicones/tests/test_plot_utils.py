"""
Tests of the chart writers.

Date: October 2026
Author: equicones developers
"""

import json

import pytest

from equicones import cli, plot_utils
from equicones.coeffs import BiDegree, GradedModule, Region, Summand


@pytest.fixture
def module():
    return GradedModule((Summand.cone(BiDegree(0, 0), 'u'), Summand.tower(3, 't')))


def test_ascii_chart(module):
    text = plot_utils.emit_chart(module, 'ascii')
    rows = {line.split()[0]: line for line in text.splitlines()[1:-1]}
    assert '*' in rows['0']
    assert '‖' in rows['0']
    assert 'o' in rows['2']


def test_csv_chart(module):
    text = plot_utils.emit_chart(module, 'csv', Region.parse('0:3:0:0'))
    assert text.splitlines() == ['p,q,t,dim', '0,0,0,1', '3,0,0,1']


def test_svg_round_trip(module):
    page = plot_utils.module_page(module)
    svg = plot_utils.emit_chart(page, 'svg')
    assert plot_utils.read_svg_page(svg) == page.to_json()
    assert plot_utils.emit_chart(page, 'svg') == svg


def test_unknown_format(module):
    with pytest.raises(ValueError):
        plot_utils.emit_chart(module, 'png')


def test_chart_command(tmp_path, module):
    source = tmp_path / 'module.json'
    source.write_text(json.dumps(module.to_json()))
    first, second = tmp_path / 'a.svg', tmp_path / 'b.svg'
    for out in (first, second):
        argv = ['chart', '--input', str(source), '--format', 'svg', '--out', str(out)]
        assert cli.main(argv) == cli.EXIT_OK
    assert first.read_bytes() == second.read_bytes()

    ascii_out = tmp_path / 'chart.txt'
    argv = ['chart', '--input', str(first), '--format', 'ascii', '--out', str(ascii_out)]
    assert cli.main(argv) == cli.EXIT_OK
    assert '*' in ascii_out.read_text()
