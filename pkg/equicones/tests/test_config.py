"""
Tests of the YAML configuration layer.

Date: October 2026
Author: equicones developers
"""

import pytest

from equicones import config


def test_defaults_are_valid():
    conf = config.get_conf_dict()
    assert conf['computation']['presentation'] == 'K_sigma'
    assert conf['output']['format'] in ('json', 'csv', 'svg', 'ascii')
    config.check_conf()


def test_update_with_query_conf():
    new_conf = config.update_with_query_conf({'tmax': '3', 'region': '0:4:0:4', 'presentation': 'F2',
                                              'format': None, 'unknown': 5})
    conf = config.get_conf_dict(new_conf)
    assert conf['computation']['tmax'] == 3
    assert conf['computation']['region'] == '0:4:0:4'
    assert conf['computation']['presentation'] == 'F2'
    assert conf['output']['format'] == config.conf_dict['output']['format']
    # the defaults are left untouched
    assert config.conf_dict['computation']['presentation'] == 'K_sigma'


def test_update_rejects_bad_values():
    with pytest.raises(ValueError):
        config.update_with_query_conf({'tmax': '17'})
    with pytest.raises(ValueError):
        config.update_with_query_conf({'format': 'png'})
    with pytest.raises(ValueError):
        config.update_with_query_conf({'region': '0:4:5:1'})
    with pytest.raises(TypeError):
        config.update_with_query_conf({'tmax': '2.5'})


def test_parse_region():
    assert config.parse_region('-1:2:-3:4') == (-1, 2, -3, 4)
    with pytest.raises(ValueError):
        config.parse_region('0:1')


def test_get_threads(monkeypatch):
    conf = config.get_conf_dict()
    monkeypatch.setenv('EQUICONES_THREADS', '3')
    assert config.get_threads(conf) == 3
    monkeypatch.setenv('EQUICONES_THREADS', '0')
    assert config.get_threads(conf) >= 1
    monkeypatch.setenv('EQUICONES_THREADS', '-1')
    with pytest.raises(ValueError):
        config.get_threads(conf)
    monkeypatch.delenv('EQUICONES_THREADS')
    conf['computation']['threads'] = 2
    assert config.get_threads(conf) == 2
