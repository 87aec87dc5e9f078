from fractions import Fraction
import json
import numpy as np
import pandas as pd
import pytest

from cmnerds import metadata, onutil
from cmnerds.exact_core import ExactPoly


def test_onlog_round_trip(tmp_path):
    log = str(tmp_path / 'cm.log')
    metadata.onlog(['start: singular n=3', 'seed: 7'], log)
    metadata.onlog('result: singular pass', log)
    with open(log) as fp:
        lines = fp.readlines()
    assert len(lines) == 3
    assert ' -- start: singular n=3' in lines[0]
    assert metadata.get_latest_value('result', parse=':', filename=log) == 'singular pass'
    reader = metadata.Onlog(filename=log, auto_read=True)
    assert reader.get_latest_value('seed') == 'seed: 7'


def test_summary_table(tmp_path):
    log = str(tmp_path / 'cm.log')
    metadata.onlog('start: flow n=3', log)
    metadata.onlog('result: flow pass', log)
    table = metadata.get_summary(log)
    assert table[-1][1:] == ['flow n=3', 'flow pass']


def test_load_config_layers(tmp_path, monkeypatch):
    monkeypatch.delenv('CMNERDS_PROFILE', raising=False)
    monkeypatch.chdir(tmp_path)
    config = metadata.load_config()
    assert config['profile'] == 'quick'
    assert config['caps']['character'] == metadata.PROFILES['quick']['caps']['character']
    assert config['tolerances']['flow'] == 1e-6
    path = tmp_path / 'mine.yaml'
    path.write_text("profile: full\nseed: 5\ncaps: {pbw: 2}\ntolerances: {flow: 1.0e-7}\n")
    config = metadata.load_config(str(path), workers=2, seed=None)
    assert config['profile'] == 'full'
    assert config['seed'] == 5
    assert config['workers'] == 2
    assert config['caps']['pbw'] == 2
    assert config['caps']['dunkl'] == metadata.DEFAULTS['caps']['dunkl']
    assert config['caps']['integrals'] == 6
    assert config['samples']['assoc'] == 200
    assert config['tolerances']['flow'] == 1e-7
    assert config['tolerances']['trig'] == 1e-10


def test_profile_from_environment(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv('CMNERDS_PROFILE', 'full')
    assert metadata.load_config()['profile'] == 'full'
    assert metadata.load_config(profile='quick')['profile'] == 'quick'


def test_config_errors(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(ValueError):
        metadata.load_config(profile='huge')
    with pytest.raises(ValueError):
        metadata.load_config(str(tmp_path / 'missing.yaml'))


def test_reports():
    report = metadata.CheckReport('demo')
    assert report.record(True)
    assert not report.record(False, 'broken')
    assert not report.passed
    out = report.to_dict()
    assert out['status'] == 'fail'
    assert out['instances'] == 2
    assert out['failures'] == ['broken']
    manifest = metadata.RunManifest('verify', {}, 3, '0.1.0', 1.25,
                                    [out, metadata.CheckReport('ok', 1).to_dict()])
    assert not manifest.passed
    assert manifest.summary_line() == 'manifest: verify seed=3 1/2 pass (1.2s)'
    assert manifest.to_dict()['status'] == 'fail'


def test_jsonable_keeps_rationals_exact():
    x = ExactPoly.variable('x')
    payload = {'k': Fraction(1, 3), 'v': np.array([1.5, 2.0]), 'n': np.int64(4), 'f': x * Fraction(2, 5)}
    out = metadata.jsonable(payload)
    assert out['k'] == '1/3'
    assert out['v'] == [1.5, 2.0]
    assert out['n'] == 4
    assert out['f']['terms'][0]['num'] == '2'
    assert out['f']['terms'][0]['den'] == '5'


def test_emit_and_write_output(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    frame = pd.DataFrame({'t': [0.0, 0.5], 'x_1': [1.0, 2.0]})
    assert metadata.emit(frame, 'csv').decode().splitlines()[0] == 't,x_1'
    with pytest.raises(ValueError):
        metadata.emit({}, 'xml')
    metadata.write_output({'value': Fraction(-3, 4)}, 'out.json')
    with open('out.json') as fp:
        assert json.load(fp) == {'value': '-3/4'}


def test_parse_rationals():
    assert onutil.parse_rational('1/3') == Fraction(1, 3)
    assert onutil.parse_rational('-0.5') == Fraction(-1, 2)
    assert onutil.parse_rational(2) == 2
    with pytest.raises(ValueError):
        onutil.parse_rational('one')
    assert onutil.parse_rational_vector('0, 1,3') == [0, 1, 3]
    assert onutil.parse_rational_vector(None) is None
    with pytest.raises(ValueError):
        onutil.parse_rational_vector('1,2', 3)
    assert np.allclose(onutil.parse_float_vector('-2,0,3'), [-2.0, 0.0, 3.0])


def test_point_patterns():
    assert onutil.parse_point_pattern('a,a,b,b', values=[1, 2]) == [1, 1, 2, 2]
    assert onutil.parse_point_pattern('0,1,1,3') == [0, 1, 1, 3]
    point = onutil.parse_point_pattern('a,b,a', rng=np.random.default_rng(1))
    assert point[0] == point[2] != point[1]


def test_random_helpers():
    values = onutil.distinct_rationals(6, np.random.default_rng(0))
    assert len(set(values)) == 6
    a = onutil.check_rng(7, 'flow').integers(0, 10 ** 9)
    b = onutil.check_rng(7, 'flow').integers(0, 10 ** 9)
    c = onutil.check_rng(7, 'necklace').integers(0, 10 ** 9)
    assert a == b
    assert a != c


def test_small_parsers():
    assert onutil.parse_matrix('1,0;0,1') == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        onutil.parse_matrix('1,0;0')
    assert onutil.parse_word('xxy') == 'XXY'
    with pytest.raises(ValueError):
        onutil.parse_word('XZ')
    assert onutil.format_from_filename('traj.csv') == 'csv'
    assert onutil.format_from_filename('verify.json') == 'json'
