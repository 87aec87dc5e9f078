from fractions import Fraction
import json
import pytest

from cmnerds import cmnerd_engine as ce
from cmnerds.coxeter import get_group


def run(config, verb, **kwargs):
    return getattr(ce.CommandHandler(config, **kwargs), verb.replace('-', '_'))()


def test_verbs_have_handlers():
    for verb in ce.VERBS:
        assert hasattr(ce.CommandHandler, verb.replace('-', '_'))
        assert verb in ce.VERB_CHECKS


def test_parse_params():
    s3, b2 = get_group('S3'), get_group('B2')
    assert ce.parse_params(s3, 'k=1/2')[0] == Fraction(1, 2)
    both = ce.parse_params(b2, 'c1=1,c2=1/3')
    assert both[0] == 1
    assert both[1] == Fraction(1, 3)
    assert ce.parse_params(b2, '2').is_numeric()
    assert not ce.parse_params(s3, None).is_numeric()
    with pytest.raises(ValueError):
        ce.parse_params(s3, 'c3=1')


def test_singular_verb_writes_json(config, tmp_path):
    assert run(config, 'singular', n=2, r=1, out='singular.json') == 0
    with open(tmp_path / 'singular.json') as fp:
        payload = json.load(fp)
    assert payload['manifest']['status'] == 'pass'
    assert payload['data']['k'] == '1/2'
    with open(tmp_path / 'cm.log') as fp:
        text = fp.read()
    assert 'start: singular' in text
    assert 'result: singular pass' in text


def test_finite_dim_verb(config, tmp_path):
    assert run(config, 'finite-dim', n=3, r=2, cap=6, out='fd.json') == 0
    with open(tmp_path / 'fd.json') as fp:
        data = json.load(fp)['data']
    assert data['dims'] == [1, 2, 1]
    assert data['dimension'] == 4


def test_support_verb(config, tmp_path):
    assert run(config, 'support', n=4, r=2, point='a,a,b,b', out='support.json') == 0
    with open(tmp_path / 'support.json') as fp:
        assert json.load(fp)['data']['vanishes'] is True


def test_rep0_verb(config, tmp_path):
    assert run(config, 'rep0', n=2, **{'lambda': '0,1'}, mu='0,0', out='rep0.json') == 0
    with open(tmp_path / 'rep0.json') as fp:
        data = json.load(fp)['data']
    assert data['Y'] == [['0/1', '-1/1'], ['1/1', '0/1']]


def test_flow_verb_writes_csv(config, tmp_path):
    assert run(config, 'flow', n=3, x='-2,0,3', p='-1,0,1', t_max=0.2, dt=0.01, out='traj.csv') == 0
    with open(tmp_path / 'traj.csv') as fp:
        lines = fp.read().splitlines()
    assert lines[0] == 't,x_1,x_2,x_3,p_1,p_2,p_3,H_1,H_2,H_3,method'
    assert len(lines) == 1 + 2 * 21


def test_necklace_and_trig_verbs(config):
    assert run(config, 'necklace', word_a='XXY', word_b='XX') == 0
    assert run(config, 'necklace', n=2, trials=1, maxlen=2) == 0
    assert run(config, 'trig', x='1,2.718281828,5') == 0


def test_algebra_verbs(config, tmp_path):
    assert run(config, 'dunkl-check', group='Z2', cap=3) == 0
    assert run(config, 'op-gauge', group='Z2', c='1', cap=2) == 0
    assert run(config, 'integrals', group='Z2') == 0
    assert run(config, 'pbw', group='Z2', which='flatness', cap=3) == 0
    assert run(config, 'character', group='Z2', params='k=3/2', cap=4, out='char.json') == 0
    with open(tmp_path / 'char.json') as fp:
        assert json.load(fp)['data']['irreducible_dimensions'] == [1, 1, 1, 0, 0]


def test_verify_summary_and_refs(config, capsys):
    assert run(config, 'verify', checks='qcm') == 0
    assert run(config, 'summary') == 0
    assert 'verify' in capsys.readouterr().out
    handler = ce.CommandHandler(config)
    assert handler.refs('singular') == 0
    assert 'singular-vectors' in capsys.readouterr().out
