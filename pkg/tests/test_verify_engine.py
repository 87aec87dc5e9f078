import pytest

from cmnerds import verify_engine as verify


def test_registry():
    assert len(verify.CHECKS) >= 15
    for name in ('dunkl-commutativity', 'heckman', 'op-gauge', 'pbw', 'verma-character', 'singular-vectors',
                 'finite-dim', 'support', 'rep0', 'flow', 'kks', 'necklace', 'symplectomorphism', 'trig'):
        assert name in verify.CHECKS
    anchors = verify.refs()
    assert list(anchors) == sorted(verify.CHECKS)
    assert 'rank one' in verify.refs('kks')


def test_mutated_dunkl_operators_fail():
    report = verify.mutated_dunkl_report()
    assert not report.passed
    assert report.failures


def test_run_single_check(config):
    report = verify.run_check('qcm', config)
    assert report.passed
    assert report.check == 'qcm'
    assert report.anchors == verify.refs('qcm')
    assert 'seconds' in report.details


def test_exceptions_become_failures(config, monkeypatch):
    def explode(config, rng):
        raise ZeroDivisionError('boom')

    monkeypatch.setitem(verify.CHECKS, 'explode', {'func': explode, 'refs': 'never passes'})
    report = verify.run_check('explode', config)
    assert not report.passed
    assert 'ZeroDivisionError' in report.failures[0]


def test_unknown_check(config):
    with pytest.raises(ValueError):
        verify.run_checks(config, ['no-such-check'])


def test_checks_are_reproducible(config):
    first = verify.run_check('rep0', config)
    second = verify.run_check('rep0', config)
    assert first.instances == second.instances
    assert first.failures == second.failures == []


def test_verify_all_manifest(config, tmp_path):
    manifest = verify.verify_all(config, ['singular-vectors', 'qcm'])
    assert manifest.passed
    assert [c['check'] for c in manifest.checks] == ['qcm', 'singular-vectors']
    assert manifest.seed == config['seed']
    with open(tmp_path / 'cm.log') as fp:
        assert 'manifest: verify' in fp.read()


def test_integrals_follow_profile_cap(config, monkeypatch):
    assert config['caps']['integrals'] == 2
    seen = []
    original = verify.dunkl.integrals_check

    def spy(group, c, max_degree):
        seen.append(max_degree)
        return original(group, c, max_degree)

    monkeypatch.setattr(verify.dunkl, 'integrals_check', spy)
    config['caps']['integrals'] = 1
    assert verify.run_check('integrals', config).passed
    assert seen == [1, 1]
