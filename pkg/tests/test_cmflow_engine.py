from fractions import Fraction
import numpy as np
import pytest

from cmnerds import cmflow_engine as cf
from cmnerds.exact_core import CollidingCoordinates, NonPositiveCoordinate


@pytest.fixture
def spread_point():
    return cf.PhasePoint([-2.0, 0.0, 3.0], [-1.0, 0.0, 1.0])


def test_kks_pair_two_particles():
    pt = cf.PhasePoint([0.0, 1.0], [0.0, 0.0])
    pair = cf.kks_pair(pt)
    assert np.allclose(pair.Y, [[0.0, -1.0], [1.0, 0.0]])
    assert np.allclose(pair.defect(), np.ones((2, 2)))
    ok, sv = cf.rank_one_check(pair)
    assert ok
    assert sv[0] == pytest.approx(2.0)
    assert cf.hamiltonian(pt) == pytest.approx(-2.0)
    assert np.allclose(cf.integrals(pt), [0.0, -2.0])


def test_colliding_coordinates():
    with pytest.raises(CollidingCoordinates):
        cf.kks_pair(cf.PhasePoint([1.0, 1.0, 2.0], [0.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        cf.PhasePoint([1.0, 2.0], [0.0])


def test_eigenvalue_machinery():
    A = np.diag([1.0, 2.0])
    assert np.allclose(cf.char_poly(A), [1, -3, 2])
    roots = np.sort(cf.eigenvalues(A).real)
    assert np.allclose(roots, [1.0, 2.0])
    assert np.allclose(cf.track(np.array([0.0, 1.0]), np.array([1.01, 0.02])), [0.02, 1.01])


def test_first_flow_is_translation(spread_point):
    moved = cf.flow_eigen(spread_point, 0.5, order=1)
    assert np.allclose(moved.x, spread_point.x + 0.5)
    assert np.allclose(moved.p, spread_point.p)


def test_eigen_flow_matches_ode(spread_point):
    eig = cf.trajectory(spread_point, 0.5, 0.01, method='eigen')
    ode = cf.trajectory(spread_point, 0.5, 0.01, method='ode')
    assert np.max(np.abs(eig.xs - ode.xs)) < 1e-6
    assert np.max(np.abs(eig.ps - ode.ps)) < 1e-5
    assert ode.details['energy_drift'] < 1e-8
    for k in range(1, 4):
        assert eig.drift(k) < 1e-8
    with pytest.raises(ValueError):
        cf.trajectory(spread_point, 0.5, 0.01, method='leapfrog')


def test_momenta_from_central_differences(spread_point):
    moved = cf.flow_eigen(spread_point, 0.3)
    assert np.allclose(cf.central_difference_momenta(spread_point, 0.3), moved.p, atol=1e-6)


def test_flow_composes(spread_point):
    half = cf.flow_eigen(cf.flow_eigen(spread_point, 0.25), 0.25)
    whole = cf.flow_eigen(spread_point, 0.5)
    assert np.allclose(half.x, whole.x, atol=1e-8)
    assert np.allclose(half.p, whole.p, atol=1e-8)


def test_rk4_order(spread_point):
    assert 10 < cf.convergence_ratio(spread_point) < 22


def test_flow_check():
    assert cf.flow_check(np.random.default_rng(2), 1, t_max=0.5, dt=5e-3).passed


def test_trajectory_frame(spread_point):
    frame = cf.trajectory(spread_point, 0.1, 0.05).to_frame()
    assert list(frame.columns) == ['t', 'x_1', 'x_2', 'x_3', 'p_1', 'p_2', 'p_3', 'H_1', 'H_2', 'H_3', 'method']
    assert len(frame) == 3
    assert set(frame['method']) == {'eigen'}


def test_trace_pairing():
    pair = cf.random_pair(3, np.random.default_rng(0))
    lhs, rhs = cf.necklace_bracket('X', 'Y', pair)
    assert lhs == pytest.approx(-3.0)
    assert rhs == pytest.approx(-3.0)


@pytest.mark.parametrize('word_a,word_b', [('XXY', 'XX'), ('XY', 'YYX'), ('XYXY', 'Y')])
def test_necklace_bracket(word_a, word_b):
    pair = cf.random_pair(3, np.random.default_rng(7))
    lhs, rhs = cf.necklace_bracket(word_a, word_b, pair)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)
    numeric, _ = cf.necklace_bracket(word_a, word_b, pair, method='numeric')
    assert numeric == pytest.approx(lhs, rel=1e-7, abs=1e-7)


def test_necklace_word_validation():
    pair = cf.random_pair(2, np.random.default_rng(0))
    with pytest.raises(ValueError):
        cf.necklace_bracket('XZ', 'Y', pair)
    with pytest.raises(ValueError):
        cf.necklace_bracket('XYXYXYX', 'Y', pair)
    with pytest.raises(ValueError):
        cf.necklace_bracket('X', 'Y', pair, method='guess')


def test_necklace_check():
    assert len(cf.all_words(3)) == 14
    assert cf.necklace_check(np.random.default_rng(3), 2, max_length=2).passed


def test_symplectomorphism():
    rng = np.random.default_rng(9)
    assert cf.symplectomorphism_check(cf.random_symplectic_point(3, rng)).passed


def test_trig_forms_agree():
    pt = cf.PhasePoint([1.0, np.e, 5.0], [0.3, -0.2, 0.1])
    coordinate, additive = cf.trig_system(pt)
    assert coordinate == pytest.approx(additive, rel=1e-12)
    assert cf.trace_word('XYXY', cf.kks_pair(pt)) == pytest.approx(coordinate, rel=1e-12)
    with pytest.raises(NonPositiveCoordinate):
        cf.trig_system(cf.PhasePoint([-1.0, 2.0], [0.0, 0.0]))


def test_circle_forms_agree():
    coordinate, sine = cf.circle_system([0.2, 1.5, 4.0], [0.5, -0.1, 0.7])
    assert np.isfinite(coordinate)
    assert coordinate.real == pytest.approx(sine, rel=1e-12)
    assert abs(coordinate.imag) < 1e-12
    # half a turn apart: 2 * 1/(4 sin^2(pi/2))
    coordinate, sine = cf.circle_system([0.0, np.pi], [0.0, 0.0])
    assert sine == pytest.approx(0.5)
    assert coordinate.real == pytest.approx(0.5)


def test_trig_check():
    report = cf.trig_check(np.random.default_rng(4), 3)
    assert report.passed
    assert report.details['points'] == 3
    assert not any('circle' in f for f in report.failures)


def test_trig_check_keeps_every_sample():
    # crowded draws (a gap below 0.1) are redrawn, not dropped
    report = cf.trig_check(np.random.default_rng(11), 4, n=4, max_index=1)
    assert report.passed
    assert report.details['points'] == 4
    assert report.instances == 4 * 4


def test_symbolic_integrals():
    pt = cf.PhasePoint([0.0, 1.0], [0.5, 3.0])
    assert cf.evaluate_integral(cf.symbolic_integral(2, 2), pt) == pytest.approx(7.25)
    pt = cf.PhasePoint([-1.0, 0.5, 2.0], [0.25, -1.0, 0.75])
    values = cf.integrals(pt)
    for i in range(1, 4):
        assert cf.evaluate_integral(cf.symbolic_integral(i, 3), pt) == pytest.approx(values[i - 1], rel=1e-12)
    with pytest.raises(ValueError):
        cf.symbolic_integral(5, 3)


def test_symbolic_hamiltonian_form():
    H = cf.symbolic_integral(2, 2)
    point = {'x1': Fraction(0), 'x2': Fraction(2), 'p1': Fraction(1), 'p2': Fraction(1)}
    assert H.evaluate(point) == Fraction(2) - Fraction(2, 4)
