from fractions import Fraction
import numpy as np
import pytest

from cmnerds import typea_engine as ta
from cmnerds.coxeter import get_group
from cmnerds.exact_core import ExactPoly, InvalidParameters, CapTooSmall, DegenerateSpectrum


def test_rank_one_singular_vector():
    family = ta.singular_vectors(2, 1)
    x1, x2 = (ExactPoly.variable(v, family.coords) for v in family.coords)
    assert family.k == Fraction(1, 2)
    assert family.vectors[0] == (x1 - x2) * Fraction(1, 2)
    assert family.vectors[1] == (x2 - x1) * Fraction(1, 2)


@pytest.mark.parametrize('n,r', [(2, 1), (2, 3), (3, 1), (3, 2), (4, 3)])
def test_singular_vectors(n, r):
    assert ta.singular_check(ta.singular_vectors(n, r)).passed


def test_singular_vectors_reject_bad_input():
    with pytest.raises(InvalidParameters):
        ta.singular_vectors(2, 2)
    with pytest.raises(InvalidParameters):
        ta.singular_vectors(1, 1)
    with pytest.raises(InvalidParameters):
        ta.singular_vectors(3, 0)


def test_difference_coordinates():
    coords = ('x1', 'x2', 'x3')
    x = [ExactPoly.variable(v, coords) for v in coords]
    u = ta.to_difference_coordinates(x[0] - x[2], 3)
    assert u == ExactPoly.variable('u1', ('u1', 'u2')) + ExactPoly.variable('u2', ('u1', 'u2'))
    assert ta.from_difference_coordinates(u, 3) == x[0] - x[2]


@pytest.mark.parametrize('n,r,dims', [(2, 1, [1]), (2, 3, [1, 1, 1]), (3, 2, [1, 2, 1]),
                                      (3, 4, [1, 2, 3, 4, 3, 2, 1])])
def test_quotient_hilbert_series(n, r, dims):
    slices = ta.quotient_slices(n, r, 8)
    assert slices.dims == dims
    assert slices.dimension == r ** (n - 1)


def test_quotient_needs_large_enough_cap():
    with pytest.raises(CapTooSmall):
        ta.quotient_slices(3, 4, 3)


@pytest.mark.parametrize('n,r', [(2, 3), (3, 2), (3, 4)])
def test_quotient_structure(n, r):
    assert ta.quotient_check(n, r, 8).passed
    slices = ta.quotient_slices(n, r, 8)
    assert ta.frobenius_check(slices).passed
    assert ta.bgg_euler_check(slices).passed


def test_closed_form_character_at_identity():
    group = get_group('S3')
    assert ta.closed_form_character(3, 2, 0, group, 3) == [1, 2, 1, 0]
    assert ta.reflection_det(group, 0) == [1, -2, 1]


def test_support_predictor():
    assert ta.support_predicted(4, 2, [1, 1, 5, 5])
    assert not ta.support_predicted(4, 2, [1, 1, 1, 5])
    assert ta.support_predicted(3, 1, [2, 2, 2])
    assert not ta.support_predicted(3, 1, [2, 2, 3])


def test_support_exact_vanishing():
    assert ta.support_test(4, 2, [0, 0, 3, 3])
    assert ta.support_test(4, 2, [Fraction(1, 2), 7, Fraction(1, 2), 7])
    assert not ta.support_test(4, 2, [0, 0, 0, 3])
    assert not ta.support_test(4, 2, [0, 1, 2, 3])
    assert ta.support_test(2, 1, [4, 4])
    with pytest.raises(ValueError):
        ta.support_test(3, 1, [0, 1])


def test_support_patterns():
    assert len(ta._patterns(3)) == 5
    assert len(ta._patterns(4)) == 15
    assert ta.support_check(4, 2, np.random.default_rng(1), 2).passed
    assert ta.support_check(3, 2, np.random.default_rng(2), 2).passed


def test_residue_lemma():
    report = ta.residue_lemma_check(np.random.default_rng(4), 10)
    assert report.passed
    assert report.details['non_polynomial_cases'] == 10
    assert report.details['polynomial_cases'] == report.details['draws'] >= 10
    assert report.instances == report.details['draws'] + 10


def test_orbit_representation_rank_two():
    rep = ta.orbit_representation(2, [0, 1], [0, 0])
    assert rep.dim == 2
    assert ta.orbit_relations_check(rep).passed
    X, Y = ta.cm_point_from_rep(rep)
    assert X == [[0, 0], [0, 1]]
    assert Y == [[0, -1], [1, 0]]
    assert ta.cm_point_check(rep).passed
    assert ta.central_character_check(rep, 2).passed


def test_orbit_representation_rank_three():
    rng = np.random.default_rng(8)
    lam, mu = ta.random_rep_data(3, rng)
    rep = ta.orbit_representation(3, lam, mu)
    assert rep.dim == 6
    assert ta.orbit_relations_check(rep).passed
    assert ta.cm_point_check(rep).passed
    assert ta.central_character_check(rep).passed
    assert ta.relabeling_check(3, lam, mu, rng, samples=5).passed


def test_orbit_representation_input_errors():
    with pytest.raises(DegenerateSpectrum):
        ta.orbit_representation(2, [1, 1], [0, 0])
    with pytest.raises(ValueError):
        ta.orbit_representation(3, [0, 1], [0, 0])
    with pytest.raises(InvalidParameters):
        ta.cm_point_from_rep(ta.orbit_representation(2, [0, 1], [0, 0], c=2))


def test_orbit_relations_hold_for_other_c():
    assert ta.orbit_relations_check(ta.orbit_representation(2, [0, 3], [1, 2], c=Fraction(1, 2))).passed
