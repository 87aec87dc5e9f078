from fractions import Fraction
import numpy as np
import pytest

from cmnerds import dunkl_engine as de
from cmnerds.coxeter import get_group, ClassParams
from cmnerds.exact_core import ExactPoly, NotInvariant


def test_rank_one_values():
    group = get_group('Z2')
    c = ClassParams.symbolic(group)
    x = group.coordinate(0)
    k = ExactPoly.variable('k')
    assert de.apply_dunkl(group, (1,), c, x) == 1 - k * 2
    assert de.apply_dunkl(group, (1,), c, x ** 2) == x * 2


def test_symmetric_group_value():
    group = get_group('S3')
    c = ClassParams.numeric(group, Fraction(1, 3))
    x1 = group.coordinate(0)
    assert de.apply_dunkl(group, group.basis_vector(0), c, x1) == Fraction(1, 3)


@pytest.mark.parametrize('label', ['Z2', 'S3', 'B2', 'I2:3'])
def test_dunkl_operators_commute(label):
    group = get_group(label)
    assert de.dunkl_commutativity(group, ClassParams.symbolic(group), 3).passed


def test_dunkl_operators_commute_golden():
    group = get_group('I2:5')
    assert de.dunkl_commutativity(group, ClassParams.numeric(group, Fraction(1, 2)), 2).passed


def test_mutated_weights_break_commutativity():
    group = get_group('S3')
    c = ClassParams.symbolic(group)
    report = de.dunkl_commutativity(group, c, 2, weights=[Fraction(3, 2), 1, 1])
    assert not report.passed


def test_commutation_relation():
    group = get_group('B2')
    assert de.commutation_relation(group, ClassParams.symbolic(group), 2).passed
    assert de.classical_limit_check(group, ClassParams.symbolic(group)).passed


def test_equivariance_and_linearity():
    group = get_group('S3')
    c = ClassParams.symbolic(group)
    assert de.conjugation_check(group, c, 1).passed
    assert de.linearity_check(group, c, 2, np.random.default_rng(3)).passed


def test_heckman_restriction():
    group = get_group('S3')
    assert de.heckman_check(group, ClassParams.symbolic(group), 3).passed
    with pytest.raises(NotInvariant):
        de.restrict_to_invariants(de.dunkl_operator(group, group.basis_vector(0), ClassParams.symbolic(group)))


def test_gauge_identity():
    group = get_group('S3')
    assert de.gauge_identity_check(group, ClassParams.numeric(group, 2), 2).passed
    group = get_group('B2')
    assert de.gauge_identity_check(group, ClassParams.numeric(group, 1, 2), 2).passed
    with pytest.raises(ValueError):
        de.delta_c(group, ClassParams.numeric(group, Fraction(1, 2)))


def test_op_operator_is_calogero_moser():
    assert de.qcm_check(3).passed
    assert de.qcm_check(2, Fraction(3, 4)).passed
    group = get_group('B2')
    c = ClassParams.symbolic(group)
    assert de.op_operator(group, c) == de.bn_op_operator(2, c[0], c[1])
    assert de.invariance_check(group, c).passed


def test_quantum_integrals():
    group = get_group('S3')
    assert de.integrals_check(group, ClassParams.numeric(group, 1), 2).passed


def test_classical_side():
    group = get_group('S3')
    c = ClassParams.symbolic(group)
    assert de.classical_commutativity(group, c).passed
    assert de.theta_check(group, c).passed
    assert de.classical_integrals_check(group, ClassParams.numeric(group, 1)).passed


def test_poisson_bracket_convention():
    group = get_group('Z2')
    p = group.rf(ExactPoly.variable('p1', group.variables))
    x = group.rf(ExactPoly.variable('x1', group.variables))
    assert de.poisson_bracket(group, p, x) == 1
