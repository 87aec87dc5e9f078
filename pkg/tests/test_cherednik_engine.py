from fractions import Fraction
import numpy as np
import pytest

from cmnerds import cherednik_engine as ch
from cmnerds.coxeter import get_group, ClassParams
from cmnerds.exact_core import ExactPoly, NotUnimodular, NonOrthonormal, InvalidParameters, DegreeCapExceeded


t = ExactPoly.variable('t')
k = ExactPoly.variable('k')


def test_rank_one_commutator():
    group = get_group('Z2')
    algebra = ch.CherednikAlgebra(group)
    x, y = algebra.x(0), algebra.y(0)
    s = group.reflections[0].element
    assert y * x == x * y + algebra.scalar(t) - algebra.element(s).scale(k * 2)
    xy = x * y
    assert xy.coefficient(0, (1,), (1,)) == 1
    assert xy.coefficient(0, (0,), (0,)) == -t
    assert xy.coefficient(s, (0,), (0,)) == k * 2


@pytest.mark.parametrize('label', ['Z2', 'S3', 'B2', 'I2:5'])
def test_defining_relations(label):
    assert ch.relations_check(ch.CherednikAlgebra(get_group(label))).passed


def test_associativity():
    rng = np.random.default_rng(11)
    assert ch.associativity_check(ch.CherednikAlgebra(get_group('B2')), rng, 5, max_length=4).passed


def test_flatness_counts_basis():
    report = ch.flatness_check(ch.CherednikAlgebra(get_group('Z2')), 4)
    assert report.passed
    assert report.details['basis_count'] == 30


def test_grading_element_and_sl2():
    rng = np.random.default_rng(5)
    algebra = ch.CherednikAlgebra(get_group('S3'))
    assert ch.grading_check(algebra).passed
    assert ch.sl2_check(algebra, rng, 3, max_length=3).passed
    assert ch.rescaling_check(algebra, rng, 3).passed
    with pytest.raises(NotUnimodular):
        algebra.sl2_automorphism(((1, 1), (1, 1)), algebra.x(0))


def test_sl2_needs_orthonormal_basis():
    algebra = ch.CherednikAlgebra(get_group('I2:3'))
    report = ch.grading_check(algebra)
    assert report.passed
    assert 'skipped' in report.details['sl2']
    with pytest.raises(NonOrthonormal):
        algebra.sl2_triple()


def test_lowest_weights():
    group = get_group('S3')
    refl = ch.LowestWeight.reflection(group)
    assert refl.dim == 2
    transposition = group.reflections[0].element
    assert refl.character(transposition) == 0
    three_cycle = group.multiply(group.generators[0], group.generators[1])
    assert refl.character(three_cycle) == -1
    sign = ch.LowestWeight.from_generators(group, [[[-1]], [[-1]]], name='sign')
    assert sign.matrices == ch.LowestWeight.sign(group).matrices
    with pytest.raises(ValueError):
        ch.LowestWeight.from_generators(group, [[[1]], [[-1]]])
    with pytest.raises(ValueError):
        ch.LowestWeight.by_name(group, 'adjoint')


def test_lowest_h_value():
    group = get_group('S3')
    c = ClassParams.symbolic(group)
    assert ch.lowest_h(group, c, ch.LowestWeight.trivial(group)) == Fraction(3, 2) - k * 3
    assert ch.lowest_h(group, c, ch.LowestWeight.sign(group)) == Fraction(3, 2) + k * 3


def test_expected_character_rank_one():
    group = get_group('Z2')
    expected = ch.expected_character(group, ch.LowestWeight.trivial(group), 3)
    assert expected == {'e': [1, 1, 1, 1], 's': [1, -1, 1, -1]}


@pytest.mark.parametrize('label,tau', [('Z2', 'sign'), ('S3', 'triv'), ('S3', 'refl'), ('B2', 'triv')])
def test_verma_character(label, tau):
    group = get_group(label)
    lowest = ch.LowestWeight.by_name(group, tau)
    assert ch.character_check(group, ClassParams.symbolic(group), lowest, 3).passed


def test_verma_action_rank_one():
    group = get_group('Z2')
    c = ClassParams.symbolic(group)
    algebra = ch.CherednikAlgebra(group, c)
    triv = ch.LowestWeight.trivial(group)
    assert ch.verma_action(group, c, triv, algebra.y(0), 3) == (2, [[3 - k * 2]])
    assert ch.verma_action(group, c, triv, algebra.y(0), 2) == (1, [[ExactPoly.constant(2)]])
    assert ch.verma_action(group, c, triv, algebra.y(0), 0) == (-1, [])
    h = algebra.grading_element()
    assert ch.verma_action(group, c, triv, h, 2) == (2, [[Fraction(5, 2) - k]])
    assert ch.verma_action(group, c, ch.LowestWeight.sign(group), h, 1) == (1, [[Fraction(3, 2) + k]])
    with pytest.raises(ValueError):
        ch.verma_action(group, c, triv, algebra.x(0) + algebra.y(0), 1)


def test_verma_module_relations():
    group = get_group('S3')
    c = ClassParams.symbolic(group)
    assert ch.verma_relations_check(group, c, ch.LowestWeight.reflection(group), 2).passed
    assert ch.verma_dunkl_crosscheck(group, c, 2).passed


def test_irreducible_quotient():
    group = get_group('Z2')
    triv = ch.LowestWeight.trivial(group)
    assert ch.irreducible_dimensions(group, ClassParams.numeric(group, Fraction(3, 2)), triv, 4) == [1, 1, 1, 0, 0]
    assert ch.irreducible_dimensions(group, ClassParams.numeric(group, Fraction(1, 2)), triv, 2) == [1, 0, 0]
    with pytest.raises(InvalidParameters):
        ch.irreducible_dimensions(group, ClassParams.symbolic(group), triv, 2)


def test_shapovalov_form():
    group = get_group('Z2')
    assert ch.shapovalov_check(group, ClassParams.symbolic(group), ch.LowestWeight.trivial(group), 3).passed
    assert ch.shapovalov_gram(group, ClassParams.symbolic(group), ch.LowestWeight.trivial(group), 1)[0][0] == 1 - k * 2


def test_degree_cap():
    group = get_group('Z2')
    module = ch.GradedModuleSlice(group, ClassParams.symbolic(group), ch.LowestWeight.trivial(group), 2)
    with pytest.raises(DegreeCapExceeded):
        module.basis(3)


def test_pbw_bundle():
    rng = np.random.default_rng(0)
    assert ch.pbw_check(get_group('Z2'), rng, 2, 3, which='flatness').passed
    with pytest.raises(ValueError):
        ch.pbw_check(get_group('Z2'), rng, 2, 3, which='bogus')
