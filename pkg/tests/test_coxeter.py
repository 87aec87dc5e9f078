from fractions import Fraction
import pytest

from cmnerds.coxeter import get_group, ClassParams, laplace_det, reflection_identity_holds, group_table
from cmnerds.exact_core import ExactPoly


@pytest.mark.parametrize('label,order,nrefl,nclasses', [
    ('Z2', 2, 1, 1), ('S3', 6, 3, 1), ('S4', 24, 6, 1), ('B2', 8, 4, 2), ('B3', 48, 9, 2),
    ('I2:3', 6, 3, 1), ('I2:4', 8, 4, 2), ('I2:5', 10, 5, 1), ('I2:6', 12, 6, 2)])
def test_group_sizes(label, order, nrefl, nclasses):
    group = get_group(label)
    assert group.order == order
    assert len(group.reflections) == nrefl
    assert len(group.reflection_classes) == nclasses
    assert len(group.param_names) == nclasses


def test_labels():
    assert get_group('I2(5)').name == get_group('I2:5').name == 'I2:5'
    assert get_group('s4').order == 24
    with pytest.raises(ValueError):
        get_group('E8')
    with pytest.raises(ValueError):
        get_group('I2:7')


@pytest.mark.parametrize('label', ['Z2', 'S3', 'B2', 'I2:3', 'I2:5'])
def test_reflections(label):
    group = get_group(label)
    assert reflection_identity_holds(group)
    assert group.laplacian_kills_discriminant()
    for s in group.reflections:
        assert group.det(s.element) == -1
        assert group.element_order(s.element) == 2
        assert group.pairing(s.root, s.coroot) == 2
    assert sum(group.class_sizes()) == group.order


def test_symmetric_group_action():
    group = get_group('S3')
    x = [group.coordinate(i) for i in range(3)]
    s12 = group.reflection(0, 1).element
    assert group.permutation(s12) == (1, 0, 2)
    assert group.act(s12, x[0] - x[2] * 2) == x[1] - x[2] * 2
    assert group.class_names[0] == 'e'
    assert sorted(len(c) for c in group.classes) == [1, 2, 3]


def test_hyperoctahedral_classes():
    group = get_group('B2')
    long_roots = [s for s in group.reflections if sum(1 for v in s.root if v) == 2]
    assert {s.class_id for s in long_roots} == {0}
    assert group.param_names == ['c1', 'c2']


def test_invariant_generators():
    group = get_group('S3')
    gens = group.invariant_generators('x')
    assert [g.degree() for g in gens] == [1, 2, 3]
    assert all(group.is_invariant(g) for g in gens)
    gens = get_group('B2').invariant_generators('p')
    assert [g.degree() for g in gens] == [2, 4]
    dihedral = get_group('I2:5')
    assert all(dihedral.is_invariant(g) for g in dihedral.invariant_generators('x'))


def test_class_params():
    group = get_group('B2')
    symbolic = ClassParams.symbolic(group)
    assert symbolic.variables() == ['c1', 'c2']
    numeric = ClassParams.numeric(group, Fraction(1, 2))
    assert numeric.is_numeric()
    assert numeric[1] == Fraction(1, 2)
    assert ClassParams(group, {'c1': '1/3', 'c2': 2}).as_dict() == {'c1': '1/3', 'c2': '2'}
    assert ClassParams.zero(group).scaled(5)[0].is_zero()


def test_laplace_det():
    assert laplace_det([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]) == -2
    t = ExactPoly.variable('t')
    det = laplace_det([[1 - t, t * 0], [t * 0, 1 + t]])
    assert det == 1 - t ** 2


def test_group_table_is_json():
    assert '"order": 6' in group_table(get_group('S3'))
