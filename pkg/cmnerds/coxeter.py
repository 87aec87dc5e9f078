"""
Finite real reflection groups realized by exact matrices.

Groups are generated from simple root vectors and a Gram matrix on h.  For a
reflection s with root vector v the covector root is alpha_s = (G v)^T and the
coroot is alpha_s^vee = 2 v / G(v, v), so that s = 1 - alpha_s^vee alpha_s and
(alpha_s, alpha_s^vee) = 2.

Polynomial action: (g.f)(u) = f(g^-1 u), i.e. g.x_j = sum_k (g^-1)_jk x_k on
coordinates of h and g.p_i = sum_k g_ki p_k on coordinates of h* (momenta).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
import json

from .exact_core import (ExactPoly, RationalFunction, QuadraticRational, quad, sign,
                         rational_str, CMError)


GROUP_FAMILIES = ['Z2', 'S', 'B', 'I2']
SUPPORTED_DIHEDRAL = [2, 3, 4, 5, 6]


@dataclass(frozen=True)
class Reflection:
    element: int
    root: tuple
    coroot: tuple
    class_id: int
    form: ExactPoly


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p))
                 for i in range(n))


def _identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def matrix_inverse(matrix):
    """Gauss-Jordan inverse over Q or Q(sqrt d)."""
    n = len(matrix)
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise ValueError("Singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv = Fraction(1) / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def _normalize_root(vec):
    """Sign-normalize so the first nonzero coordinate is positive."""
    for v in vec:
        if v:
            return tuple(vec) if sign(v) > 0 else tuple(-w for w in vec)
    raise ValueError("Zero root")


class ClassParams:
    """
    One parameter per conjugacy class of reflections.

    Parameters
    ----------
    group : ReflectionGroup
    values : dict
        class id -> ExactPoly, rational or str ('1/3'); missing classes get symbolic variables

    """
    def __init__(self, group, values=None):
        self.group = group
        self.values = {}
        values = values or {}
        for cid, name in enumerate(group.param_names):
            val = values.get(cid, values.get(name, None))
            if val is None:
                self.values[cid] = ExactPoly.variable(name)
            elif isinstance(val, ExactPoly):
                self.values[cid] = val
            else:
                self.values[cid] = ExactPoly.constant(Fraction(val) if isinstance(val, str) else val)

    @classmethod
    def symbolic(cls, group):
        return cls(group)

    @classmethod
    def numeric(cls, group, *values):
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = values[0]
        if len(values) == 1 and len(group.param_names) > 1:
            values = list(values) * len(group.param_names)
        return cls(group, {i: v for i, v in enumerate(values)})

    @classmethod
    def zero(cls, group):
        return cls.numeric(group, *[0] * len(group.param_names))

    def __getitem__(self, cid):
        return self.values[cid]

    def of(self, reflection):
        return self.values[reflection.class_id]

    def scaled(self, factor):
        return ClassParams(self.group, {cid: v * factor for cid, v in self.values.items()})

    def is_numeric(self):
        return all(v.is_constant() for v in self.values.values())

    def variables(self):
        return sorted({v for val in self.values.values() for v in val.used_variables()})

    def as_dict(self):
        return {self.group.param_names[cid]: str(v) for cid, v in self.values.items()}

    def __repr__(self):
        return f"ClassParams({self.as_dict()})"


class ReflectionGroup:
    """
    Finite real reflection group generated by simple reflections.

    Parameters
    ----------
    name : str
        label such as 'Z2', 'S3', 'B2', 'I2:5'
    gram : sequence of sequences
        symmetric W-invariant inner product on h
    simple : sequence of vectors
        simple root vectors in h

    """
    def __init__(self, name, gram, simple, param_names=None):
        self.name = name
        self.gram = tuple(tuple(v if isinstance(v, QuadraticRational) else Fraction(v) for v in row) for row in gram)
        self.dim = len(self.gram)
        self.gram_inv = matrix_inverse(self.gram)
        self.coords = tuple(f"x{i + 1}" for i in range(self.dim))
        self.momenta = tuple(f"p{i + 1}" for i in range(self.dim))
        self.simple = [tuple(Fraction(v) for v in s) for s in simple]
        self._generate()
        self._find_reflections()
        self._find_classes()
        if param_names is None:
            param_names = ['k'] if len(self.reflection_classes) == 1 else \
                [f"c{i + 1}" for i in range(len(self.reflection_classes))]
        self.param_names = list(param_names)
        self.variables = self.coords + self.momenta

    # Construction
    def _reflection_matrix(self, v):
        gv = [sum((self.gram[i][j] * v[j] for j in range(self.dim)), Fraction(0)) for i in range(self.dim)]
        norm = sum((v[i] * gv[i] for i in range(self.dim)), Fraction(0))
        coroot = [2 * vi / norm for vi in v]
        return tuple(tuple(Fraction(int(i == j)) - coroot[i] * gv[j] for j in range(self.dim))
                     for i in range(self.dim))

    def _generate(self):
        gens = [self._reflection_matrix(v) for v in self.simple]
        ident = _identity(self.dim)
        self.elements = [ident]
        self.index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = _matmul(s, g)
                    if h not in self.index:
                        self.index[h] = len(self.elements)
                        self.elements.append(h)
                        nxt.append(h)
            frontier = nxt
        self.order = len(self.elements)
        self.generators = [self.index[s] for s in gens]
        self.table = [[self.index[_matmul(a, b)] for b in self.elements] for a in self.elements]
        self.inverse = [row.index(0) for row in self.table]
        self._signed = [self._signed_permutation(g) for g in self.elements]
        self._inverse_matrices = [self.elements[self.inverse[i]] for i in range(self.order)]

    def _signed_permutation(self, g):
        """(pos, sgn) with g e_i = sgn[i] e_pos[i], or None."""
        pos, sgn = [], []
        for i in range(self.dim):
            col = [(r, g[r][i]) for r in range(self.dim) if g[r][i]]
            if len(col) != 1 or col[0][1] not in (1, -1):
                return None
            pos.append(col[0][0])
            sgn.append(int(col[0][1]))
        return tuple(pos), tuple(sgn)

    def covector_image(self, g, alpha):
        """g.alpha = alpha o g^-1 as a row vector."""
        ginv = self._inverse_matrices[g]
        return tuple(sum((alpha[j] * ginv[j][k] for j in range(self.dim)), Fraction(0)) for k in range(self.dim))

    def _find_reflections(self):
        simple_roots = []
        for v in self.simple:
            simple_roots.append(tuple(sum((self.gram[i][j] * v[j] for j in range(self.dim)), Fraction(0))
                                      for i in range(self.dim)))
        roots = []
        seen = set()
        for alpha in simple_roots:
            for g in range(self.order):
                r = _normalize_root(self.covector_image(g, alpha))
                if r not in seen:
                    seen.add(r)
                    roots.append(r)
        self.reflections = []
        for r in roots:
            ginv_r = [sum((self.gram_inv[i][j] * r[j] for j in range(self.dim)), Fraction(0)) for i in range(self.dim)]
            norm = sum((r[i] * ginv_r[i] for i in range(self.dim)), Fraction(0))
            coroot = tuple(2 * v / norm for v in ginv_r)
            mat = tuple(tuple(Fraction(int(i == j)) - coroot[i] * r[j] for j in range(self.dim))
                        for i in range(self.dim))
            if mat not in self.index:
                raise CMError(f"Reflection for root {r} not found in {self.name}")
            form = ExactPoly.linear_form(r, self.coords)
            self.reflections.append(Reflection(self.index[mat], r, coroot, -1, form))
        self.root_forms = tuple(s.form for s in self.reflections)
        self._root_lookup = {s.root: i for i, s in enumerate(self.reflections)}
        self.root_perm = []
        for g in range(self.order):
            images = []
            for s in self.reflections:
                img = self.covector_image(g, s.root)
                norm = _normalize_root(img)
                images.append((self._root_lookup[norm], 1 if norm == img else -1))
            self.root_perm.append(tuple(images))

    def _find_classes(self):
        self.element_class = [-1] * self.order
        self.classes = []
        for g in range(self.order):
            if self.element_class[g] >= 0:
                continue
            cls = sorted({self.table[self.table[h][g]][self.inverse[h]] for h in range(self.order)})
            for e in cls:
                self.element_class[e] = len(self.classes)
            self.classes.append(cls)
        reflection_elements = {s.element: i for i, s in enumerate(self.reflections)}
        self.reflection_classes = []
        class_of_conj = {}
        for i, s in enumerate(self.reflections):
            conj = self.element_class[s.element]
            if conj not in class_of_conj:
                class_of_conj[conj] = len(self.reflection_classes)
                self.reflection_classes.append([])
            self.reflection_classes[class_of_conj[conj]].append(i)
        self.reflections = [Reflection(s.element, s.root, s.coroot, class_of_conj[self.element_class[s.element]], s.form)
                            for s in self.reflections]
        self.reflection_of_element = reflection_elements
        self.class_names = [self._class_name(c) for c in self.classes]

    def _class_name(self, cls):
        g = cls[0]
        if g == 0:
            return 'e'
        if self.name.startswith('S'):
            perm = self.permutation(g)
            cycles = _cycles(perm)
            return ''.join('(' + ''.join(str(i + 1) for i in c) + ')' for c in cycles if len(c) > 1)
        order = self.element_order(g)
        if g in getattr(self, 'reflection_of_element', {}):
            return f"s{self.reflections[self.reflection_of_element[g]].class_id + 1}" \
                if len(self.reflection_classes) > 1 else 's'
        return f"g{order}_{self.classes.index(cls)}"

    # Basic queries
    @property
    def identity(self):
        return 0

    def multiply(self, a, b):
        return self.table[a][b]

    def matrix(self, g):
        return self.elements[g]

    def element_order(self, g):
        k, h = 1, g
        while h != 0:
            h = self.table[h][g]
            k += 1
        return k

    def det(self, g):
        """Sign character; +1 or -1."""
        signed = self._signed[g]
        if signed is not None:
            return _permutation_sign(signed[0]) * _prod(signed[1])
        return sign(laplace_det(self.elements[g]))

    def permutation(self, g):
        """For S_n: sigma with g e_i = e_sigma(i)."""
        signed = self._signed[g]
        if signed is None or any(s < 0 for s in signed[1]):
            raise ValueError(f"Element {g} is not a permutation")
        return signed[0]

    def element_from_permutation(self, sigma):
        n = self.dim
        mat = [[Fraction(0)] * n for _ in range(n)]
        for i, j in enumerate(sigma):
            mat[j][i] = Fraction(1)
        return self.index[tuple(tuple(r) for r in mat)]

    def class_of(self, g):
        return self.element_class[g]

    def class_sizes(self):
        return [len(c) for c in self.classes]

    def reflection(self, i, j):
        """Transposition s_ij for S_n (0-based i != j)."""
        root = [Fraction(0)] * self.dim
        root[min(i, j)] = Fraction(1)
        root[max(i, j)] = Fraction(-1)
        return self.reflections[self._root_lookup[tuple(root)]]

    def pairing(self, covector, vector):
        return sum((a * b for a, b in zip(covector, vector)), Fraction(0))

    def inner_covectors(self, a, b):
        """(a, b) on h* via G^-1."""
        return sum((a[i] * self.gram_inv[i][j] * b[j] for i in range(self.dim) for j in range(self.dim)
                    if a[i] and b[j]), Fraction(0))

    def act_vector(self, g, v):
        m = self.elements[g]
        return tuple(sum((m[i][j] * v[j] for j in range(self.dim)), Fraction(0)) for i in range(self.dim))

    def basis_vector(self, i):
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def coordinate(self, i):
        return ExactPoly.variable(self.coords[i], self.coords)

    # Actions on polynomials and rational functions
    def act(self, g, f, momenta=None):
        """g.f on polynomials in coordinates (and momenta, named `momenta` if given)."""
        if g == 0:
            return f
        if not isinstance(f, ExactPoly):
            return f
        momenta = self.momenta if momenta is None else tuple(momenta)
        used_x = any(v in f.vars for v in self.coords)
        used_p = any(v in f.vars for v in momenta)
        if not used_x and not used_p:
            return f
        needed = []
        if used_x:
            needed += [v for v in self.coords if v not in f.vars]
        if used_p:
            needed += [v for v in momenta if v not in f.vars]
        f = f.extend(f.vars + tuple(needed)) if needed else f
        signed = self._signed[g]
        if signed is not None:
            pos, sgn = signed
            where = {v: i for i, v in enumerate(f.vars)}
            positions, signs = {}, {}
            for names, active in ((self.coords, used_x), (momenta, used_p)):
                if not active:
                    continue
                for i in range(self.dim):
                    positions[where[names[i]]] = where[names[pos[i]]]
                    signs[where[names[i]]] = sgn[i]
            return f.permute_signed(positions, signs)
        mapping = {}
        if used_x:
            ginv = self._inverse_matrices[g]
            for j in range(self.dim):
                mapping[self.coords[j]] = ExactPoly.linear_form(ginv[j], self.coords)
        if used_p:
            m = self.elements[g]
            for i in range(self.dim):
                mapping[momenta[i]] = ExactPoly.linear_form([m[k][i] for k in range(self.dim)], momenta)
        return f.substitute(mapping)

    def act_rf(self, g, rf):
        """g acting on a RationalFunction whose denominators are positive roots."""
        if g == 0:
            return rf
        num = self.act(g, rf.num)
        exps = [0] * len(self.reflections)
        flip = 1
        for i, e in enumerate(rf.exps):
            if e:
                j, sgn = self.root_perm[g][i]
                exps[j] = e
                if sgn < 0 and e % 2:
                    flip = -flip
        if flip < 0:
            num = -num
        return RationalFunction(num, exps, self.root_forms, normalize=False)

    def rf(self, value):
        """Lift a polynomial or scalar to a RationalFunction over this group's roots."""
        if isinstance(value, RationalFunction):
            return value if value.roots is self.root_forms else \
                RationalFunction(value.num, value.exps, self.root_forms, normalize=False)
        return RationalFunction(value, None, self.root_forms, normalize=False)

    def inverse_root(self, i, power=1):
        return RationalFunction.root_power(self.root_forms, i, -power)

    def discriminant(self):
        """prod of positive root forms."""
        out = ExactPoly.constant(1, self.coords)
        for form in self.root_forms:
            out = out * form
        return out

    def laplacian(self, f, variables=None):
        variables = self.coords if variables is None else variables
        out = ExactPoly.zero(f.vars)
        for i in range(self.dim):
            di = f.diff(variables[i])
            if not di:
                continue
            for j in range(self.dim):
                g = self.gram_inv[i][j]
                if g:
                    out = out + di.diff(variables[j]) * g
        return out

    def laplacian_kills_discriminant(self):
        return self.laplacian(self.discriminant()).is_zero()

    def symmetrize(self, f, momenta=None):
        total = ExactPoly.zero(f.vars)
        for g in range(self.order):
            total = total + self.act(g, f, momenta=momenta)
        return total * Fraction(1, self.order)

    def is_invariant(self, f, momenta=None):
        return all((self.act(g, f, momenta=momenta) - f).is_zero() for g in self.generators)

    def invariant_generators(self, side='x'):
        """
        Fixed homogeneous generators of the invariants.

        side 'x' gives polynomials in coordinates of h, side 'p' polynomials in
        momenta (coordinates of h*), which is where Dunkl operators are substituted.
        """
        names = self.coords if side == 'x' else self.momenta
        gram = self.gram if side == 'x' else self.gram_inv
        var = [ExactPoly.variable(v, names) for v in names]
        if self.name == 'Z2':
            return [var[0] ** 2]
        if self.name.startswith('S'):
            return [sum((v ** m for v in var), ExactPoly.zero(names)) for m in range(1, self.dim + 1)]
        if self.name.startswith('B'):
            return [sum((v ** (2 * m) for v in var), ExactPoly.zero(names)) for m in range(1, self.dim + 1)]
        quadratic = ExactPoly.zero(names)
        for i in range(self.dim):
            for j in range(self.dim):
                if gram[i][j]:
                    quadratic = quadratic + var[i] * var[j] * gram[i][j]
        m = int(self.name.split(':')[1])
        if side == 'x':
            # x2 is fixed by the first simple reflection
            seed = var[1]
        else:
            g11, g12 = self.gram[0][0], self.gram[0][1]
            seed = var[0] * (-g12) + var[1] * g11
        return [quadratic, self.symmetrize(seed ** m, momenta=None if side == 'x' else self.momenta)]

    # Export
    def to_json(self):
        return {
            'name': self.name,
            'dimension': self.dim,
            'order': self.order,
            'gram': [[rational_str(v) for v in row] for row in self.gram],
            'parameters': self.param_names,
            'classes': [{'name': n, 'size': len(c)} for n, c in zip(self.class_names, self.classes)],
            'reflections': [{'element': s.element,
                             'root': [rational_str(v) for v in s.root],
                             'coroot': [rational_str(v) for v in s.coroot],
                             'class': self.param_names[s.class_id]} for s in self.reflections],
        }

    def __repr__(self):
        return f"ReflectionGroup({self.name}, |W|={self.order}, {len(self.reflections)} reflections)"


def group_table(group):
    return json.dumps(group.to_json(), indent=2, sort_keys=True)


def _cycles(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        out.append(cyc)
    return out


def _permutation_sign(perm):
    return _prod([(-1) ** (len(c) - 1) for c in _cycles(perm)])


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out


def laplace_det(m):
    if len(m) == 1:
        return m[0][0]
    total = Fraction(0)
    for j, v in enumerate(m[0]):
        if v:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total = total + (-1) ** j * v * laplace_det(minor)
    return total


def cyclic_group_z2():
    return ReflectionGroup('Z2', [[1]], [[1]])


def symmetric_group(n):
    if n < 2:
        raise ValueError("S_n needs n >= 2")
    simple = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simple.append(v)
    gram = [[int(i == j) for j in range(n)] for i in range(n)]
    return ReflectionGroup(f"S{n}", gram, simple)


def hyperoctahedral_group(n):
    if n < 2:
        raise ValueError("B_n needs n >= 2")
    simple = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simple.append(v)
    v = [0] * n
    v[-1] = 1
    simple.append(v)
    gram = [[int(i == j) for j in range(n)] for i in range(n)]
    return ReflectionGroup(f"B{n}", gram, simple)


def dihedral_group(m):
    """I2(m) with simple root vectors e1, e2 and Gram entries fixing the angle pi - pi/m."""
    if m not in SUPPORTED_DIHEDRAL:
        raise ValueError(f"I2({m}) not supported; choose from {SUPPORTED_DIHEDRAL}")
    grams = {
        2: [[1, 0], [0, 1]],
        3: [[1, Fraction(-1, 2)], [Fraction(-1, 2), 1]],
        4: [[1, -1], [-1, 2]],
        5: [[1, quad(Fraction(-1, 4), Fraction(-1, 4), 5)], [quad(Fraction(-1, 4), Fraction(-1, 4), 5), 1]],
        6: [[1, Fraction(-3, 2)], [Fraction(-3, 2), 3]],
    }
    return ReflectionGroup(f"I2:{m}", grams[m], [[1, 0], [0, 1]])


@lru_cache(maxsize=None)
def get_group(label):
    """
    Parse a CLI label: 'Z2', 'S4', 'B2', 'I2:5' (also 'I2(5)').
    """
    label = label.strip()
    if label.upper() == 'Z2':
        return cyclic_group_z2()
    if label.upper().startswith('I2'):
        rest = label[2:].strip(':()')
        return dihedral_group(int(rest))
    if label[0].upper() == 'S' and label[1:].isdigit():
        return symmetric_group(int(label[1:]))
    if label[0].upper() == 'B' and label[1:].isdigit():
        return hyperoctahedral_group(int(label[1:]))
    raise ValueError(f"Unknown group label {label}")


def reflection_identity_holds(group):
    """x - s(x) = (x, alpha_s^vee) alpha_s for every coordinate covector x and reflection s."""
    for s in group.reflections:
        for j in range(group.dim):
            x = group.coordinate(j)
            lhs = x - group.act(s.element, x)
            rhs = s.form * s.coroot[j]
            if not (lhs - rhs).is_zero():
                return False
    return True
