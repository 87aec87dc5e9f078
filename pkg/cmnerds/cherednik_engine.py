"""
Rational Cherednik algebra H_{t,c} in PBW normal form, its SL2 symmetry, the
grading element and graded slices of standard (Verma) modules M_c(tau).

PBW basis elements are g * y^m * x^n, stored as (g, m, n) -> coefficient in
Q[t, c].  y_i is the basis vector e_i of h, x_k the coordinate covector on h,
and the defining bracket is

    [y_i, x_k] = t delta_ik - sum_s c_s alpha_s(e_i) alpha_s^vee[k] s.

"""
from fractions import Fraction

from .exact_core import (ExactPoly, NotUnimodular, NonOrthonormal, DegreeCapExceeded, InvalidParameters,
                         monomial_exponents, exact_det, exact_rank, rational_str, poly_divide_exact, to_rational)
from .coxeter import ClassParams, laplace_det
from .metadata import CheckReport


def _accumulate(out, key, value):
    if key in out:
        total = out[key] + value
        if total:
            out[key] = total
        else:
            del out[key]
    elif value:
        out[key] = value


def _as_poly(value):
    return value if isinstance(value, ExactPoly) else ExactPoly.constant(value)


def _add(a, b):
    return tuple(u + v for u, v in zip(a, b))


def _unit(dim, i):
    return tuple(int(j == i) for j in range(dim))


class PBWElement:
    """
    Element of H_{t,c} in normal form sum coeff * g y^m x^n.

    Parameters
    ----------
    algebra : CherednikAlgebra
    terms : dict
        (g, m, n) -> ExactPoly (or rational) coefficient in t and the class parameters

    """
    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        self.terms = {}
        for key, coeff in (terms or {}).items():
            coeff = _as_poly(coeff)
            if coeff:
                self.terms[key] = coeff

    def _coerce(self, other):
        if isinstance(other, PBWElement):
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c)
        return PBWElement(self.algebra, out)
    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, value):
        value = _as_poly(value)
        return PBWElement(self.algebra, {k: c * value for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other):
        return self * other - other * self

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            other = self.algebra.scalar(other)
        return (self - other).is_zero()

    __hash__ = None

    def degree(self):
        """Filtration degree |m| + |n| (-1 for zero)."""
        return max((sum(m) + sum(n) for _, m, n in self.terms), default=-1)

    def top_component(self):
        d = self.degree()
        return PBWElement(self.algebra, {k: c for k, c in self.terms.items() if sum(k[1]) + sum(k[2]) == d})

    def substitute(self, mapping):
        return PBWElement(self.algebra, {k: c.substitute(mapping) for k, c in self.terms.items()})

    def coefficient(self, g, m, n):
        return self.terms.get((g, tuple(m), tuple(n)), ExactPoly.zero())

    def to_json(self):
        return [{'g': g, 'y': list(m), 'x': list(n), 'coeff': str(c)}
                for (g, m, n), c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return '0'
        parts = []
        for (g, m, n), c in sorted(self.terms.items()):
            word = [f"g{g}"] if g else []
            word += [f"y{i + 1}^{e}" if e > 1 else f"y{i + 1}" for i, e in enumerate(m) if e]
            word += [f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}" for i, e in enumerate(n) if e]
            parts.append(f"({c})*{'*'.join(word)}" if word else f"({c})")
        return ' + '.join(parts)


class CherednikAlgebra:
    """
    H_{t,c}(W, h) with normal-form multiplication.

    Parameters
    ----------
    group : ReflectionGroup
    params : ClassParams or None
        symbolic class parameters if None
    t : rational, ExactPoly or None
        symbolic 't' if None

    """
    def __init__(self, group, params=None, t=None):
        self.group = group
        self.params = params if params is not None else ClassParams.symbolic(group)
        self.t = ExactPoly.variable('t') if t is None else _as_poly(t)
        self.dim = group.dim
        self.ys = tuple(f"y{i + 1}" for i in range(self.dim))
        self.xs = group.coords
        self._zero = (0,) * self.dim
        self._xy_cache = {}
        self._act_cache = {}
        self._bracket = {}
        for i in range(self.dim):
            for k in range(self.dim):
                terms = {}
                if i == k:
                    terms[0] = self.t
                for s in group.reflections:
                    v = s.root[i] * s.coroot[k]
                    if v:
                        _accumulate(terms, s.element, -(self.params.of(s) * v))
                self._bracket[(i, k)] = terms

    # Generators
    def one(self):
        return self.scalar(1)

    def scalar(self, value):
        return PBWElement(self, {(0, self._zero, self._zero): value})

    def x(self, k):
        return PBWElement(self, {(0, self._zero, _unit(self.dim, k)): 1})

    def y(self, i):
        return PBWElement(self, {(0, _unit(self.dim, i), self._zero): 1})

    def element(self, g):
        return PBWElement(self, {(g, self._zero, self._zero): 1})

    def x_covector(self, coeffs):
        out = PBWElement(self)
        for k, v in enumerate(coeffs):
            if v:
                out = out + self.x(k).scale(v)
        return out

    def y_vector(self, coeffs):
        out = PBWElement(self)
        for i, v in enumerate(coeffs):
            if v:
                out = out + self.y(i).scale(v)
        return out

    def bracket(self, i, k):
        """[y_i, x_k] as an element."""
        return PBWElement(self, {(g, self._zero, self._zero): c for g, c in self._bracket[(i, k)].items()})

    # Rewriting
    def _act_monomial(self, g, m, n):
        """g.(y^m x^n) as {(m', n'): coeff}."""
        key = (g, m, n)
        if key not in self._act_cache:
            names = self.ys + self.xs
            poly = ExactPoly.monomial(m + n, 1, names)
            image = self.group.act(g, poly, momenta=self.ys).extend(names)
            self._act_cache[key] = {(e[:self.dim], e[self.dim:]): c for e, c in image.terms.items()}
        return self._act_cache[key]

    def _left_g(self, g, terms):
        return {(self.group.multiply(g, h), m, n): c for (h, m, n), c in terms.items()}

    def _left_y(self, i, terms):
        out = {}
        unit = _unit(self.dim, i)
        for (h, m, n), c in terms.items():
            for (mm, _), a in self._act_monomial(self.group.inverse[h], unit, self._zero).items():
                _accumulate(out, (h, _add(m, mm), n), c * a)
        return out

    def _xy(self, k, m):
        """Normal form of x_k y^m."""
        key = (k, m)
        if key in self._xy_cache:
            return self._xy_cache[key]
        if not any(m):
            out = {(0, self._zero, _unit(self.dim, k)): ExactPoly.constant(1)}
        else:
            i = next(j for j, e in enumerate(m) if e)
            m1 = tuple(e - int(j == i) for j, e in enumerate(m))
            # x_k y_i = y_i x_k - [y_i, x_k]
            out = self._left_y(i, self._xy(k, m1))
            for g, coeff in self._bracket[(i, k)].items():
                _accumulate(out, (g, m1, self._zero), -coeff)
        self._xy_cache[key] = out
        return out

    def _left_x(self, k, terms):
        out = {}
        unit = _unit(self.dim, k)
        for (h, m, n), c in terms.items():
            for (_, nn), a in self._act_monomial(self.group.inverse[h], self._zero, unit).items():
                l = nn.index(1)
                for (g2, m2, n2), b in self._xy(l, m).items():
                    _accumulate(out, (self.group.multiply(h, g2), m2, _add(n2, n)), c * a * b)
        return out

    def multiply(self, u, v):
        out = {}
        for (g, m, n), c in u.terms.items():
            work = v.terms
            for k in reversed(range(self.dim)):
                for _ in range(n[k]):
                    work = self._left_x(k, work)
            for i in reversed(range(self.dim)):
                for _ in range(m[i]):
                    work = self._left_y(i, work)
            for key, val in self._left_g(g, work).items():
                _accumulate(out, key, val * c)
        return PBWElement(self, out)

    def word(self, letters):
        """Product of generator tokens ('x', k), ('y', i), ('g', element)."""
        out = self.one()
        for kind, idx in letters:
            out = out * {'x': self.x, 'y': self.y, 'g': self.element}[kind](idx)
        return out

    def random_word(self, rng, max_length):
        tokens = [('x', k) for k in range(self.dim)] + [('y', i) for i in range(self.dim)] + \
            [('g', g) for g in self.group.generators]
        length = int(rng.integers(1, max_length + 1))
        return [tokens[int(j)] for j in rng.integers(0, len(tokens), length)]

    # Distinguished elements
    def grading_element(self):
        """h = sum x_i y_i + t l/2 - sum_s c_s s"""
        out = self.scalar(self.t * Fraction(self.dim, 2))
        for k in range(self.dim):
            out = out + self.x(k) * self.y(k)
        for s in self.group.reflections:
            out = out - self.element(s.element).scale(self.params.of(s))
        return out

    def _require_orthonormal(self):
        gram = self.group.gram
        if any(gram[i][j] != int(i == j) for i in range(self.dim) for j in range(self.dim)):
            raise NonOrthonormal(f"{self.group.name} is not realized with an orthonormal basis")

    def sl2_triple(self):
        """(E, h, F) with E = 1/2 sum x_i^2, F = -1/2 sum y_i^2."""
        self._require_orthonormal()
        E = PBWElement(self)
        F = PBWElement(self)
        for i in range(self.dim):
            E = E + self.x(i) * self.x(i) * Fraction(1, 2)
            F = F - self.y(i) * self.y(i) * Fraction(1, 2)
        return E, self.grading_element(), F

    def sl2_automorphism(self, matrix, u):
        """
        x_i -> a x_i + b y_i, y_i -> c x_i + d y_i for matrix ((a, b), (c, d)) of determinant 1.

        Composition follows phi_A(phi_B(u)) = phi_{BA}(u).
        """
        (a, b), (c, d) = [[Fraction(v) for v in row] for row in matrix]
        if a * d - b * c != 1:
            raise NotUnimodular(f"det {matrix} = {a * d - b * c}")
        self._require_orthonormal()
        images_x = [self.x(k) * a + self.y(k) * b for k in range(self.dim)]
        images_y = [self.x(i) * c + self.y(i) * d for i in range(self.dim)]
        powers = {}

        def power(kind, i, e):
            if (kind, i, e) not in powers:
                base = images_x[i] if kind == 'x' else images_y[i]
                powers[(kind, i, e)] = base ** e
            return powers[(kind, i, e)]

        out = PBWElement(self)
        for (g, m, n), coeff in u.terms.items():
            term = self.element(g)
            for i, e in enumerate(m):
                if e:
                    term = term * power('y', i, e)
            for k, e in enumerate(n):
                if e:
                    term = term * power('x', k, e)
            out = out + term.scale(coeff)
        return out

    def fourier_transform(self, u):
        return self.sl2_automorphism(((0, 1), (-1, 0)), u)

    def __repr__(self):
        return f"CherednikAlgebra({self.group.name}, t={self.t}, c={self.params.as_dict()})"


# Checks on the algebra
def relations_check(algebra):
    """Defining relations from the rewriting engine."""
    report = CheckReport(f"pbw-relations {algebra.group.name}")
    dim = algebra.dim
    for i in range(dim):
        for k in range(dim):
            report.record(algebra.y(i).commutator(algebra.x(k)) == algebra.bracket(i, k), f"[y{i + 1}, x{k + 1}]")
            report.record(algebra.x(i).commutator(algebra.x(k)).is_zero(), f"[x{i + 1}, x{k + 1}]")
            report.record(algebra.y(i).commutator(algebra.y(k)).is_zero(), f"[y{i + 1}, y{k + 1}]")
    group = algebra.group
    for g in group.generators:
        ginv = algebra.element(group.inverse[g])
        for k in range(dim):
            lhs = algebra.element(g) * algebra.x(k) * ginv
            rhs = algebra.x_covector(_linear_coeffs(group.act(g, group.coordinate(k)), group.coords))
            report.record(lhs == rhs, f"g{g} x{k + 1} g^-1")
            lhs = algebra.element(g) * algebra.y(k) * ginv
            report.record(lhs == algebra.y_vector(group.act_vector(g, group.basis_vector(k))), f"g{g} y{k + 1} g^-1")
    return report


def _linear_coeffs(poly, names):
    poly = poly.extend(names)
    out = [Fraction(0)] * len(names)
    for exp, c in poly.terms.items():
        out[exp.index(1)] = c
    return out


def associativity_check(algebra, rng, samples, max_length=6):
    """(uv)w = u(vw) on random words."""
    report = CheckReport(f"pbw-assoc {algebra.group.name}")
    for _ in range(samples):
        u, v, w = (algebra.word(algebra.random_word(rng, max_length)) for _ in range(3))
        report.record((u * v) * w == u * (v * w), f"u={u} v={v} w={w}")
    return report


def _binomial_int(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def flatness_check(algebra, max_degree):
    """
    Every ordered word x^n y^m has normal form y^m x^n plus lower filtration terms,
    so the basis elements of degree <= N number |W| * C(2l + N, 2l).
    """
    report = CheckReport(f"pbw-flatness {algebra.group.name}")
    dim = algebra.dim
    count = 0
    for d in range(max_degree + 1):
        for total in monomial_exponents(2 * dim, d):
            m, n = total[:dim], total[dim:]
            letters = [('x', k) for k in range(dim) for _ in range(n[k])] + \
                [('y', i) for i in range(dim) for _ in range(m[i])]
            nf = algebra.word(letters)
            top = nf.top_component()
            ok = nf.degree() == d and set(top.terms) == {(0, m, n)} and top.terms[(0, m, n)] == 1
            report.record(ok, f"x^{n} y^{m}")
            count += 1
    count *= algebra.group.order
    expected = algebra.group.order * _binomial_int(2 * dim + max_degree, 2 * dim)
    report.details.update({'basis_count': count, 'expected': expected})
    report.record(count == expected, f"{count} basis elements, expected {expected}")
    return report


def grading_check(algebra):
    """[h, x] = t x, [h, y] = -t y, W-invariance and (for orthonormal realizations) the sl2 triple."""
    report = CheckReport(f"grading-element {algebra.group.name}")
    h = algebra.grading_element()
    t = algebra.t
    for k in range(algebra.dim):
        report.record(h.commutator(algebra.x(k)) == algebra.x(k).scale(t), f"[h, x{k + 1}]")
        report.record(h.commutator(algebra.y(k)) == -algebra.y(k).scale(t), f"[h, y{k + 1}]")
    group = algebra.group
    for g in group.generators:
        conj = algebra.element(g) * h * algebra.element(group.inverse[g])
        report.record(conj == h, f"g{g} h g^-1 != h")
    try:
        E, h, F = algebra.sl2_triple()
    except NonOrthonormal:
        report.details['sl2'] = 'skipped (non-orthonormal realization)'
        return report
    report.record(h.commutator(E) == E.scale(t * 2), "[h, E] != 2tE")
    report.record(h.commutator(F) == -F.scale(t * 2), "[h, F] != -2tF")
    report.record(E.commutator(F) == h.scale(t), "[E, F] != t h")
    return report


def sl2_check(algebra, rng, samples, max_length=4):
    """phi is multiplicative, phi_I = id, F^2 = (-1)^degree and phi_A o phi_B = phi_{BA}."""
    report = CheckReport(f"sl2 {algebra.group.name}")
    A = ((1, 1), (0, 1))
    B = ((1, 0), (-2, 1))
    BA = tuple(tuple(sum(B[i][k] * A[k][j] for k in range(2)) for j in range(2)) for i in range(2))
    for _ in range(samples):
        u = algebra.word(algebra.random_word(rng, max_length))
        v = algebra.word(algebra.random_word(rng, max_length))
        phi = algebra.sl2_automorphism
        report.record(phi(A, u * v) == phi(A, u) * phi(A, v), f"phi(uv) != phi(u)phi(v) for u={u}")
        report.record(phi(((1, 0), (0, 1)), u) == u, f"identity moves {u}")
        report.record(phi(A, phi(B, u)) == phi(BA, u), f"composition fails on {u}")
        twice = algebra.fourier_transform(algebra.fourier_transform(u))
        signed = PBWElement(algebra, {(g, m, n): c * (-1) ** (sum(m) + sum(n)) for (g, m, n), c in u.terms.items()})
        report.record(twice == signed, f"F^2 != (-1)^deg on {u}")
    return report


def rescaling_check(algebra, rng, samples, max_length=5):
    """
    Relations are homogeneous for deg y = deg t = deg c = 1, so substituting
    (t, c) -> (lam t, lam c) multiplies the (g, m, n) coefficient of a word with
    a letters y by lam^(a - |m|).
    """
    report = CheckReport(f"rescaling {algebra.group.name}")
    lam = ExactPoly.variable('lam')
    names = ['t'] + algebra.params.variables()
    mapping = {v: ExactPoly.variable(v) * lam for v in names}
    for _ in range(samples):
        letters = algebra.random_word(rng, max_length)
        a = sum(1 for kind, _ in letters if kind == 'y')
        nf = algebra.word(letters)
        ok = all(c.substitute(mapping) == c * lam ** (a - sum(m)) for (g, m, n), c in nf.terms.items())
        report.record(ok, f"word {letters}")
    for i in range(algebra.dim):
        for k in range(algebra.dim):
            b = algebra.bracket(i, k)
            report.record(b.substitute(mapping) == b.scale(lam), f"[y{i + 1}, x{k + 1}] not homogeneous")
    return report


# Lowest weights
class LowestWeight:
    """
    Representation tau of W given by exact matrices for every element.

    Parameters
    ----------
    group : ReflectionGroup
    name : str
    matrices : list
        matrices[g] is a square list of lists

    """
    def __init__(self, group, name, matrices):
        self.group = group
        self.name = name
        self.matrices = [[[to_rational(v) for v in row] for row in mat] for mat in matrices]
        self.dim = len(self.matrices[0])

    @classmethod
    def trivial(cls, group):
        return cls(group, 'triv', [[[1]] for _ in range(group.order)])

    @classmethod
    def sign(cls, group):
        return cls(group, 'sign', [[[group.det(g)]] for g in range(group.order)])

    @classmethod
    def reflection(cls, group):
        """h itself, or for S_n the (n-1)-dimensional irreducible part spanned by e_i - e_n."""
        if not group.name.startswith('S'):
            return cls(group, 'refl', [[list(row) for row in group.matrix(g)] for g in range(group.order)])
        n = group.dim
        mats = []
        for g in range(group.order):
            sigma = group.permutation(g)
            mat = [[0] * (n - 1) for _ in range(n - 1)]
            for i in range(n - 1):
                if sigma[i] != n - 1:
                    mat[sigma[i]][i] += 1
                if sigma[n - 1] != n - 1:
                    mat[sigma[n - 1]][i] -= 1
            mats.append(mat)
        return cls(group, 'refl', mats)

    @classmethod
    def from_generators(cls, group, generator_matrices, name='custom'):
        """Extend matrices of the simple reflections to all of W, checking the homomorphism property."""
        if len(generator_matrices) != len(group.generators):
            raise ValueError(f"Need {len(group.generators)} generator matrices")
        size = len(generator_matrices[0])
        mats = {0: [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]}
        frontier = [0]
        while frontier:
            nxt = []
            for g in frontier:
                for s, ms in zip(group.generators, generator_matrices):
                    h = group.multiply(s, g)
                    if h not in mats:
                        mats[h] = _mat_mul(ms, mats[g])
                        nxt.append(h)
            frontier = nxt
        rep = cls(group, name, [mats[g] for g in range(group.order)])
        for a in range(group.order):
            for b in group.generators:
                if _mat_mul(rep.matrices[a], rep.matrices[b]) != rep.matrices[group.multiply(a, b)]:
                    raise ValueError("Matrices do not define a representation of W")
        return rep

    @classmethod
    def by_name(cls, group, name):
        builders = {'triv': cls.trivial, 'sign': cls.sign, 'refl': cls.reflection}
        if name not in builders:
            raise ValueError(f"Unknown lowest weight {name}; use one of {list(builders)}")
        return builders[name](group)

    def character(self, g):
        return sum((self.matrices[g][i][i] for i in range(self.dim)), Fraction(0))

    def class_scalar(self, reflection):
        """Scalar by which the class sum of `reflection` acts (|class| chi(s) / dim)."""
        size = len(self.group.classes[self.group.class_of(reflection.element)])
        return self.character(reflection.element) * size / self.dim


def _mat_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def lowest_h(group, params, tau):
    """h(tau) = l/2 - sum over reflection classes of c * (class-sum scalar on tau)."""
    out = ExactPoly.constant(Fraction(group.dim, 2))
    for members in group.reflection_classes:
        s = group.reflections[members[0]]
        out = out - params.of(s) * tau.class_scalar(s)
    return out


# Standard modules
class GradedModuleSlice:
    """
    Degree slices of M_c(tau) = C[h] (x) tau at t = 1, up to a degree cap.

    Vectors are tuples of ExactPoly (one component per basis vector of tau);
    y acts by Dunkl operators twisted by tau.
    """
    def __init__(self, group, params, tau, cap):
        self.group = group
        self.params = params
        self.tau = tau
        self.cap = cap
        self.coords = group.coords

    def _check_degree(self, d):
        if d > self.cap:
            raise DegreeCapExceeded(f"Degree {d} above cap {self.cap}")

    def basis(self, d):
        self._check_degree(d)
        out = []
        for exp in monomial_exponents(self.group.dim, d):
            for j in range(self.tau.dim):
                vec = [ExactPoly.zero(self.coords)] * self.tau.dim
                vec[j] = ExactPoly.monomial(exp, 1, self.coords)
                out.append(((exp, j), tuple(vec)))
        return out

    def act_x(self, k, vec):
        xk = self.group.coordinate(k)
        return tuple(F * xk for F in vec)

    def act_g(self, g, vec):
        mat = self.tau.matrices[g]
        moved = [self.group.act(g, F) for F in vec]
        return tuple(sum((moved[k] * mat[i][k] for k in range(self.tau.dim) if mat[i][k]), ExactPoly.zero(self.coords))
                     for i in range(self.tau.dim))

    def act_y(self, a, vec):
        out = [F.directional(a, self.coords) for F in vec]
        for s in self.group.reflections:
            alpha_a = self.group.pairing(s.root, a)
            if not alpha_a:
                continue
            quotients = [poly_divide_exact(F - self.group.act(s.element, F), s.form) for F in vec]
            mat = self.tau.matrices[s.element]
            weight = self.params.of(s) * alpha_a
            for j in range(self.tau.dim):
                for i in range(self.tau.dim):
                    if mat[j][i]:
                        out[j] = out[j] - quotients[i] * weight * mat[j][i]
        return tuple(out)

    def act_h(self, vec):
        """sum x_i y_i + l/2 - sum_s c_s s"""
        out = [F * Fraction(self.group.dim, 2) for F in vec]
        for i in range(self.group.dim):
            yi = self.act_x(i, self.act_y(self.group.basis_vector(i), vec))
            out = [u + v for u, v in zip(out, yi)]
        for s in self.group.reflections:
            moved = self.act_g(s.element, vec)
            out = [u - v * self.params.of(s) for u, v in zip(out, moved)]
        return tuple(out)

    def act_element(self, u, vec):
        """Action of a PBW element g y^m x^n at t = 1; u must use this slice's parameters."""
        out = tuple(ExactPoly.zero(self.coords) for _ in vec)
        for (g, m, n), coeff in u.terms.items():
            w = vec
            for k, e in enumerate(n):
                for _ in range(e):
                    w = self.act_x(k, w)
            for a, e in enumerate(m):
                for _ in range(e):
                    w = self.act_y(self.group.basis_vector(a), w)
            w = self.act_g(g, w)
            coeff = coeff.substitute({'t': 1})
            out = tuple(o + F * coeff for o, F in zip(out, w))
        return out

    def h_tau(self):
        return lowest_h(self.group, self.params, self.tau)

    def coordinates(self, vec, d):
        """Coefficients of vec in the degree-d basis."""
        out = []
        for (exp, j), _ in self.basis(d):
            out.append(_coefficient_of(vec[j], exp, self.coords))
        return out

    def operator_matrix(self, action, d_in, d_out):
        """Matrix of a linear action from slice d_in to slice d_out (columns = input basis)."""
        cols = [self.coordinates(action(vec), d_out) for _, vec in self.basis(d_in)]
        return [[cols[c][r] for c in range(len(cols))] for r in range(len(cols[0]) if cols else 0)]

    def trace(self, g, d):
        total = ExactPoly.zero()
        for (exp, j), vec in self.basis(d):
            total = total + _coefficient_of(self.act_g(g, vec)[j], exp, self.coords)
        return total

    def graded_character(self, max_degree=None):
        """{class name: [Tr(g | slice d) for d = 0..max_degree]} with the exponent offset h(tau)."""
        max_degree = self.cap if max_degree is None else max_degree
        classes = {}
        for name, members in zip(self.group.class_names, self.group.classes):
            classes[name] = [self.trace(members[0], d) for d in range(max_degree + 1)]
        return {'offset': self.h_tau(), 'classes': classes}


def _coefficient_of(poly, exp, coords):
    """Coefficient of the coordinate monomial x^exp (a polynomial in any remaining variables)."""
    parts = poly.coefficients_in(coords)
    return parts.get(tuple(exp), ExactPoly.zero())


def det_one_minus(group, g, var='t'):
    """det(1 - g t) for the action of g on the coordinates of h, as an ExactPoly in `var`."""
    t = ExactPoly.variable(var)
    ginv = group.matrix(group.inverse[g])
    rows = [[ExactPoly.constant(int(i == j), (var,)) - t * ginv[i][j] for j in range(group.dim)]
            for i in range(group.dim)]
    return _as_poly(laplace_det(rows)).extend((var,))


def inverse_series(poly, order, var='t'):
    """Power-series coefficients of 1/poly(t) through t^order (poly(0) must be 1)."""
    coeffs = [poly.coefficients_in([var]).get((j,), ExactPoly.zero()) for j in range(poly.degree(var) + 1)]
    coeffs = [c.constant_value() if isinstance(c, ExactPoly) else c for c in coeffs]
    if coeffs[0] != 1:
        raise ValueError("Series inversion needs constant term 1")
    inv = [Fraction(1)]
    for j in range(1, order + 1):
        acc = 0
        for i in range(1, min(j, len(coeffs) - 1) + 1):
            acc = acc + coeffs[i] * inv[j - i]
        inv.append(-acc)
    return inv


def expected_character(group, tau, max_degree):
    """chi_tau(g) / det(1 - g t) coefficients per class (the offset t^h(tau) is carried separately)."""
    out = {}
    for name, members in zip(group.class_names, group.classes):
        g = members[0]
        series = inverse_series(det_one_minus(group, g), max_degree)
        out[name] = [tau.character(g) * v for v in series]
    return out


def character_check(group, params, tau, max_degree):
    """Slice traces against chi_tau(g) t^h(tau) / det(1 - gt), and the lowest h-eigenvalue."""
    report = CheckReport(f"verma-character {group.name} {tau.name}")
    module = GradedModuleSlice(group, params, tau, max_degree)
    computed = module.graded_character(max_degree)
    expected = expected_character(group, tau, max_degree)
    for name in computed['classes']:
        for d, (a, b) in enumerate(zip(computed['classes'][name], expected[name])):
            report.record(a == b, f"class {name} degree {d}: {a} != {b}")
    lowest = module.act_h(module.basis(0)[0][1])
    report.record(lowest[0] == module.basis(0)[0][1][0] * computed['offset'], "h(tau) offset mismatch")
    report.details['offset'] = str(computed['offset'])
    report.details['classes'] = {k: [rational_str(v.constant_value()) if isinstance(v, ExactPoly) else rational_str(v)
                                      for v in vals] for k, vals in computed['classes'].items()}
    return report


def verma_relations_check(group, params, tau, max_degree):
    """Defining relations and the h-grading on every basis vector of M_c(tau) up to max_degree."""
    report = CheckReport(f"verma-relations {group.name} {tau.name}")
    module = GradedModuleSlice(group, params, tau, max_degree + 1)
    h_tau = module.h_tau()
    dim = group.dim
    for d in range(max_degree + 1):
        for label, vec in module.basis(d):
            hv = module.act_h(vec)
            report.record(all(u == v * (h_tau + d) for u, v in zip(hv, vec)), f"h on {label}")
            for a in range(dim):
                ya = group.basis_vector(a)
                for b in range(dim):
                    yb = group.basis_vector(b)
                    lhs = [u - v for u, v in zip(module.act_y(ya, module.act_y(yb, vec)),
                                                 module.act_y(yb, module.act_y(ya, vec)))]
                    report.record(all(u.is_zero() for u in lhs), f"[y{a + 1}, y{b + 1}] on {label}")
                    lhs = [u - v for u, v in zip(module.act_y(ya, module.act_x(b, vec)),
                                                 module.act_x(b, module.act_y(ya, vec)))]
                    rhs = [v * int(a == b) for v in vec]
                    for s in group.reflections:
                        w = s.root[a] * s.coroot[b]
                        if w:
                            moved = module.act_g(s.element, vec)
                            rhs = [u - v * (params.of(s) * w) for u, v in zip(rhs, moved)]
                    report.record(all(u == v for u, v in zip(lhs, rhs)), f"[y{a + 1}, x{b + 1}] on {label}")
            for g in group.generators:
                ginv = group.inverse[g]
                for b in range(dim):
                    lhs = module.act_g(g, module.act_x(b, module.act_g(ginv, vec)))
                    image = _linear_coeffs(group.act(g, group.coordinate(b)), group.coords)
                    rhs = [ExactPoly.zero(group.coords)] * tau.dim
                    for k, v in enumerate(image):
                        if v:
                            rhs = [u + w * v for u, w in zip(rhs, module.act_x(k, vec))]
                    report.record(all(u == v for u, v in zip(lhs, rhs)), f"g x g^-1 on {label}")
                    if d > 0:
                        lhs = module.act_g(g, module.act_y(group.basis_vector(b), module.act_g(ginv, vec)))
                        rhs = module.act_y(group.act_vector(g, group.basis_vector(b)), vec)
                        report.record(all(u == v for u, v in zip(lhs, rhs)), f"g y g^-1 on {label}")
    # the algebra's own grading element, pushed through the module action
    h = CherednikAlgebra(group, params).grading_element()
    for d in range(max_degree + 1):
        target, matrix = verma_action(group, params, tau, h, d)
        size = len(matrix)
        report.record(target == d and all(matrix[i][j] == (h_tau + d if i == j else 0)
                                          for i in range(size) for j in range(size)), f"h matrix on degree {d}")
    return report


def verma_action(group, params, tau, u, d, cap=None):
    """
    Matrix of a homogeneous PBW element u acting from slice d of M_c(tau).

    Returns (target degree, matrix); columns index the degree-d basis.
    Raises DegreeCapExceeded if either slice lies above the cap (default: the target degree).
    """
    shifts = {sum(n) - sum(m) for _, m, n in u.terms}
    if len(shifts) > 1:
        raise ValueError("verma_action needs a homogeneous element")
    target = d + (shifts.pop() if shifts else 0)
    if target < 0:
        return target, []
    module = GradedModuleSlice(group, params, tau, max(d, target) if cap is None else cap)
    return target, module.operator_matrix(lambda vec: module.act_element(u, vec), d, target)


def verma_dunkl_crosscheck(group, params, max_degree):
    """For tau trivial the y-action is the Dunkl operator."""
    from .dunkl_engine import apply_dunkl
    report = CheckReport(f"verma-dunkl {group.name}")
    module = GradedModuleSlice(group, params, LowestWeight.trivial(group), max_degree)
    for d in range(max_degree + 1):
        for label, vec in module.basis(d):
            for a in range(group.dim):
                direction = group.basis_vector(a)
                report.record(module.act_y(direction, vec)[0] == apply_dunkl(group, direction, params, vec[0]),
                              f"y{a + 1} on {label}")
    return report


# Shapovalov form
def shapovalov_gram(group, params, tau, d):
    """
    Gram matrix B[(m, i), (n, j)] = component i of y^m (x^n (x) v_j), both of degree d.
    """
    module = GradedModuleSlice(group, params, tau, d)
    basis = module.basis(d)
    rows = []
    for (m, i), _ in basis:
        row = []
        for (n, j), vec in basis:
            out = vec
            for a, e in enumerate(m):
                for _ in range(e):
                    out = module.act_y(group.basis_vector(a), out)
            row.append(out[i].compact())
        rows.append(row)
    return rows


def shapovalov_determinant(group, params, tau, d):
    return exact_det(shapovalov_gram(group, params, tau, d), params.variables())


def gram_is_symmetric(rows):
    n = len(rows)
    return all(rows[i][j] == rows[j][i] for i in range(n) for j in range(i + 1, n))


def irreducible_dimensions(group, params, tau, max_degree):
    """Graded dimensions of L_c(tau) = M_c(tau) / ker B at numeric parameters."""
    if not params.is_numeric():
        raise InvalidParameters("Irreducible quotients need numeric parameters")
    dims = []
    for d in range(max_degree + 1):
        rows = shapovalov_gram(group, params, tau, d)
        dims.append(exact_rank([[v.constant_value() for v in row] for row in rows]))
    return dims


def shapovalov_check(group, params, tau, max_degree):
    report = CheckReport(f"shapovalov {group.name} {tau.name}")
    report.record(shapovalov_gram(group, params, tau, 0)[0][0] == 1, "B(1, 1) != 1")
    dets = []
    for d in range(1, max_degree + 1):
        rows = shapovalov_gram(group, params, tau, d)
        det = exact_det(rows, params.variables())
        dets.append(str(det))
        report.record(not det.is_zero(), f"degree {d} determinant vanishes identically")
        if tau.name == 'triv' and group.gram == tuple(tuple(Fraction(int(i == j)) for j in range(group.dim))
                                                       for i in range(group.dim)):
            report.record(gram_is_symmetric(rows), f"degree {d} Gram not symmetric")
    report.details['determinants'] = dets
    return report


def pbw_check(group, rng, samples, max_degree, which='relations'):
    """CLI bundle: relations | assoc | sl2 | flatness | grading | rescaling."""
    algebra = CherednikAlgebra(group)
    if which == 'relations':
        return relations_check(algebra)
    if which == 'assoc':
        return associativity_check(algebra, rng, samples)
    if which == 'sl2':
        return sl2_check(algebra, rng, samples)
    if which == 'flatness':
        return flatness_check(algebra, max_degree)
    if which == 'grading':
        return grading_check(algebra)
    if which == 'rescaling':
        return rescaling_check(algebra, rng, samples)
    raise ValueError(f"Unknown pbw check {which}")
