"""
Type A: Dunkl's singular vectors, the finite-dimensional quotients M_k / I_k,
the support criterion and the n!-dimensional representations of H_{0,c}(S_n).

"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import gcd, factorial
import numpy as np

from .exact_core import (ExactPoly, InvalidParameters, CapTooSmall, DegenerateSpectrum, residue_at_infinity,
                         polynomiality_residues, exact_rank, exact_rref, monomial_exponents, rational_str)
from .coxeter import get_group, ClassParams
from .dunkl_engine import apply_dunkl
from .cherednik_engine import det_one_minus, inverse_series
from .metadata import CheckReport
from .onutil import distinct_rationals


# Singular vectors
@dataclass
class SingularFamily:
    n: int
    r: int
    vectors: list

    @property
    def k(self):
        return Fraction(self.r, self.n)

    @property
    def coords(self):
        return tuple(f"x{i + 1}" for i in range(self.n))

    def evaluate(self, point):
        values = dict(zip(self.coords, point))
        return [f.evaluate(values) for f in self.vectors]

    def to_dict(self):
        return {'n': self.n, 'r': self.r, 'k': rational_str(self.k), 'vectors': [f.to_json() for f in self.vectors]}


def singular_vectors(n, r):
    """f_i = Res_inf prod_j (z - x_j)^(r/n) dz / (z - x_i), i = 1..n."""
    if n < 2 or r < 1:
        raise InvalidParameters(f"Need n >= 2 and r >= 1, got n={n}, r={r}")
    if r % n == 0:
        raise InvalidParameters(f"n={n} divides r={r}")
    coords = tuple(f"x{i + 1}" for i in range(n))
    mu = Fraction(r, n)
    vectors = []
    for i in range(n):
        exponents = [(ExactPoly.variable(coords[j], coords), mu - int(i == j)) for j in range(n)]
        vectors.append(residue_at_infinity(exponents).extend(coords))
    return SingularFamily(n, r, vectors)


def _coefficient_rows(polys, coords):
    monos = sorted({e for f in polys for e in f.extend(coords).terms})
    return [[f.extend(coords).terms.get(e, Fraction(0)) for e in monos] for f in polys]


def span_trace(family, group, g):
    """Trace of g on span{f_i} in the basis f_1..f_{n-1} (f_n = -sum of the others)."""
    sigma = group.permutation(g)
    last = family.n - 1
    total = 0
    for l in range(last):
        if sigma[l] == l:
            total += 1
        elif sigma[l] == last:
            total -= 1
    return total


def singular_check(family):
    report = CheckReport(f"singular-vectors n={family.n} r={family.r}")
    n, coords = family.n, family.coords
    group = get_group(f"S{n}")
    total = ExactPoly.zero(coords)
    for f in family.vectors:
        total = total + f
    report.record(total.is_zero(), f"sum f_i = {total}")
    rank = exact_rank(_coefficient_rows(family.vectors, coords))
    report.details['span_dimension'] = rank
    report.record(rank == n - 1, f"span dimension {rank} != {n - 1}")
    shift = ExactPoly.variable('u')
    mapping = {x: ExactPoly.variable(x, coords) + shift for x in coords}
    for i, f in enumerate(family.vectors):
        report.record(f.is_homogeneous(coords) and f.degree() == family.r, f"f_{i + 1} not homogeneous of degree r")
        report.record(f.substitute(mapping) == f, f"f_{i + 1} not translation invariant")
    k = ClassParams.numeric(group, family.k)
    for i, f in enumerate(family.vectors):
        for a in range(n):
            value = apply_dunkl(group, group.basis_vector(a), k, f)
            report.record(value.is_zero(), f"D_{a + 1} f_{i + 1} = {value}")
    for g in range(group.order):
        sigma = group.permutation(g)
        moved = all(group.act(g, family.vectors[l]) == family.vectors[sigma[l]] for l in range(n))
        report.record(moved, f"g{g} does not permute the f_i")
        fixed = sum(1 for l in range(n) if sigma[l] == l)
        report.record(span_trace(family, group, g) == fixed - 1, f"span character at g{g}")
    return report


# Quotient slices
@dataclass
class QuotientSlices:
    """Degree slices of A = C[h]/I in translation-invariant coordinates u_i = x_i - x_{i+1}."""
    n: int
    r: int
    variables: tuple
    generators: list
    dims: list = field(default_factory=list)
    monomials: list = field(default_factory=list)
    reductions: list = field(default_factory=list)
    standard: list = field(default_factory=list)

    @property
    def top(self):
        return len(self.dims) - 1

    @property
    def dimension(self):
        return sum(self.dims)

    def reduce(self, poly, d):
        """Coefficients of poly (degree d in u) on the standard monomials of slice d."""
        monos = self.monomials[d]
        index = {e: i for i, e in enumerate(monos)}
        vec = [Fraction(0)] * len(monos)
        for exp, c in poly.extend(self.variables).terms.items():
            vec[index[exp]] += c
        rows, pivots = self.reductions[d]
        for row, p in zip(rows, pivots):
            if vec[p]:
                scale = vec[p]
                vec = [v - scale * w for v, w in zip(vec, row)]
        return [vec[index[e]] for e in self.standard[d]]

    def to_dict(self):
        return {'n': self.n, 'r': self.r, 'dims': self.dims, 'dimension': self.dimension, 'top_degree': self.top}


def to_difference_coordinates(poly, n):
    """Translation-invariant polynomial in x -> polynomial in u_i = x_i - x_{i+1}."""
    us = tuple(f"u{i + 1}" for i in range(n - 1))
    mapping = {}
    for i in range(n):
        image = ExactPoly.zero(us)
        for j in range(i, n - 1):
            image = image + ExactPoly.variable(us[j], us)
        mapping[f"x{i + 1}"] = image
    return poly.substitute(mapping).extend(us)


def from_difference_coordinates(poly, n):
    coords = tuple(f"x{i + 1}" for i in range(n))
    mapping = {f"u{i + 1}": ExactPoly.variable(coords[i], coords) - ExactPoly.variable(coords[i + 1], coords)
               for i in range(n - 1)}
    return poly.substitute(mapping).extend(coords)


def quotient_slices(n, r, cap):
    """
    Slice_d(A) = C[u]_d / span{monomials * f_i}; stops at the first zero slice.
    """
    family = singular_vectors(n, r)
    us = tuple(f"u{i + 1}" for i in range(n - 1))
    gens = [to_difference_coordinates(f, n) for f in family.vectors]
    slices = QuotientSlices(n, r, us, gens)
    for d in range(cap + 1):
        monos = monomial_exponents(n - 1, d)
        spanning = []
        if d >= r:
            for m in monomial_exponents(n - 1, d - r):
                mono = ExactPoly.monomial(m, 1, us)
                for f in gens:
                    spanning.append(mono * f)
        rows = [[p.extend(us).terms.get(e, Fraction(0)) for e in monos] for p in spanning]
        reduced, pivots = exact_rref(rows) if rows else ([], ())
        pivot_set = set(pivots)
        standard = [e for i, e in enumerate(monos) if i not in pivot_set]
        if not standard:
            break
        slices.monomials.append(monos)
        slices.reductions.append((reduced, pivots))
        slices.standard.append(standard)
        slices.dims.append(len(standard))
    else:
        raise CapTooSmall(f"Slices of M_k/I_k (n={n}, r={r}) still nonzero at degree {cap}")
    return slices


def _divide_one_minus_t(coeffs):
    """p(t) / (1 - t) for a polynomial divisible by (1 - t)."""
    out = []
    acc = Fraction(0)
    for c in coeffs[:-1]:
        acc = acc + c
        out.append(acc)
    if acc + coeffs[-1] != 0:
        raise ValueError("Polynomial not divisible by 1 - t")
    return out


def reflection_det(group, g):
    """Coefficients of det(1 - g t) on the reflection representation of S_n."""
    full = det_one_minus(group, g)
    coeffs = [full.coefficients_in(['t']).get((j,), ExactPoly.zero()) for j in range(full.degree('t') + 1)]
    coeffs = [c.constant_value() for c in coeffs]
    return _divide_one_minus_t(coeffs)


def closed_form_character(n, r, g, group, order):
    """det_h(1 - g t^r) / det_h(1 - g t) through t^order."""
    den = reflection_det(group, g)
    num = [Fraction(0)] * (r * (len(den) - 1) + 1)
    for j, c in enumerate(den):
        num[r * j] = c
    t = ExactPoly.variable('t')
    inv = inverse_series(sum((t ** j * c for j, c in enumerate(den)), ExactPoly.zero(('t',))), order)
    return [sum((num[i] * inv[d - i] for i in range(min(d, len(num) - 1) + 1)), Fraction(0)) for d in range(order + 1)]


def _act_on_u(group, g, poly, n):
    return to_difference_coordinates(group.act(g, from_difference_coordinates(poly, n)), n)


def slice_trace(slices, group, g, d):
    total = Fraction(0)
    for idx, exp in enumerate(slices.standard[d]):
        mono = ExactPoly.monomial(exp, 1, slices.variables)
        total += slices.reduce(_act_on_u(group, g, mono, slices.n), d)[idx]
    return total


def quotient_character(slices):
    """{class name: [Tr(g | slice_d)]} plus the exponent offset (1 - r)(n - 1)/2."""
    group = get_group(f"S{slices.n}")
    classes = {}
    for name, members in zip(group.class_names, group.classes):
        classes[name] = [slice_trace(slices, group, members[0], d) for d in range(len(slices.dims))]
    return {'offset': Fraction((1 - slices.r) * (slices.n - 1), 2), 'classes': classes}


def quotient_check(n, r, cap):
    report = CheckReport(f"finite-dim n={n} r={r}")
    slices = quotient_slices(n, r, cap)
    report.details.update(slices.to_dict())
    if gcd(n, r) != 1:
        return report
    report.record(slices.dimension == r ** (n - 1), f"dim {slices.dimension} != {r ** (n - 1)}")
    report.record(slices.top == (r - 1) * (n - 1), f"top degree {slices.top}")
    report.record(slices.dims == slices.dims[::-1], f"Hilbert series {slices.dims} not palindromic")
    group = get_group(f"S{n}")
    computed = quotient_character(slices)
    for name, members in zip(group.class_names, group.classes):
        expected = closed_form_character(n, r, members[0], group, slices.top + 2)
        got = computed['classes'][name] + [Fraction(0)] * 2
        report.record(got == expected, f"class {name}: {got} != {expected}")
    report.details['character'] = {k: [rational_str(v) for v in vals] for k, vals in computed['classes'].items()}
    return report


def frobenius_check(slices):
    """Top slice is one-dimensional and every pairing slice_d x slice_{top-d} -> slice_top is nondegenerate."""
    report = CheckReport(f"frobenius n={slices.n} r={slices.r}")
    top = slices.top
    report.record(slices.dims[top] == 1, f"top slice has dimension {slices.dims[top]}")
    for d in range(top + 1):
        left, right = slices.standard[d], slices.standard[top - d]
        matrix = []
        for a in left:
            row = []
            for b in right:
                prod = ExactPoly.monomial(tuple(u + v for u, v in zip(a, b)), 1, slices.variables)
                row.append(slices.reduce(prod, top)[0])
            matrix.append(row)
        ok = len(left) == len(right) and exact_rank(matrix) == len(left)
        report.record(ok, f"pairing degree {d} x {top - d} degenerate")
    return report


def _newton_elementary(power_sums, count):
    e = [Fraction(1)]
    for j in range(1, count + 1):
        acc = Fraction(0)
        for i in range(1, j + 1):
            acc += (-1) ** (i - 1) * e[j - i] * power_sums[i - 1]
        e.append(acc / j)
    return e


def bgg_euler_check(slices):
    """
    sum_j (-1)^j chi_{Lambda^j U}(g) t^(r j) / det_h(1 - g t) equals the graded character,
    with U = span{f_i} and exterior-power characters from Newton's identities.
    """
    report = CheckReport(f"bgg-euler n={slices.n} r={slices.r}")
    n, r = slices.n, slices.r
    group = get_group(f"S{n}")
    family = singular_vectors(n, r)
    computed = quotient_character(slices)
    order = slices.top + 2
    for name, members in zip(group.class_names, group.classes):
        g = members[0]
        powers, h = [], g
        for _ in range(n - 1):
            powers.append(Fraction(span_trace(family, group, h)))
            h = group.multiply(h, g)
        e = _newton_elementary(powers, n - 1)
        den = reflection_det(group, g)
        t = ExactPoly.variable('t')
        inv = inverse_series(sum((t ** j * c for j, c in enumerate(den)), ExactPoly.zero(('t',))), order)
        series = [Fraction(0)] * (order + 1)
        for j, ej in enumerate(e):
            for d in range(order + 1 - r * j):
                series[d + r * j] += (-1) ** j * ej * inv[d]
        got = computed['classes'][name] + [Fraction(0)] * (order + 1 - len(computed['classes'][name]))
        report.record(got == series, f"class {name}: {got} != {series}")
    return report


# Support
def support_predicted(n, r, point):
    """True when every multiplicity among the entries is a multiple of n / gcd(n, r)."""
    block = n // gcd(n, r)
    counts = {}
    for v in point:
        counts[v] = counts.get(v, 0) + 1
    return all(c % block == 0 for c in counts.values())


def support_test(n, r, point, family=None):
    """Whether every f_i vanishes at `point` (exact)."""
    family = family or singular_vectors(n, r)
    if len(point) != n:
        raise ValueError(f"Point {point} needs {n} entries")
    return all(v == 0 for v in family.evaluate([Fraction(v) for v in point]))


def _pattern_point(pattern, rng):
    letters = sorted(set(pattern))
    values = dict(zip(letters, distinct_rationals(len(letters), rng)))
    return [values[c] for c in pattern]


def support_check(n, r, rng, samples):
    """
    Vanishing agrees with the multiplicity predictor on random points of every
    multiplicity pattern, and the vanishing locus is S_n- and translation-stable.
    """
    report = CheckReport(f"support n={n} r={r}")
    family = singular_vectors(n, r)
    patterns = sorted({''.join(sorted(p)) for p in _patterns(n)})
    for pattern in patterns:
        for _ in range(samples):
            point = _pattern_point(list(pattern), rng)
            point = [point[int(i)] for i in rng.permutation(n)]
            vanishes = support_test(n, r, point, family)
            report.record(vanishes == support_predicted(n, r, point), f"pattern {pattern} point {point}")
            shift = distinct_rationals(1, rng)[0]
            report.record(support_test(n, r, [v + shift for v in point], family) == vanishes,
                          f"translation changes vanishing at {point}")
    return report


def _patterns(n):
    """Set partitions of n positions up to relabeling, as letter strings like 'aabb'."""
    out = []

    def walk(prefix, used):
        if len(prefix) == n:
            out.append(''.join(prefix))
            return
        for i in range(used + 1):
            walk(prefix + ['abcdefghij'[i]], max(used, i + 1))

    walk([], 0)
    return out


def residue_lemma_check(rng, samples, max_points=4):
    """
    Polynomial products have vanishing residues against z^i; non-polynomial ones with an
    integer total exponent > -p have a nonzero residue for some i <= p - 2.
    """
    report = CheckReport("residue-lemma")
    polynomial = non_polynomial = draws = 0
    while non_polynomial < samples:
        draws += 1
        if draws > 100 * samples:
            raise ValueError(f"Only {non_polynomial} of {samples} usable exponent draws")
        p = int(rng.integers(2, max_points + 1))
        points = distinct_rationals(p, rng)
        ints = [int(v) for v in rng.integers(0, 3, p)]
        report.record(all(v.is_zero() for v in polynomiality_residues(points, ints, p + 1)),
                      f"polynomial case {points} {ints}")
        polynomial += 1
        den = int(rng.integers(2, 5))
        mus = [Fraction(int(v), den) for v in rng.integers(-den, 2 * den, p - 1)]
        total = sum(mus, Fraction(0))
        last = Fraction(int(np.ceil(float(total))) + int(rng.integers(0, 2))) - total
        mus.append(last)
        if all(m.denominator == 1 for m in mus) or sum(mus) <= -p:
            continue
        residues = polynomiality_residues(points, mus, p - 1)
        report.record(any(not v.is_zero() for v in residues), f"non-polynomial case {points} {mus}")
        non_polynomial += 1
    report.details.update({'polynomial_cases': polynomial, 'non_polynomial_cases': non_polynomial, 'draws': draws})
    return report


# Representations of H_{0,c}(S_n)
class OrbitRepresentation:
    """
    Functions on the S_n-orbit of (lam, mu) with

        x_i d_P = P.a_i d_P,   w d_P = d_{wP},
        y_i d_P = P.b_i d_P + c sum_{j != i} d_{s_ij P} / (P.a_j - P.a_i).

    Matrices are exact numpy object arrays.
    """
    def __init__(self, n, lam, mu, c=1, order=None):
        self.n = n
        self.lam = [Fraction(v) for v in lam]
        self.mu = [Fraction(v) for v in mu]
        self.c = Fraction(c)
        if len(self.lam) != n or len(self.mu) != n:
            raise ValueError(f"lam and mu need {n} entries")
        if len(set(self.lam)) != n:
            raise DegenerateSpectrum(f"lam = {lam} has repeated entries")
        self.perms = list(permutations(range(n)))
        if order is not None:
            self.perms = [self.perms[i] for i in order]
        self.points = [self._point(s) for s in self.perms]
        self.index = {p: i for i, p in enumerate(self.points)}
        self.dim = len(self.points)
        self.X = [self._x_matrix(i) for i in range(n)]
        self.Y = [self._y_matrix(i) for i in range(n)]

    def _point(self, sigma):
        """(sigma lam, sigma mu) with (sigma v)_sigma(j) = v_j."""
        a, b = [None] * self.n, [None] * self.n
        for j, s in enumerate(sigma):
            a[s], b[s] = self.lam[j], self.mu[j]
        return tuple(a), tuple(b)

    def _move(self, sigma, point):
        a, b = [None] * self.n, [None] * self.n
        for j, s in enumerate(sigma):
            a[s], b[s] = point[0][j], point[1][j]
        return tuple(a), tuple(b)

    def _zeros(self):
        return np.array([[Fraction(0)] * self.dim for _ in range(self.dim)], dtype=object)

    def _x_matrix(self, i):
        m = self._zeros()
        for col, P in enumerate(self.points):
            m[col, col] = P[0][i]
        return m

    def _y_matrix(self, i):
        m = self._zeros()
        for col, P in enumerate(self.points):
            m[col, col] += P[1][i]
            for j in range(self.n):
                if j == i:
                    continue
                row = self.index[self._move(_transposition(self.n, i, j), P)]
                m[row, col] += self.c / (P[0][j] - P[0][i])
        return m

    def group_matrix(self, sigma):
        m = self._zeros()
        for col, P in enumerate(self.points):
            m[self.index[self._move(sigma, P)], col] = Fraction(1)
        return m

    def transposition(self, i, j):
        return self.group_matrix(_transposition(self.n, i, j))

    def word_trace(self, word):
        """Trace of a product of ('x', i) / ('y', i) letters."""
        m = np.identity(self.dim, dtype=object) * Fraction(1)
        for kind, i in word:
            m = m.dot(self.X[i] if kind == 'x' else self.Y[i])
        return np.trace(m)


def _transposition(n, i, j):
    sigma = list(range(n))
    sigma[i], sigma[j] = j, i
    return tuple(sigma)


def _is_zero(matrix):
    return all(v == 0 for v in np.asarray(matrix).flat)


def orbit_representation(n, lam, mu, c=1, order=None):
    return OrbitRepresentation(n, lam, mu, c, order)


def orbit_relations_check(rep):
    """Relations of H_{0,c}(S_n) on all n! basis vectors, and the regular character."""
    report = CheckReport(f"rep0 n={rep.n}")
    n, c = rep.n, rep.c
    X, Y = rep.X, rep.Y
    for i in range(n):
        reflection_sum = rep._zeros()
        for j in range(n):
            report.record(_is_zero(X[i].dot(X[j]) - X[j].dot(X[i])), f"[x{i + 1}, x{j + 1}]")
            report.record(_is_zero(Y[i].dot(Y[j]) - Y[j].dot(Y[i])), f"[y{i + 1}, y{j + 1}]")
            if i != j:
                s = rep.transposition(i, j)
                reflection_sum = reflection_sum + s
                report.record(_is_zero(Y[i].dot(X[j]) - X[j].dot(Y[i]) - s * c), f"[y{i + 1}, x{j + 1}] != c s")
                report.record(_is_zero(s.dot(X[i]).dot(s) - X[j]), f"s X_{i + 1} s != X_{j + 1}")
                report.record(_is_zero(s.dot(Y[i]).dot(s) - Y[j]), f"s Y_{i + 1} s != Y_{j + 1}")
        report.record(_is_zero(Y[i].dot(X[i]) - X[i].dot(Y[i]) + reflection_sum * c), f"[y{i + 1}, x{i + 1}]")
    report.record(rep.dim == factorial(n), f"dimension {rep.dim}")
    for sigma in permutations(range(n)):
        if sigma != tuple(range(n)):
            report.record(np.trace(rep.group_matrix(sigma)) == 0, f"Tr({sigma}) != 0")
    return report


def cm_point_from_rep(rep):
    """
    X and Y: x_1 and y_1 restricted to the S_{n-1}-invariants, in the basis of
    orbit sums v_j = sum of d_P with P.a_1 = lam_j.
    """
    if rep.c != 1:
        raise InvalidParameters("The Calogero-Moser point is read off at c = 1")
    n = rep.n
    orbit = [[col for col, P in enumerate(rep.points) if P[0][0] == rep.lam[j]] for j in range(n)]
    representative = [members[0] for members in orbit]

    def restrict(matrix):
        out = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            vec = np.array([Fraction(0)] * rep.dim, dtype=object)
            vec[orbit[j]] = Fraction(1)
            image = matrix.dot(vec)
            for l in range(n):
                out[l][j] = image[representative[l]]
                if any(image[col] != out[l][j] for col in orbit[l]):
                    raise InvalidParameters("Image leaves the invariant subspace")
        return out

    return restrict(rep.X[0]), restrict(rep.Y[0])


def closed_form_point(lam, mu):
    n = len(lam)
    X = [[Fraction(lam[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    Y = [[Fraction(mu[i]) if i == j else 1 / (Fraction(lam[i]) - Fraction(lam[j])) for j in range(n)] for i in range(n)]
    return X, Y


def _exact_matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def cm_point_check(rep):
    report = CheckReport(f"cm-point n={rep.n}")
    X, Y = cm_point_from_rep(rep)
    eX, eY = closed_form_point(rep.lam, rep.mu)
    report.record(X == eX, "X != diag(lam)")
    report.record(Y == eY, f"Y != closed form: {Y}")
    n = rep.n
    xy, yx = _exact_matmul(X, Y), _exact_matmul(Y, X)
    T = [[xy[i][j] - yx[i][j] + int(i == j) for j in range(n)] for i in range(n)]
    report.record(exact_rank(T) == 1, "rank(XY - YX + 1) != 1")
    return report


def _matrix_power(matrix, p):
    out = matrix
    for _ in range(p - 1):
        out = out.dot(matrix)
    return out


def central_character_check(rep, max_power=3):
    """sum x_i^p acts by sum lam_i^p and sum y_i^p by Tr(Y^p)."""
    report = CheckReport(f"central-character n={rep.n}")
    _, Y = cm_point_from_rep(rep)
    identity = np.identity(rep.dim, dtype=object) * Fraction(1)
    Yp = [[Fraction(int(i == j)) for j in range(rep.n)] for i in range(rep.n)]
    for p in range(1, max_power + 1):
        Yp = _exact_matmul(Yp, Y)
        trace = sum((Yp[i][i] for i in range(rep.n)), Fraction(0))
        xs = sum((_matrix_power(m, p) for m in rep.X), rep._zeros())
        ys = sum((_matrix_power(m, p) for m in rep.Y), rep._zeros())
        report.record(_is_zero(xs - identity * sum((v ** p for v in rep.lam), Fraction(0))), f"sum x^{p} not scalar")
        report.record(_is_zero(ys - identity * trace), f"sum y^{p} != Tr(Y^{p})")
    return report


def relabeling_check(n, lam, mu, rng, max_length=4, samples=10):
    """Word traces do not depend on the order of the orbit basis."""
    report = CheckReport(f"rep0-relabel n={n}")
    base = OrbitRepresentation(n, lam, mu)
    shuffled = OrbitRepresentation(n, lam, mu, order=[int(i) for i in rng.permutation(factorial(n))])
    for _ in range(samples):
        length = int(rng.integers(1, max_length + 1))
        word = [('x' if rng.integers(0, 2) else 'y', int(rng.integers(0, n))) for _ in range(length)]
        report.record(base.word_trace(word) == shuffled.word_trace(word), f"word {word}")
    return report


def random_rep_data(n, rng):
    lam = distinct_rationals(n, rng)
    mu = [Fraction(int(v), int(d)) for v, d in zip(rng.integers(-6, 7, n), rng.integers(1, 4, n))]
    return lam, mu
