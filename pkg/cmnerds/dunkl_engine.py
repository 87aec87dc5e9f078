"""
Dunkl operators, Heckman's restriction map and Olshanetsky-Perelomov operators.

Operators are kept in the normal form  sum_g N_g(x, p) g  where N_g is a
RationalFunction in coordinates x, momenta p and parameters.  In quantum mode
p_i stands for d/dx_i placed to the right of every function of x; in classical
mode p_i is a commuting coordinate on h*.

"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exact_core import (ExactPoly, RationalFunction, NonDivisible, InternalNonDivisible, NotInvariant,
                         poly_divide_exact, monomials_up_to, monomial_exponents, rational_str)
from .coxeter import ClassParams
from .metadata import CheckReport


class GroupOperator:
    """
    sum_g terms[g] * g over a ReflectionGroup.

    Parameters
    ----------
    group : ReflectionGroup
    terms : dict
        element index -> RationalFunction (or ExactPoly / scalar)
    quantum : bool
        composition rule: Leibniz normal ordering (True) or commutative (False)

    """
    def __init__(self, group, terms=None, quantum=True):
        self.group = group
        self.quantum = quantum
        self.terms = {}
        for g, coeff in (terms or {}).items():
            coeff = group.rf(coeff)
            if not coeff.is_zero():
                self.terms[g] = coeff

    # Builders
    @classmethod
    def identity(cls, group, quantum=True):
        return cls(group, {0: ExactPoly.constant(1)}, quantum)

    @classmethod
    def element(cls, group, g, quantum=True):
        return cls(group, {g: ExactPoly.constant(1)}, quantum)

    @classmethod
    def function(cls, group, f, quantum=True):
        return cls(group, {0: f}, quantum)

    @classmethod
    def partial(cls, group, a, quantum=True):
        return cls(group, {0: ExactPoly.linear_form(a, group.momenta)}, quantum)

    def _like(self, terms):
        return GroupOperator(self.group, terms, self.quantum)

    # Arithmetic
    def _coerce(self, other):
        if isinstance(other, GroupOperator):
            if other.quantum != self.quantum:
                raise ValueError("Mixing quantum and classical operators")
            return other
        return GroupOperator(self.group, {0: other}, self.quantum)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for g, c in other.terms.items():
            terms[g] = terms[g] + c if g in terms else c
        return self._like(terms)
    __radd__ = __add__

    def __neg__(self):
        return self._like({g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, value):
        return self._like({g: c * value for g, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GroupOperator):
            if isinstance(other, (int, Fraction)) or (isinstance(other, ExactPoly) and other.is_constant()
                                                      and not other.used_variables()):
                return self.scale(other)
            other = self._coerce(other)
        elif other.quantum != self.quantum:
            raise ValueError("Mixing quantum and classical operators")
        group = self.group
        terms = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                moved = group.act_rf(g, b)
                coeff = star(group, a, moved) if self.quantum else a * moved
                gh = group.multiply(g, h)
                terms[gh] = terms[gh] + coeff if gh in terms else coeff
        return self._like(terms)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, k):
        out = GroupOperator.identity(self.group, self.quantum)
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other):
        other = self._coerce(other)
        return self * other - other * self

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, GroupOperator):
            other = self._coerce(other)
        return (self - other).is_zero()

    __hash__ = None

    def conjugate_by(self, g):
        """g B g^-1"""
        group = self.group
        ginv = group.inverse[g]
        return self._like({group.multiply(group.multiply(g, h), ginv): group.act_rf(g, c)
                           for h, c in self.terms.items()})

    def is_invariant(self):
        return all(self.conjugate_by(g) == self for g in self.group.generators)

    def momentum_free(self):
        momenta = self.group.momenta
        return all(not any(v in c.num.used_variables() for v in momenta) for c in self.terms.values())

    def is_differential(self):
        return set(self.terms) <= {0}

    def coefficient(self, g=0):
        return self.terms.get(g, self.group.rf(ExactPoly.zero()))

    def substitute(self, mapping):
        """Substitute parameter values (never coordinates or momenta)."""
        return self._like({g: c.substitute_numerator(mapping) for g, c in self.terms.items()})

    # Application
    def apply(self, f):
        """Apply a quantum operator to a polynomial or RationalFunction; returns RationalFunction."""
        if not self.quantum:
            raise ValueError("Classical operators do not act on functions")
        group = self.group
        f = group.rf(f)
        result = group.rf(ExactPoly.zero())
        for g, coeff in self.terms.items():
            moved = group.act_rf(g, f)
            derivs = {}
            for beta, c_beta in coeff.num.coefficients_in(group.momenta).items():
                if beta not in derivs:
                    derivs[beta] = _derivative(moved, beta, group.coords)
                result = result + RationalFunction(c_beta, coeff.exps, group.root_forms) * derivs[beta]
        return result

    def __repr__(self):
        parts = [f"[{c}]*g{g}" if g else f"[{c}]" for g, c in sorted(self.terms.items())]
        return ' + '.join(parts) if parts else '0'


def _derivative(rf, beta, coords):
    out = rf
    for i, e in enumerate(beta):
        for _ in range(e):
            out = out.diff(coords[i])
    return out


def star(group, a, b):
    """
    Normal-ordered product of symbols:  a * b = sum_gamma (d_p^gamma a)(d_x^gamma b) / gamma!
    """
    result = a * b
    frontier = [((), a, b, Fraction(1))]
    while frontier:
        nxt = []
        for last, da, db, weight in frontier:
            start = last[-1] if last else 0
            for i in range(start, group.dim):
                da_i = da.diff(group.momenta[i])
                if da_i.is_zero():
                    continue
                db_i = db.diff(group.coords[i])
                if db_i.is_zero():
                    continue
                gamma = last + (i,)
                w = weight / gamma.count(i)
                result = result + da_i * db_i * w
                nxt.append((gamma, da_i, db_i, w))
        frontier = nxt
    return result


# OperatorExpr: a small AST evaluated into GroupOperator normal form
@dataclass(frozen=True)
class OperatorExpr:
    def to_operator(self, group, quantum=True):
        raise NotImplementedError

    def apply(self, group, f):
        return self.to_operator(group).apply(f)

    def __add__(self, other):
        return Sum((self, other))

    def __matmul__(self, other):
        return Compose((self, other))


@dataclass(frozen=True)
class Partial(OperatorExpr):
    direction: tuple

    def to_operator(self, group, quantum=True):
        return GroupOperator.partial(group, self.direction, quantum)


@dataclass(frozen=True)
class Multiply(OperatorExpr):
    function: object

    def to_operator(self, group, quantum=True):
        return GroupOperator.function(group, self.function, quantum)


@dataclass(frozen=True)
class Element(OperatorExpr):
    g: int

    def to_operator(self, group, quantum=True):
        return GroupOperator.element(group, self.g, quantum)


@dataclass(frozen=True)
class Scalar(OperatorExpr):
    value: object

    def to_operator(self, group, quantum=True):
        return GroupOperator.function(group, ExactPoly.constant(self.value) if not isinstance(self.value, ExactPoly)
                                      else self.value, quantum)


@dataclass(frozen=True)
class Sum(OperatorExpr):
    terms: tuple

    def to_operator(self, group, quantum=True):
        out = GroupOperator(group, {}, quantum)
        for t in self.terms:
            out = out + t.to_operator(group, quantum)
        return out


@dataclass(frozen=True)
class Compose(OperatorExpr):
    factors: tuple

    def to_operator(self, group, quantum=True):
        out = GroupOperator.identity(group, quantum)
        for f in self.factors:
            out = out * f.to_operator(group, quantum)
        return out


# Dunkl operators
def _weight(weights, i):
    return 1 if weights is None else weights[i]


def apply_dunkl(group, a, c, f, weights=None):
    """
    D_a f = d_a f - sum_s c_s alpha_s(a) (f - s.f) / alpha_s on polynomials.

    `weights` optionally rescales individual reflection terms (used to break
    conjugation invariance on purpose).
    """
    if not isinstance(f, ExactPoly):
        f = ExactPoly.constant(f, group.coords)
    result = f.directional(a, group.coords)
    for i, s in enumerate(group.reflections):
        alpha_a = group.pairing(s.root, a)
        if not alpha_a:
            continue
        diff = f - group.act(s.element, f)
        if diff.is_zero():
            continue
        try:
            q = poly_divide_exact(diff, s.form)
        except NonDivisible as err:
            raise InternalNonDivisible(f"(1 - s)f not divisible by {s.form}: {err}")
        result = result - q * c.of(s) * alpha_a * _weight(weights, i)
    return result


def dunkl_operator(group, a, c, quantum=True, weights=None):
    """D_a = p_a - sum_s c_s alpha_s(a)/alpha_s (1 - s) as a GroupOperator."""
    terms = {0: group.rf(ExactPoly.linear_form(a, group.momenta))}
    for i, s in enumerate(group.reflections):
        alpha_a = group.pairing(s.root, a)
        if not alpha_a:
            continue
        piece = group.inverse_root(i) * (c.of(s) * alpha_a * _weight(weights, i))
        terms[0] = terms[0] - piece
        terms[s.element] = terms[s.element] + piece if s.element in terms else piece
    return GroupOperator(group, terms, quantum)


def classical_dunkl(group, a, c):
    return dunkl_operator(group, a, c, quantum=False)


def classical_commutator(group, a, b, c):
    return classical_dunkl(group, a, c).commutator(classical_dunkl(group, b, c))


def dunkl_commutator(group, a, b, c, max_degree, weights=None):
    """[D_a, D_b] on all monomials of degree <= max_degree."""
    report = CheckReport(f"dunkl-commute {group.name}")
    for mono in monomials_up_to(group.coords, max_degree):
        db = apply_dunkl(group, b, c, mono, weights)
        da = apply_dunkl(group, a, c, mono, weights)
        value = apply_dunkl(group, a, c, db, weights) - apply_dunkl(group, b, c, da, weights)
        report.record(value.is_zero(), f"a={a} b={b} f={mono}: {value}")
    return report


def dunkl_commutativity(group, c, max_degree, weights=None):
    """All coordinate direction pairs."""
    report = CheckReport(f"dunkl-commute {group.name}")
    for i in range(group.dim):
        for j in range(i + 1, group.dim):
            sub = dunkl_commutator(group, group.basis_vector(i), group.basis_vector(j), c, max_degree, weights)
            report.instances += sub.instances
            report.failures += sub.failures
    return report


def reflection_sum(group, a, x, c, quantum=True):
    """sum_s c_s (a, alpha_s)(x, alpha_s^vee) s"""
    terms = {}
    for s in group.reflections:
        value = group.pairing(s.root, a) * group.pairing(x, s.coroot)
        if value:
            terms[s.element] = c.of(s) * value
    return GroupOperator(group, terms, quantum)


def dunkl_x_commutator(group, a, x, c, max_degree):
    """[D_a, x] = (a, x) - sum_s c_s (a, alpha_s)(x, alpha_s^vee) s on monomials."""
    report = CheckReport(f"dunkl-x-commutator {group.name}")
    xf = ExactPoly.linear_form(x, group.coords)
    ax = group.pairing(x, a)
    for mono in monomials_up_to(group.coords, max_degree):
        lhs = apply_dunkl(group, a, c, xf * mono) - xf * apply_dunkl(group, a, c, mono)
        rhs = mono * ax
        for s in group.reflections:
            value = group.pairing(s.root, a) * group.pairing(x, s.coroot)
            if value:
                rhs = rhs - group.act(s.element, mono) * c.of(s) * value
        report.record((lhs - rhs).is_zero(), f"a={a} x={x} f={mono}")
    return report


def commutation_relation(group, c, max_degree):
    """[D_a, x] identity for all coordinate directions and covectors."""
    report = CheckReport(f"commutation-relation {group.name}")
    for i in range(group.dim):
        for j in range(group.dim):
            sub = dunkl_x_commutator(group, group.basis_vector(i), group.basis_vector(j), c, max_degree)
            report.instances += sub.instances
            report.failures += sub.failures
    return report


def classical_x_commutator(group, a, x, c):
    xf = GroupOperator.function(group, ExactPoly.linear_form(x, group.coords), quantum=False)
    return classical_dunkl(group, a, c).commutator(xf)


def classical_limit_check(group, c):
    """
    The reflection part of the quantum relation [D_a, x] - (a, x) equals the
    classical [D_a^0, x], which carries no momentum.
    """
    report = CheckReport(f"classical-limit {group.name}")
    for i in range(group.dim):
        a = group.basis_vector(i)
        for j in range(group.dim):
            x = group.basis_vector(j)
            xq = GroupOperator.function(group, ExactPoly.linear_form(x, group.coords))
            quantum = dunkl_operator(group, a, c).commutator(xq) - \
                GroupOperator.function(group, ExactPoly.constant(group.pairing(x, a)))
            classical = classical_x_commutator(group, a, x, c)
            expected = -reflection_sum(group, a, x, c, quantum=False)
            report.record(classical.momentum_free(), f"momentum term in [D0_{i}, x{j}]")
            report.record(classical == expected, f"[D0_{i}, x{j}] != -sum c (a,alpha)(x,alpha^vee) s")
            same = all(quantum.coefficient(g) == classical.coefficient(g) for g in set(quantum.terms) | set(classical.terms))
            report.record(same, f"classical limit mismatch at ({i}, {j})")
    return report


def conjugation_check(group, c, max_degree=2):
    """g D_a g^-1 = D_{ga} as operators and on monomials."""
    report = CheckReport(f"dunkl-equivariance {group.name}")
    for g in range(group.order):
        for i in range(group.dim):
            a = group.basis_vector(i)
            ga = group.act_vector(g, a)
            lhs = GroupOperator.element(group, g) * dunkl_operator(group, a, c) * \
                GroupOperator.element(group, group.inverse[g])
            report.record(lhs == dunkl_operator(group, ga, c), f"operator g={g} a={a}")
            for mono in monomials_up_to(group.coords, max_degree):
                direct = group.act(g, apply_dunkl(group, a, c, group.act(group.inverse[g], mono)))
                report.record((direct - apply_dunkl(group, ga, c, mono)).is_zero(), f"g={g} a={a} f={mono}")
    return report


def linearity_check(group, c, max_degree, rng):
    """D_{a+2b} = D_a + 2 D_b and homogeneous degree drops by one."""
    report = CheckReport(f"dunkl-linearity {group.name}")
    for mono in monomials_up_to(group.coords, max_degree):
        a = [Fraction(int(v)) for v in rng.integers(-3, 4, group.dim)]
        b = [Fraction(int(v)) for v in rng.integers(-3, 4, group.dim)]
        ab = [u + 2 * v for u, v in zip(a, b)]
        lhs = apply_dunkl(group, ab, c, mono)
        rhs = apply_dunkl(group, a, c, mono) + apply_dunkl(group, b, c, mono) * 2
        report.record((lhs - rhs).is_zero(), f"linearity f={mono}")
        deg = mono.degree()
        if deg > 0 and not lhs.is_zero():
            report.record(lhs.partial_degree(group.coords) == deg - 1 and lhs.is_homogeneous(group.coords),
                          f"degree f={mono}")
    return report


# Laplacian, Heckman and OP operators
def laplacian_expr(group):
    """Delta_h = sum_ij G^-1_ij d_i d_j"""
    terms = []
    for i in range(group.dim):
        for j in range(group.dim):
            g = group.gram_inv[i][j]
            if g:
                terms.append(Compose((Scalar(g), Partial(group.basis_vector(i)), Partial(group.basis_vector(j)))))
    return Sum(tuple(terms))


def heckman_expr(group, c):
    """Lbar = Delta - sum_s c_s (alpha_s, alpha_s) / alpha_s  d_{alpha_s^vee}"""
    terms = [laplacian_expr(group)]
    for i, s in enumerate(group.reflections):
        norm = group.inner_covectors(s.root, s.root)
        coeff = group.inverse_root(i) * (c.of(s) * (-norm))
        terms.append(Compose((Multiply(coeff), Partial(s.coroot))))
    return Sum(tuple(terms))


def op_expr(group, c):
    """L = Delta - sum_s c_s (c_s + 1) (alpha_s, alpha_s) / alpha_s^2"""
    terms = [laplacian_expr(group)]
    for i, s in enumerate(group.reflections):
        norm = group.inner_covectors(s.root, s.root)
        cs = c.of(s)
        terms.append(Multiply(group.inverse_root(i, 2) * (cs * (cs + 1) * (-norm))))
    return Sum(tuple(terms))


def laplacian_operator(group, quantum=True):
    return laplacian_expr(group).to_operator(group, quantum)


def heckman_operator(group, c):
    return heckman_expr(group, c).to_operator(group)


def op_operator(group, c):
    """The Olshanetsky-Perelomov operator as a normal-form differential operator."""
    return op_expr(group, c).to_operator(group)


def calogero_moser_operator(n, k):
    """sum_j d_j^2 - sum_{i != j} k(k+1)/(x_i - x_j)^2 written out for S_n."""
    from .coxeter import get_group
    group = get_group(f"S{n}")
    k = k if isinstance(k, ExactPoly) else ExactPoly.constant(k)
    op = laplacian_operator(group)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s = group.reflection(i, j)
            idx = group.reflections.index(s)
            op = op - GroupOperator.function(group, group.inverse_root(idx, 2) * (k * (k + 1)))
    return op


def bn_op_operator(n, k, k2):
    """Delta - sum_{i<j} 2k(k+1)[(x_i-x_j)^-2 + (x_i+x_j)^-2] - sum_i k2(k2+1) x_i^-2 for B_n."""
    from .coxeter import get_group
    group = get_group(f"B{n}")
    k = k if isinstance(k, ExactPoly) else ExactPoly.constant(k)
    k2 = k2 if isinstance(k2, ExactPoly) else ExactPoly.constant(k2)
    op = laplacian_operator(group)
    for idx, s in enumerate(group.reflections):
        support = [v for v in s.root if v]
        if len(support) == 2:
            op = op - GroupOperator.function(group, group.inverse_root(idx, 2) * (k * (k + 1) * 2))
        else:
            op = op - GroupOperator.function(group, group.inverse_root(idx, 2) * (k2 * (k2 + 1)))
    return op


def restrict_to_invariants(operator, group=None):
    """
    Heckman's map m: restriction of a W-invariant operator to invariant inputs.

    Trailing group elements act trivially on invariants, so m(sum_g N_g g) = sum_g N_g.
    """
    if isinstance(operator, OperatorExpr):
        operator = operator.to_operator(group)
    if not operator.is_invariant():
        raise NotInvariant("Operator is not W-invariant")
    total = operator.group.rf(ExactPoly.zero())
    for coeff in operator.terms.values():
        total = total + coeff
    return GroupOperator(operator.group, {0: total}, operator.quantum)


def polynomial_of_dunkl(group, poly, c, quantum=True):
    """P(D) for P a polynomial in the momenta p_i (D_{e_i} substituted for p_i)."""
    cache = {}
    basis = [dunkl_operator(group, group.basis_vector(i), c, quantum) for i in range(group.dim)]

    def power(exp):
        if exp not in cache:
            if not any(exp):
                cache[exp] = GroupOperator.identity(group, quantum)
            else:
                i = max(j for j, e in enumerate(exp) if e)
                lower = list(exp)
                lower[i] -= 1
                cache[exp] = power(tuple(lower)) * basis[i]
        return cache[exp]

    parts = poly.extend(poly.vars + tuple(v for v in group.momenta if v not in poly.vars)).coefficients_in(group.momenta)
    out = GroupOperator(group, {}, quantum)
    for exp, coeff in parts.items():
        if coeff.used_variables():
            out = out + power(exp) * GroupOperator.function(group, coeff, quantum)
        else:
            out = out + power(exp).scale(coeff.constant_value())
    return out


def dunkl_laplacian(group, c, quantum=True):
    """sum_ij G^-1_ij D_i D_j"""
    return polynomial_of_dunkl(group, _p_quadratic(group), c, quantum)


def _p_quadratic(group):
    out = ExactPoly.zero(group.momenta)
    for i in range(group.dim):
        for j in range(group.dim):
            if group.gram_inv[i][j]:
                out = out + ExactPoly.variable(group.momenta[i], group.momenta) * \
                    ExactPoly.variable(group.momenta[j], group.momenta) * group.gram_inv[i][j]
    return out


def invariant_basis(group, max_degree):
    """Products of the invariant generators with total degree <= max_degree."""
    gens = group.invariant_generators('x')
    degrees = [g.degree() for g in gens]
    out = []

    def walk(i, current, deg):
        if i == len(gens):
            out.append(current)
            return
        e = 0
        while deg + e * degrees[i] <= max_degree:
            walk(i + 1, current * gens[i] ** e, deg + e * degrees[i])
            e += 1

    walk(0, ExactPoly.constant(1, group.coords), 0)
    return out


def heckman_check(group, c, max_degree):
    """m(sum G^-1_ij D_i D_j) = Lbar, as operators and on invariants."""
    report = CheckReport(f"heckman {group.name}")
    lbar = heckman_operator(group, c)
    restricted = restrict_to_invariants(dunkl_laplacian(group, c))
    report.record(restricted == lbar, "m(sum D_i^2) != Lbar as operators")
    for f in invariant_basis(group, max_degree):
        direct = ExactPoly.zero(group.coords)
        for i in range(group.dim):
            for j in range(group.dim):
                gij = group.gram_inv[i][j]
                if gij:
                    inner = apply_dunkl(group, group.basis_vector(j), c, f)
                    direct = direct + apply_dunkl(group, group.basis_vector(i), c, inner) * gij
        value = lbar.apply(f)
        report.record(value == group.rf(direct), f"f={f}")
    return report


def delta_c(group, c):
    """prod_s alpha_s^{c_s} for nonnegative integer c."""
    out = ExactPoly.constant(1, group.coords)
    for s in group.reflections:
        cs = c.of(s)
        if not cs.is_constant() or Fraction(cs.constant_value()).denominator != 1 or cs.constant_value() < 0:
            raise ValueError("delta_c needs nonnegative integer parameters")
        out = out * s.form ** int(cs.constant_value())
    return out


def gauge_identity_check(group, c, max_degree):
    """Lbar(delta_c f) = delta_c L f, as operators and on monomials."""
    report = CheckReport(f"op-gauge {group.name}")
    delta = GroupOperator.function(group, delta_c(group, c))
    lbar, L = heckman_operator(group, c), op_operator(group, c)
    report.record(lbar * delta == delta * L, "Lbar o delta_c != delta_c o L")
    for mono in monomials_up_to(group.coords, max_degree):
        lhs = lbar.apply(delta_c(group, c) * mono)
        rhs = L.apply(mono) * delta_c(group, c)
        report.record(lhs == rhs, f"f={mono}")
    report.details['laplacian_kills_discriminant'] = group.laplacian_kills_discriminant()
    report.record(report.details['laplacian_kills_discriminant'], "Delta delta != 0")
    return report


def log_gradient(group, c):
    """u_i = d_i log delta_c = sum_s c_s alpha_s(e_i) / alpha_s"""
    out = []
    for i in range(group.dim):
        u = group.rf(ExactPoly.zero())
        for idx, s in enumerate(group.reflections):
            if s.root[i]:
                u = u + group.inverse_root(idx) * (c.of(s) * s.root[i])
        out.append(u)
    return out


def gauge_conjugate(operator, c):
    """delta_c^-1 o B o delta_c for a differential operator B (symbolic c allowed)."""
    group = operator.group
    if not operator.is_differential():
        raise ValueError("Gauge conjugation needs a differential operator")
    u = log_gradient(group, c)
    shifted = [GroupOperator.partial(group, group.basis_vector(i)) + GroupOperator.function(group, u[i])
               for i in range(group.dim)]
    cache = {}

    def power(exp):
        if exp not in cache:
            if not any(exp):
                cache[exp] = GroupOperator.identity(group)
            else:
                i = max(j for j, e in enumerate(exp) if e)
                lower = list(exp)
                lower[i] -= 1
                cache[exp] = power(tuple(lower)) * shifted[i]
        return cache[exp]

    coeff = operator.coefficient(0)
    out = GroupOperator(group, {})
    for beta, c_beta in coeff.num.coefficients_in(group.momenta).items():
        out = out + GroupOperator.function(group, RationalFunction(c_beta, coeff.exps, group.root_forms)) * power(beta)
    return out


def quantum_integrals(group, c, generators=None):
    """
    (Lbar_i, L_i) with Lbar_i = m(P_i(D)) and L_i = delta_c^-1 Lbar_i delta_c.
    """
    generators = generators if generators is not None else group.invariant_generators('p')
    out = []
    for P in generators:
        lbar = restrict_to_invariants(polynomial_of_dunkl(group, P, c))
        out.append((lbar, gauge_conjugate(lbar, c)))
    return out


def integrals_check(group, c, max_degree):
    """Pairwise commutation of the quantum integrals, and L from the quadratic generator."""
    report = CheckReport(f"integrals {group.name}")
    integrals = quantum_integrals(group, c)
    for i in range(len(integrals)):
        for j in range(i + 1, len(integrals)):
            comm = integrals[i][0].commutator(integrals[j][0])
            report.record(comm.is_zero(), f"[Lbar_{i + 1}, Lbar_{j + 1}] != 0")
            for f in invariant_basis(group, max_degree):
                a = integrals[i][0].apply(integrals[j][0].apply(f))
                b = integrals[j][0].apply(integrals[i][0].apply(f))
                report.record(a == b, f"[Lbar_{i + 1}, Lbar_{j + 1}] f != 0 at f={f}")
    quadratic = [L for (lb, L), P in zip(integrals, group.invariant_generators('p')) if P.degree() == 2]
    if quadratic:
        report.record(quadratic[0] == op_operator(group, c), "quadratic integral != OP operator")
    if group.name.startswith('S'):
        translation = GroupOperator(group, {})
        for i in range(group.dim):
            translation = translation + GroupOperator.partial(group, group.basis_vector(i))
        report.record(integrals[0][0] == translation, "Lbar_1 != sum d_j")
    return report


# Classical side
def p_squared(group):
    return group.rf(_p_quadratic(group))


def classical_op_hamiltonian(group, c):
    """L0 = p^2 - sum_s c_s^2 (alpha_s, alpha_s) / alpha_s^2"""
    out = p_squared(group)
    for i, s in enumerate(group.reflections):
        cs = c.of(s)
        out = out - group.inverse_root(i, 2) * (cs * cs * group.inner_covectors(s.root, s.root))
    return out


def classical_heckman(group, c):
    """Lbar0 = p^2 - sum_s c_s (alpha_s, alpha_s)/alpha_s p_{alpha_s^vee}"""
    out = p_squared(group)
    for i, s in enumerate(group.reflections):
        p_coroot = ExactPoly.linear_form(s.coroot, group.momenta)
        out = out - group.inverse_root(i) * (p_coroot * c.of(s) * group.inner_covectors(s.root, s.root))
    return out


def theta(group, c, rf):
    """theta_c(p_i) = p_i + d_i log delta_c, extended as an algebra map."""
    u = log_gradient(group, c)
    shifted = [group.rf(ExactPoly.variable(group.momenta[i], group.momenta)) + u[i] for i in range(group.dim)]
    out = group.rf(ExactPoly.zero())
    num = rf.num.extend(rf.num.vars + tuple(v for v in group.momenta if v not in rf.num.vars))
    for beta, coeff in num.coefficients_in(group.momenta).items():
        term = RationalFunction(coeff, rf.exps, group.root_forms)
        for i, e in enumerate(beta):
            if e:
                term = term * shifted[i] ** e
        out = out + term
    return out


def theta_check(group, c):
    report = CheckReport(f"classical-op {group.name}")
    restricted = restrict_to_invariants(polynomial_of_dunkl(group, _p_quadratic(group), c, quantum=False))
    lbar0 = classical_heckman(group, c)
    report.record(restricted.coefficient(0) == lbar0, "m(sum D0^2) != Lbar0")
    report.record(theta(group, c, lbar0) == classical_op_hamiltonian(group, c), "theta(Lbar0) != L0")
    return report


def classical_commutativity(group, c):
    report = CheckReport(f"classical-dunkl {group.name}")
    for i in range(group.dim):
        for j in range(i + 1, group.dim):
            comm = classical_commutator(group, group.basis_vector(i), group.basis_vector(j), c)
            report.record(comm.is_zero(), f"[D0_{i}, D0_{j}] != 0")
    return report


def poisson_bracket(group, f, g):
    """{f, g} = sum_i df/dp_i dg/dx_i - df/dx_i dg/dp_i  (so {p_i, x_j} = delta_ij)."""
    out = group.rf(ExactPoly.zero())
    for x, p in zip(group.coords, group.momenta):
        out = out + f.diff(p) * g.diff(x) - f.diff(x) * g.diff(p)
    return out


def classical_integrals(group, c, generators=None):
    """L0_i = theta_c(m(P_i(D0)))"""
    generators = generators if generators is not None else group.invariant_generators('p')
    out = []
    for P in generators:
        restricted = restrict_to_invariants(polynomial_of_dunkl(group, P, c, quantum=False))
        out.append(theta(group, c, restricted.coefficient(0)))
    return out


def classical_integrals_check(group, c):
    report = CheckReport(f"classical-integrals {group.name}")
    integrals = classical_integrals(group, c)
    for i in range(len(integrals)):
        for j in range(i + 1, len(integrals)):
            report.record(poisson_bracket(group, integrals[i], integrals[j]).is_zero(), f"{{L0_{i + 1}, L0_{j + 1}}} != 0")
    return report


def invariance_check(group, c):
    """L and Lbar commute with every generator of W."""
    report = CheckReport(f"op-invariance {group.name}")
    report.record(op_operator(group, c).is_invariant(), "L not invariant")
    report.record(heckman_operator(group, c).is_invariant(), "Lbar not invariant")
    return report


def qcm_check(n, k=None):
    """The S_n OP operator equals the quantum Calogero-Moser Hamiltonian."""
    from .coxeter import get_group
    group = get_group(f"S{n}")
    c = ClassParams.symbolic(group) if k is None else ClassParams.numeric(group, k)
    report = CheckReport(f"qcm S{n}")
    report.record(op_operator(group, c) == calogero_moser_operator(n, c[0]), "L != CM Hamiltonian")
    return report


def describe_operator(operator):
    """JSON-friendly rendering: element -> coefficient string."""
    return {str(g): str(coeff) for g, coeff in sorted(operator.terms.items())}
