"""
Exact arithmetic used by every algebraic check: rationals, a quadratic
extension for I2(5), sparse multivariate polynomials, rational functions with
root-monomial denominators and truncated series at infinity.

"""
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
import json
import math


# Errors
class CMError(Exception):
    """Base class for all cmnerds domain errors."""


class NonDivisible(CMError):
    pass


class InternalNonDivisible(NonDivisible):
    pass


class NonIntegerTotalDegree(CMError):
    pass


class InvalidParameters(CMError):
    pass


class NotInvariant(CMError):
    pass


class NotUnimodular(CMError):
    pass


class NonOrthonormal(CMError):
    pass


class DegreeCapExceeded(CMError):
    pass


class CapTooSmall(CMError):
    pass


class DegenerateSpectrum(CMError):
    pass


class CollidingCoordinates(CMError):
    pass


class EigenvalueCollision(CMError):
    pass


class StepCollision(CMError):
    pass


class NonPositiveCoordinate(CMError):
    pass


def to_rational(value):
    """Fraction from int/str/Fraction; QuadraticRational passes through."""
    if isinstance(value, (Fraction, QuadraticRational)):
        return value
    if isinstance(value, float):
        raise ValueError(f"Refusing to convert float {value} to an exact rational")
    return Fraction(value)


def rational_str(value):
    """Lossless 'num/den' serialization."""
    if isinstance(value, QuadraticRational):
        return repr(value)
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class QuadraticRational:
    """
    a + b*sqrt(d) with rational a, b and squarefree d > 0.

    Only values with b != 0 are ever constructed through `quad`; everything
    rational collapses back to Fraction so that mixed arithmetic stays cheap.
    """
    __slots__ = ('a', 'b', 'd')

    def __init__(self, a, b, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    def _coerce(self, other):
        if isinstance(other, QuadraticRational):
            if other.d != self.d:
                raise ValueError(f"Mixed radicands sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(self.a + o[0], self.b + o[1], self.d)
    __radd__ = __add__

    def __neg__(self):
        return QuadraticRational(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(self.a - o[0], self.b - o[1], self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(o[0] - self.a, o[1] - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = o
        return quad(self.a * a + self.d * self.b * b, self.a * b + self.b * a, self.d)
    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self):
        return QuadraticRational(self.a, -self.b, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o[1] == 0:
            return quad(self.a / o[0], self.b / o[0], self.d)
        other = QuadraticRational(o[0], o[1], self.d)
        return (self * other.conjugate()) / other.norm()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(o[0], o[1], self.d) / self if o[1] else self.conjugate() * (o[0] / self.norm())

    def __pow__(self, k):
        return reduce(lambda u, v: u * v, [self] * k, Fraction(1))

    def __eq__(self, other):
        if isinstance(other, QuadraticRational):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return False

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True

    def sign(self):
        """Exact sign of a + b*sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with d b^2
        diff = self.a * self.a - self.d * self.b * self.b
        return sa if diff > 0 else sb

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"{rational_str(self.a)}+{rational_str(self.b)}*sqrt{self.d}"


def quad(a, b, d):
    b = Fraction(b)
    if b == 0:
        return Fraction(a)
    return QuadraticRational(a, b, d)


def sign(value):
    if isinstance(value, QuadraticRational):
        return value.sign()
    return (value > 0) - (value < 0)


SCALAR_TYPES = (int, Fraction, QuadraticRational)


class ExactPoly:
    """
    Sparse multivariate polynomial with exact coefficients.

    Parameters
    ----------
    variables : sequence of str
        Ordered indeterminates; exponent tuples follow this order.
    terms : dict
        exponent tuple -> coefficient (int, Fraction or QuadraticRational)

    """
    __slots__ = ('vars', 'terms')

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        nvar = len(self.vars)
        self.terms = {}
        for exp, coeff in (terms or {}).items():
            if len(exp) != nvar:
                raise ValueError(f"Exponent {exp} does not match variables {self.vars}")
            if coeff:
                self.terms[tuple(exp)] = to_rational(coeff)

    @classmethod
    def _raw(cls, variables, terms):
        poly = cls.__new__(cls)
        poly.vars = variables
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls, variables=()):
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, value, variables=()):
        variables = tuple(variables)
        value = to_rational(value)
        return cls._raw(variables, {(0,) * len(variables): value} if value else {})

    @classmethod
    def variable(cls, name, variables=None):
        variables = (name,) if variables is None else tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"{name} not in {variables}")
        return cls._raw(variables, {exp: Fraction(1)})

    @classmethod
    def monomial(cls, exp, coeff=1, variables=()):
        return cls(variables, {tuple(exp): coeff})

    @classmethod
    def linear_form(cls, coefficients, variables):
        """sum_i coefficients[i] * variables[i]"""
        terms = {}
        n = len(variables)
        for i, c in enumerate(coefficients):
            if c:
                exp = [0] * n
                exp[i] = 1
                terms[tuple(exp)] = to_rational(c)
        return cls._raw(tuple(variables), terms)

    # Variable bookkeeping
    def extend(self, variables):
        """Re-express over `variables`, which must contain every variable actually used."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        index = {v: i for i, v in enumerate(variables)}
        positions = []
        for i, v in enumerate(self.vars):
            if v in index:
                positions.append((i, index[v]))
            elif any(exp[i] for exp in self.terms):
                raise ValueError(f"Variable {v} in use, cannot drop it")
        n = len(variables)
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * n
            for i, j in positions:
                new[j] = exp[i]
            terms[tuple(new)] = c
        return ExactPoly._raw(variables, terms)

    def _align(self, other):
        if self.vars == other.vars:
            return self.terms, other.terms, self.vars
        union = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.extend(union).terms, other.extend(union).terms, union

    def used_variables(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def compact(self):
        return self.extend(self.used_variables())

    # Arithmetic
    def _lift_scalar(self, other):
        if isinstance(other, ExactPoly):
            return other
        if isinstance(other, SCALAR_TYPES):
            return ExactPoly.constant(other, self.vars)
        return None

    def __add__(self, other):
        other = self._lift_scalar(other)
        if other is None:
            return NotImplemented
        a, b, variables = self._align(other)
        terms = dict(a)
        for exp, c in b.items():
            v = terms.get(exp, 0) + c
            if v:
                terms[exp] = v
            else:
                terms.pop(exp, None)
        return ExactPoly._raw(variables, terms)
    __radd__ = __add__

    def __neg__(self):
        return ExactPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift_scalar(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES):
            if not other:
                return ExactPoly._raw(self.vars, {})
            return ExactPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, ExactPoly):
            return NotImplemented
        a, b, variables = self._align(other)
        terms = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                exp = tuple([x + y for x, y in zip(e1, e2)])
                v = terms.get(exp, 0) + c1 * c2
                if v:
                    terms[exp] = v
                else:
                    terms.pop(exp, None)
        return ExactPoly._raw(variables, terms)
    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("Negative powers are not polynomials")
        result = ExactPoly.constant(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, SCALAR_TYPES):
            other = ExactPoly.constant(other, self.vars)
        if not isinstance(other, ExactPoly):
            return NotImplemented
        a, b, _ = self._align(other)
        return a == b

    def __hash__(self):
        return hash(frozenset(
            (tuple(sorted((v, e) for v, e in zip(self.vars, exp) if e)), c)
            for exp, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        """Value of a constant polynomial (0 if empty)."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    # Structure
    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var) if var in self.vars else None
        if i is None:
            return 0
        return max(e[i] for e in self.terms)

    def partial_degree(self, variables):
        idx = [self.vars.index(v) for v in variables if v in self.vars]
        if not self.terms:
            return -1
        return max(sum(e[i] for i in idx) for e in self.terms)

    def is_homogeneous(self, variables=None):
        idx = range(len(self.vars)) if variables is None else [self.vars.index(v) for v in variables if v in self.vars]
        degrees = {sum(e[i] for i in idx) for e in self.terms}
        return len(degrees) <= 1

    def homogeneous_component(self, degree, variables=None):
        idx = range(len(self.vars)) if variables is None else [self.vars.index(v) for v in variables if v in self.vars]
        return ExactPoly._raw(self.vars, {e: c for e, c in self.terms.items() if sum(e[i] for i in idx) == degree})

    def coefficients_in(self, variables):
        """
        Split into {exponent in `variables`: coefficient polynomial in the rest}.
        """
        idx = [self.vars.index(v) if v in self.vars else None for v in variables]
        rest = [i for i in range(len(self.vars)) if i not in idx]
        rest_vars = tuple(self.vars[i] for i in rest)
        out = {}
        for exp, c in self.terms.items():
            key = tuple(exp[i] if i is not None else 0 for i in idx)
            sub = tuple(exp[i] for i in rest)
            out.setdefault(key, {})
            out[key][sub] = out[key].get(sub, 0) + c
        return {k: ExactPoly(rest_vars, v) for k, v in out.items()}

    # Calculus and substitution
    def diff(self, var):
        if var not in self.vars:
            return ExactPoly._raw(self.vars, {})
        i = self.vars.index(var)
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                new = list(exp)
                new[i] -= 1
                terms[tuple(new)] = c * exp[i]
        return ExactPoly._raw(self.vars, terms)

    def directional(self, direction, variables):
        """sum_i direction[i] * d/d variables[i]"""
        result = ExactPoly._raw(self.vars, {})
        for a, v in zip(direction, variables):
            if a:
                result = result + self.diff(v) * a
        return result

    def substitute(self, mapping):
        """
        Replace variables by polynomials or scalars.

        Parameters
        ----------
        mapping : dict
            variable name -> ExactPoly or scalar

        """
        if not mapping:
            return self
        keep = tuple(v for v in self.vars if v not in mapping)
        keep_idx = [i for i, v in enumerate(self.vars) if v not in mapping]
        sub_idx = [(i, mapping[v]) for i, v in enumerate(self.vars) if v in mapping]
        power_cache = {}

        def power(i, value, e):
            key = (i, e)
            if key not in power_cache:
                if isinstance(value, ExactPoly):
                    power_cache[key] = value ** e
                else:
                    power_cache[key] = to_rational(value) ** e
            return power_cache[key]

        result = ExactPoly.zero(keep)
        for exp, c in self.terms.items():
            mono = ExactPoly._raw(keep, {tuple(exp[i] for i in keep_idx): c})
            for i, value in sub_idx:
                if exp[i]:
                    mono = mono * power(i, value, exp[i])
            result = result + mono
        return result

    def evaluate(self, point):
        """Substitute scalars for every variable in `point`; scalar if nothing is left."""
        result = self.substitute(point)
        if not result.used_variables():
            return result.constant_value()
        return result

    def linear_substitute(self, images, variables):
        """
        Substitute variables[i] -> images[i] where images are linear forms.
        Variables outside `variables` are carried unchanged.
        """
        return self.substitute(dict(zip(variables, images)))

    def permute_signed(self, positions, signs):
        """
        Fast path for signed permutation substitutions.

        positions : dict index_from -> index_to
        signs : dict index_from -> +1/-1
        """
        terms = {}
        n = len(self.vars)
        for exp, c in self.terms.items():
            new = list(exp)
            for i in positions:
                new[i] = 0
            sgn = 1
            for i, j in positions.items():
                new[j] += exp[i]
                if signs[i] < 0 and exp[i] % 2:
                    sgn = -sgn
            terms[tuple(new)] = c if sgn > 0 else -c
        return ExactPoly._raw(self.vars, terms)

    # Serialization
    def to_json(self):
        terms = []
        for exp in sorted(self.terms):
            c = self.terms[exp]
            entry = {'exp': list(exp)}
            if isinstance(c, QuadraticRational):
                entry.update({'num': str(c.a.numerator), 'den': str(c.a.denominator),
                              'rnum': str(c.b.numerator), 'rden': str(c.b.denominator), 'radicand': c.d})
            else:
                entry.update({'num': str(c.numerator), 'den': str(c.denominator)})
            terms.append(entry)
        return {'vars': list(self.vars), 'terms': terms}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for entry in data['terms']:
            c = Fraction(int(entry['num']), int(entry['den']))
            if 'radicand' in entry:
                c = quad(c, Fraction(int(entry['rnum']), int(entry['rden'])), entry['radicand'])
            terms[tuple(entry['exp'])] = c
        return cls(data['vars'], terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mono = '*'.join(f"{v}^{e}" if e > 1 else v for v, e in zip(self.vars, exp) if e)
            cs = str(c) if not isinstance(c, Fraction) or c.denominator != 1 else str(c.numerator)
            if not mono:
                out.append(cs)
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append(f"-{mono}")
            else:
                out.append(f"({cs})*{mono}")
        return ' + '.join(out).replace('+ -', '- ')


def poly_divide_exact(f, g):
    """
    Exact quotient f / g for a nonzero linear form g.

    Raises NonDivisible when the remainder is nonzero.
    """
    if not isinstance(f, ExactPoly):
        f = ExactPoly.constant(f, g.vars)
    terms_f, terms_g, variables = f._align(g)
    if not terms_g or any(sum(e) != 1 for e in terms_g):
        raise ValueError(f"Divisor {g} is not a nonzero linear form")
    # pivot on the first variable of g
    lead_exp = max(terms_g)
    j = lead_exp.index(1)
    a_j = terms_g[lead_exp]
    rest = [(e, c) for e, c in terms_g.items() if e != lead_exp]
    buckets = {}
    for exp, c in terms_f.items():
        buckets.setdefault(exp[j], {})[exp] = c
    quotient = {}
    top = max(buckets) if buckets else 0
    for e in range(top, 0, -1):
        bucket = buckets.pop(e, {})
        lower = buckets.setdefault(e - 1, {})
        for exp, c in bucket.items():
            q_exp = list(exp)
            q_exp[j] -= 1
            q_exp = tuple(q_exp)
            q_c = c / a_j
            quotient[q_exp] = quotient.get(q_exp, 0) + q_c
            for r_exp, r_c in rest:
                m = tuple([x + y for x, y in zip(q_exp, r_exp)])
                v = lower.get(m, 0) - q_c * r_c
                if v:
                    lower[m] = v
                else:
                    lower.pop(m, None)
    remainder = {e: c for e, c in buckets.get(0, {}).items() if c}
    if remainder:
        raise NonDivisible(f"{f} is not divisible by {g}")
    return ExactPoly._raw(variables, {e: c for e, c in quotient.items() if c})


class RationalFunction:
    """
    numerator / prod(roots[i] ** exps[i]) with nonnegative exponents.

    `roots` is a shared tuple of linear forms (usually the positive roots of a
    reflection group). Exact root factors are cancelled on construction.

    """
    __slots__ = ('num', 'exps', 'roots')

    def __init__(self, num, exps=None, roots=(), normalize=True):
        self.roots = roots
        self.num = num if isinstance(num, ExactPoly) else ExactPoly.constant(num)
        self.exps = tuple(exps) if exps is not None else (0,) * len(roots)
        if any(e < 0 for e in self.exps):
            raise ValueError("Denominator exponents must be nonnegative")
        if normalize:
            self._normalize()

    def _normalize(self):
        if not self.num:
            self.exps = (0,) * len(self.roots)
            return
        exps = list(self.exps)
        num = self.num
        for i, e in enumerate(exps):
            while e > 0:
                try:
                    num = poly_divide_exact(num, self.roots[i])
                except NonDivisible:
                    break
                e -= 1
            exps[i] = e
        self.num, self.exps = num, tuple(exps)

    @classmethod
    def root_power(cls, roots, index, power):
        """roots[index] ** power for any integer power."""
        exps = [0] * len(roots)
        if power >= 0:
            return cls(roots[index] ** power, exps, roots, normalize=False)
        exps[index] = -power
        return cls(ExactPoly.constant(1, roots[index].vars), exps, roots, normalize=False)

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.roots is not self.roots and other.roots != self.roots:
                if not other.roots or all(e == 0 for e in other.exps):
                    return RationalFunction(other.num, None, self.roots, normalize=False)
                if not self.roots or all(e == 0 for e in self.exps):
                    return other
                raise ValueError("Rational functions over different root systems")
            return other
        if isinstance(other, ExactPoly) or isinstance(other, SCALAR_TYPES):
            return RationalFunction(other, None, self.roots, normalize=False)
        return None

    def _denominator_poly(self, exps):
        result = ExactPoly.constant(1, self.num.vars)
        for r, e in zip(self.roots, exps):
            if e:
                result = result * r ** e
        return result

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        roots = self.roots if self.roots else other.roots
        a = self if self.roots else RationalFunction(self.num, None, roots, normalize=False)
        b = other if other.roots else RationalFunction(other.num, None, roots, normalize=False)
        top = tuple(max(x, y) for x, y in zip(a.exps, b.exps))
        num = a.num * a._denominator_poly([t - x for t, x in zip(top, a.exps)]) + \
            b.num * b._denominator_poly([t - y for t, y in zip(top, b.exps)])
        return RationalFunction(num, top, roots)
    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.exps, self.roots, normalize=False)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return RationalFunction(self.num * other, self.exps, self.roots, normalize=False)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        roots = self.roots if self.roots else other.roots
        n = len(roots)
        e1 = self.exps if self.roots else (0,) * n
        e2 = other.exps if other.roots else (0,) * n
        return RationalFunction(self.num * other.num, tuple(x + y for x, y in zip(e1, e2)), roots)
    __rmul__ = __mul__

    def __pow__(self, k):
        result = RationalFunction(ExactPoly.constant(1, self.num.vars), None, self.roots, normalize=False)
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return not any(self.exps)

    def to_poly(self):
        if not self.is_polynomial():
            raise NonDivisible(f"{self} has a nontrivial denominator")
        return self.num

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def diff(self, var):
        """d/d var, for a coordinate variable the roots may depend on."""
        dnum = self.num.diff(var)
        slopes = {}
        for i, e in enumerate(self.exps):
            if e:
                d_alpha = self.roots[i].diff(var)
                if d_alpha:
                    slopes[i] = d_alpha.constant_value()
        if not slopes:
            return RationalFunction(dnum, self.exps, self.roots, normalize=False)
        p = ExactPoly.constant(1, self.num.vars)
        for i in slopes:
            p = p * self.roots[i]
        num = dnum * p
        for i, slope in slopes.items():
            others = ExactPoly.constant(1, self.num.vars)
            for j in slopes:
                if j != i:
                    others = others * self.roots[j]
            num = num - self.num * others * (slope * self.exps[i])
        exps = tuple(e + 1 if i in slopes else e for i, e in enumerate(self.exps))
        return RationalFunction(num, exps, self.roots)

    def directional(self, direction, variables):
        result = RationalFunction(ExactPoly.zero(self.num.vars), None, self.roots, normalize=False)
        for a, v in zip(direction, variables):
            if a:
                result = result + self.diff(v) * a
        return result

    def substitute_numerator(self, mapping):
        """Substitute variables that the roots do not depend on (parameters, momenta)."""
        return RationalFunction(self.num.substitute(mapping), self.exps, self.roots)

    def evaluate(self, point):
        num = self.num.evaluate(point)
        den = Fraction(1)
        for r, e in zip(self.roots, self.exps):
            if e:
                den = den * r.evaluate(point) ** e
        if isinstance(num, ExactPoly):
            return num * (Fraction(1) / den)
        return num / den

    def __repr__(self):
        if not any(self.exps):
            return f"{self.num}"
        den = ' * '.join(f"({r})^{e}" for r, e in zip(self.roots, self.exps) if e)
        return f"({self.num}) / ({den})"


def binomial(mu, k):
    """Generalized binomial coefficient C(mu, k) for rational mu."""
    mu = Fraction(mu)
    out = Fraction(1)
    for i in range(k):
        out = out * (mu - i) / (i + 1)
    return out


class SeriesAtInfinity:
    """
    sum_{j=0..J} coefficients[j] * z^(leading_exponent - j)

    truncation_order None means the series is exact (a Laurent polynomial).
    Coefficients may be rationals or ExactPoly in symbolic root variables.

    """
    def __init__(self, leading_exponent, coefficients, truncation_order=None):
        self.leading_exponent = Fraction(leading_exponent)
        self.coefficients = list(coefficients)
        self.truncation_order = truncation_order
        if truncation_order is not None:
            self.coefficients = (self.coefficients + [0] * (truncation_order + 1))[:truncation_order + 1]

    @property
    def order(self):
        return self.truncation_order if self.truncation_order is not None else len(self.coefficients) - 1

    @classmethod
    def binomial_factor(cls, w, mu, order):
        """(z - w)^mu = z^mu * sum_k C(mu, k) (-w)^k z^-k, truncated at k = order."""
        coeffs = []
        power = Fraction(1)
        for k in range(order + 1):
            coeffs.append(power * binomial(mu, k))
            power = power * (-w)
        exact = Fraction(mu).denominator == 1 and 0 <= mu <= order
        return cls(mu, coeffs, None if exact else order)

    @classmethod
    def from_poly(cls, poly, var='z'):
        """Exact series of a polynomial in `var` (coefficients may involve other variables)."""
        if not isinstance(poly, ExactPoly):
            return cls(0, [poly])
        parts = poly.coefficients_in([var])
        if not parts:
            return cls(0, [0])
        deg = max(k[0] for k in parts)
        coeffs = []
        for j in range(deg + 1):
            c = parts.get((deg - j,), 0)
            if isinstance(c, ExactPoly) and c.is_constant():
                c = c.constant_value()
            coeffs.append(c)
        return cls(deg, coeffs)

    def __mul__(self, other):
        if not isinstance(other, SeriesAtInfinity):
            return SeriesAtInfinity(self.leading_exponent, [c * other for c in self.coefficients], self.truncation_order)
        orders = [s.truncation_order for s in (self, other) if s.truncation_order is not None]
        truncation = min(orders) if orders else None
        top = truncation if truncation is not None else len(self.coefficients) + len(other.coefficients) - 2
        coeffs = []
        for j in range(top + 1):
            acc = 0
            for i in range(j + 1):
                if i < len(self.coefficients) and j - i < len(other.coefficients):
                    a, b = self.coefficients[i], other.coefficients[j - i]
                    if _nonzero(a) and _nonzero(b):
                        acc = acc + a * b
            coeffs.append(acc)
        return SeriesAtInfinity(self.leading_exponent + other.leading_exponent, coeffs, truncation)
    __rmul__ = __mul__

    def __add__(self, other):
        shift = self.leading_exponent - other.leading_exponent
        if shift.denominator != 1:
            raise ValueError("Series exponents differ by a non-integer")
        if shift < 0:
            return other + self
        shift = int(shift)
        orders = []
        if self.truncation_order is not None:
            orders.append(self.truncation_order)
        if other.truncation_order is not None:
            orders.append(other.truncation_order + shift)
        truncation = min(orders) if orders else None
        n = max(len(self.coefficients), len(other.coefficients) + shift)
        coeffs = [0] * n
        for j, c in enumerate(self.coefficients):
            coeffs[j] = coeffs[j] + c
        for j, c in enumerate(other.coefficients):
            coeffs[j + shift] = coeffs[j + shift] + c
        return SeriesAtInfinity(self.leading_exponent, coeffs, truncation)

    def reciprocal(self):
        """1/series for a unit (nonzero rational leading coefficient)."""
        lead = self.coefficients[0]
        if isinstance(lead, ExactPoly):
            if not lead.is_constant():
                raise ValueError("Reciprocal needs a scalar leading coefficient")
            lead = lead.constant_value()
        if not lead:
            raise ZeroDivisionError("Leading coefficient vanishes")
        order = self.order
        inv = [Fraction(1) / lead]
        for j in range(1, order + 1):
            acc = 0
            for i in range(1, j + 1):
                if i < len(self.coefficients) and _nonzero(self.coefficients[i]):
                    acc = acc + self.coefficients[i] * inv[j - i]
            inv.append(-acc * inv[0])
        return SeriesAtInfinity(-self.leading_exponent, inv, order)

    def derivative(self):
        coeffs = [c * (self.leading_exponent - j) for j, c in enumerate(self.coefficients)]
        return SeriesAtInfinity(self.leading_exponent - 1, coeffs, self.truncation_order)

    def coefficient(self, exponent):
        j = self.leading_exponent - Fraction(exponent)
        if j.denominator != 1 or j < 0:
            return 0
        j = int(j)
        if j >= len(self.coefficients):
            if self.truncation_order is not None:
                raise ValueError(f"Truncation order {self.truncation_order} too small for z^{exponent}")
            return 0
        return self.coefficients[j]

    def residue(self):
        """Coefficient of z^-1 (no sign flip)."""
        return self.coefficient(-1)


def _nonzero(value):
    return bool(value)


def residue_at_infinity(exponents, extra_poly=None, var='z'):
    """
    Coefficient of z^-1 in prod_j (z - w_j)^mu_j * extra_poly(z) expanded at infinity.

    Parameters
    ----------
    exponents : list of (w_j, mu_j)
        w_j rational or ExactPoly (symbolic roots), mu_j rational
    extra_poly : ExactPoly in `var` or scalar (default 1)

    """
    extra = SeriesAtInfinity.from_poly(extra_poly if extra_poly is not None else Fraction(1), var)
    total = sum((Fraction(mu) for _, mu in exponents), Fraction(0))
    deg = int(extra.leading_exponent)
    if (total + deg).denominator != 1:
        raise NonIntegerTotalDegree(f"sum(mu) + deg = {total + deg} is not an integer")
    needed = int(total) + deg + 1
    if needed < 0:
        return ExactPoly.zero()
    order = needed + 2
    series = extra
    for w, mu in exponents:
        series = series * SeriesAtInfinity.binomial_factor(w, Fraction(mu), order)
    value = series.residue()
    if isinstance(value, ExactPoly):
        return value
    return ExactPoly.constant(value)


def polynomiality_residues(points, exponents, count=None):
    """
    Res_inf prod_j (z - y_j)^mu_j z^i dz for i = 0..count-1 (count defaults to p).
    """
    count = len(points) if count is None else count
    z = ExactPoly.variable('z')
    return [residue_at_infinity(list(zip(points, exponents)), z ** i) for i in range(count)]


# Exact linear algebra (sympy)
def to_sympy(value):
    import sympy
    if isinstance(value, ExactPoly):
        expr = sympy.Integer(0)
        symbols = [sympy.Symbol(v) for v in value.vars]
        for exp, c in value.terms.items():
            term = to_sympy(c)
            for s, e in zip(symbols, exp):
                if e:
                    term = term * s ** e
            expr = expr + term
        return expr
    if isinstance(value, QuadraticRational):
        return to_sympy(value.a) + to_sympy(value.b) * sympy.sqrt(value.d)
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy(expr, variables=()):
    """sympy polynomial expression with rational coefficients -> ExactPoly."""
    import sympy
    expr = sympy.expand(expr)
    variables = tuple(variables)
    free = sorted(str(s) for s in expr.free_symbols)
    missing = [v for v in free if v not in variables]
    variables = variables + tuple(missing)
    if not variables:
        return ExactPoly.constant(_sympy_scalar(expr))
    poly = sympy.Poly(expr, *[sympy.Symbol(v) for v in variables])
    terms = {}
    for exp, c in poly.terms():
        terms[tuple(exp)] = _sympy_scalar(c)
    return ExactPoly(variables, terms)


def _domain_matrix(rows):
    import sympy
    from sympy.polys.matrices import DomainMatrix
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    entries = [[to_sympy(v) for v in row] for row in rows]
    # sqrt(d) must enter as an algebraic number, not as a free generator
    options = {}
    if any(p.exp == sympy.S.Half for row in entries for e in row for p in e.atoms(sympy.Pow)):
        options['extension'] = True
    return DomainMatrix.from_list_sympy(nrows, ncols, entries, **options)


def _sympy_fraction(value):
    import sympy
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _sympy_scalar(value):
    """Rational or a + b*sqrt(d) sympy number -> Fraction or QuadraticRational."""
    import sympy
    value = sympy.expand(value)
    roots = [p for p in value.atoms(sympy.Pow) if p.exp == sympy.S.Half]
    if not roots:
        return _sympy_fraction(value)
    if len(roots) > 1:
        raise ValueError(f"More than one square root in {value}")
    b = value.coeff(roots[0])
    return quad(_sympy_fraction(sympy.expand(value - b * roots[0])), _sympy_fraction(b), int(roots[0].base))


def exact_rank(rows):
    if not rows or not rows[0]:
        return 0
    return _domain_matrix(rows).rank()


def exact_rref(rows):
    """(rref rows as Fractions, pivot columns) for a rational matrix."""
    if not rows or not rows[0]:
        return [], ()
    from sympy import QQ
    dm = _domain_matrix(rows).convert_to(QQ)
    reduced, pivots = dm.rref()
    dense = reduced.to_Matrix().tolist()
    return [[_sympy_fraction(v) for v in row] for row in dense[:len(pivots)]], tuple(pivots)


def exact_nullspace(rows):
    """Basis (list of Fraction vectors) of {v : rows * v = 0} for a rational matrix."""
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = exact_rref(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def exact_det(rows, variables=()):
    """Determinant of a square matrix of rationals or ExactPoly entries, as ExactPoly."""
    if not rows:
        return ExactPoly.constant(1, variables)
    dm = _domain_matrix(rows)
    value = dm.domain.to_sympy(dm.det())
    return from_sympy(value, variables)


def exact_solve(rows, rhs):
    """Solve rows * v = rhs for a rational square system with a unique solution."""
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = exact_rref(augmented)
    n = len(rows[0])
    if len(pivots) != n or (pivots and pivots[-1] >= n):
        raise ValueError("System is singular or inconsistent")
    return [row[-1] for row in reduced]


def monomial_exponents(nvars, degree):
    """All exponent tuples of total degree `degree` in `nvars` variables, in lex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    return sorted(out, reverse=True)


def monomials_up_to(variables, max_degree):
    """ExactPoly monomials of degree <= max_degree."""
    variables = tuple(variables)
    return [ExactPoly.monomial(exp, 1, variables)
            for d in range(max_degree + 1) for exp in monomial_exponents(len(variables), d)]
