"""
Classical Calogero-Moser dynamics in double precision.

Conventions: H_k = Tr(Y^k) on the pair X = diag(x), Y_ii = p_i, Y_ij = 1/(x_i - x_j),
so H_2 = sum p_i^2 - sum_{i != j} (x_i - x_j)^-2, x' = 2p and p'_i = -4 sum_j (x_i - x_j)^-3.
Poisson structure {Y_ij, X_kl} = delta_il delta_jk, which is {p_i, x_j} = delta_ij on phase space.

"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
import numpy as np
from scipy.optimize import linear_sum_assignment

from .exact_core import (ExactPoly, RationalFunction, CollidingCoordinates, EigenvalueCollision, StepCollision,
                         NonPositiveCoordinate)
from .metadata import CheckReport, DEFAULTS


TOL = DEFAULTS['tolerances']


@dataclass
class PhasePoint:
    x: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.p = np.asarray(self.p, dtype=float)
        if self.x.shape != self.p.shape or self.x.ndim != 1:
            raise ValueError(f"x and p must be vectors of equal length, got {self.x.shape} and {self.p.shape}")

    @property
    def n(self):
        return len(self.x)

    @property
    def scale(self):
        return max(1.0, float(np.max(np.abs(self.x))))

    def separation(self):
        diffs = np.abs(self.x[:, None] - self.x[None, :]) + np.diag(np.full(self.n, np.inf))
        return float(np.min(diffs))


@dataclass
class MatrixPair:
    X: np.ndarray
    Y: np.ndarray

    @property
    def n(self):
        return self.X.shape[0]

    def defect(self):
        """XY - YX + 1"""
        return self.X @ self.Y - self.Y @ self.X + np.identity(self.n)


@dataclass
class TrajectorySample:
    times: np.ndarray
    xs: np.ndarray
    ps: np.ndarray
    integrals: np.ndarray
    method: str
    details: dict = field(default_factory=dict)

    def state(self, i):
        return PhasePoint(self.xs[i], self.ps[i])

    def drift(self, k=2):
        """max_t |H_k(t) - H_k(0)|"""
        return float(np.max(np.abs(self.integrals[:, k - 1] - self.integrals[0, k - 1])))

    def to_frame(self):
        import pandas as pd
        n = self.xs.shape[1]
        data = {'t': self.times}
        for i in range(n):
            data[f"x_{i + 1}"] = self.xs[:, i]
        for i in range(n):
            data[f"p_{i + 1}"] = self.ps[:, i]
        for i in range(n):
            data[f"H_{i + 1}"] = self.integrals[:, i]
        data['method'] = [self.method] * len(self.times)
        return pd.DataFrame(data)


# KKS pair and integrals
def kks_pair(pt, separation=TOL['separation']):
    """X = diag(x), Y_ij = 1/(x_i - x_j) off the diagonal, Y_ii = p_i."""
    if pt.separation() < separation * pt.scale:
        raise CollidingCoordinates(f"Coordinates {pt.x} collide (separation {pt.separation():.3g})")
    diffs = pt.x[:, None] - pt.x[None, :]
    np.fill_diagonal(diffs, 1.0)
    Y = 1.0 / diffs
    np.fill_diagonal(Y, pt.p)
    return MatrixPair(np.diag(pt.x), Y)


def rank_one_check(pair, hi=TOL['rank_hi'], lo=TOL['rank_lo']):
    """Exactly one singular value of XY - YX + 1 above hi*scale, the rest below lo*scale."""
    sv = np.linalg.svd(pair.defect(), compute_uv=False)
    scale = max(1.0, float(sv[0]))
    return bool(np.sum(sv > hi * scale) == 1 and np.all(sv[1:] < lo * scale)), sv


def integrals(pt, count=None):
    """H_1..H_count (default n) at a phase point."""
    Y = kks_pair(pt).Y
    count = pt.n if count is None else count
    out, power = [], np.identity(pt.n)
    for _ in range(count):
        power = power @ Y
        out.append(float(np.trace(power)))
    return np.array(out)


def hamiltonian(pt):
    """sum p_i^2 - sum_{i != j} 1/(x_i - x_j)^2"""
    diffs = pt.x[:, None] - pt.x[None, :]
    np.fill_diagonal(diffs, np.inf)
    return float(np.sum(pt.p ** 2) - np.sum(1.0 / diffs ** 2))


# Eigenvalues
def char_poly(A):
    """Faddeev-LeVerrier: coefficients of det(lambda - A), highest degree first."""
    n = A.shape[0]
    coeffs = [1.0 + 0j]
    M = np.zeros_like(A, dtype=complex)
    identity = np.identity(n)
    for k in range(1, n + 1):
        M = A @ M + coeffs[-1] * identity
        coeffs.append(-np.trace(A @ M) / k)
    return np.array(coeffs)


def durand_kerner(coeffs, start=None, tol=1e-12, max_iter=1000):
    """All roots of a monic polynomial; `start` warm-starts the iteration."""
    n = len(coeffs) - 1
    radius = 1.0 + float(np.max(np.abs(coeffs[1:])))
    if start is None:
        z = radius * (0.4 + 0.9j) ** np.arange(n)
    else:
        z = np.asarray(start, dtype=complex) + 1e-9j * np.arange(n)
    scale = max(1.0, float(np.max(np.abs(z))))
    for _ in range(max_iter):
        diffs = z[:, None] - z[None, :]
        np.fill_diagonal(diffs, 1.0)
        if np.any(np.abs(diffs) == 0):
            raise EigenvalueCollision("Durand-Kerner iterates coincide")
        delta = np.polyval(coeffs, z) / np.prod(diffs, axis=1)
        z = z - delta
        if np.max(np.abs(delta)) < tol * scale:
            return z
    raise EigenvalueCollision(f"Durand-Kerner did not converge in {max_iter} iterations")


def eigenvalues(A, start=None):
    return durand_kerner(char_poly(A), start)


def track(previous, current):
    """Reorder `current` to continue `previous` (nearest-match assignment)."""
    cost = np.abs(previous[:, None] - current[None, :])
    _, cols = linear_sum_assignment(cost)
    return current[cols]


def frame_momenta(Xt, Y, eigs):
    """p_i = diagonal of Y in the eigenframe of Xt: w_i Y v_i / (w_i v_i)."""
    n = Xt.shape[0]
    out = []
    for lam in eigs:
        shifted = Xt - lam * np.identity(n)
        v = np.linalg.svd(shifted)[2][-1].conj()
        w = np.linalg.svd(shifted.T)[2][-1].conj()
        out.append((w @ Y @ v) / (w @ v))
    return np.array(out)


def _flow_shift(Y, order):
    return order * np.linalg.matrix_power(Y, order - 1)


def _checked_eigs(Xt, previous, separation, scale):
    eigs = track(previous, eigenvalues(Xt, previous))
    diffs = np.abs(eigs[:, None] - eigs[None, :]) + np.diag(np.full(len(eigs), np.inf))
    if np.min(diffs) < separation * scale or np.max(np.abs(eigs.imag)) > TOL['rank_hi'] * scale:
        raise EigenvalueCollision(f"Eigenvalues {eigs} collide along the flow")
    return eigs


def flow_eigen(pt, t, order=2, steps=None, separation=TOL['separation']):
    """
    Flow of H_order by time t: x(t) are the eigenvalues of X + order t Y^(order-1), tracked
    by continuity from t = 0; p(t) is read from the eigenframe.
    """
    pair = kks_pair(pt, separation)
    shift = _flow_shift(pair.Y, order)
    steps = steps or max(10, int(np.ceil(abs(t) / 1e-2)))
    eigs = pt.x.astype(complex)
    for s in np.linspace(0.0, t, steps + 1)[1:]:
        eigs = _checked_eigs(pair.X + s * shift, eigs, separation, pt.scale)
    p = frame_momenta(pair.X + t * shift, pair.Y, eigs) if t else pt.p.astype(complex)
    return PhasePoint(eigs.real, p.real)


def eigen_trajectory(pt, t_max, dt, order=2, separation=TOL['separation']):
    pair = kks_pair(pt, separation)
    shift = _flow_shift(pair.Y, order)
    times = np.arange(int(round(t_max / dt)) + 1) * dt
    xs, ps = [pt.x.copy()], [pt.p.copy()]
    eigs = pt.x.astype(complex)
    for t in times[1:]:
        Xt = pair.X + t * shift
        eigs = _checked_eigs(Xt, eigs, separation, pt.scale)
        xs.append(eigs.real)
        ps.append(frame_momenta(Xt, pair.Y, eigs).real)
    xs, ps = np.array(xs), np.array(ps)
    H = np.array([integrals(PhasePoint(x, p)) for x, p in zip(xs, ps)])
    return TrajectorySample(times, xs, ps, H, 'eigen')


def central_difference_momenta(pt, t, h=1e-4):
    """p(t) = x'(t)/2 along the H_2 flow, by central differences."""
    ahead, behind = flow_eigen(pt, t + h), flow_eigen(pt, t - h)
    return (ahead.x - behind.x) / (4 * h)


# RK4
def cm_rhs(x, p):
    diffs = x[:, None] - x[None, :]
    np.fill_diagonal(diffs, np.inf)
    return 2 * p, -4 * np.sum(diffs ** -3, axis=1)


def ode_integrate(pt, t_max, dt, separation=TOL['separation']):
    """Classical RK4 for Hamilton's equations of H_2."""
    steps = int(round(t_max / dt))
    x, p = pt.x.copy(), pt.p.copy()
    xs, ps = [x.copy()], [p.copy()]
    for step in range(steps):
        k1x, k1p = cm_rhs(x, p)
        k2x, k2p = cm_rhs(x + 0.5 * dt * k1x, p + 0.5 * dt * k1p)
        k3x, k3p = cm_rhs(x + 0.5 * dt * k2x, p + 0.5 * dt * k2p)
        k4x, k4p = cm_rhs(x + dt * k3x, p + dt * k3p)
        x = x + dt / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        p = p + dt / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)
        if PhasePoint(x, p).separation() < separation * pt.scale:
            raise StepCollision(f"Particles collide at t = {(step + 1) * dt:.6g}")
        xs.append(x.copy())
        ps.append(p.copy())
    xs, ps = np.array(xs), np.array(ps)
    H = np.array([integrals(PhasePoint(a, b)) for a, b in zip(xs, ps)])
    times = np.arange(steps + 1) * dt
    return TrajectorySample(times, xs, ps, H, 'ode', {'energy_drift': float(np.max(np.abs(H[:, 1] - H[0, 1])))})


def trajectory(pt, t_max, dt, method='eigen'):
    if method == 'eigen':
        return eigen_trajectory(pt, t_max, dt)
    if method == 'ode':
        return ode_integrate(pt, t_max, dt)
    raise ValueError(f"Unknown method {method}; use 'eigen' or 'ode'")


def convergence_ratio(pt, t_max=1.0, dt=0.02):
    """Mismatch against the eigenvalue flow at dt over the mismatch at dt/2 (about 16 for RK4)."""
    exact = flow_eigen(pt, t_max)
    coarse = ode_integrate(pt, t_max, dt)
    fine = ode_integrate(pt, t_max, dt / 2)
    return float(np.max(np.abs(coarse.xs[-1] - exact.x)) / np.max(np.abs(fine.xs[-1] - exact.x)))


def random_phase_point(n, rng, gap=(2.0, 3.0), spread=(0.5, 1.5)):
    """Separated positions with outgoing momenta, so the attractive flow stays collision-free on [0, 1]."""
    x = np.cumsum(rng.uniform(*gap, n)) - gap[1] * n / 2
    p = np.cumsum(rng.uniform(*spread, n)) - spread[1] * n / 2
    return PhasePoint(x, p)


def flow_check(rng, samples, n=3, t_max=1.0, dt=1e-3, tol=TOL['flow'], energy=TOL['energy'],
               integral_tol=TOL['integrals']):
    report = CheckReport(f"flow n={n}")
    for _ in range(samples):
        pt = random_phase_point(n, rng)
        eig = eigen_trajectory(pt, t_max, dt)
        ode = ode_integrate(pt, t_max, dt)
        mismatch = float(np.max(np.abs(eig.xs - ode.xs)))
        report.record(mismatch <= tol, f"eigen vs ode mismatch {mismatch:.3g} at x={pt.x}, p={pt.p}")
        report.record(ode.details['energy_drift'] <= energy, f"energy drift {ode.details['energy_drift']:.3g}")
        for k in range(1, n + 1):
            drift = eig.drift(k)
            report.record(drift <= integral_tol * (1 + abs(eig.integrals[0, k - 1])), f"H_{k} drift {drift:.3g}")
        pair = kks_pair(pt)
        Xt = pair.X + 2 * t_max * pair.Y
        report.record(np.allclose(Xt @ pair.Y - pair.Y @ Xt, pair.X @ pair.Y - pair.Y @ pair.X, atol=1e-12),
                      "[X_t, Y] != [X_0, Y]")
        half = flow_eigen(flow_eigen(pt, t_max / 2), t_max / 2)
        whole = flow_eigen(pt, t_max)
        report.record(np.allclose(half.x, whole.x, atol=1e-8) and np.allclose(half.p, whole.p, atol=1e-8),
                      "g_s g_t != g_(s+t)")
        report.details.setdefault('mismatch', []).append(mismatch)
    return report


# Necklace bracket
def word_matrix(word, pair):
    out = np.identity(pair.n)
    for letter in word:
        out = out @ (pair.X if letter == 'X' else pair.Y)
    return out


def trace_word(word, pair):
    return float(np.trace(word_matrix(word, pair)))


def _rotation(word, position):
    return word[position + 1:] + word[:position]


def splice_terms(word_a, word_b, pair):
    """Signed traces of the cyclically spliced words (Y in a against X in b, minus the reverse)."""
    terms = []
    for alpha, la in enumerate(word_a):
        for beta, lb in enumerate(word_b):
            if la == lb:
                continue
            sign = 1 if la == 'Y' else -1
            terms.append(sign * trace_word(_rotation(word_a, alpha) + _rotation(word_b, beta), pair))
    return terms


def splice_bracket(word_a, word_b, pair):
    return float(sum(splice_terms(word_a, word_b, pair)))


def trace_gradient(word, pair, letter):
    """G with G_ij = d Tr(word) / d M_ji, M the matrix of `letter`."""
    out = np.zeros((pair.n, pair.n))
    for position, l in enumerate(word):
        if l == letter:
            out = out + word_matrix(_rotation(word, position), pair)
    return out


def gradient_bracket(word_a, word_b, pair):
    """{f, g} = Tr(G^Y_f G^X_g) - Tr(G^X_f G^Y_g)"""
    return float(np.trace(trace_gradient(word_a, pair, 'Y') @ trace_gradient(word_b, pair, 'X'))
                 - np.trace(trace_gradient(word_a, pair, 'X') @ trace_gradient(word_b, pair, 'Y')))


_STENCIL = np.array([-1, 9, -45, 0, 45, -9, 1]) / 60.0


def _numeric_gradient(word, pair, letter, h):
    """Seven-point central differences; exact on polynomials of degree <= 6 in each entry."""
    n = pair.n
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            values = []
            for s in range(-3, 4):
                X, Y = pair.X.copy(), pair.Y.copy()
                target = X if letter == 'X' else Y
                target[j, i] += s * h
                values.append(trace_word(word, MatrixPair(X, Y)))
            out[i, j] = float(_STENCIL @ np.array(values)) / h
    return out


def numeric_bracket(word_a, word_b, pair, h=0.5):
    return float(np.trace(_numeric_gradient(word_a, pair, 'Y', h) @ _numeric_gradient(word_b, pair, 'X', h))
                 - np.trace(_numeric_gradient(word_a, pair, 'X', h) @ _numeric_gradient(word_b, pair, 'Y', h)))


def necklace_bracket(word_a, word_b, pair, method='gradient'):
    """
    (lhs, rhs) for {Tr(word_a), Tr(word_b)}.

    lhs comes from the canonical structure ('gradient' for trace gradients, 'numeric' for
    finite differences); rhs is the spliced-trace double sum.
    """
    for word in (word_a, word_b):
        if not word or len(word) > 6 or any(ch not in 'XY' for ch in word):
            raise ValueError(f"Word '{word}' must be a nonempty X/Y string of length <= 6")
    if method == 'gradient':
        lhs = gradient_bracket(word_a, word_b, pair)
    elif method == 'numeric':
        lhs = numeric_bracket(word_a, word_b, pair)
    else:
        raise ValueError(f"Unknown method {method}")
    return lhs, splice_bracket(word_a, word_b, pair)


def all_words(max_length):
    return [''.join(w) for length in range(1, max_length + 1) for w in product('XY', repeat=length)]


def random_pair(n, rng):
    return MatrixPair(rng.standard_normal((n, n)), rng.standard_normal((n, n)))


def necklace_check(rng, trials, n=3, max_length=3, tol=TOL['necklace']):
    report = CheckReport(f"necklace n={n}")
    words = all_words(max_length)
    for _ in range(trials):
        pair = random_pair(n, rng)
        for a, b in product(words, repeat=2):
            lhs, rhs = necklace_bracket(a, b, pair)
            report.record(abs(lhs - rhs) <= tol * (1 + abs(lhs)), f"{{{a}, {b}}}: {lhs} vs {rhs}")
            if a < b:
                report.record(abs(lhs + gradient_bracket(b, a, pair)) <= tol * (1 + abs(lhs)),
                              f"{{{a}, {b}}} not antisymmetric")
    return report


# Symplectomorphism
def _power_sum_gradients(pt, k, kind):
    """(d/dx, d/dp) of a_k = sum x^k or b_k = sum x^k p."""
    x, p = pt.x, pt.p
    if kind == 'a':
        return k * x ** (k - 1), np.zeros_like(x)
    return k * x ** (k - 1) * p, x ** k


def canonical_bracket(grad_f, grad_g):
    """{f, g} = sum f_p g_x - f_x g_p"""
    fx, fp = grad_f
    gx, gp = grad_g
    return float(np.sum(fp * gx - fx * gp))


def _word(kind, k):
    return 'X' * k + ('Y' if kind == 'b' else '')


def symplectomorphism_check(pt, max_index=None, tol=TOL['symplectic']):
    """
    Brackets of a_k = Tr(X^k), b_k = Tr(X^k Y) at the KKS image agree with canonical
    brackets of sum x_i^k, sum x_i^k p_i and with the closed forms.
    """
    report = CheckReport(f"symplectomorphism n={pt.n}")
    pair = kks_pair(pt)
    top = max_index or pt.n
    value = {('a', k): float(np.sum(pt.x ** k)) for k in range(2 * top)}
    value.update({('b', k): float(np.sum(pt.x ** k * pt.p)) for k in range(2 * top)})
    expected = {('a', 'a'): lambda m, k: 0.0,
                ('b', 'a'): lambda m, k: k * value[('a', m + k - 1)],
                ('b', 'b'): lambda m, k: (k - m) * value[('b', m + k - 1)]}
    for (first, second), closed in expected.items():
        for m in range(1, top + 1):
            for k in range(1, top + 1):
                canon = canonical_bracket(_power_sum_gradients(pt, m, first), _power_sum_gradients(pt, k, second))
                matrix = splice_bracket(_word(first, m), _word(second, k), pair)
                target = closed(m, k)
                scale = 1 + abs(target)
                report.record(abs(canon - target) <= tol * scale, f"canonical {{{first}{m}, {second}{k}}} = {canon}")
                report.record(abs(matrix - target) <= tol * scale, f"matrix {{{first}{m}, {second}{k}}} = {matrix}")
    return report


def random_symplectic_point(n, rng):
    x = np.sort(rng.uniform(-2, 2, n))
    while np.min(np.diff(x)) < 0.2:
        x = np.sort(rng.uniform(-2, 2, n))
    return PhasePoint(x, rng.uniform(-1, 1, n))


# Trigonometric system
def trig_system(pt):
    """
    (coordinate form, additive form) of H = sum (x_i p_i)^2 - sum_{i != j} x_i x_j / (x_i - x_j)^2;
    additive coordinates q_i = log x_i, P_i = x_i p_i turn the potential into 1/(4 sinh^2((q_i - q_j)/2)).
    """
    if np.any(pt.x <= 0):
        raise NonPositiveCoordinate(f"Coordinates {pt.x} must be positive")
    x, p = pt.x, pt.p
    diffs = x[:, None] - x[None, :]
    np.fill_diagonal(diffs, np.inf)
    coordinate = float(np.sum((x * p) ** 2) - np.sum(np.outer(x, x) / diffs ** 2))
    q, P = np.log(x), x * p
    half = (q[:, None] - q[None, :]) / 2
    np.fill_diagonal(half, np.inf)
    additive = float(np.sum(P ** 2) - np.sum(1.0 / (4 * np.sinh(half) ** 2)))
    return coordinate, additive


def circle_system(theta, pstar):
    """
    With x_j = exp(i theta_j) and p_j = pstar_j / x_j: (coordinate form, sine form), where the
    sine form is sum pstar^2 + sum_{i != j} 1/(4 sin^2((theta_i - theta_j)/2)).
    """
    theta, pstar = np.asarray(theta, dtype=float), np.asarray(pstar, dtype=float)
    x = np.exp(1j * theta)
    p = pstar / x
    off = ~np.eye(len(theta), dtype=bool)
    diffs = x[:, None] - x[None, :]
    coordinate = complex(np.sum((x * p) ** 2) - np.sum(np.outer(x, x)[off] / diffs[off] ** 2))
    half = (theta[:, None] - theta[None, :]) / 2
    sine = float(np.sum(pstar ** 2) + np.sum(1.0 / (4 * np.sin(half[off]) ** 2)))
    return coordinate, sine


def trig_word(k):
    return 'XY' * k


def _spread_draw(rng, low, high, n, gap=0.1, period=None, max_tries=1000):
    """Sorted uniform draw on [low, high) whose neighbours (cyclically, given a period) are gap apart."""
    for _ in range(max_tries):
        v = np.sort(rng.uniform(low, high, n))
        gaps = np.diff(v)
        if period is not None:
            gaps = np.append(gaps, v[0] + period - v[-1])
        if np.min(gaps) >= gap:
            return v
    raise ValueError(f"No {n} points with gap {gap} in [{low}, {high}) after {max_tries} draws")


def trig_check(rng, samples, n=3, tol=TOL['trig'], bracket_tol=TOL['necklace'], max_index=3):
    report = CheckReport(f"trig n={n}")
    for _ in range(samples):
        x = _spread_draw(rng, 0.5, 5.0, n)
        pt = PhasePoint(x, rng.uniform(-1, 1, n))
        coordinate, additive = trig_system(pt)
        report.record(abs(coordinate - additive) <= tol * (1 + abs(coordinate)), f"forms differ at x={x}")
        star = trace_word(trig_word(2), kks_pair(pt))
        report.record(abs(star - coordinate) <= tol * (1 + abs(coordinate)), "Tr((XY)^2) != coordinate form")
        pair = random_pair(n, rng)
        for i in range(1, max_index + 1):
            for j in range(1, max_index + 1):
                terms = splice_terms(trig_word(i), trig_word(j), pair)
                scale = 1 + sum(abs(t) for t in terms)
                report.record(abs(sum(terms)) <= bracket_tol * scale, f"{{H*_{i}, H*_{j}}} = {sum(terms)}")
        theta = _spread_draw(rng, 0, 2 * np.pi, n, period=2 * np.pi)
        complex_form, sine = circle_system(theta, rng.uniform(-1, 1, n))
        report.record(abs(complex_form - sine) <= tol * (1 + abs(sine)), "circle forms differ")
    report.details['points'] = samples
    return report


# Exact integrals
def symbolic_integral(i, n):
    """Tr(Y(x, p)^i) as a RationalFunction over the roots x_a - x_b (a < b)."""
    if not 1 <= i <= 4 or not 2 <= n <= 4:
        raise ValueError(f"symbolic_integral supports 1 <= i <= 4 and 2 <= n <= 4, got i={i}, n={n}")
    coords = tuple(f"x{a + 1}" for a in range(n))
    momenta = tuple(f"p{a + 1}" for a in range(n))
    variables = coords + momenta
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    roots = tuple(ExactPoly.variable(coords[a], variables) - ExactPoly.variable(coords[b], variables)
                  for a, b in pairs)
    Y = [[None] * n for _ in range(n)]
    for a in range(n):
        Y[a][a] = RationalFunction(ExactPoly.variable(momenta[a], variables), None, roots, normalize=False)
    for idx, (a, b) in enumerate(pairs):
        Y[a][b] = RationalFunction.root_power(roots, idx, -1)
        Y[b][a] = -Y[a][b]
    power = Y
    for _ in range(i - 1):
        power = [[sum((power[a][c] * Y[c][b] for c in range(1, n)), power[a][0] * Y[0][b]) for b in range(n)]
                 for a in range(n)]
    total = power[0][0]
    for a in range(1, n):
        total = total + power[a][a]
    return total


def evaluate_integral(expr, pt):
    """Exact evaluation at the rationalized phase point, as a float."""
    point = {f"x{a + 1}": Fraction(float(v)) for a, v in enumerate(pt.x)}
    point.update({f"p{a + 1}": Fraction(float(v)) for a, v in enumerate(pt.p)})
    return float(expr.evaluate(point))
