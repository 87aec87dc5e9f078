"""
Named verification checks, run on a bounded worker pool and assembled in name order.

"""
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
import time

from .coxeter import get_group, ClassParams
from . import dunkl_engine as dunkl
from . import cherednik_engine as cherednik
from . import typea_engine as typea
from . import cmflow_engine as cmflow
from .metadata import CheckReport, RunManifest, onlog
from .onutil import check_rng


CHECKS = {}


def check(name, refs):
    """Register a check function f(config, rng) -> CheckReport under `name`."""
    def register(func):
        CHECKS[name] = {'func': func, 'refs': refs}
        return func
    return register


def combine(name, reports):
    out = CheckReport(name)
    for report in reports:
        out.instances += report.instances
        out.failures += [f"{report.check}: {f}" for f in report.failures]
        if report.details:
            out.details[report.check] = report.details
    return out


def _cap(config, key):
    return config['caps'][key]


def _samples(config, key):
    return config['samples'][key]


def _groups(config, allowed=None):
    groups = [get_group(label) for label in config['groups']]
    if allowed is not None:
        groups = [g for g in groups if g.name in allowed]
    return groups


@check('dunkl-commutativity', 'Dunkl operators commute: [D_a, D_b] f = 0 for symbolic c')
def dunkl_commutativity(config, rng):
    reports = []
    for group in _groups(config):
        cap = _cap(config, 'dunkl_rank4') if group.name == 'S4' else _cap(config, 'dunkl')
        reports.append(dunkl.dunkl_commutativity(group, ClassParams.symbolic(group), cap))
    return combine('dunkl-commutativity', reports)


@check('commutation-relation', '[D_a, x] = (a, x) - sum_s c_s (a, alpha_s)(x, alpha_s^vee) s')
def commutation_relation(config, rng):
    reports = [dunkl.commutation_relation(g, ClassParams.symbolic(g), _cap(config, 'relation'))
               for g in _groups(config)]
    reports += [dunkl.classical_limit_check(g, ClassParams.symbolic(g)) for g in _groups(config, {'S3', 'B2'})]
    return combine('commutation-relation', reports)


@check('dunkl-equivariance', 'g D_a g^-1 = D_{ga}; D_a linear in a and lowers degree by one')
def dunkl_equivariance(config, rng):
    reports = []
    for group in _groups(config, {'Z2', 'S3', 'B2'}):
        c = ClassParams.symbolic(group)
        reports.append(dunkl.conjugation_check(group, c))
        reports.append(dunkl.linearity_check(group, c, 3, rng))
    return combine('dunkl-equivariance', reports)


@check('heckman', 'm(sum D_i^2) = Lbar = Delta - sum_s c_s (alpha_s, alpha_s)/alpha_s d_{alpha_s^vee} on invariants')
def heckman(config, rng):
    reports = [dunkl.heckman_check(g, ClassParams.symbolic(g), _cap(config, 'heckman'))
               for g in _groups(config, {'S3', 'B2'})]
    return combine('heckman', reports)


@check('op-gauge', 'Lbar(delta_c f) = delta_c L f for integer c; Delta delta = 0')
def op_gauge(config, rng):
    reports = []
    for group in _groups(config, {'Z2', 'S3'}):
        for value in (1, 2):
            reports.append(dunkl.gauge_identity_check(group, ClassParams.numeric(group, value), _cap(config, 'gauge')))
    discriminant = CheckReport('laplacian-discriminant')
    for group in _groups(config):
        discriminant.record(group.laplacian_kills_discriminant(), f"Delta delta != 0 for {group.name}")
    return combine('op-gauge', reports + [discriminant])


@check('qcm', 'OP operator of S_n equals sum d_j^2 - sum_{i != j} k(k+1)/(x_i - x_j)^2')
def qcm(config, rng):
    return combine('qcm', [dunkl.qcm_check(n) for n in (2, 3)] +
                   [dunkl.invariance_check(get_group('S3'), ClassParams.symbolic(get_group('S3')))])


@check('integrals', 'Quantum integrals m(P(D)) commute; their gauge transforms include the OP operator')
def integrals(config, rng):
    reports = [dunkl.integrals_check(get_group(label), ClassParams.symbolic(get_group(label)),
                                       _cap(config, 'integrals'))
               for label in ('Z2', 'S3')]
    return combine('integrals', reports)


@check('classical-op', 'theta_c(Lbar0) = p^2 - sum_s c_s^2 (alpha_s, alpha_s)/alpha_s^2; classical Dunkl operators commute')
def classical_op(config, rng):
    reports = []
    for label in ('Z2', 'S3'):
        group = get_group(label)
        reports.append(dunkl.theta_check(group, ClassParams.symbolic(group)))
    s3 = get_group('S3')
    reports.append(dunkl.classical_commutativity(s3, ClassParams.symbolic(s3)))
    reports.append(dunkl.classical_integrals_check(s3, ClassParams.symbolic(s3)))
    return combine('classical-op', reports)


@check('pbw', 'PBW basis: |W| C(2l + N, 2l) elements of filtration degree <= N; associative multiplication')
def pbw(config, rng):
    reports = []
    for label in ('Z2', 'S3'):
        algebra = cherednik.CherednikAlgebra(get_group(label))
        reports.append(cherednik.relations_check(algebra))
        reports.append(cherednik.flatness_check(algebra, _cap(config, 'pbw')))
        reports.append(cherednik.associativity_check(algebra, rng, _samples(config, 'assoc')))
    return combine('pbw', reports)


@check('grading-element', '[h, x] = t x, [h, y] = -t y, h W-invariant, sl2 triple; h acts on M_c(tau)_d by h(tau) + d')
def grading_element(config, rng):
    reports = []
    for label in ('Z2', 'S3', 'B2'):
        algebra = cherednik.CherednikAlgebra(get_group(label))
        reports.append(cherednik.grading_check(algebra))
    s3 = get_group('S3')
    for name in ('triv', 'sign'):
        tau = cherednik.LowestWeight.by_name(s3, name)
        reports.append(cherednik.verma_relations_check(s3, ClassParams.symbolic(s3), tau, 2))
    reports.append(cherednik.verma_dunkl_crosscheck(s3, ClassParams.symbolic(s3), 2))
    return combine('grading-element', reports)


@check('sl2', 'SL2 acts by automorphisms x -> ax + by, y -> cx + dy; Fourier transform squares to (-1)^deg')
def sl2(config, rng):
    algebra = cherednik.CherednikAlgebra(get_group('S3'))
    reports = [cherednik.sl2_check(algebra, rng, max(2, _samples(config, 'assoc') // 5)),
               cherednik.rescaling_check(algebra, rng, max(2, _samples(config, 'assoc') // 5))]
    return combine('sl2', reports)


@check('verma-character', 'Tr(g | M_c(tau)) = chi_tau(g) t^h(tau) / det(1 - g t)')
def verma_character(config, rng):
    s3 = get_group('S3')
    reports = [cherednik.character_check(s3, ClassParams.symbolic(s3), cherednik.LowestWeight.by_name(s3, name),
                                         _cap(config, 'character')) for name in ('triv', 'sign')]
    reports.append(cherednik.character_check(s3, ClassParams.symbolic(s3), cherednik.LowestWeight.reflection(s3), 4))
    reports.append(cherednik.shapovalov_check(get_group('Z2'), ClassParams.symbolic(get_group('Z2')),
                                              cherednik.LowestWeight.trivial(get_group('Z2')), 3))
    return combine('verma-character', reports)


@check('singular-vectors', 'f_i = Res_inf prod (z - x_j)^(r/n) dz / (z - x_i) are killed by Dunkl operators at k = r/n')
def singular_vectors(config, rng):
    reports = [typea.singular_check(typea.singular_vectors(n, r)) for n, r in ((2, 1), (2, 3), (3, 1), (3, 2), (4, 3))]
    return combine('singular-vectors', reports)


@check('finite-dim', 'dim M_k/I_k = r^(n-1); character t^((1-r)(n-1)/2) det(1 - g t^r)/det(1 - g t); Frobenius pairing')
def finite_dim(config, rng):
    reports = []
    for n, r in ((2, 3), (3, 2), (3, 4)):
        reports.append(typea.quotient_check(n, r, _cap(config, 'finite_dim')))
        slices = typea.quotient_slices(n, r, _cap(config, 'finite_dim'))
        reports.append(typea.frobenius_check(slices))
        reports.append(typea.bgg_euler_check(slices))
    return combine('finite-dim', reports)


@check('support', 'f_i vanish exactly when every multiplicity is a multiple of n / gcd(n, r)')
def support(config, rng):
    return combine('support', [typea.support_check(4, 2, rng, _samples(config, 'support')),
                               typea.support_check(3, 2, rng, _samples(config, 'support')),
                               typea.residue_lemma_check(rng, 2 * _samples(config, 'support'))])


@check('rep0', 'Functions on the S_n-orbit of (lam, mu) form an n!-dimensional H_{0,c} module over a CM point')
def rep0(config, rng):
    reports = []
    for n in (2, 3):
        for _ in range(_samples(config, 'rep0')):
            lam, mu = typea.random_rep_data(n, rng)
            rep = typea.orbit_representation(n, lam, mu)
            reports += [typea.orbit_relations_check(rep), typea.cm_point_check(rep),
                        typea.central_character_check(rep)]
            reports.append(typea.relabeling_check(n, lam, mu, rng))
    return combine('rep0', reports)


@check('flow', 'x(t) = eigenvalues of X + 2tY solve the CM equations; integrals are conserved')
def flow(config, rng):
    tol = config['tolerances']
    return cmflow.flow_check(rng, _samples(config, 'flow'), tol=tol['flow'], energy=tol['energy'],
                             integral_tol=tol['integrals'])


@check('kks', 'XY - YX + 1 has rank one at X = diag(x), Y_ij = 1/(x_i - x_j), Y_ii = p_i')
def kks(config, rng):
    report = CheckReport('kks')
    for n in range(2, 7):
        for _ in range(_samples(config, 'symplectic')):
            pt = cmflow.random_symplectic_point(n, rng)
            ok, sv = cmflow.rank_one_check(cmflow.kks_pair(pt), config['tolerances']['rank_hi'],
                                           config['tolerances']['rank_lo'])
            report.record(ok, f"singular values {sv}")
            H = cmflow.integrals(pt)[1]
            report.record(abs(H - cmflow.hamiltonian(pt)) <= 1e-9 * (1 + abs(H)), "Tr(Y^2) != H")
    for i in (1, 2, 3):
        expr = cmflow.symbolic_integral(i, 3)
        for _ in range(_samples(config, 'symplectic')):
            pt = cmflow.random_symplectic_point(3, rng)
            exact = cmflow.evaluate_integral(expr, pt)
            numeric = cmflow.integrals(pt, i)[i - 1]
            report.record(abs(exact - numeric) <= 1e-10 * (1 + abs(exact)), f"H_{i} symbolic {exact} vs {numeric}")
    return report


@check('necklace', '{Tr a, Tr b} = sum of signed traces of spliced words')
def necklace(config, rng):
    return cmflow.necklace_check(rng, _samples(config, 'necklace'), tol=config['tolerances']['necklace'])


@check('symplectomorphism', '{b_m, a_k} = k a_{m+k-1}, {b_m, b_k} = (k - m) b_{m+k-1}, {a_m, a_k} = 0 on both sides')
def symplectomorphism(config, rng):
    reports = [cmflow.symplectomorphism_check(cmflow.random_symplectic_point(3, rng),
                                              tol=config['tolerances']['symplectic'])
               for _ in range(_samples(config, 'symplectic'))]
    return combine('symplectomorphism', reports)


@check('trig', 'sum (x_i p_i)^2 - sum x_i x_j/(x_i - x_j)^2 = sum P^2 - sum 1/(4 sinh^2((q_i - q_j)/2)); H*_i in involution')
def trig(config, rng):
    return cmflow.trig_check(rng, _samples(config, 'trig'), tol=config['tolerances']['trig'],
                             bracket_tol=config['tolerances']['necklace'])


def run_check(name, config):
    """Run one named check; exceptions become recorded failures."""
    entry = CHECKS[name]
    rng = check_rng(config['seed'], name)
    t0 = time.time()
    try:
        report = entry['func'](config, rng)
    except Exception as e:
        report = CheckReport(name)
        report.record(False, f"{type(e).__name__}: {e}")
    report.check = name
    report.anchors = entry['refs']
    report.details['seconds'] = round(time.time() - t0, 3)
    print(f"{name:24s} {'pass' if report.passed else 'FAIL'} ({report.instances} instances)")
    return report


def run_checks(config, names=None):
    names = sorted(names or CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"Unknown checks {unknown}; choose from {sorted(CHECKS)}")
    with ThreadPoolExecutor(max_workers=max(1, int(config['workers']))) as pool:
        reports = list(pool.map(lambda n: run_check(n, config), names))
    return sorted(reports, key=lambda r: r.check)


def verify_all(config, names=None, arguments=None):
    """Every named check at the profile's caps; returns the RunManifest."""
    from . import __version__
    t0 = time.time()
    reports = run_checks(config, names)
    manifest = RunManifest(command='verify', arguments=arguments or {'profile': config['profile']},
                           seed=config['seed'], version=__version__, wall_time=time.time() - t0,
                           checks=[r.to_dict() for r in reports])
    onlog(manifest.summary_line(), config.get('log_file'))
    return manifest


def refs(name=None):
    if name is None:
        return {n: CHECKS[n]['refs'] for n in sorted(CHECKS)}
    return CHECKS[name]['refs']


def mutated_dunkl_report(group_label='S3', factor=Fraction(3, 2), max_degree=2):
    """Commutativity with one reflection term of D_a scaled by `factor`; expected to fail."""
    group = get_group(group_label)
    weights = [factor] + [1] * (len(group.reflections) - 1)
    return dunkl.dunkl_commutativity(group, ClassParams.symbolic(group), max_degree, weights)
