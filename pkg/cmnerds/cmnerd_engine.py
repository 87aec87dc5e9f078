from math import gcd
import time
import numpy as np

from . import metadata, onutil
from .coxeter import get_group, ClassParams
from . import dunkl_engine as dunkl
from . import cherednik_engine as cherednik
from . import typea_engine as typea
from . import cmflow_engine as cmflow
from . import verify_engine as verify


VERBS = ['verify', 'flow', 'dunkl-check', 'op-gauge', 'integrals', 'pbw', 'character', 'singular',
         'finite-dim', 'support', 'rep0', 'necklace', 'trig', 'summary']

VERB_CHECKS = {
    'verify': sorted(verify.CHECKS),
    'flow': ['flow', 'kks'],
    'dunkl-check': ['dunkl-commutativity', 'commutation-relation', 'dunkl-equivariance'],
    'op-gauge': ['op-gauge', 'heckman'],
    'integrals': ['integrals', 'qcm', 'classical-op'],
    'pbw': ['pbw', 'grading-element', 'sl2'],
    'character': ['verma-character'],
    'singular': ['singular-vectors'],
    'finite-dim': ['finite-dim'],
    'support': ['support'],
    'rep0': ['rep0'],
    'necklace': ['necklace', 'symplectomorphism'],
    'trig': ['trig'],
    'summary': [],
}


def parse_params(group, value):
    """'k=1/2' or 'c1=1,c2=1/3' (also bare '1/2' for every class); None -> symbolic."""
    if value is None:
        return ClassParams.symbolic(group)
    entries = [v for v in value.replace(' ', '').split(',') if len(v)]
    if all('=' not in e for e in entries):
        return ClassParams.numeric(group, *[onutil.parse_rational(e) for e in entries])
    values = {}
    for entry in entries:
        name, val = entry.split('=', 1)
        if name not in group.param_names:
            raise ValueError(f"Unknown parameter {name} for {group.name}; use {group.param_names}")
        values[name] = onutil.parse_rational(val)
    return ClassParams(group, values)


class CommandHandler:
    """
    One method per CLI verb. Each returns 0 (all checks pass) or 1.

    Parameters
    ----------
    config : dict
        from metadata.load_config
    kwargs
        parsed command-line options (None when not given)

    """
    def __init__(self, config, **kwargs):
        self.config = config
        self.args = kwargs
        self.seed = int(config['seed'])
        self.reports = []
        self.data = {}

    def _arg(self, key, default=None):
        val = self.args.get(key)
        return default if val is None else val

    def _rng(self, name):
        return onutil.check_rng(self.seed, name)

    def _group(self, default='S3'):
        return get_group(self._arg('group', default))

    def _finish(self, verb, t0, table=None):
        manifest = metadata.RunManifest(command=verb, arguments={k: v for k, v in self.args.items() if v is not None},
                                        seed=self.seed, version=_version(), wall_time=time.time() - t0,
                                        checks=[r.to_dict() for r in self.reports])
        for r in self.reports:
            print(f"{r.check:36s} {'pass' if r.passed else 'FAIL'} ({r.instances} instances)")
            for failure in r.failures[:5]:
                print(f"    {failure}")
        if table is not None:
            from tabulate import tabulate
            print(tabulate(table[1], headers=table[0]))
        out = self._arg('out')
        if out:
            if isinstance(self.data, dict):
                metadata.write_output({'manifest': manifest.to_dict(), 'data': self.data}, out)
            else:
                metadata.write_output(self.data, out)
        status = 'pass' if manifest.passed else 'fail'
        metadata.onlog([f"result: {verb} {status}", manifest.summary_line()], self.config.get('log_file'))
        return 0 if manifest.passed else 1

    def _start(self, verb):
        shown = ' '.join(f"{k}={v}" for k, v in self.args.items() if v is not None)
        metadata.onlog([f"start: {verb} {shown}".strip(), f"seed: {self.seed}"], self.config.get('log_file'))
        return time.time()

    def refs(self, verb):
        for name in VERB_CHECKS[verb]:
            print(f"{name}: {verify.refs(name)}")
        return 0

    def verify(self):
        t0 = self._start('verify')
        names = self._arg('checks')
        names = [n.strip() for n in names.split(',')] if names else None
        manifest = verify.verify_all(self.config, names, {k: v for k, v in self.args.items() if v is not None})
        npass = sum(c['status'] == 'pass' for c in manifest.checks)
        print(f"{npass}/{len(manifest.checks)} checks pass ({manifest.wall_time:.1f}s)")
        if self._arg('out'):
            metadata.write_output(manifest, self._arg('out'))
        metadata.onlog(f"result: verify {'pass' if manifest.passed else 'fail'}", self.config.get('log_file'))
        return 0 if manifest.passed else 1

    def flow(self):
        t0 = self._start('flow')
        n = int(self._arg('n', 3))
        rng = self._rng('flow')
        x = onutil.parse_float_vector(self._arg('x'), n)
        p = onutil.parse_float_vector(self._arg('p'), n)
        if x is None or p is None:
            pt = cmflow.random_phase_point(n, rng)
            pt = cmflow.PhasePoint(pt.x if x is None else x, pt.p if p is None else p)
        else:
            pt = cmflow.PhasePoint(x, p)
        t_max, dt = float(self._arg('t_max', 1.0)), float(self._arg('dt', 1e-3))
        method = self._arg('method', 'both')
        methods = ['eigen', 'ode'] if method == 'both' else [method]
        samples = [cmflow.trajectory(pt, t_max, dt, m) for m in methods]
        tol = self.config['tolerances']
        report = metadata.CheckReport('flow')
        ok, sv = cmflow.rank_one_check(cmflow.kks_pair(pt), tol['rank_hi'], tol['rank_lo'])
        report.record(ok, f"rank-one defect singular values {sv}")
        for sample in samples:
            if sample.method == 'ode':
                report.record(sample.drift(2) <= tol['energy'], f"ode energy drift {sample.drift(2):.3g}")
                continue
            for k in range(1, n + 1):
                limit = tol['integrals'] * (1 + abs(sample.integrals[0, k - 1]))
                report.record(sample.drift(k) <= limit, f"eigen H_{k} drift {sample.drift(k):.3g}")
        if len(samples) == 2:
            mismatch = float(np.max(np.abs(samples[0].xs - samples[1].xs)))
            report.record(mismatch <= tol['flow'], f"eigen vs ode mismatch {mismatch:.3g}")
            report.details['mismatch'] = mismatch
        self.reports.append(report)
        import pandas as pd
        self.data = pd.concat([s.to_frame() for s in samples], ignore_index=True)
        last = samples[0]
        table = (['t'] + [f"x_{i + 1}" for i in range(n)],
                 [[last.times[i]] + list(last.xs[i]) for i in np.linspace(0, len(last.times) - 1, 6).astype(int)])
        return self._finish('flow', t0, table)

    def dunkl_check(self):
        t0 = self._start('dunkl-check')
        group = self._group()
        c = parse_params(group, self._arg('params'))
        cap = int(self._arg('cap', self.config['caps']['dunkl']))
        self.reports += [dunkl.dunkl_commutativity(group, c, cap),
                         dunkl.commutation_relation(group, c, min(cap, self.config['caps']['relation'])),
                         dunkl.conjugation_check(group, c)]
        self.data = {'group': group.to_json(), 'params': c.as_dict(),
                     'operators': {f"D{i + 1}": dunkl.describe_operator(dunkl.dunkl_operator(group, group.basis_vector(i), c))
                                   for i in range(group.dim)}}
        return self._finish('dunkl-check', t0)

    def op_gauge(self):
        t0 = self._start('op-gauge')
        group = self._group()
        value = onutil.parse_rational(self._arg('c', 1))
        c = ClassParams.numeric(group, value)
        cap = int(self._arg('cap', self.config['caps']['gauge']))
        self.reports += [dunkl.gauge_identity_check(group, c, cap),
                         dunkl.heckman_check(group, ClassParams.symbolic(group), self.config['caps']['heckman'])]
        self.data = {'L': dunkl.describe_operator(dunkl.op_operator(group, c)),
                     'Lbar': dunkl.describe_operator(dunkl.heckman_operator(group, c)),
                     'delta': dunkl.delta_c(group, c).to_json()}
        return self._finish('op-gauge', t0)

    def integrals(self):
        t0 = self._start('integrals')
        group = self._group()
        c = parse_params(group, self._arg('params'))
        cap = int(self._arg('cap', self.config['caps']['integrals']))
        self.reports += [dunkl.integrals_check(group, c, cap), dunkl.theta_check(group, c),
                         dunkl.classical_integrals_check(group, c)]
        if group.name.startswith('S'):
            self.reports.append(dunkl.qcm_check(group.dim))
        self.data = {'quantum': [dunkl.describe_operator(L) for _, L in dunkl.quantum_integrals(group, c)],
                     'classical': [str(L) for L in dunkl.classical_integrals(group, c)]}
        return self._finish('integrals', t0)

    def pbw(self):
        t0 = self._start('pbw')
        group = self._group()
        which = self._arg('which', 'relations')
        cap = int(self._arg('cap', self.config['caps']['pbw']))
        samples = int(self._arg('samples', self.config['samples']['assoc']))
        self.reports.append(cherednik.pbw_check(group, self._rng('pbw'), samples, cap, which))
        self.data = {'grading_element': cherednik.CherednikAlgebra(group).grading_element().to_json()}
        return self._finish('pbw', t0)

    def character(self):
        t0 = self._start('character')
        group = self._group()
        tau = cherednik.LowestWeight.by_name(group, self._arg('tau', 'triv'))
        c = parse_params(group, self._arg('params'))
        cap = int(self._arg('cap', self.config['caps']['character']))
        self.reports.append(cherednik.character_check(group, c, tau, cap))
        module = cherednik.GradedModuleSlice(group, c, tau, cap)
        character = module.graded_character(cap)
        self.data = {'offset': character['offset'], 'classes': character['classes']}
        if c.is_numeric():
            self.data['irreducible_dimensions'] = cherednik.irreducible_dimensions(group, c, tau, min(cap, 4))
        names = list(character['classes'])
        rows = [[d] + [character['classes'][k][d] for k in names] for d in range(min(cap + 1, 8))]
        return self._finish('character', t0, (['degree'] + names, rows))

    def singular(self):
        t0 = self._start('singular')
        family = typea.singular_vectors(int(self._arg('n', 3)), int(self._arg('r', 2)))
        self.reports.append(typea.singular_check(family))
        self.data = family.to_dict()
        for i, f in enumerate(family.vectors):
            print(f"f_{i + 1} = {f}")
        return self._finish('singular', t0)

    def finite_dim(self):
        t0 = self._start('finite-dim')
        n, r = int(self._arg('n', 3)), int(self._arg('r', 2))
        cap = int(self._arg('cap', self.config['caps']['finite_dim']))
        self.reports.append(typea.quotient_check(n, r, cap))
        slices = typea.quotient_slices(n, r, cap)
        if gcd(n, r) == 1:
            self.reports += [typea.frobenius_check(slices), typea.bgg_euler_check(slices)]
        self.data = slices.to_dict()
        self.data['character'] = typea.quotient_character(slices)
        return self._finish('finite-dim', t0, (['degree', 'dim'], list(enumerate(slices.dims))))

    def support(self):
        t0 = self._start('support')
        n, r = int(self._arg('n', 4)), int(self._arg('r', 2))
        rng = self._rng('support')
        pattern = self._arg('point')
        report = metadata.CheckReport('support')
        if pattern:
            point = onutil.parse_point_pattern(pattern, rng)
            vanishes = typea.support_test(n, r, point)
            predicted = typea.support_predicted(n, r, point)
            report.record(vanishes == predicted, f"vanishes={vanishes} predicted={predicted} at {point}")
            self.data = {'point': point, 'vanishes': vanishes, 'predicted': predicted}
            print(f"point {[str(v) for v in point]}: vanishes = {vanishes}")
            self.reports.append(report)
        else:
            self.reports.append(typea.support_check(n, r, rng, self.config['samples']['support']))
        return self._finish('support', t0)

    def rep0(self):
        t0 = self._start('rep0')
        n = int(self._arg('n', 3))
        rng = self._rng('rep0')
        lam = onutil.parse_rational_vector(self._arg('lambda'), n)
        mu = onutil.parse_rational_vector(self._arg('mu'), n)
        if lam is None or mu is None:
            rlam, rmu = typea.random_rep_data(n, rng)
            lam, mu = lam or rlam, mu or rmu
        c = onutil.parse_rational(self._arg('c', 1))
        rep = typea.orbit_representation(n, lam, mu, c)
        self.reports.append(typea.orbit_relations_check(rep))
        if c == 1:
            self.reports += [typea.cm_point_check(rep), typea.central_character_check(rep)]
            X, Y = typea.cm_point_from_rep(rep)
            self.data = {'lambda': lam, 'mu': mu, 'X': X, 'Y': Y}
        else:
            self.data = {'lambda': lam, 'mu': mu, 'c': c, 'dimension': rep.dim}
        return self._finish('rep0', t0)

    def necklace(self):
        t0 = self._start('necklace')
        n = int(self._arg('n', 3))
        rng = self._rng('necklace')
        word_a, word_b = self._arg('word_a'), self._arg('word_b')
        if word_a and word_b:
            pair = cmflow.random_pair(n, rng)
            lhs, rhs = cmflow.necklace_bracket(onutil.parse_word(word_a), onutil.parse_word(word_b), pair,
                                               self._arg('method', 'gradient'))
            report = metadata.CheckReport('necklace')
            report.record(abs(lhs - rhs) <= self.config['tolerances']['necklace'] * (1 + abs(lhs)), f"{lhs} vs {rhs}")
            self.reports.append(report)
            self.data = {'lhs': lhs, 'rhs': rhs, 'X': pair.X, 'Y': pair.Y}
        else:
            trials = int(self._arg('trials', self.config['samples']['necklace']))
            self.reports.append(cmflow.necklace_check(rng, trials, n, int(self._arg('maxlen', 3)),
                                                      self.config['tolerances']['necklace']))
            self.reports.append(cmflow.symplectomorphism_check(cmflow.random_symplectic_point(n, rng),
                                                               tol=self.config['tolerances']['symplectic']))
        return self._finish('necklace', t0)

    def trig(self):
        t0 = self._start('trig')
        n = int(self._arg('n', 3))
        rng = self._rng('trig')
        x = onutil.parse_float_vector(self._arg('x'), n)
        if x is not None:
            p = onutil.parse_float_vector(self._arg('p'), n)
            pt = cmflow.PhasePoint(x, np.zeros(n) if p is None else p)
            coordinate, additive = cmflow.trig_system(pt)
            report = metadata.CheckReport('trig')
            report.record(abs(coordinate - additive) <= self.config['tolerances']['trig'] * (1 + abs(coordinate)),
                          f"{coordinate} vs {additive}")
            self.reports.append(report)
            self.data = {'coordinate_form': coordinate, 'additive_form': additive}
        else:
            self.reports.append(cmflow.trig_check(rng, int(self._arg('samples', self.config['samples']['trig'])), n,
                                                  self.config['tolerances']['trig'],
                                                  self.config['tolerances']['necklace']))
        return self._finish('trig', t0)

    def summary(self):
        metadata.get_summary(self.config.get('log_file'))
        return 0


def _version():
    from . import __version__
    return __version__
