#!/usr/bin/env python
from cmnerds import cmnerd_engine as ce
from cmnerds import metadata
from cmnerds.exact_core import CMError
import argparse
import sys

ap = argparse.ArgumentParser()
ap.add_argument('cmd', help=f"Action [{', '.join(ce.VERBS)}]", choices=ce.VERBS)
ap.add_argument('--refs', help="Print the statements this verb checks and exit", action='store_true')
ap.add_argument('--config', help="YAML config file [cmnerds.yaml if present]", default=None)
ap.add_argument('--profile', help="quick or full [CMNERDS_PROFILE or quick]", choices=['quick', 'full'], default=None)
ap.add_argument('--seed', help="Seed for randomized checks", type=int, default=None)
ap.add_argument('--workers', help="Worker pool size for verify", type=int, default=None)
ap.add_argument('--checks', help="verify: comma-separated check names [all]", default=None)
ap.add_argument('-o', '--out', help="Output file (.json or .csv)", default=None)
ap.add_argument('-g', '--group', help="Reflection group: Z2, S3, S4, B2, I2:5, ...", default=None)
ap.add_argument('--params', help="Class parameters, e.g. k=1/2 or c1=1,c2=1/3 [symbolic]", default=None)
ap.add_argument('--c', help="Rational parameter (op-gauge, rep0)", default=None)
ap.add_argument('--cap', help="Degree cap", type=int, default=None)
ap.add_argument('--tau', help="Lowest weight: triv, sign, refl", default=None)
ap.add_argument('--which', help="pbw: relations, assoc, sl2, flatness, grading, rescaling", default=None)
ap.add_argument('--samples', help="Sample count", type=int, default=None)
ap.add_argument('-n', '--n', help="Number of particles / rank of S_n", type=int, default=None)
ap.add_argument('-r', '--r', help="Numerator of k = r/n", type=int, default=None)
ap.add_argument('--point', help="support: rationals '0,1,1,3' or a pattern 'a,a,b,b'", default=None)
ap.add_argument('--lambda', dest='lambda', help="rep0: distinct rationals, e.g. 0,1,3", default=None)
ap.add_argument('--mu', help="rep0: rationals, e.g. 2,-1,5", default=None)
ap.add_argument('-x', '--x', help="Positions (csv)", default=None)
ap.add_argument('-p', '--p', help="Momenta (csv)", default=None)
ap.add_argument('--t-max', dest='t_max', help="Flow time [1.0]", type=float, default=None)
ap.add_argument('--dt', help="Time step [1e-3]", type=float, default=None)
ap.add_argument('--method', help="flow: eigen, ode, both; necklace: gradient, numeric", default=None)
ap.add_argument('--trials', help="necklace: random matrix pairs", type=int, default=None)
ap.add_argument('--maxlen', help="necklace: maximum word length [3]", type=int, default=None)
ap.add_argument('--word-a', dest='word_a', help="necklace: first X/Y word", default=None)
ap.add_argument('--word-b', dest='word_b', help="necklace: second X/Y word", default=None)
args = ap.parse_args()

options = {k: v for k, v in vars(args).items() if k not in ('cmd', 'refs', 'config', 'profile', 'seed', 'workers')}
try:
    config = metadata.load_config(args.config, args.profile, seed=args.seed, workers=args.workers)
    session = ce.CommandHandler(config, **options)
    if args.refs:
        sys.exit(session.refs(args.cmd))
    status = getattr(session, args.cmd.replace('-', '_'))()
except (ValueError, CMError) as e:
    print(f"{type(e).__name__}: {e}")
    sys.exit(2)
sys.exit(status)
