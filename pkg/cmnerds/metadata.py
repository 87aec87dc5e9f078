from dataclasses import dataclass, field, asdict
from datetime import datetime, timezone, timedelta
from fractions import Fraction
import io
import json
import os
import yaml
from . import onutil


ONLOG_FILENAME = os.environ.get('CMNERDS_LOG', 'cmlog.log')
CONFIG_FILENAME = 'cmnerds.yaml'
UTC = timezone(timedelta(0), 'UTC')
LOGFILE_DELIMITER = '--'
LOG_ENTRIES_TO_GET = ['start:', 'result:', 'check:', 'manifest:', 'seed:']

DEFAULTS = {
    'profile': 'quick',
    'seed': 20240611,
    'workers': 4,
    'log_file': ONLOG_FILENAME,
    'tolerances': {'rank_hi': 1e-6, 'rank_lo': 1e-8, 'flow': 1e-6, 'energy': 1e-8,
                   'integrals': 1e-10, 'necklace': 1e-9, 'symplectic': 1e-9, 'trig': 1e-10,
                   'separation': 1e-8},
    'caps': {'dunkl': 5, 'dunkl_rank4': 4, 'relation': 4, 'heckman': 6, 'gauge': 4,
             'integrals': 6, 'pbw': 6, 'character': 10, 'finite_dim': 8},
    'groups': ['Z2', 'S3', 'S4', 'B2', 'I2:3', 'I2:5'],
}

PROFILES = {
    'quick': {'caps': {'dunkl': 3, 'dunkl_rank4': 2, 'relation': 2, 'heckman': 4, 'gauge': 2,
                       'integrals': 2, 'pbw': 3, 'character': 6, 'finite_dim': 8},
              'samples': {'assoc': 10, 'flow': 2, 'necklace': 5, 'symplectic': 5, 'trig': 5,
                          'support': 3, 'rep0': 2, 'h3': 10}},
    'full': {'caps': {},
             'samples': {'assoc': 200, 'flow': 10, 'necklace': 100, 'symplectic': 50, 'trig': 50,
                         'support': 20, 'rep0': 5, 'h3': 100}},
}


# Log functions
def onlog(notes, filename=None):
    """
    Add notes to the run log.

    Parameters
    ----------
    notes : str or list
        entries to add
    filename : str or None
        log file, default ONLOG_FILENAME
    """
    if isinstance(notes, str):
        notes = [notes]
    ts = datetime.now().astimezone(UTC).isoformat()
    with open(filename or ONLOG_FILENAME, 'a') as fp:
        for note in notes:
            print(f"{ts} {LOGFILE_DELIMITER} {note}", file=fp)


class Onlog:
    def __init__(self, entries=LOG_ENTRIES_TO_GET, delimiter=LOGFILE_DELIMITER, filename=None, auto_read=False):
        self.file = filename or ONLOG_FILENAME
        self.delimiter = delimiter
        self.entries = entries
        self.data = {'other': {}}
        self.latest = {}
        self.keys = [p.strip(':') for p in self.entries]
        for key in self.keys:
            self.data[key] = {}
            self.latest[key] = ''
        if auto_read:
            self.read()

    def read(self):
        self.all_timestamps = set()
        with open(self.file, 'r') as fp:
            for line in fp:
                par_not_found = True
                linedata = [x.strip() for x in line.split(self.delimiter)]
                timestamp, payload = linedata[0], self.delimiter.join(linedata[1:]).strip()
                self.all_timestamps.add(timestamp)
                for key, entry in zip(self.keys, self.entries):
                    if payload.startswith(entry):
                        par_not_found = False
                        self.data[key].setdefault(timestamp, [])
                        self.data[key][timestamp].append(payload)
                        self.latest[key] = payload
                if par_not_found:
                    self.data['other'][timestamp] = payload
        self.all_timestamps = sorted(list(self.all_timestamps))

    def get_latest_value(self, key, parse=False):
        val = self.latest[key]
        if parse:
            val = val.split(parse, 1)[-1].strip()
        return val


def get_latest_value(key, parse=False, filename=None):
    """
    Return the latest entry for a given key.

    Parameters
    ----------
    key : str
        key to use, e.g. 'result'
    parse : str or False
        if str will split on that string and return the remainder
    """
    log = Onlog(filename=filename, auto_read=True)
    return log.get_latest_value(key=key, parse=parse)


def get_summary(filename=None):
    """Print (and return) a table of verb starts and results from the run log."""
    from tabulate import tabulate
    log = Onlog(filename=filename, auto_read=True)
    table_data = []
    for ts in log.all_timestamps:
        for note in log.data['start'].get(ts, []):
            table_data.append([ts, note.split(':', 1)[-1].strip(), ''])
        for note in log.data['result'].get(ts, []):
            if table_data:
                table_data[-1][2] = note.split(':', 1)[-1].strip()
    print(tabulate(table_data, headers=['timestamp', 'command', 'result']))
    return table_data


# Configuration
def _merge(base, extra):
    out = dict(base)
    for key, val in (extra or {}).items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], val)
        else:
            out[key] = val
    return out


def load_config(path=None, profile=None, **overrides):
    """
    Built-in defaults < profile < YAML config file < explicit overrides (CLI flags).

    The profile comes from, in order: `profile`, the config file, CMNERDS_PROFILE, 'quick'.
    """
    config = _merge(DEFAULTS, {})
    filename = path or CONFIG_FILENAME
    file_config = {}
    if os.path.exists(filename):
        with open(filename, 'r') as fp:
            file_config = yaml.safe_load(fp) or {}
    elif path is not None:
        raise ValueError(f"Config file {path} not found")
    chosen = profile or file_config.get('profile') or os.environ.get('CMNERDS_PROFILE') or DEFAULTS['profile']
    if chosen not in PROFILES:
        raise ValueError(f"Unknown profile {chosen}; use one of {list(PROFILES)}")
    config = _merge(config, PROFILES[chosen])
    config = _merge(config, file_config)
    config = _merge(config, {k: v for k, v in overrides.items() if v is not None})
    config['profile'] = chosen
    return config


# Reports
@dataclass
class CheckReport:
    check: str
    instances: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    anchors: str = ''

    def record(self, ok, what=''):
        self.instances += 1
        if not ok:
            self.failures.append(str(what))
        return ok

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {'check': self.check, 'status': 'pass' if self.passed else 'fail',
                'instances': self.instances, 'failures': self.failures[:20],
                'details': jsonable(self.details), 'anchors': self.anchors}


@dataclass
class RunManifest:
    command: str
    arguments: dict
    seed: int
    version: str
    wall_time: float = 0.0
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c['status'] == 'pass' for c in self.checks)

    def to_dict(self):
        out = asdict(self)
        out['status'] = 'pass' if self.passed else 'fail'
        return jsonable(out)

    def summary_line(self):
        npass = sum(c['status'] == 'pass' for c in self.checks)
        return f"manifest: {self.command} seed={self.seed} {npass}/{len(self.checks)} pass ({self.wall_time:.1f}s)"


def jsonable(value):
    """Exact rationals become 'num/den' strings; containers are walked recursively."""
    from .exact_core import ExactPoly, RationalFunction, QuadraticRational, rational_str
    import numpy as np
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (Fraction, QuadraticRational)):
        return rational_str(value)
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, ExactPoly):
        return value.to_json()
    if isinstance(value, RationalFunction):
        return str(value)
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return str(value)


def emit(payload, fmt='json'):
    """
    Canonical serialization.

    Parameters
    ----------
    payload : dict, CheckReport, RunManifest or pandas.DataFrame
    fmt : str
        'json' or 'csv'
    """
    if fmt == 'csv':
        import pandas as pd
        if not isinstance(payload, pd.DataFrame):
            payload = pd.DataFrame(payload)
        buf = io.StringIO()
        payload.to_csv(buf, index=False, float_format='%.17g')
        return buf.getvalue().encode()
    if fmt != 'json':
        raise ValueError(f"Unknown format {fmt}")
    if hasattr(payload, 'to_dict') and not hasattr(payload, 'columns'):
        payload = payload.to_dict()
    elif hasattr(payload, 'columns'):
        payload = payload.to_dict(orient='list')
    return json.dumps(jsonable(payload), sort_keys=True, indent=2).encode()


def write_output(payload, filename, fmt=None):
    fmt = fmt or onutil.format_from_filename(filename)
    with open(filename, 'wb') as fp:
        fp.write(emit(payload, fmt))
    print(f"Writing {filename}")
    onlog(f"output: {filename}")
