from fractions import Fraction
from string import ascii_lowercase
import zlib
import numpy as np


def parse_rational(value):
    """'1/3', '2', '-0.5' -> Fraction (decimal strings are read exactly)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"Can't parse '{value}' as a rational number")


def parse_rational_vector(value, length=None):
    """Comma-separated rationals, e.g. '0,1,3' or '2,-1,5'."""
    if value is None:
        return None
    if isinstance(value, str):
        entries = [v for v in value.replace(' ', '').split(',') if len(v)]
    else:
        entries = list(value)
    vec = [parse_rational(v) for v in entries]
    if length is not None and len(vec) != length:
        raise ValueError(f"Expected {length} entries, got {len(vec)}: {value}")
    return vec


def parse_float_vector(value, length=None):
    if value is None:
        return None
    if isinstance(value, str):
        vec = np.array([float(v) for v in value.replace(' ', '').split(',') if len(v)])
    else:
        vec = np.asarray(value, dtype=float)
    if length is not None and len(vec) != length:
        raise ValueError(f"Expected {length} entries, got {len(vec)}: {value}")
    return vec


def parse_point_pattern(value, rng=None, values=None):
    """
    A support-test point: either rationals ('0,1,1,3') or a letter pattern ('a,a,b,b').

    Letters are replaced by distinct rationals, drawn from `rng` when given.
    """
    entries = [v for v in value.replace(' ', '').split(',') if len(v)]
    if all(e[0] in ascii_lowercase for e in entries):
        letters = sorted(set(entries))
        if values is None:
            values = distinct_rationals(len(letters), rng)
        lookup = dict(zip(letters, values))
        return [lookup[e] for e in entries]
    return parse_rational_vector(entries)


def distinct_rationals(count, rng=None, low=-9, high=9, max_den=5):
    """`count` pairwise distinct random rationals (seeded through a numpy Generator)."""
    rng = rng if rng is not None else np.random.default_rng(0)
    out = []
    while len(out) < count:
        value = Fraction(int(rng.integers(low * max_den, high * max_den + 1)), int(rng.integers(1, max_den + 1)))
        if value not in out:
            out.append(value)
    return out


def check_rng(seed, name):
    """Per-check generator: seed mixed with crc32 of the check name, independent of run order."""
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, zlib.crc32(name.encode())])


def parse_matrix(value):
    """'1,0;0,1' -> 2x2 list of Fractions."""
    rows = [r for r in value.replace(' ', '').split(';') if len(r)]
    matrix = [parse_rational_vector(r) for r in rows]
    if any(len(r) != len(matrix) for r in matrix):
        raise ValueError(f"Matrix {value} is not square")
    return matrix


def parse_word(value):
    word = value.strip().upper()
    if not word or any(ch not in 'XY' for ch in word):
        raise ValueError(f"Word '{value}' must be a nonempty string over X and Y")
    return word


def format_from_filename(filename):
    if filename.endswith('.csv'):
        return 'csv'
    return 'json'
