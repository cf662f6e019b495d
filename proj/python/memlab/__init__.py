"""Matching-game experiments: players, the adversary and exact tail checks."""

from fractions import Fraction

from . import _memlab
from ._memlab import (
    CapExceeded,
    ConfigError,
    CsvParseError,
    InvalidDeck,
    adversary,
    chernoff_tail,
    generate_deck,
    lemma43,
    lemma_y,
    matches_of,
    play,
    relent,
    replay,
    tradeoff_sweep,
    truncation_experiment,
    unique_pairs,
    unique_pairs_formulas,
    xy_check,
    y_critical_r,
    y_tail_bound,
)


def _frac(pair):
    num, den = pair
    return Fraction(int(num), int(den))


def count_valid_inputs(n, R):
    return int(_memlab.count_valid_inputs(n, R))


def y_exact_distribution(n, r):
    return [_frac(q) for q in _memlab.y_exact_distribution(n, r)]


def y_exact_tail(n, r, t):
    return _frac(_memlab.y_exact_tail(n, r, t))


def lemma43_fraction(n, R, r, t, tree, seed=1):
    return _frac(_memlab.lemma43_fraction(n, R, r, t, tree, seed))


def unique_pairs_exact(n):
    return _frac(_memlab.unique_pairs_exact(n))


__all__ = [name for name in dir() if not name.startswith("_")]
