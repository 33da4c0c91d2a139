"""Exact tautological-ring calculator: psi integrals, DR cycles and the
u-polynomiality check of Xi.

Rationals are returned as fractions.Fraction; classes as lists of
(stratum, Fraction) pairs sorted by stratum.
"""

import json
from fractions import Fraction

from . import _tautring as _core
from ._tautring import CacheError, load_cache, mumford_check, save_cache, star_tree_count, star_trees

__all__ = [
    "CacheError",
    "audit",
    "dr_cycle",
    "lambda_integral",
    "load_cache",
    "mumford_check",
    "psi_integral",
    "save_cache",
    "star_tree_count",
    "star_trees",
    "verify",
    "xi_total",
]


def _terms(pairs):
    return [(s, Fraction(v)) for s, v in pairs]


def psi_integral(g, exponents):
    return Fraction(_core.psi_integral(g, list(exponents)))


def lambda_integral(g, n, i, psi_power=0):
    return Fraction(_core.lambda_integral(g, n, i, psi_power))


def dr_cycle(g, parts):
    return _terms(_core.dr_cycle(g, list(parts)))


def xi_total(g, n, m, a):
    return {k: _terms(v) for k, v in _core.xi_total(g, n, m, list(a)).items()}


def audit(g, n, m):
    return all(_core.audit(g, n, m))


def verify(g, n, m, jobs=1):
    """Runs the polynomiality check and returns the parsed report."""
    return json.loads(_core.verify_json(g, n, m, jobs))
