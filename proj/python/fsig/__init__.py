"""F-signature of pairs, finite covers and fundamental group bounds.

Rational values are returned as fractions.Fraction.
"""

import json
from fractions import Fraction

from . import _core
from ._core import BudgetExceeded, FsigError, InvalidInput, NonEffectiveDivisor

__all__ = [
    "BudgetExceeded",
    "FsigError",
    "InvalidInput",
    "NonEffectiveDivisor",
    "inverse_floor",
    "pi1_order_bound",
    "quotient_cover_transformation",
    "quotient_fsignature",
    "run",
    "splitting_sequence",
    "toric_fsignature",
    "toric_splitting_numbers",
]


def _text(value):
    return str(Fraction(value))


def _coeffs(delta):
    return None if delta is None else [_text(c) for c in delta]


def _fractions(d, keys):
    return {k: Fraction(v) if k in keys else v for k, v in d.items()}


def run(command, spec):
    """Runs a CLI command on a spec dict and returns (report, exit_code)."""
    report, code = _core.run(command, json.dumps(spec))
    return json.loads(report), code


def toric_fsignature(rays, p, delta=None):
    return Fraction(_core.toric_fsignature(rays, p, _coeffs(delta)))


def quotient_fsignature(n, weights, p):
    return Fraction(_core.quotient_fsignature(n, list(weights), p))


def toric_splitting_numbers(rays, p, e_max, delta=None):
    return _core.toric_splitting_numbers(rays, p, e_max, _coeffs(delta))


def splitting_sequence(p, nvars, equation=None, e_max=2, pair=(), convention="floor"):
    """Returns [(e, q, a_e, a_e / q^d)] for a regular ring or hypersurface."""
    comps = [(g, _text(t)) for g, t in pair]
    rows = _core.splitting_numbers(equation, nvars, p, e_max, comps, convention)
    return [(e, q, a, Fraction(v)) for e, q, a, v in rows]


def quotient_cover_transformation(n, weights, p, m, delta=None):
    d = _core.quotient_cover_transformation(n, list(weights), p, m, _coeffs(delta))
    return _fractions(d, {"s_lower", "s_upper", "lhs", "rhs"})


def pi1_order_bound(rays, p):
    return _fractions(_core.pi1_order_bound(rays, p), {"s"})


def inverse_floor(s):
    return _core.inverse_floor(_text(s))
