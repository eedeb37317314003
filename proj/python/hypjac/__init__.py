"""Exact algebra of affine hyperelliptic Jacobians.

Every function returns plain python data decoded from the core's JSON output.
Rationals are strings such as "-3/2"; polynomials use the token grammar
aj = a_{j+1/2}, bj, cj, fj.
"""

import json

from . import _hypjac
from ._hypjac import HypjacError, ParseError

__all__ = [
    "HypjacError",
    "ParseError",
    "WindowRefusal",
    "ring_characters",
    "basis",
    "normal_form",
    "divisor_to_triple",
    "mumford_round_trip",
    "verify_flows",
    "cohomology",
    "descend",
    "wk",
    "koszul",
    "run_criterion",
]


class WindowRefusal(HypjacError):
    """The requested degree window cannot support the computation."""

    def __init__(self, message, need_window):
        super().__init__(message)
        self.need_window = tuple(need_window)


def _checked(text):
    out = json.loads(text)
    if isinstance(out, dict) and out.get("refused"):
        raise WindowRefusal(out["message"], out["need_window"])
    return out


def _strs(xs):
    return [str(x) for x in (xs or [])]


def ring_characters(g, trunc=40):
    return _checked(_hypjac.ring_characters(g, trunc))


def basis(g, deg2):
    return _checked(_hypjac.basis(g, deg2))


def normal_form(expr, g, f0=None):
    return _checked(_hypjac.normal_form(expr, g, _strs(f0)))


def divisor_to_triple(g, points, f=None):
    pts = [(str(z), str(y)) for z, y in points]
    return _checked(_hypjac.divisor_to_triple(g, pts, _strs(f)))


def mumford_round_trip(g, cases=100, seed=1, precision_bits=256):
    return _checked(_hypjac.mumford_round_trip(g, cases, seed, precision_bits))


def verify_flows(g, seed=1):
    return _checked(_hypjac.verify_flows(g, seed))


def cohomology(g, window=None, allow_partial=False):
    return _checked(_hypjac.cohomology(g, tuple(window) if window else None, allow_partial))


def descend(g, expr):
    return _checked(_hypjac.descend(g, expr))


def wk(g, k, trunc=40):
    return _checked(_hypjac.wk(g, k, trunc))


def koszul(g, lo, hi):
    return _checked(_hypjac.koszul(g, lo, hi))


def run_criterion(criterion, genera, seed=1):
    return _checked(_hypjac.run_criterion(criterion, list(genera), seed))
