"""q-series expansion, identity checks and congruence scans."""

import json

from . import _qlab
from ._qlab import NonUnitError, ParseError, legendre, normalize

__version__ = _qlab.__version__

__all__ = [
    "NonUnitError",
    "ParseError",
    "congruence",
    "expand",
    "legendre",
    "normalize",
    "paper_suite",
    "qr_family",
    "scan",
    "verify",
]


def expand(expr, order=200, mod=None):
    """Coefficients c_0..c_order of expr, over Z or reduced mod `mod`."""
    return [int(c) for c in _qlab.expand(expr, order, mod)]


def verify(identity, order=None, mod=None):
    """Checks 'LHS == RHS [order N] [mod m]'; returns the result record."""
    return json.loads(_qlab.verify(identity, order, mod))


def congruence(expr, step, offset, mod, count=100):
    """Checks c(step*n + offset) == 0 (mod `mod`) for n < count."""
    return json.loads(_qlab.congruence(expr, step, offset, mod, count))


def scan(expr, mod, max_step, count=32):
    """(step, offset) classes with count vanishing terms mod `mod`."""
    return [(a, b) for a, b, _ in _qlab.scan(expr, mod, max_step, count)]


def qr_family(kind, p):
    """Claims (step, offset, modulus) of a nonresidue family at prime p."""
    return _qlab.qr_family(kind, p)


def paper_suite(config=None):
    """Runs the full check suite; `config` maps section names to orders."""
    return json.loads(_qlab.paper_suite(None if config is None else json.dumps(config)))
