"""Exact rational scalars.

All payload arithmetic in this package is exact.  The scalar type is
``gmpy2.mpq`` when gmpy2 is importable (a C bignum kernel, roughly an order of
magnitude faster) and ``fractions.Fraction`` otherwise.  The two are hash- and
comparison-compatible, so the choice never leaks into results.  Set
``DIRACFORGE_RATIONAL=fraction`` to force the stdlib fallback.

Wire form: a rational serializes as ``"p"`` or ``"p/q"`` in lowest terms.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

_choice = os.environ.get("DIRACFORGE_RATIONAL", "")

if _choice != "fraction":
    try:
        from gmpy2 import mpq as _mpq
    except ImportError:
        _mpq = None
else:
    _mpq = None

if _mpq is not None:
    RATIONAL_BACKEND = "gmpy2"

    def rat(p=0, q=1):
        return _mpq(p, q)
else:
    RATIONAL_BACKEND = "fraction"

    def rat(p=0, q=1):
        return Fraction(p, q)

ZERO = rat(0)
ONE = rat(1)
HALF = rat(1, 2)


def rat_from_str(s):
    """Parse "p" or "p/q" (lowest terms not required)."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return rat(int(p), int(q))
    return rat(int(s))


def rat_str(x):
    """Canonical wire form, "p" or "p/q"."""
    n, d = x.numerator, x.denominator
    if d == 1:
        return str(n)
    return "%d/%d" % (n, d)


def is_integer(x):
    return x.denominator == 1


def exact_sqrt(x):
    """Return r with r*r == x, or None. x must be a nonnegative rational."""
    if x < 0:
        return None
    p, q = int(x.numerator), int(x.denominator)
    rp = math.isqrt(p)
    rq = math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return rat(rp, rq)
    return None


def squarefree_core(x):
    """Squarefree integer c with x = c * (rational square), for rational x > 0.

    Two positive rationals differ by a rational square factor iff their cores
    coincide.  Factors by trial division; fine at desk scale.
    """
    if x <= 0:
        raise ValueError("positive rationals only")
    n = int(x.numerator) * int(x.denominator)
    core = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                core *= d
        d += 1
    return core * n
