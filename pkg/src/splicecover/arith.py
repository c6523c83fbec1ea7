"""Exact integer helpers and Hirzebruch-Jung continued fractions.

Rationals are :class:`fractions.Fraction` throughout; it is always stored
reduced with a positive denominator and prints as ``p/q`` (``p`` when the
denominator is 1), which is exactly the textual form used in the file
formats.

An HJ string is a tuple of integers ``(a1, ..., ak)`` standing for the
negative continued fraction ``a1 - 1/(a2 - 1/(... - 1/ak))``.
"""
from fractions import Fraction
from functools import reduce
import math

from .errors import DegenerateStringError, DomainError, NoSolutionError, UsageError

Rational = Fraction
HJString = tuple


def gcd_many(values):
    values = list(values)
    if not values:
        raise UsageError("gcd_many needs at least one value")
    return reduce(math.gcd, (abs(v) for v in values), 0)


def lcm_many(values):
    values = list(values)
    if not values:
        raise UsageError("lcm_many needs at least one value")
    if any(v <= 0 for v in values):
        raise DomainError(f"lcm_many requires positive integers, got {values}")
    return math.lcm(*values)


def solve_neg_congruence(c, p):
    """Smallest ``q >= 0`` with ``c*q = -1 (mod p)``."""
    if p < 1 or c < 1:
        raise DomainError("solve_neg_congruence needs positive c and p")
    if p == 1:
        return 0
    if math.gcd(c, p) != 1:
        raise NoSolutionError(f"{c}*q = -1 (mod {p}) has no solution")
    return (-pow(c, -1, p)) % p


def hj_expand(p, q):
    """Continued fraction of ``p/q`` by the ceiling algorithm.

    ``(1, 0)`` is the formal infinity and expands to the empty string.  For
    ``0 < q < p`` every entry is at least 2; outside that range only the
    first entry can drop below 2.
    """
    if p < 1:
        raise DomainError(f"hj_expand needs p >= 1, got {p}")
    if q == 0:
        if p != 1:
            raise DomainError(f"{p}/0 is not a valid HJ fraction")
        return ()
    if math.gcd(p, q) != 1:
        raise DomainError(f"hj_expand needs coprime p, q, got {p}, {q}")
    x = Fraction(p, q)
    entries = []
    while True:
        a = math.ceil(x)
        entries.append(a)
        rest = a - x
        if rest == 0:
            return tuple(entries)
        x = 1 / rest


def hj_eval(s):
    """Return reduced ``(p, q)`` with ``p/q = [s]``.

    ``p`` is nonnegative (the sign rides on ``q``); the empty string gives
    ``(1, 0)``.
    """
    if not s:
        return (1, 0)
    value = Fraction(s[-1])
    for a in reversed(s[:-1]):
        if value == 0:
            raise DegenerateStringError(f"string {format_hj(s)} divides by zero")
        value = a - 1 / value
    n, d = value.numerator, value.denominator
    if n < 0:
        return (-n, -d)
    if n == 0:
        return (0, 1)
    return (n, d)


def hj_reverse(s):
    return tuple(reversed(s))


def seifert_contribution(s):
    """``q/p`` for the string ``s`` seen from its first entry."""
    p, q = hj_eval(s)
    if p == 0:
        raise DegenerateStringError(f"string {format_hj(s)} evaluates to 0")
    return Fraction(q, p)


def format_rational(x):
    return str(Fraction(x))


def parse_rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational: {text!r}") from exc


def format_hj(s):
    return "[" + ",".join(str(a) for a in s) + "]"


def parse_hj(text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise UsageError(f"HJ string must be bracketed: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    return tuple(int(part) for part in body.split(","))
