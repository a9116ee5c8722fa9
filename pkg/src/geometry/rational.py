"""Exact rational scalars and small vector helpers.

All geometry runs over `fractions.Fraction`; floats are rejected at the
boundary so nothing inexact leaks into the kernel.
"""

import math
from fractions import Fraction
from numbers import Integral

from sympy import Matrix, Rational

from src.errors import InputFormatError

Rat = Fraction


def to_rat(value, name="value"):
    """Convert an int, Fraction or "p/q" string to a Fraction. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputFormatError(f"{name} must be rational, got a boolean")
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rat(value, name=name)
    if isinstance(value, float):
        raise InputFormatError(f"{name} must be rational (int/Fraction/'p/q'); float is forbidden: {value!r}")
    raise InputFormatError(f"{name} must be int/Fraction/str, got {type(value).__name__}")


def parse_rat(text, name="value"):
    """Parse "p/q" or "p" (integers only, no decimal points)."""
    raw = text.strip()
    num, sep, den = raw.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise InputFormatError(f"{name}: not a rational literal: {text!r}") from None
    if q == 0:
        raise InputFormatError(f"{name}: zero denominator in {text!r}")
    return Fraction(p, q)


def format_rat(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_point(coords, name="point"):
    return tuple(to_rat(c, name=name) for c in coords)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def common_denominator(values):
    den = 1
    for v in values:
        den = math.lcm(den, Fraction(v).denominator)
    return den


def primitive(vector):
    """Scale a nonzero rational vector to the primitive integer vector on the same ray."""
    den = common_denominator(vector)
    ints = [int(Fraction(v) * den) for v in vector]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def is_primitive(vector):
    if any(Fraction(v).denominator != 1 for v in vector):
        return False
    g = 0
    for x in vector:
        g = math.gcd(g, int(x))
    return g == 1


def to_sympy(value):
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def from_sympy(value):
    """sympy Rational (or Integer) back to Fraction."""
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def sympy_matrix(rows):
    return Matrix([[to_sympy(x) for x in row] for row in rows])
