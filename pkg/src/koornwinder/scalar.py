"""Exact rational scalars.

``fractions.Fraction`` is the coefficient field throughout: it is always in
lowest terms with a positive denominator, which is exactly the invariant we
need. This module only adds parsing and the ``"p/q"`` wire format.
"""

from fractions import Fraction
from numbers import Rational

__all__ = ["Fraction", "to_scalar", "format_scalar", "parse_scalar"]


def to_scalar(x):
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: exact code paths must never see binary floating
    point, and silently converting 0.1 to 3602879701896397/36028797018963968
    would hide that mistake.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact scalar")


def parse_scalar(s):
    s = s.strip()
    if not s:
        raise ValueError("empty scalar string")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {s!r}") from exc


def format_scalar(x):
    """Serialize as ``"p/q"``; the denominator is always written."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
