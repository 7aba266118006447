"""Exact-rational helpers shared by the density and pipeline bound checks."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["as_fraction", "fraction_str"]


def as_fraction(x) -> Fraction:
    """Coerce to an exact Fraction.

    Strings accept both "p/q" and decimal forms.  Floats are converted via
    their repr, so literals like 0.1 become 1/10 rather than the binary
    approximation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fraction_str(x) -> str:
    """Render a Fraction (or None) as 'p/q' for stable report output."""
    if x is None:
        return "undefined"
    f = as_fraction(x)
    return f"{f.numerator}/{f.denominator}"
