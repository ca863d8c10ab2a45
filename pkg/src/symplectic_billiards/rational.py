"""Arbitrary-precision rational arithmetic shared by the exact kernel.

gmpy2.mpq is used when available (much faster than fractions.Fraction for
the long orbit computations); the stdlib Fraction is a drop-in fallback.
Both store values in lowest terms with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Rat = Fraction

RatLike = object  # Rat, Fraction or int; all mix freely in arithmetic

ZERO = Rat(0)
ONE = Rat(1)


def rat(value, den=None) -> Rat:
    """Coerce ints, "p/q" strings, Fractions or Rat values to Rat."""
    if den is not None:
        return Rat(value, den)
    if isinstance(value, float):
        raise TypeError("floats are not allowed in the exact kernel")
    return Rat(value)


def rat_str(q) -> str:
    """Serialize as "p/q" with q > 0, e.g. "3/4", "-1/2", "5/1"."""
    q = Rat(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(text: str) -> Rat:
    """Parse "p/q" or a plain integer string."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Rat(int(num), d)
    return Rat(int(text))


def is_dyadic(q) -> bool:
    """True iff q has a power-of-two denominator (integers included)."""
    d = int(Rat(q).denominator)
    return d & (d - 1) == 0


def to_float(q) -> float:
    return float(Fraction(int(Rat(q).numerator), int(Rat(q).denominator)))
