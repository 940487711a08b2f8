"""Exact rational scalars.

gmpy2's mpq is used when available (it is much faster than the stdlib
Fraction); fractions.Fraction is a drop-in fallback.  Nothing in this
package touches floating point.
"""

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def rat(value):
    """Coerce an int, an "a/b" string or an existing rational to Rat.

    Floats are rejected: they would silently break exactness.
    """
    if isinstance(value, float):
        raise TypeError("floating point is not allowed; pass an int or an 'a/b' string")
    if isinstance(value, str):
        text = value.strip()
        try:
            return Rat(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational {value!r}") from exc
    return Rat(value)
