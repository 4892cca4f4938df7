"""Exact scalar arithmetic: rationals and Gaussian rationals.

The coefficient field everywhere in this package is Q(i): numbers x + i*y
with rational x, y.  There are no floats anywhere; ``fractions.Fraction``
keeps denominators positive and in lowest terms for us.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonRationalLiteral


def parse_rational(value) -> Fraction:
    """Parse an exact rational from an int or a "p/q" string.

    Floats (and float-looking strings) are rejected: the input formats of
    this tool are exact by contract.
    """
    if isinstance(value, bool):
        raise NonRationalLiteral(f"boolean {value!r} is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise NonRationalLiteral(
            f"floating-point literal {value!r} rejected; write it as 'p/q'")
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise NonRationalLiteral(
                f"non-rational literal {value!r}; write an exact 'p/q'")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise NonRationalLiteral(f"cannot parse rational {value!r}: {exc}")
    raise NonRationalLiteral(f"cannot parse rational from {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    """Serialize a rational as "p/q" (or "p" when the denominator is 1)."""
    return str(q)


_ZERO_F = Fraction(0)
_ONE_F = Fraction(1)


class GaussianRational:
    """An element x + i*y of Q(i) with exact rational x and y."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # ---- predicates ----

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # ---- arithmetic ----

    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational._raw(self.re / n, -self.im / n)

    # ---- comparison / hashing ----

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    # ---- formatting ----

    def __repr__(self):
        return f"GQ({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i" if self.im != 1 else "i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        istr = "i" if mag == 1 else f"{mag}i"
        return f"{self.re}{sign}{istr}"

    def to_json(self):
        """Rationals serialize as "p/q" strings; true complex values as pairs."""
        if not self.im:
            return str(self.re)
        return {"re": str(self.re), "im": str(self.im)}


def _coerce(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational._raw(Fraction(value), _ZERO_F)
    raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")


def gq(re=0, im=0) -> GaussianRational:
    """Build a Gaussian rational; arguments may be ints, Fractions or 'p/q'."""
    return GaussianRational(parse_rational(re), parse_rational(im))


ZERO = GaussianRational._raw(_ZERO_F, _ZERO_F)
ONE = GaussianRational._raw(_ONE_F, _ZERO_F)
I = GaussianRational._raw(_ZERO_F, _ONE_F)
MINUS_ONE = GaussianRational._raw(Fraction(-1), _ZERO_F)
HALF = GaussianRational._raw(Fraction(1, 2), _ZERO_F)


def from_json_scalar(value) -> GaussianRational:
    """Inverse of GaussianRational.to_json (accepts "p/q" or {re, im})."""
    if isinstance(value, dict):
        return GaussianRational(parse_rational(value.get("re", 0)),
                                parse_rational(value.get("im", 0)))
    return GaussianRational(parse_rational(value), _ZERO_F)
