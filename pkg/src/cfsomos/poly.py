"""Dense univariate polynomials over exact rationals.

Coefficients are `fractions.Fraction` values kept low-degree first in a tuple
with trailing zeros trimmed, so equality, hashing and degree bookkeeping are
structural.  The zero polynomial is the empty tuple and its degree is the
module constant ``MINUS_INF`` (never -1: degree comparisons must stay honest
when a remainder vanishes).

Everything here is exact.  No float enters any code path; callers that want a
numeric cross-check approximate on their own side.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Union

MINUS_INF = float("-inf")

Scalar = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse an integer or p/q literal.  Decimal notation is rejected."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not an integer or p/q rational literal: {text!r}")
    return Fraction(text)


def format_rational(value: Scalar) -> str:
    """Canonical rational rendering: '5', '-5', '3/4'."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class PolyParseError(ValueError):
    """Syntax error in polynomial text, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Poly:
    """Univariate polynomial in X over Fraction."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c: tuple[Fraction, ...] = tuple(c)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def constant(cls, value: Scalar) -> "Poly":
        return cls((value,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, coeff: Scalar, power: int) -> "Poly":
        if power < 0:
            raise ValueError("negative power")
        return cls((0,) * power + (coeff,))

    # -- structure ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int | float:
        """Degree, or MINUS_INF for the zero polynomial."""
        return len(self._c) - 1 if self._c else MINUS_INF

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def lc(self) -> Fraction:
        """Leading coefficient; undefined for zero."""
        if not self._c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._c[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def coeff(self, power: int) -> Fraction:
        if 0 <= power < len(self._c):
            return self._c[power]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._c)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly | Scalar") -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-v for v in self._c))

    def __sub__(self, other: "Poly | Scalar") -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "Poly | Scalar") -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: "Poly | Scalar") -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, scalar: Scalar) -> "Poly":
        """Division by a nonzero scalar only; use divrem for polynomials."""
        if isinstance(scalar, Poly):
            raise TypeError("use divrem/exact_div for polynomial division")
        s = Fraction(scalar)
        if s == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return Poly(tuple(v / s for v in self._c))

    def divrem(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division: self = q*divisor + r with deg r < deg divisor."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dc = divisor._c
        dn = len(dc)
        if len(rem) < dn:
            return Poly(), Poly(rem)
        inv_lead = 1 / dc[-1]
        quot = [Fraction(0)] * (len(rem) - dn + 1)
        for top in range(len(rem) - 1, dn - 2, -1):
            c = rem[top]
            if c == 0:
                continue
            q = c * inv_lead
            quot[top - dn + 1] = q
            for j in range(dn):
                rem[top - dn + 1 + j] -= q * dc[j]
        return Poly(quot), Poly(rem)

    def __floordiv__(self, divisor: "Poly") -> "Poly":
        return self.divrem(divisor)[0]

    def __mod__(self, divisor: "Poly") -> "Poly":
        return self.divrem(divisor)[1]

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Division known to be remainder-free; raises if it is not."""
        q, r = self.divrem(divisor)
        if not r.is_zero:
            raise ArithmeticError(
                f"inexact division: remainder {r} dividing {self} by {divisor}"
            )
        return q

    def monic(self) -> "Poly":
        return self / self.lc

    def derivative(self) -> "Poly":
        return Poly(tuple(self._c[i] * i for i in range(1, len(self._c))))

    def __call__(self, x: Scalar) -> Fraction:
        """Evaluate by Horner's rule."""
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    # -- text --------------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return _parse_poly(text)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def _coerce(value: "Poly | Scalar | object") -> Poly | None:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly((value,))
    return None


X = Poly.x()


def format_poly(p: Poly) -> str:
    """Canonical descending-power rendering, e.g. 'X^2 - X - 1', '-X^2 + 2'.

    Re-parseable by Poly.parse; the zero polynomial renders as '0'.
    """
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for power in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeff(power)
        if c == 0:
            continue
        mag = abs(c)
        if power == 0:
            body = format_rational(mag)
        else:
            xpart = "X" if power == 1 else f"X^{power}"
            body = xpart if mag == 1 else f"{format_rational(mag)}*{xpart}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([Xx])|(\^)|(\*)|(\+)|(-)|(/)|(.))")


def _parse_poly(text: str) -> Poly:
    """Parse the grammar: signed terms of 'coeff', 'coeff X^k' or 'X^k'.

    Coefficients are integer or p/q literals; '*' between coefficient and X is
    optional; whitespace is ignored.  The only variable letter is X.
    """
    pos = 0
    n = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def peek() -> str:
        skip_ws()
        return text[pos] if pos < n else ""

    def read_int() -> int:
        nonlocal pos
        skip_ws()
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise PolyParseError("expected digits", start)
        return int(text[start:pos])

    coeffs: dict[int, Fraction] = {}
    saw_term = False
    while True:
        ch = peek()
        if ch == "":
            break
        sign = 1
        while ch in ("+", "-"):
            if ch == "-":
                sign = -sign
            pos += 1
            ch = peek()
        if ch == "":
            raise PolyParseError("dangling sign", pos)
        if ch.isdigit():
            num = read_int()
            coeff = Fraction(num)
            if peek() == "/":
                pos += 1
                den = read_int()
                if den == 0:
                    raise PolyParseError("zero denominator", pos)
                coeff = Fraction(num, den)
            if peek() == "*":
                pos += 1
                if peek() not in ("X", "x"):
                    raise PolyParseError("expected X after '*'", pos)
        else:
            coeff = Fraction(1)
        power = 0
        ch = peek()
        if ch in ("X", "x"):
            pos += 1
            power = 1
            if peek() == "^":
                pos += 1
                power = read_int()
        elif ch.isalpha():
            raise PolyParseError(f"unknown variable {ch!r} (only X)", pos)
        elif coeff == Fraction(1) and not saw_term and not text[:pos].strip():
            # neither a digit nor X at the start of a term
            raise PolyParseError(f"unexpected character {ch!r}", pos)
        elif ch not in ("+", "-") and ch != "":
            raise PolyParseError(f"unexpected character {ch!r}", pos)
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coeff
        saw_term = True
        ch = peek()
        if ch != "" and ch not in ("+", "-"):
            raise PolyParseError(f"unexpected character {ch!r}", pos)
    if not saw_term:
        raise PolyParseError("empty polynomial text", 0)
    out = [Fraction(0)] * (max(coeffs) + 1)
    for power, value in coeffs.items():
        out[power] = value
    return Poly(out)


def sqrt_decompose(D: Poly) -> tuple[Poly, Poly]:
    """Split monic even-degree D as D = A^2 + 4R with A monic, deg R <= g.

    A is the polynomial part of sqrt(D), found by matching coefficients from
    the top degree down; the leftover D - A^2 is exactly divisible by 4.
    deg D = 2g + 2 gives deg A = g + 1; R = 0 iff D is a perfect square.
    """
    if D.is_zero or D.degree < 2:
        raise ValueError("D must have even degree >= 2")
    if D.degree % 2 != 0:
        raise ValueError(f"D must have even degree, got degree {D.degree}")
    if not D.is_monic:
        raise ValueError("D must be monic")
    half = D.degree // 2
    a = [Fraction(0)] * (half + 1)
    a[half] = Fraction(1)
    # coefficient of X^(2*half - k) in A^2 equals sum a_i a_j over i+j = 2*half-k;
    # with a_half known, each step determines one new a_{half-k} linearly.
    for k in range(1, half + 1):
        target = D.coeff(2 * half - k)
        acc = Fraction(0)
        for i in range(half - k + 1, half + 1):
            j = 2 * half - k - i
            if j > half:
                continue
            if j != half - k and i != half - k:
                acc += a[i] * a[j]
        a[half - k] = (target - acc) / 2
    A = Poly(a)
    diff = D - A * A
    R = diff / 4
    if not (R.is_zero or R.degree <= half - 1):
        raise AssertionError("sqrt decomposition left a remainder of bad degree")
    return A, R


def resultant(f: Poly, g: Poly) -> Fraction:
    """Resultant via the Sylvester matrix over Fraction (exact)."""
    if f.is_zero or g.is_zero:
        return Fraction(0)
    m, n = int(f.degree), int(g.degree)
    if m == 0:
        return f.lc ** n
    if n == 0:
        return g.lc ** m
    size = m + n
    rows: list[list[Fraction]] = []
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + fr + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gr + [Fraction(0)] * (size - n - 1 - i))
    return _det(rows)


def _det(rows: list[list[Fraction]]) -> Fraction:
    size = len(rows)
    sign = 1
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        pval = rows[col][col]
        det *= pval
        for r in range(col + 1, size):
            factor = rows[r][col] / pval
            if factor:
                for c in range(col, size):
                    rows[r][c] -= factor * rows[col][c]
    return det * sign


def norm_over_roots(target: Poly, modulus: Poly) -> Fraction:
    """Product of target over the roots of modulus, with multiplicity.

    Computed as Res(modulus/lc, target): no root is ever extracted, so the
    result is exact even when the roots are irrational or complex.
    """
    if modulus.is_zero or modulus.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    deg_m = int(modulus.degree)
    if target.is_zero:
        return Fraction(0)
    if target.degree == 0:
        return target.lc ** deg_m
    return resultant(modulus.monic(), target)
