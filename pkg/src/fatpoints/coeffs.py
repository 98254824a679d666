"""Exact coefficient domains.

Three kinds of field are supported:

* ``Rationals`` -- elements are ``gmpy2.mpq`` values, which are canonical
  reduced fractions and much faster than ``fractions.Fraction``.
* ``PrimeField(p)`` -- residues in ``[0, p)``; only used as a cheap sanity
  device, never for authoritative answers.
* ``NumberField(minpoly)`` -- ``Q[t]/(minpoly)`` for a monic irreducible
  polynomial of degree 2 or 3.  ``QW = NumberField((1, 1, 1))`` holds a
  primitive cube root of unity, written ``w`` in text.

Elements of every domain support the ordinary Python operators, so the
polynomial and linear algebra code is written once against ``+ - * /``.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpq
from sympy import isprime

from ._parse import evaluate_expression

__all__ = [
    "CoeffDomain",
    "Rationals",
    "PrimeField",
    "NumberField",
    "NumberFieldElement",
    "PrimeFieldElement",
    "QQ",
    "QW",
    "field_make",
    "as_rational",
]

_MPQ = type(mpq(0))


def as_rational(value) -> mpq:
    """Coerce an int, Fraction, mpq or ``"a/b"`` string to ``mpq``."""
    if isinstance(value, _MPQ):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, (int, type(gmpy2.mpz(0)))):
        return mpq(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class CoeffDomain:
    """Base class for coefficient fields."""

    characteristic = 0
    symbol = None  # name of the generator in text, if any

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def convert(self, value):
        raise NotImplementedError

    def __call__(self, value):
        return self.convert(value)

    def parse(self, text: str):
        """Parse an element such as ``3/4``, ``-w-1`` or ``5``."""
        names = {self.symbol: self.gen} if self.symbol else {}
        return evaluate_expression(text, names, self.convert)

    def contains(self, value) -> bool:
        raise NotImplementedError

    def descriptor(self) -> str:
        """Short text form used in fixture headers and CLI flags."""
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor()})"


class Rationals(CoeffDomain):
    def convert(self, value):
        if isinstance(value, NumberFieldElement):
            if value.is_rational():
                return value.coeffs[0]
            raise TypeError("element is not rational")
        if isinstance(value, PrimeFieldElement):
            raise TypeError("cannot map a prime field residue into Q")
        return as_rational(value)

    def contains(self, value) -> bool:
        return isinstance(value, _MPQ)

    def descriptor(self) -> str:
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeFieldElement:
    __slots__ = ("value", "field")

    def __init__(self, value: int, field: "PrimeField"):
        self.value = value
        self.field = field

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.field.p != self.field.p:
                raise TypeError(
                    f"mixed prime fields F{self.field.p} and F{other.field.p}")
            return other.value
        if isinstance(other, NumberFieldElement):
            raise TypeError("mixed-domain operands: prime field and number field")
        return self.field.convert(other).value

    def __add__(self, other):
        p = self.field.p
        return PrimeFieldElement((self.value + self._coerce(other)) % p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        p = self.field.p
        return PrimeFieldElement((self.value - self._coerce(other)) % p, self.field)

    def __rsub__(self, other):
        p = self.field.p
        return PrimeFieldElement((self._coerce(other) - self.value) % p, self.field)

    def __mul__(self, other):
        p = self.field.p
        return PrimeFieldElement(self.value * self._coerce(other) % p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value % self.field.p, self.field)

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return PrimeFieldElement(pow(self.value, -1, self.field.p), self.field)

    def __truediv__(self, other):
        other = PrimeFieldElement(self._coerce(other), self.field)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return PrimeFieldElement(self._coerce(other), self.field) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return PrimeFieldElement(pow(self.value, n, self.field.p), self.field)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        try:
            return self.value == self._coerce(other)
        except (TypeError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"

    __str__ = lambda self: str(self.value)  # noqa: E731


class PrimeField(CoeffDomain):
    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def convert(self, value):
        if isinstance(value, PrimeFieldElement):
            if value.field.p != self.p:
                raise TypeError("mixed prime fields")
            return value
        if isinstance(value, NumberFieldElement):
            raise TypeError("cannot map a number field element into F_p")
        q = as_rational(value)
        num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
        return PrimeFieldElement(num * pow(den, -1, self.p) % self.p, self)

    def contains(self, value) -> bool:
        return isinstance(value, PrimeFieldElement) and value.field.p == self.p

    def descriptor(self) -> str:
        return f"Fp {self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class NumberFieldElement:
    """``c0 + c1*t + ... `` reduced modulo the field's minimal polynomial."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: tuple, field: "NumberField"):
        self.coeffs = coeffs
        self.field = field

    def _coerce(self, other) -> tuple:
        if isinstance(other, NumberFieldElement):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("mixed number fields")
            return other.coeffs
        if isinstance(other, PrimeFieldElement):
            raise TypeError("mixed-domain operands: number field and prime field")
        return self.field.convert(other).coeffs

    def __add__(self, other):
        b = self._coerce(other)
        return NumberFieldElement(tuple(x + y for x, y in zip(self.coeffs, b)),
                                  self.field)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NumberFieldElement(tuple(x - y for x, y in zip(self.coeffs, b)),
                                  self.field)

    def __rsub__(self, other):
        b = self._coerce(other)
        return NumberFieldElement(tuple(y - x for x, y in zip(self.coeffs, b)),
                                  self.field)

    def __neg__(self):
        return NumberFieldElement(tuple(-x for x in self.coeffs), self.field)

    def __mul__(self, other):
        if isinstance(other, _MPQ) or type(other) is int:
            return NumberFieldElement(tuple(x * other for x in self.coeffs),
                                      self.field)
        return NumberFieldElement(self.field._mul(self.coeffs, self._coerce(other)),
                                  self.field)

    __rmul__ = __mul__

    def inverse(self):
        return NumberFieldElement(self.field._inv(self.coeffs), self.field)

    def __truediv__(self, other):
        if isinstance(other, _MPQ) or type(other) is int:
            if not other:
                raise ZeroDivisionError("division by zero in number field")
            return NumberFieldElement(tuple(x / other for x in self.coeffs),
                                      self.field)
        b = self._coerce(other)
        return NumberFieldElement(self.field._mul(self.coeffs, self.field._inv(b)),
                                  self.field)

    def __rtruediv__(self, other):
        return NumberFieldElement(self._coerce(other), self.field) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        try:
            return self.coeffs == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __str__(self):
        sym = self.field.symbol
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (sym if k == 1 else f"{sym}^{k}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"NumberFieldElement({self})"


class NumberField(CoeffDomain):
    """``Q(t)`` with ``t`` a root of a monic irreducible quadratic or cubic.

    ``minpoly`` lists the coefficients from the constant term upward and must
    end in 1, e.g. ``(1, 1, 1)`` for ``t^2 + t + 1``.
    """

    def __init__(self, minpoly, symbol: str = "w"):
        coeffs = tuple(as_rational(c) for c in minpoly)
        while len(coeffs) > 1 and not coeffs[-1]:
            coeffs = coeffs[:-1]
        deg = len(coeffs) - 1
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        if deg < 2:
            raise ValueError("minimal polynomial must have degree >= 2")
        if deg > 3:
            raise ValueError("only quadratic and cubic extensions are supported")
        root = _rational_root(coeffs)
        if root is not None:
            raise ValueError(f"minimal polynomial is reducible (root {root})")
        self.minpoly = coeffs
        self.degree = deg
        self.symbol = symbol
        # t^deg = -(c0 + c1 t + ...)
        self._tail = tuple(-c for c in coeffs[:-1])

    def _mul(self, a: tuple, b: tuple) -> tuple:
        n = self.degree
        if n == 2:
            a0, a1 = a
            b0, b1 = b
            hi = a1 * b1
            t0, t1 = self._tail
            return (a0 * b0 + hi * t0, a0 * b1 + a1 * b0 + hi * t1)
        prod = [mpq(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for i, r in enumerate(self._tail):
                    prod[k - n + i] += c * r
        return tuple(prod[:n])

    def _inv(self, a: tuple) -> tuple:
        if not any(a):
            raise ZeroDivisionError("inverse of zero in number field")
        n = self.degree
        if n == 2:
            a0, a1 = a
            t0, t1 = self._tail
            # (a0 + a1 t)(b0 + b1 t) = 1 with t^2 = t0 + t1 t
            norm = a0 * a0 + a0 * a1 * t1 - a1 * a1 * t0
            return ((a0 + a1 * t1) / norm, -a1 / norm)
        # solve the multiplication-by-a matrix against e_0
        cols = []
        basis = [tuple(mpq(1) if i == j else mpq(0) for i in range(n))
                 for j in range(n)]
        for e in basis:
            cols.append(self._mul(a, e))
        mat = [[cols[j][i] for j in range(n)] + [mpq(1) if i == 0 else mpq(0)]
               for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if mat[r][col])
            mat[col], mat[piv] = mat[piv], mat[col]
            pv = mat[col][col]
            mat[col] = [x / pv for x in mat[col]]
            for r in range(n):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
        return tuple(mat[i][n] for i in range(n))

    @property
    def gen(self) -> NumberFieldElement:
        return NumberFieldElement(
            tuple(mpq(1) if i == 1 else mpq(0) for i in range(self.degree)), self)

    def convert(self, value):
        if isinstance(value, NumberFieldElement):
            if value.field != self:
                raise TypeError("mixed number fields")
            return value
        if isinstance(value, PrimeFieldElement):
            raise TypeError("cannot map a prime field residue into a number field")
        q = as_rational(value)
        return NumberFieldElement((q,) + (mpq(0),) * (self.degree - 1), self)

    def contains(self, value) -> bool:
        return isinstance(value, NumberFieldElement) and value.field == self

    def descriptor(self) -> str:
        if self.minpoly == (1, 1, 1):
            return "Qw"
        return "Q[t]/(" + ",".join(str(c) for c in self.minpoly) + ")"

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.minpoly == self.minpoly

    def __hash__(self):
        return hash(("NF", self.minpoly))


def _rational_root(coeffs):
    """Return a rational root of the polynomial, or None (rational root test)."""
    den = 1
    for c in coeffs:
        den = gmpy2.lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    lead, const = ints[-1], ints[0]
    if const == 0:
        return mpq(0)

    def divisors(n):
        n = abs(n)
        return [d for d in range(1, n + 1) if n % d == 0]

    for p in divisors(const):
        for q in divisors(lead):
            for cand in (mpq(p, q), mpq(-p, q)):
                acc = mpq(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if not acc:
                    return cand
    return None


QQ = Rationals()
QW = NumberField((1, 1, 1))


def field_make(spec) -> CoeffDomain:
    """Build a domain from a descriptor.

    Accepts an existing domain, ``"Q"``, ``"Qw"``, ``"Fp 7"``/``"Fp:7"``, or
    tuples ``("Q",)``, ``("Fp", 7)``, ``("NF", (c0, c1, ..., 1))``.
    """
    if isinstance(spec, CoeffDomain):
        return spec
    if isinstance(spec, str):
        text = spec.strip()
        if text in ("Q", "QQ"):
            return QQ
        if text in ("Qw", "QW"):
            return QW
        if text.startswith("Fp"):
            rest = text[2:].lstrip(": ").strip()
            if not rest.lstrip("-").isdigit():
                raise ValueError(f"bad prime field descriptor {spec!r}")
            return PrimeField(int(rest))
        raise ValueError(f"unknown field descriptor {spec!r}")
    kind, *params = spec
    if kind in ("Q", "Rationals"):
        return QQ
    if kind in ("Fp", "PrimeField"):
        return PrimeField(params[0])
    if kind in ("NF", "NumberField"):
        return NumberField(params[0])
    raise ValueError(f"unknown field kind {kind!r}")
