"""Sparse multivariate polynomials over the coefficient domains.

Monomials are exponent tuples.  Monomial orders map an exponent tuple to an
integer sort key; every order here is *linear* in the exponents (a signed
digit expansion in a large base), so ``key(a*b) == key(a) + key(b)`` and
integer comparison of keys is the order itself.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from .coeffs import QQ, CoeffDomain, as_rational
from ._parse import evaluate_expression

__all__ = [
    "MonomialOrder",
    "GrevLex",
    "Lex",
    "Block",
    "GREVLEX",
    "LEX",
    "Polynomial",
    "monomials_of_degree",
    "variable_names",
    "partial_derivative",
    "evaluate_derivative",
    "euler_sum",
    "parse_polynomial",
]

# digit base for order keys; exponents must stay below _BASE // 2
_BASE = 1 << 24


class MonomialOrder:
    """A monomial order acting on exponent tuples of any length."""

    def key(self, exp: tuple) -> int:
        raise NotImplementedError

    def compare(self, a: tuple, b: tuple) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash((type(self).__name__, self._ident()))

    def _ident(self):
        return ()


class GrevLex(MonomialOrder):
    """Graded reverse lexicographic order with x0 > x1 > ... > xN."""

    def key(self, exp):
        k = sum(exp)
        for e in reversed(exp):
            k = k * _BASE - e
        return k

    def __repr__(self):
        return "GrevLex()"


class Lex(MonomialOrder):
    """Pure lexicographic order with x0 > x1 > ... > xN."""

    def key(self, exp):
        k = 0
        for e in exp:
            k = k * _BASE + e
        return k

    def __repr__(self):
        return "Lex()"


class Block(MonomialOrder):
    """Elimination order: compare the ``eliminated`` variables first (graded
    reverse lex among themselves), break ties with ``inner`` on the rest."""

    def __init__(self, eliminated, inner: MonomialOrder | None = None):
        self.eliminated = tuple(sorted(set(eliminated)))
        self.inner = inner if inner is not None else GrevLex()

    def _ident(self):
        return (self.eliminated, self.inner)

    def key(self, exp):
        elim = tuple(exp[i] for i in self.eliminated)
        rest = tuple(e for i, e in enumerate(exp) if i not in self.eliminated)
        # inner keys are bounded by _BASE ** (len(rest) + 1) in absolute value
        shift = _BASE ** (len(rest) + 2)
        return GrevLex().key(elim) * shift + self.inner.key(rest)

    def __repr__(self):
        return f"Block({list(self.eliminated)}, {self.inner!r})"


GREVLEX = GrevLex()
LEX = Lex()


def variable_names(nvars: int) -> list[str]:
    if nvars == 3:
        return ["x", "y", "z"]
    if nvars == 2:
        return ["x", "y"]
    return [f"x{i}" for i in range(nvars)]


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, d: int) -> tuple:
    """All exponent tuples of total degree ``d``, in decreasing lex order."""
    if nvars == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero
    coefficients."""

    __slots__ = ("domain", "nvars", "terms", "_hash")

    def __init__(self, domain: CoeffDomain, nvars: int, terms=None, *, _trusted=False):
        self.domain = domain
        self.nvars = nvars
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for exp, c in (terms or {}).items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars or min(exp, default=0) < 0:
                    raise ValueError(f"bad exponent vector {exp} for {nvars} variables")
                c = domain.convert(c)
                if c:
                    clean[exp] = clean.get(exp, domain.zero) + c
                    if not clean[exp]:
                        del clean[exp]
            self.terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, domain, nvars):
        return cls(domain, nvars, {}, _trusted=True)

    @classmethod
    def constant(cls, domain, nvars, c):
        c = domain.convert(c)
        return cls(domain, nvars, {(0,) * nvars: c} if c else {}, _trusted=True)

    @classmethod
    def variable(cls, domain, nvars, i):
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(domain, nvars, {exp: domain.one}, _trusted=True)

    @classmethod
    def monomial(cls, domain, nvars, exp, c=1):
        c = domain.convert(c)
        return cls(domain, nvars, {tuple(exp): c} if c else {}, _trusted=True)

    @classmethod
    def gens(cls, domain, nvars):
        return [cls.variable(domain, nvars, i) for i in range(nvars)]

    # -- basic queries -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_term(self, order: MonomialOrder = GREVLEX):
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def leading_monomial(self, order: MonomialOrder = GREVLEX):
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        """Terms from largest to smallest under ``order``."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        inv = self.domain.one / lc
        return Polynomial(self.domain, self.nvars,
                          {e: c * inv for e, c in self.terms.items()}, _trusted=True)

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.domain, self.nvars,
                          {e: c for e, c in self.terms.items() if sum(e) == d},
                          _trusted=True)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in rings with different variable counts")
        if other.domain != self.domain:
            raise TypeError(f"domain mismatch: {self.domain!r} vs {other.domain!r}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.domain, self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.domain, self.nvars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.domain, self.nvars,
                          {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Polynomial":
        c = self.domain.convert(c)
        if not c:
            return Polynomial.zero(self.domain, self.nvars)
        return Polynomial(self.domain, self.nvars,
                          {e: v * c for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        out = {e: c for e, c in out.items() if c}
        return Polynomial(self.domain, self.nvars, out, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if other.degree() == 0:
                other = other.terms[(0,) * self.nvars]
            else:
                raise TypeError("use groebner.exact_divide for polynomial division")
        c = self.domain.convert(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(self.domain.one / c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of polynomials are not defined")
        result = Polynomial.constant(self.domain, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, exp, c=None) -> "Polynomial":
        if c is None:
            out = {tuple(a + b for a, b in zip(e, exp)): v for e, v in self.terms.items()}
        else:
            out = {tuple(a + b for a, b in zip(e, exp)): v * c
                   for e, v in self.terms.items()}
        return Polynomial(self.domain, self.nvars, out, _trusted=True)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.nvars == other.nvars and self.domain == other.domain
                    and self.terms == other.terms)
        if not self.terms:
            return other == 0
        if len(self.terms) == 1 and (0,) * self.nvars in self.terms:
            return self.terms[(0,) * self.nvars] == other
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus and evaluation ------------------------------------------
    def diff(self, i: int) -> "Polynomial":
        return partial_derivative(self, i)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        return self.evaluate(point)

    def evaluate(self, point):
        point = [self.domain.convert(v) for v in getattr(point, "coords", point)]
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = self.domain.zero
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(point, exp):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    # -- printing ----------------------------------------------------------
    def to_string(self, names=None, order: MonomialOrder = GREVLEX) -> str:
        names = names or variable_names(self.nvars)
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms(order):
            mono = "*".join(n if e == 1 else f"{n}^{e}"
                            for n, e in zip(names, exp) if e)
            cs = str(c)
            compound = any(ch in cs.lstrip("-") for ch in "+- ")
            if compound:
                cs = f"({cs})"
            if not mono:
                body, neg = cs, False
                if not compound and cs.startswith("-"):
                    body, neg = cs[1:], True
            elif cs == "1":
                body, neg = mono, False
            elif cs == "-1":
                body, neg = mono, True
            elif not compound and cs.startswith("-"):
                body, neg = f"{cs[1:]}*{mono}", True
            else:
                body, neg = f"{cs}*{mono}", False
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, {self.domain.descriptor()})"


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    """Formal partial derivative with respect to variable ``i``."""
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range")
    out = {}
    for exp, c in f.terms.items():
        e = exp[i]
        if e:
            new = exp[:i] + (e - 1,) + exp[i + 1:]
            out[new] = c * e
    out = {e: c for e, c in out.items() if c}  # char p can kill terms
    return Polynomial(f.domain, f.nvars, out, _trusted=True)


def _falling(e: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= e - j
    return out


def evaluate_derivative(f: Polynomial, point, order) -> object:
    """Value of the iterated partial derivative ``d^order f`` at the affine
    representative of ``point`` (first nonzero coordinate scaled to 1 when a
    ProjectivePoint is passed; raw coordinates otherwise)."""
    coords = [f.domain.convert(v) for v in getattr(point, "coords", point)]
    order = tuple(order)
    if len(order) != f.nvars or len(coords) != f.nvars:
        raise ValueError("order and point must match the number of variables")
    powers = [{} for _ in coords]
    total = f.domain.zero
    for exp, c in f.terms.items():
        coef = 1
        for e, k in zip(exp, order):
            if e < k:
                coef = 0
                break
            coef *= _falling(e, k)
        if not coef:
            continue
        term = c * coef
        for j, (e, k) in enumerate(zip(exp, order)):
            r = e - k
            if r:
                cache = powers[j]
                if r not in cache:
                    cache[r] = coords[j] ** r
                term = term * cache[r]
        total = total + term
    return total


def euler_sum(f: Polynomial) -> Polynomial:
    """``sum_i x_i * df/dx_i``; equals ``deg(f) * f`` for homogeneous ``f``."""
    out = Polynomial.zero(f.domain, f.nvars)
    for i in range(f.nvars):
        xi = Polynomial.variable(f.domain, f.nvars, i)
        out = out + xi * partial_derivative(f, i)
    return out


def derivative_multi_indices(nvars: int, max_order: int, skip: int | None = None):
    """Multi-indices of total order <= ``max_order``; variable ``skip`` (if
    given) is never differentiated."""
    free = [i for i in range(nvars) if i != skip]
    out = []
    for total in range(max_order + 1):
        for sub in monomials_of_degree(len(free), total) if free else [()]:
            mu = [0] * nvars
            for i, e in zip(free, sub):
                mu[i] = e
            out.append(tuple(mu))
        if not free:
            break
    return out


def count_multi_indices(nvars_free: int, max_order: int) -> int:
    return comb(max_order + nvars_free, nvars_free)


def parse_polynomial(text: str, domain: CoeffDomain = QQ, nvars: int = 3,
                     names=None) -> Polynomial:
    """Parse ``x^2*y - 3/2*z^3``; the domain's generator (``w``) is allowed
    inside coefficients."""
    names = list(names or variable_names(nvars))
    table = {n: Polynomial.variable(domain, nvars, i) for i, n in enumerate(names)}
    if domain.symbol:
        table[domain.symbol] = Polynomial.constant(domain, nvars, domain.gen)
    return evaluate_expression(
        text, table, lambda n: Polynomial.constant(domain, nvars, n))


def random_homogeneous(rng, domain, nvars: int, degree: int, nterms: int = 6,
                       height: int = 9) -> Polynomial:
    """Random homogeneous polynomial with small integer-ish coefficients."""
    monos = monomials_of_degree(nvars, degree)
    picks = rng.sample(range(len(monos)), min(nterms, len(monos)))
    terms = {}
    for i in picks:
        c = as_rational(rng.randint(-height, height))
        if domain.symbol:
            c = domain.convert(c) + domain.gen * rng.randint(-height, height)
        terms[monos[i]] = c
    return Polynomial(domain, nvars, terms)


def all_monomials_up_to(nvars: int, d: int):
    return list(itertools.chain.from_iterable(
        monomials_of_degree(nvars, k) for k in range(d + 1)))
