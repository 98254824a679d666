"""Projective points, fat point schemes, line arrangements and their ideals."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .coeffs import QQ, CoeffDomain, field_make
from .groebner import Ideal
from .ideal_ops import ideal_power, intersect
from .poly import Polynomial, parse_polynomial

__all__ = [
    "ProjectivePoint",
    "FatPointScheme",
    "LineArrangement",
    "point_ideal",
    "fat_point_ideal",
    "symbolic_power",
    "arrangement_make",
    "intersection_counts",
    "singular_locus",
    "subproducts_ideal",
    "random_points",
    "FixtureError",
    "parse_fixture",
    "load_fixture",
    "format_fixture",
    "linear_form",
]


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^N, stored with its first nonzero coordinate equal to 1."""

    coords: tuple
    domain: CoeffDomain = field(default=QQ, compare=False)

    @classmethod
    def of(cls, coords, domain: CoeffDomain = QQ) -> "ProjectivePoint":
        vals = [domain.convert(c) for c in coords]
        pivot = next((i for i, v in enumerate(vals) if v), None)
        if pivot is None:
            raise ValueError("a projective point needs a nonzero coordinate")
        inv = domain.one / vals[pivot]
        return cls(tuple(v * inv for v in vals), domain)

    @property
    def N(self) -> int:
        return len(self.coords) - 1

    @property
    def pivot(self) -> int:
        return next(i for i, v in enumerate(self.coords) if v)

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class FatPointScheme:
    """Points of P^N with positive multiplicities ``m_1 P_1 + ... + m_s P_s``."""

    points: tuple
    multiplicities: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "multiplicities", tuple(int(m) for m in self.multiplicities))
        if len(self.points) != len(self.multiplicities):
            raise ValueError("points and multiplicities differ in length")
        if not self.points:
            raise ValueError("a scheme needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")
        if any(int(m) < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        if len({p.N for p in self.points}) != 1:
            raise ValueError("points live in different projective spaces")

    @classmethod
    def reduced_scheme(cls, points, name: str = "") -> "FatPointScheme":
        points = tuple(points)
        return cls(points, (1,) * len(points), name)

    @property
    def N(self) -> int:
        return self.points[0].N

    @property
    def domain(self) -> CoeffDomain:
        return self.points[0].domain

    @property
    def nvars(self) -> int:
        return self.N + 1

    def __len__(self):
        return len(self.points)

    def is_reduced(self) -> bool:
        return all(m == 1 for m in self.multiplicities)

    def scaled(self, t: int) -> "FatPointScheme":
        """The scheme with every multiplicity multiplied by ``t``."""
        if t < 1:
            raise ValueError("scale factor must be positive")
        name = f"{self.name}*{t}" if self.name else ""
        return FatPointScheme(self.points, tuple(t * m for m in self.multiplicities), name)

    def support(self) -> "FatPointScheme":
        return FatPointScheme.reduced_scheme(self.points, self.name)

    def uniform_multiplicity(self):
        """``t`` when every point has multiplicity ``t``, else None."""
        ms = set(self.multiplicities)
        return ms.pop() if len(ms) == 1 else None

    def degree(self) -> int:
        """Length of the scheme: ``sum C(m_i + N - 1, N)``."""
        return sum(comb(m + self.N - 1, self.N) for m in self.multiplicities)


@dataclass(frozen=True)
class LineArrangement:
    """Pairwise non-proportional linear forms in x, y, z of rank 3."""

    forms: tuple
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return len(self.forms)

    @property
    def domain(self) -> CoeffDomain:
        return self.forms[0].domain

    def coefficient_rows(self) -> list:
        return [_linear_coeffs(f) for f in self.forms]

    def defining_polynomial(self) -> Polynomial:
        out = Polynomial.constant(self.domain, 3, 1)
        for f in self.forms:
            out = out * f
        return out

    def lines_through(self, point: ProjectivePoint) -> list:
        return [i for i, f in enumerate(self.forms) if not f.evaluate(point.coords)]


def _linear_coeffs(f: Polynomial) -> tuple:
    units = [tuple(1 if j == i else 0 for j in range(f.nvars)) for i in range(f.nvars)]
    return tuple(f.terms.get(u, f.domain.zero) for u in units)


def point_ideal(P: ProjectivePoint) -> Ideal:
    """``I(P)``: the N linear forms ``x_k - P_k x_j`` with ``j`` the pivot."""
    dom, n = P.domain, len(P.coords)
    j = P.pivot
    xs = Polynomial.gens(dom, n)
    gens = [xs[k] - xs[j] * P.coords[k] for k in range(n) if k != j]
    return Ideal(gens, dom, n, name=f"I{P}")


@lru_cache(maxsize=256)
def _fat_point_ideal(points: tuple, mults: tuple) -> Ideal:
    # larger multiplicities first keeps early intersections small
    pieces = sorted(zip(points, mults), key=lambda pm: -pm[1])
    acc = None
    for P, m in pieces:
        Im = ideal_power(point_ideal(P), m) if m > 1 else point_ideal(P)
        acc = Im if acc is None else intersect(acc, Im)
    return acc


def fat_point_ideal(S: FatPointScheme) -> Ideal:
    """``∩ I(P_i)^{m_i}`` by iterated intersection."""
    return _fat_point_ideal(S.points, tuple(int(m) for m in S.multiplicities))


def symbolic_power(S: FatPointScheme, m: int) -> Ideal:
    """``I^(m)`` for the scheme: multiplicities multiplied by ``m``."""
    if m < 1:
        raise ValueError("symbolic power exponent must be at least 1")
    return fat_point_ideal(S.scaled(m))


def _rank3(rows) -> int:
    """Rank of a list of length-3 coefficient rows over the field."""
    mat = [list(r) for r in rows]
    rank = 0
    for col in range(3):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                c = mat[i][col]
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def arrangement_make(forms, name: str = "") -> LineArrangement:
    """Validate a list of linear forms in three variables."""
    forms = tuple(forms)
    if not forms:
        raise ValueError("an arrangement needs at least one line")
    for f in forms:
        if f.nvars != 3 or not f or f.degree() != 1 or not f.is_homogeneous():
            raise ValueError(f"{f} is not a nonzero linear form in x, y, z")
        if f.domain != forms[0].domain:
            raise TypeError("forms are defined over different fields")
    rows = [_linear_coeffs(f) for f in forms]
    for (i, a), (j, b) in itertools.combinations(enumerate(rows), 2):
        if _rank3([a, b]) < 2:
            raise ValueError(f"lines {i} and {j} coincide ({forms[i]} ~ {forms[j]})")
    if _rank3(rows) < 3:
        raise ValueError("arrangement has rank < 3 (all lines pass through one point)")
    return LineArrangement(forms, name)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def intersection_counts(A: LineArrangement) -> dict:
    """Map each intersection point to the number ``n_j`` of lines through it,
    in order of first appearance among the pairs (i, j)."""
    rows = A.coefficient_rows()
    dom = A.domain
    counts: dict = {}
    for a, b in itertools.combinations(rows, 2):
        P = ProjectivePoint.of(_cross(a, b), dom)
        if P not in counts:
            counts[P] = sum(1 for r in rows
                            if not (r[0] * P.coords[0] + r[1] * P.coords[1]
                                    + r[2] * P.coords[2]))
    return counts


def singular_locus(A: LineArrangement) -> FatPointScheme:
    """Intersection points with multiplicity ``n_j - 1``."""
    counts = intersection_counts(A)
    return FatPointScheme(tuple(counts), tuple(n - 1 for n in counts.values()),
                          name=f"sing({A.name})" if A.name else "")


def subproducts_ideal(A: LineArrangement, k: int) -> Ideal:
    """Ideal generated by all products of ``k`` distinct forms of ``A``."""
    if not 1 <= k <= A.n:
        raise ValueError(f"k must lie in [1, {A.n}]")
    gens = []
    for combo in itertools.combinations(A.forms, k):
        g = combo[0]
        for f in combo[1:]:
            g = g * f
        gens.append(g)
    return Ideal(gens, A.domain, 3, name=f"I_{k}({A.name})" if A.name else None)


def random_points(s: int, N: int, seed: int, height: int = 100,
                  domain: CoeffDomain = QQ, max_attempts: int = 10000) -> FatPointScheme:
    """``s`` distinct points with integer coordinates in ``[-height, height]``,
    reproducible per seed; a desk-scale stand-in for general points."""
    if s < 1 or height < 2:
        raise ValueError("need s >= 1 and height >= 2")
    rng = random.Random(seed)
    pts: list = []
    attempts = 0
    while len(pts) < s:
        attempts += 1
        if attempts > max_attempts:
            raise ValueError(f"could not produce {s} distinct points with height {height}")
        v = [rng.randint(-height, height) for _ in range(N + 1)]
        if not any(v):
            continue
        P = ProjectivePoint.of(v, domain)
        if P not in pts:
            pts.append(P)
    return FatPointScheme.reduced_scheme(pts, name=f"random(s={s},N={N},seed={seed})")


# -- fixture files --------------------------------------------------------

class FixtureError(ValueError):
    """Malformed arrangement/scheme file; carries the offending line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def parse_fixture(text: str, name: str = ""):
    """Parse the line-oriented fixture format.

    ::

        field: Q | Fp 7 | Qw
        name: optional label
        line: a b c                # coefficients of a*x + b*y + c*z
        point: p0 p1 ... pN mult: m

    Returns a ``LineArrangement`` or a ``FatPointScheme``."""
    domain = None
    lines, points, mults = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, rest = body.partition(":")
        key = key.strip().lower()
        if not sep:
            raise FixtureError(f"expected 'key: value', got {body!r}", lineno)
        try:
            if key == "field":
                domain = field_make(rest.strip())
            elif key == "name":
                name = rest.strip()
            elif key == "line":
                if domain is None:
                    raise FixtureError("'field:' header must come first", lineno)
                if points:
                    raise FixtureError("a fixture holds either lines or points, not both", lineno)
                vals = [domain.parse(tok) for tok in rest.split()]
                if len(vals) != 3:
                    raise FixtureError("a line needs exactly 3 coefficients", lineno)
                lines.append(_form_from_coeffs(vals, domain))
            elif key == "point":
                if domain is None:
                    raise FixtureError("'field:' header must come first", lineno)
                if lines:
                    raise FixtureError("a fixture holds either lines or points, not both", lineno)
                coord_text, msep, mult_text = rest.partition("mult:")
                vals = [domain.parse(tok) for tok in coord_text.split()]
                if len(vals) < 2:
                    raise FixtureError("a point needs at least 2 coordinates", lineno)
                mult = int(mult_text.strip()) if msep else 1
                if mult < 1:
                    raise FixtureError("multiplicity must be positive", lineno)
                points.append(ProjectivePoint.of(vals, domain))
                mults.append(mult)
            else:
                raise FixtureError(f"unknown key {key!r}", lineno)
        except FixtureError:
            raise
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise FixtureError(str(exc), lineno) from exc
    if domain is None:
        raise FixtureError("missing 'field:' header")
    if lines:
        return arrangement_make(lines, name=name)
    if points:
        try:
            return FatPointScheme(tuple(points), tuple(mults), name=name)
        except ValueError as exc:
            raise FixtureError(str(exc)) from exc
    raise FixtureError("fixture has no 'line:' or 'point:' rows")


def _form_from_coeffs(vals, domain) -> Polynomial:
    units = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    return Polynomial(domain, 3, {u: v for u, v in zip(units, vals) if v})


def load_fixture(path):
    from pathlib import Path
    p = Path(path)
    return parse_fixture(p.read_text(), name=p.stem)


def format_fixture(obj) -> str:
    """Inverse of ``parse_fixture``."""
    out = [f"field: {obj.domain.descriptor()}"]
    if obj.name:
        out.append(f"name: {obj.name}")
    if isinstance(obj, LineArrangement):
        for f in obj.forms:
            out.append("line: " + " ".join(_tok(c) for c in _linear_coeffs(f)))
    else:
        for P, m in zip(obj.points, obj.multiplicities):
            out.append("point: " + " ".join(_tok(c) for c in P.coords) + f" mult: {m}")
    return "\n".join(out) + "\n"


def _tok(c) -> str:
    return str(c).replace(" ", "")


def linear_form(text: str, domain: CoeffDomain = QQ) -> Polynomial:
    return parse_polynomial(text, domain, 3)
