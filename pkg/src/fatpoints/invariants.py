"""Graded invariants of homogeneous ideals and fat-point schemes."""

from __future__ import annotations

import csv
import io
import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .groebner import Ideal
from .ideal_ops import irrelevant_ideal, saturate
from .oracle import alpha_oracle
from .poly import monomials_of_degree
from .schemes import FatPointScheme

log = logging.getLogger(__name__)

__all__ = [
    "HilbertTable",
    "RegularityError",
    "hilbert_function",
    "hilbert_table",
    "alpha",
    "regularity_fat_points",
    "satdeg",
    "WaldschmidtEstimate",
    "waldschmidt_bounds",
    "beta_threshold",
    "format_fraction",
    "invariant_rows",
    "invariants_csv",
]


class RegularityError(RuntimeError):
    """The Hilbert function did not settle at the expected multiplicity."""


def _standard_count(leads, nvars: int, d: int) -> int:
    count = 0
    for e in monomials_of_degree(nvars, d):
        if not any(all(a <= b for a, b in zip(l, e)) for l in leads):
            count += 1
    return count


def hilbert_function(I: Ideal, d: int) -> int:
    """``HF(R/I, d)``: the number of degree-d standard monomials."""
    if not I.homogeneous:
        raise ValueError("hilbert_function needs a homogeneous ideal")
    if d < 0:
        return 0
    return _standard_count(I.leading_monomials(), I.nvars, d)


@dataclass
class HilbertTable:
    """Values of ``HF(R/I, d)`` computed on demand and cached.

    ``multiplicity`` is the scheme length when the ideal is a fat-point
    ideal, else None."""

    ideal: Ideal
    values: dict = field(default_factory=dict)
    multiplicity: int | None = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __getitem__(self, d: int) -> int:
        with self._lock:
            if d not in self.values:
                self.values[d] = hilbert_function(self.ideal, d)
            return self.values[d]

    def upto(self, d: int) -> list:
        return [self[k] for k in range(d + 1)]

    def difference(self, d: int) -> int:
        return self[d] - (self[d - 1] if d > 0 else 0)

    def breakpoints(self) -> list:
        """``(d, HF)`` pairs where the computed values change."""
        out, last = [], None
        for d in sorted(self.values):
            if self.values[d] != last:
                out.append((d, self.values[d]))
                last = self.values[d]
        return out


def hilbert_table(I: Ideal, multiplicity: int | None = None) -> HilbertTable:
    return HilbertTable(I, multiplicity=multiplicity)


def alpha(I: Ideal) -> int:
    """Least degree of a nonzero element of homogeneous ``I``."""
    if I.is_zero():
        raise ValueError("alpha of the zero ideal")
    if not I.homogeneous:
        raise ValueError("alpha needs a homogeneous ideal")
    return min(g.degree() for g in I.groebner_basis())


def regularity_fat_points(I: Ideal, multiplicity: int, cap: int = 500) -> int:
    """``reg(I)`` for a saturated fat-point ideal of the given length.

    The quotient is one-dimensional Cohen-Macaulay, so the first difference
    of the Hilbert function is that of an Artinian reduction and
    ``reg(I) = 1 + max{d : ΔHF(d) != 0}``."""
    table = hilbert_table(I, multiplicity)
    prev = 0
    last = 0
    for d in range(cap + 1):
        h = table[d]
        if h < prev or h > multiplicity:
            raise RegularityError(
                f"HF({d}) = {h} is incompatible with a fat-point scheme of length {multiplicity}")
        if h != prev:
            last = d
        if h == multiplicity:
            return last + 1
        prev = h
    raise RegularityError(f"HF did not reach {multiplicity} by degree {cap}")


def satdeg(I: Ideal, saturation: Ideal | None = None, cap: int = 500) -> int:
    """Least t with ``HF(R/I, d) = HF(R/sat(I), d)`` for every d >= t.

    Once the two pieces agree in a degree at least the top generator degree
    of the saturation, they agree in all higher degrees (the saturation is
    generated there, and I is closed under multiplication), so the scan can
    stop.  ``saturation`` may be supplied when already known."""
    if not I.homogeneous:
        raise ValueError("satdeg needs a homogeneous ideal")
    sat = saturation if saturation is not None else saturate(I, irrelevant_ideal(I.nvars - 1, I.domain))
    top = max((g.degree() for g in sat.groebner_basis()), default=0)
    last = -1
    for d in range(cap + 1):
        if hilbert_function(I, d) != hilbert_function(sat, d):
            last = d
        elif d >= top:
            return last + 1
    raise RuntimeError(f"no agreement found by degree {cap}")


# -- Waldschmidt and resurgence bounds -------------------------------------

@dataclass(frozen=True)
class WaldschmidtEstimate:
    scheme: str
    upper_bounds: tuple  # ((m, Fraction alpha(I^(m))/m), ...)
    chudnovsky_lower: Fraction
    resurgence_lower: Fraction
    resurgence_upper: Fraction

    @property
    def best_upper(self) -> Fraction:
        return min(b for _, b in self.upper_bounds)

    def chudnovsky_holds(self) -> bool:
        """Every computed ``alpha(I^(m))/m`` dominates ``(alpha+N-1)/N``.

        A theorem only for very general points; a heuristic check otherwise."""
        return all(b >= self.chudnovsky_lower for _, b in self.upper_bounds)


def waldschmidt_bounds(S: FatPointScheme, m_max: int, alphas: dict | None = None) -> WaldschmidtEstimate:
    """Two-sided bounds on the Waldschmidt constant and resurgence of ``I_S``.

    ``alphas`` may carry precomputed ``alpha(I^(m))`` values keyed by m."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    N = S.N
    vals = dict(alphas or {})
    for m in range(1, m_max + 1):
        if m not in vals:
            vals[m] = alpha_oracle(S, m)
    ups = tuple((m, Fraction(vals[m], m)) for m in range(1, m_max + 1))
    a1 = vals[1]
    lower = Fraction(a1, 1) / min(b for _, b in ups)
    t = S.uniform_multiplicity()
    upper = Fraction(N) if not t or t < 2 else Fraction(t + N - 1, t)
    return WaldschmidtEstimate(S.name or "", ups, Fraction(a1 + N - 1, N), lower, upper)


def beta_threshold(alpha_value: int, N: int) -> Fraction:
    """The containment threshold for very general points in ``P^N``."""
    if N < 2:
        raise ValueError("N must be at least 2")
    if N in (2, 3):
        return Fraction(1)
    return Fraction(2 * (N - 1) * (alpha_value + N - 1), (N - 2) * N) + 1


# -- serialisation ---------------------------------------------------------

def format_fraction(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def invariant_rows(scheme_id: str, m: int, table: HilbertTable, alpha_value: int,
                   reg: int | None, sat: int | None, est: WaldschmidtEstimate | None = None) -> list:
    bps = " ".join(f"{d}:{h}" for d, h in table.breakpoints())
    row = [scheme_id, m, alpha_value, bps, "" if reg is None else reg, "" if sat is None else sat]
    if est is not None:
        row += [format_fraction(est.best_upper), format_fraction(est.chudnovsky_lower),
                format_fraction(est.resurgence_lower), format_fraction(est.resurgence_upper)]
    else:
        row += ["", "", "", ""]
    return row


INVARIANT_HEADER = ["scheme", "m", "alpha", "hf_breakpoints", "reg", "satdeg",
                    "alpha_hat_upper", "chudnovsky_lower", "resurgence_lower", "resurgence_upper"]


def invariants_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(INVARIANT_HEADER)
    w.writerows(rows)
    return buf.getvalue()
