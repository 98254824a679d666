"""Containment checks between symbolic and ordinary powers, with reports.

Every verdict comes from reducing the left generators against a Groebner
basis of the right side.  The linear-algebra oracle can be run as a second
opinion; a failure is only reported once the witness has been confirmed by
both routes.
"""

from __future__ import annotations

import csv
import io
import logging
import time
from dataclasses import dataclass, field

from .groebner import Ideal
from .ideal_ops import ideal_power, ideal_product, irrelevant_ideal
from .invariants import regularity_fat_points
from .oracle import alpha_oracle, containment_oracle, power_piece_membership
from .poly import Polynomial, evaluate_derivative, derivative_multi_indices
from .schemes import (FatPointScheme, LineArrangement, fat_point_ideal,
                      singular_locus, subproducts_ideal, symbolic_power)

log = logging.getLogger(__name__)

__all__ = [
    "HOLDS",
    "FAILS",
    "INCONCLUSIVE",
    "ContainmentReport",
    "MethodDisagreement",
    "contains_ideal",
    "vanishes_to_order",
    "symbolic_containment",
    "harbourne_check",
    "prop21_check",
    "harbourne_huneke_check",
    "cor34_check",
    "PostulationVerdict",
    "postulation_criterion",
    "product_containment_check",
    "reports_csv",
    "reports_markdown",
]

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "criterion-inconclusive"


class MethodDisagreement(AssertionError):
    """The Groebner and oracle routes returned different verdicts."""


@dataclass(frozen=True)
class ContainmentReport:
    query: str
    m: int
    r: int
    verdict: str
    method: str
    witness: Polynomial | None = None
    extra: int = 0  # exponent k of an extra factor M^k on the right
    seconds: float = field(default=0.0, compare=False)
    degrees: tuple = ()  # generator degrees checked on the left

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def witness_degree(self):
        return None if self.witness is None else self.witness.degree()

    def row(self, timing: bool = False) -> list:
        out = [self.query, self.m, self.r, self.extra, self.verdict,
               "" if self.witness is None else self.witness_degree, self.method]
        if timing:
            out.append(f"{self.seconds:.2f}")
        return out


REPORT_HEADER = ["query", "m", "r", "mfactor", "verdict", "witness_degree", "method"]


def _groebner_verdict(left_gens, right: Ideal):
    for g in left_gens:
        if right.reduce(g):
            return False, g
    return True, None


def vanishes_to_order(f: Polynomial, S: FatPointScheme, m: int = 1) -> bool:
    """Whether ``f`` lies in ``I_S^(m)``: all derivatives of order below
    ``m*m_i`` vanish at each point (valid in characteristic 0)."""
    for P, mult in zip(S.points, S.multiplicities):
        for mu in derivative_multi_indices(S.nvars, min(m * mult - 1, max(f.degree(), 0))):
            if evaluate_derivative(f, P, mu):
                return False
    return True


def _confirm_witness(w: Polynomial, right: Ideal, left_scheme=None, left_m=None) -> None:
    """Second, Groebner-free confirmation of a failure witness."""
    if power_piece_membership(w, right, 1):
        raise MethodDisagreement("oracle places the Groebner witness inside the right side")
    if left_scheme is not None and not vanishes_to_order(w, left_scheme, left_m):
        raise MethodDisagreement("witness does not vanish to the required orders")


def contains_ideal(A: Ideal, B: Ideal, cross_check: bool = True, query: str = "") -> ContainmentReport:
    """Decide ``A ⊆ B`` by reducing the generators of A modulo GB(B).

    With ``cross_check`` every generator is also tested against the graded
    pieces of B spanned by its generators times monomials."""
    t = time.perf_counter()
    if A.domain != B.domain or A.nvars != B.nvars:
        raise TypeError("ideals live in different rings")
    gens = [g for g in A.generators if g]
    ok, w = _groebner_verdict(gens, B)
    method = "groebner"
    if cross_check:
        method = "both"
        if not ok:
            _confirm_witness(w, B)
        else:
            for g in gens:
                if not power_piece_membership(g, B, 1):
                    raise MethodDisagreement(f"oracle rejects generator {g}")
    return ContainmentReport(query or f"{A.name or 'A'} in {B.name or 'B'}", 1, 1,
                             HOLDS if ok else FAILS, method, w,
                             seconds=time.perf_counter() - t,
                             degrees=tuple(sorted({g.degree() for g in gens})))


def _scheme_check(query: str, S: FatPointScheme, m_left: int, right: Ideal,
                  base: Ideal, r: int, extra_factors=(), extra: int = 0,
                  method: str = "both", progress=None) -> ContainmentReport:
    """``I_S^(m_left) ⊆ right`` where ``right = base^r * prod(extra_factors)``."""
    if method not in ("groebner", "oracle", "both"):
        raise ValueError(f"unknown method {method!r}")
    t = time.perf_counter()
    left = symbolic_power(S, m_left) if method != "oracle" else None
    verdict = None
    witness = None
    if method in ("groebner", "both"):
        ok, witness = _groebner_verdict(left.groebner_basis(), right)
        verdict = ok
        if not ok:
            _confirm_witness(witness, right, S, m_left)
    if method in ("oracle", "both"):
        ok2, w2 = containment_oracle(S, m_left, base, r, extra_factors=extra_factors,
                                     progress=progress)
        if verdict is None:
            verdict, witness = ok2, w2
            if not ok2:
                # a failure needs the Groebner route as well
                if not right.reduce(w2):
                    raise MethodDisagreement("Groebner reduction places the oracle witness inside")
                method = "both"
        elif ok2 != verdict:
            raise MethodDisagreement(f"{query}: groebner={verdict} oracle={ok2}")
    degrees = tuple(sorted({g.degree() for g in left.groebner_basis()})) if left is not None else ()
    return ContainmentReport(query, m_left, r, HOLDS if verdict else FAILS, method, witness,
                             extra, time.perf_counter() - t, degrees)


def symbolic_containment(S: FatPointScheme, m: int, r: int, mfactor: int = 0,
                         method: str = "both", progress=None) -> ContainmentReport:
    """``I^(m) ⊆ M^mfactor I^r`` for ``I = I_S``."""
    if m < 1 or r < 1 or mfactor < 0:
        raise ValueError("need m, r >= 1 and mfactor >= 0")
    I = fat_point_ideal(S)
    right = ideal_power(I, r)
    Mk = _m_power(S.N, S.domain, mfactor)
    factors = ()
    if Mk is not None:
        right = ideal_product(Mk, right)
        factors = (Mk,)
    label = f"M^{mfactor} " if mfactor else ""
    return _scheme_check(f"{S.name}: I^({m}) in {label}I^{r}", S, m, right, I, r, factors,
                         mfactor, method, progress)


def harbourne_check(S: FatPointScheme, m: int, method: str = "both", progress=None) -> ContainmentReport:
    """``I^(Nm-N+1) ⊆ I^m`` for ``I = I_S``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    N = S.N
    return symbolic_containment(S, N * m - N + 1, m, 0, method, progress)


def prop21_check(S: FatPointScheme, t: int, m: int, method: str = "both", progress=None) -> ContainmentReport:
    """``(I^(t))^(Nm-N+1) ⊆ (I^(t))^m`` for reduced S, via ``(I^(t))^(k) = I^(tk)``."""
    if t < 2:
        raise ValueError("t must be at least 2")
    if m < 1:
        raise ValueError("m must be at least 1")
    if not S.is_reduced():
        raise ValueError("prop21_check needs a reduced scheme")
    N = S.N
    k = N * m - N + 1
    fat = S.scaled(t)
    It = fat_point_ideal(fat)
    return _scheme_check(f"{S.name}: (I^({t}))^({k}) in (I^({t}))^{m}", fat, k,
                         ideal_power(It, m), It, m, method=method, progress=progress)


def _m_power(N: int, domain, k: int):
    return ideal_power(irrelevant_ideal(N, domain), k) if k > 0 else None


def harbourne_huneke_check(S: FatPointScheme, r: int, method: str = "both", progress=None) -> ContainmentReport:
    """``I^(rN) ⊆ M^(r(N-1)) I^r``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    N = S.N
    return symbolic_containment(S, r * N, r, r * (N - 1), method, progress)


def cor34_check(A: LineArrangement, r: int, method: str = "both", progress=None) -> tuple:
    """``I^(2r-1) ⊆ M^(r-1) I^r`` and ``I^(2r) ⊆ M^r I^r`` for the subproduct ideal."""
    if r < 1:
        raise ValueError("r must be at least 1")
    S = singular_locus(A)
    I = subproducts_ideal(A, A.n - 1)
    Ir = ideal_power(I, r)
    out = []
    for m_left, k in ((2 * r - 1, r - 1), (2 * r, r)):
        Mk = _m_power(2, A.domain, k)
        right = ideal_product(Mk, Ir) if Mk is not None else Ir
        factors = (Mk,) if Mk is not None else ()
        out.append(_scheme_check(f"{A.name}: I^({m_left}) in M^{k} I^{r}", S, m_left, right,
                                 I, r, factors, k, method, progress))
    return tuple(out)


@dataclass(frozen=True)
class PostulationVerdict:
    m: int
    r: int
    reg: int
    alpha: int
    verdict: str  # "sufficient-holds" or "inconclusive"
    confirmed: bool | None = None

    @property
    def fires(self) -> bool:
        return self.verdict == "sufficient-holds"


def postulation_criterion(S: FatPointScheme, m: int, r: int, confirm: bool = False,
                          method: str = "groebner") -> PostulationVerdict:
    """``r*reg(I) <= alpha(I^(m))`` implies ``I^(m) ⊆ I^r``; never claims failure.

    With ``confirm`` the containment is decided as well and a firing
    criterion whose containment fails raises ``AssertionError``."""
    if m < 1 or r < 1:
        raise ValueError("m and r must be at least 1")
    I = fat_point_ideal(S)
    reg = regularity_fat_points(I, S.degree())
    a = alpha_oracle(S, m)
    fires = r * reg <= a
    confirmed = None
    if confirm:
        rep = _scheme_check(f"{S.name}: I^({m}) in I^{r}", S, m, ideal_power(I, r), I, r,
                            method=method)
        confirmed = rep.holds
        if fires and not rep.holds:
            raise AssertionError("postulation criterion fired on a failing containment")
    return PostulationVerdict(m, r, reg, a, "sufficient-holds" if fires else "inconclusive",
                              confirmed)


def product_containment_check(S: FatPointScheme, ell: int, a, method: str = "both",
                              progress=None) -> ContainmentReport:
    """``I^(N*ell + sum a) ⊆ I^(a_1+1) ... I^(a_ell+1)`` for reduced S."""
    a = tuple(int(v) for v in a)
    if ell < 1 or len(a) != ell or any(v < 0 for v in a):
        raise ValueError("need ell >= 1 and ell nonnegative exponents")
    if not S.is_reduced():
        raise ValueError("product_containment_check needs a reduced scheme")
    N = S.N
    k = N * ell + sum(a)
    factors = [symbolic_power(S, v + 1) for v in a]
    right = factors[0]
    for f in factors[1:]:
        right = ideal_product(right, f)
    label = "".join(f"I^({v + 1})" for v in a)
    return _scheme_check(f"{S.name}: I^({k}) in {label}", S, k, right, factors[0], 1,
                         tuple(factors[1:]), 0, method, progress)


# -- tables ---------------------------------------------------------------

def reports_csv(reports, timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_HEADER + (["seconds"] if timing else []))
    for rep in reports:
        w.writerow(rep.row(timing))
    return buf.getvalue()


def reports_markdown(reports, timing: bool = False) -> str:
    header = REPORT_HEADER + (["seconds"] if timing else [])
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for rep in reports:
        lines.append("| " + " | ".join(str(c) for c in rep.row(timing)) + " |")
    return "\n".join(lines) + "\n"
