"""Linear-algebra route to graded pieces, independent of Groebner bases.

A form of degree d lies in ``I(P)^k`` iff all its partial derivatives of
order < k vanish at P.  Dehomogenising at the pivot coordinate of P, only
derivatives in the other N variables are needed, so each point of
multiplicity k contributes ``C(k - 1 + N, N)`` rows to the conditions
matrix whose columns are the degree-d monomials.  Ordinary powers are
handled by spanning sets: ``(I^r)_d`` is spanned by products of r
generators times monomials of the complementary degree.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from math import comb

from .coeffs import PrimeField
from .groebner import Ideal
from .linalg import nullspace, rank
from .poly import Polynomial, derivative_multi_indices, monomials_of_degree
from .schemes import FatPointScheme

log = logging.getLogger(__name__)

__all__ = [
    "ConditionsMatrix",
    "conditions_matrix",
    "symbolic_piece_dim",
    "symbolic_hilbert",
    "symbolic_piece_basis",
    "alpha_oracle",
    "regularity_oracle",
    "alpha_upper_cap",
    "power_piece_vectors",
    "power_piece_dim",
    "power_piece_membership",
    "containment_oracle",
    "OracleCapExceeded",
]


class OracleCapExceeded(RuntimeError):
    """A degree scan ran past its hard cap."""


def _falling(e: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= e - j
    return out


@dataclass
class ConditionsMatrix:
    degree: int
    monomials: tuple
    rows: list
    labels: list  # (point index, multi-index) per row

    @property
    def ncols(self) -> int:
        return len(self.monomials)


def conditions_matrix(S: FatPointScheme, m: int, d: int) -> ConditionsMatrix:
    """Derivative conditions for ``I^(m)`` in degree ``d``."""
    dom = S.domain
    nv = S.nvars
    if isinstance(dom, PrimeField) and dom.p <= d:
        raise ValueError(f"prime {dom.p} must exceed the degree {d} for derivative conditions")
    monos = monomials_of_degree(nv, d)
    zero = dom.zero
    consts = {}
    rows, labels = [], []
    for idx, (P, mult) in enumerate(zip(S.points, S.multiplicities)):
        k = m * mult
        piv = P.pivot
        coords = P.coords
        pw = [[dom.one] for _ in range(nv)]
        for j in range(nv):
            for _ in range(d):
                pw[j].append(pw[j][-1] * coords[j])
        for mu in derivative_multi_indices(nv, min(k - 1, d), skip=piv):
            row = []
            for e in monos:
                coef = 1
                for ej, mj in zip(e, mu):
                    if ej < mj:
                        coef = 0
                        break
                    if mj:
                        coef *= _falling(ej, mj)
                if not coef:
                    row.append(zero)
                    continue
                val = consts.get(coef)
                if val is None:
                    val = consts[coef] = dom.convert(coef)
                for j in range(nv):
                    r = e[j] - mu[j]
                    if r and j != piv:
                        val = val * pw[j][r]
                row.append(val)
            rows.append(row)
            labels.append((idx, mu))
    return ConditionsMatrix(d, monos, rows, labels)


def symbolic_piece_dim(S: FatPointScheme, m: int, d: int) -> int:
    """``dim_K (I^(m))_d`` as the kernel dimension of the conditions matrix."""
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    cm = conditions_matrix(S, m, d)
    if not cm.rows:
        return cm.ncols
    return cm.ncols - rank(cm.rows, S.domain)


def symbolic_hilbert(S: FatPointScheme, m: int, d: int) -> int:
    """``HF(R/I^(m), d)``: the rank of the conditions matrix."""
    return comb(d + S.N, S.N) - symbolic_piece_dim(S, m, d)


def symbolic_piece_basis(S: FatPointScheme, m: int, d: int) -> list:
    """A basis of ``(I^(m))_d`` as polynomials."""
    cm = conditions_matrix(S, m, d)
    dom = S.domain
    if not cm.rows:
        vecs = [[dom.one if i == j else dom.zero for j in range(cm.ncols)]
                for i in range(cm.ncols)]
    else:
        vecs = nullspace(cm.rows, dom, cm.ncols)
    return [Polynomial(dom, S.nvars, {e: c for e, c in zip(cm.monomials, v) if c},
                       _trusted=True) for v in vecs]


def alpha_upper_cap(S: FatPointScheme, m: int) -> int:
    """A degree guaranteed to carry a nonzero form of ``I^(m)``.

    Both the product of one line per point (degree ``sum k_i``) and the
    parameter count (more monomials than conditions) give such a degree."""
    ks = [m * mi for mi in S.multiplicities]
    N = S.N
    conds = sum(comb(k - 1 + N, N) for k in ks)
    d = 0
    while comb(d + N, N) <= conds:
        d += 1
    return min(sum(ks), d)


def alpha_oracle(S: FatPointScheme, m: int, start: int | None = None,
                 cap: int | None = None, progress=None) -> int:
    """Least degree of a nonzero form vanishing to order ``m*m_i`` at each P_i."""
    if m < 1:
        raise ValueError("m must be at least 1")
    lo = max(m * mi for mi in S.multiplicities)
    if start is not None:
        lo = max(lo, start)
    hard = alpha_upper_cap(S, m)
    cap = hard if cap is None else min(cap, hard)
    for d in range(lo, cap + 1):
        dim = symbolic_piece_dim(S, m, d)
        if progress is not None:
            progress(d, dim)
        if dim > 0:
            return d
    if cap < hard:
        raise OracleCapExceeded(f"no form found up to degree {cap}")
    raise AssertionError("degree cap reached without a nonzero form")  # pragma: no cover


def regularity_oracle(S: FatPointScheme, m: int, cap: int = 200) -> int:
    """``reg(I^(m))``: one more than the first degree where the conditions
    matrix has full row rank (the Hilbert function reaches the length)."""
    target = S.scaled(m).degree()
    for d in range(cap + 1):
        if symbolic_hilbert(S, m, d) == target:
            return d + 1
    raise OracleCapExceeded(f"Hilbert function did not reach {target} by degree {cap}")


def _products(ideal: Ideal, r: int) -> list:
    seen = {}
    for combo in itertools.combinations_with_replacement(range(len(ideal.generators)), r):
        g = ideal.generators[combo[0]]
        for i in combo[1:]:
            g = g * ideal.generators[i]
        seen.setdefault(g.monic(), None)
    return list(seen)


def power_piece_vectors(ideal: Ideal, r: int, d: int, products=None) -> tuple:
    """Spanning vectors of ``(I^r)_d`` in the degree-d monomial basis."""
    if not ideal.homogeneous:
        raise ValueError("power_piece_vectors needs a homogeneous ideal")
    prods = _products(ideal, r) if products is None else products
    monos = monomials_of_degree(ideal.nvars, d)
    index = {e: i for i, e in enumerate(monos)}
    zero = ideal.domain.zero
    vecs = []
    for g in prods:
        k = d - g.degree()
        if k < 0:
            continue
        for s in monomials_of_degree(ideal.nvars, k):
            v = [zero] * len(monos)
            for e, c in g.terms.items():
                v[index[tuple(a + b for a, b in zip(e, s))]] = c
            vecs.append(v)
    return monos, vecs


def power_piece_dim(ideal: Ideal, r: int, d: int) -> int:
    _, vecs = power_piece_vectors(ideal, r, d)
    return rank(vecs, ideal.domain) if vecs else 0


def _vector(f: Polynomial, monos) -> list:
    index = {e: i for i, e in enumerate(monos)}
    v = [f.domain.zero] * len(monos)
    for e, c in f.terms.items():
        v[index[e]] = c
    return v


def _outside_span(vecs, targets, domain, ncols):
    """Index of the first target outside the row span of ``vecs``, or None.

    The row span is the annihilator of the right kernel, so one kernel
    computation serves every target."""
    if not vecs:
        kernel = [[domain.one if i == j else domain.zero for j in range(ncols)]
                  for i in range(ncols)]
    else:
        kernel = nullspace(vecs, domain, ncols)
    for idx, t in enumerate(targets):
        for k in kernel:
            s = domain.zero
            for a, b in zip(t, k):
                if a and b:
                    s = s + a * b
            if s:
                return idx
    return None


def power_piece_membership(f: Polynomial, ideal: Ideal, r: int, products=None) -> bool:
    """Whether homogeneous ``f`` lies in ``I^r``, decided in degree ``deg f``."""
    if not f:
        return True
    if not f.is_homogeneous():
        raise ValueError("power_piece_membership needs a homogeneous polynomial")
    d = f.degree()
    monos, vecs = power_piece_vectors(ideal, r, d, products)
    return _outside_span(vecs, [_vector(f, monos)], f.domain, len(monos)) is None


def containment_oracle(S: FatPointScheme, m: int, ideal: Ideal, r: int,
                       generators=None, extra_factors=(), progress=None):
    """Decide ``I^(m) ⊆ ideal^r * F_1 * ... * F_k`` degreewise.

    The right side is spanned, degree by degree, by products of r generators
    of ``ideal`` and one generator of each extra factor, times monomials.

    Without explicit ``generators`` the left side is taken to be the graded
    pieces ``(I^(m))_d`` for ``alpha <= d <= reg(I^(m))``, which generate
    ``I^(m)``.  Returns ``(holds, witness)`` where the witness is a left
    element outside the right side, or None."""
    prods = _products(ideal, r)
    for factor in extra_factors:
        prods = list({(f * g).monic(): None for f in factor.generators
                      for g in prods})
    dom = S.domain
    if generators is not None:
        by_degree: dict = {}
        for g in generators:
            if g:
                by_degree.setdefault(g.degree(), []).append(g)
        for d in sorted(by_degree):
            monos, vecs = power_piece_vectors(ideal, r, d, prods)
            gens = by_degree[d]
            bad = _outside_span(vecs, [_vector(g, monos) for g in gens], dom, len(monos))
            if progress is not None:
                progress(d, len(gens), len(vecs))
            if bad is not None:
                return False, gens[bad]
        return True, None
    lo = alpha_oracle(S, m)
    hi = regularity_oracle(S, m)
    for d in range(lo, hi + 1):
        basis = symbolic_piece_basis(S, m, d)
        if not basis:
            continue
        monos, vecs = power_piece_vectors(ideal, r, d, prods)
        if progress is not None:
            progress(d, len(basis), len(vecs))
        bad = _outside_span(vecs, [_vector(b, monos) for b in basis], dom, len(monos))
        if bad is not None:
            return False, basis[bad]
    return True, None
