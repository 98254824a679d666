"""Ideal algebra: sums, products, powers, intersection, colon, saturation."""

from __future__ import annotations

import logging

from .groebner import (Ideal, _Packing, _buchberger_internal, exact_divide,
                       ideal_equal)
from .poly import GREVLEX, Block, Polynomial

log = logging.getLogger(__name__)

__all__ = [
    "irrelevant_ideal",
    "ideal_sum",
    "ideal_product",
    "ideal_power",
    "intersect",
    "intersect_all",
    "colon",
    "ideal_quotient",
    "saturate",
    "SaturationError",
    "prune_generators",
]


class SaturationError(RuntimeError):
    """Saturation did not stabilise within the iteration cap."""


def irrelevant_ideal(N: int, domain) -> Ideal:
    """``M = <x0, ..., xN>``."""
    if N < 1:
        raise ValueError("ambient dimension must be at least 1")
    return Ideal(Polynomial.gens(domain, N + 1), name="M")


def _same_ring(a: Ideal, b: Ideal):
    if a.domain != b.domain or a.nvars != b.nvars:
        raise TypeError("ideals live in different rings")


def prune_generators(gens) -> list:
    """Drop zero, scalar-duplicate and linearly dependent generators.

    Generators of one degree that lie in the span of the others of that
    degree are removed; this keeps products of many generators manageable."""
    by_degree: dict[int, list] = {}
    seen = set()
    for g in gens:
        if not g:
            continue
        mono = g.monic()
        if mono in seen:
            continue
        seen.add(mono)
        if g.is_homogeneous():
            by_degree.setdefault(g.degree(), []).append(mono)
        else:
            by_degree.setdefault(-1 - len(by_degree), []).append(mono)
    out = []
    for _, group in sorted(by_degree.items()):
        if len(group) == 1:
            out.extend(group)
            continue
        out.extend(_independent_subset(group))
    return out


def _independent_subset(polys) -> list:
    """Greedy maximal linearly independent subset (row echelon, in order)."""
    pivots: dict = {}  # pivot monomial -> reduced row (dict)
    keep = []
    for p in polys:
        row = dict(p.terms)
        changed = True
        while row and changed:
            changed = False
            for m in sorted(row, reverse=True):
                if m in pivots:
                    c = row[m]
                    for e, a in pivots[m].items():
                        v = row.get(e)
                        v = -(c * a) if v is None else v - c * a
                        if v:
                            row[e] = v
                        else:
                            row.pop(e, None)
                    changed = True
                    break
        if row:
            lead = max(row)
            inv = 1 / row[lead]
            pivots[lead] = {e: c * inv for e, c in row.items()}
            keep.append(p)
    return keep


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    return Ideal(list(a.generators) + list(b.generators), a.domain, a.nvars)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    gens = [f * g for f in a.generators for g in b.generators]
    return Ideal(prune_generators(gens), a.domain, a.nvars)


def ideal_power(a: Ideal, r: int) -> Ideal:
    """``a^r`` as iterated products with redundant generators pruned."""
    if r < 1:
        raise ValueError("power must be at least 1")
    out = Ideal(prune_generators(a.generators), a.domain, a.nvars)
    for _ in range(r - 1):
        out = ideal_product(out, a)
    return out


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """``a ∩ b`` by eliminating t from ``t*a + (1 - t)*b``.

    The t-free part of the reduced elimination basis is itself the reduced
    grevlex basis of the intersection, so it is installed in the cache."""
    _same_ring(a, b)
    if a.is_zero() or b.is_zero():
        return Ideal([], a.domain, a.nvars)
    n = a.nvars
    order = Block([0], GREVLEX)
    pk = _Packing(n + 1, order)
    one_t = 1 << 0  # packed t
    polys = []
    for f in a.generators:
        polys.append({pk.pack((1,) + e): c for e, c in f.terms.items()})
    for g in b.generators:
        terms = {}
        for e, c in g.terms.items():
            base = pk.pack((0,) + e)
            terms[base] = c
            terms[base + one_t] = -c
        polys.append(terms)
    basis = _buchberger_internal(polys, pk)
    keep = []
    for terms in basis:
        if all(m & 0xFFFF == 0 for m in terms):
            keep.append({e[1:]: c for e, c in
                         ((pk.unpack(m), c) for m, c in terms.items())})
    gens = [Polynomial(a.domain, n, t, _trusted=True) for t in keep]
    out = Ideal(gens, a.domain, n)
    out._seed(GREVLEX, gens)
    return out


def intersect_all(ideals) -> Ideal:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    acc = ideals[0]
    for other in ideals[1:]:
        acc = intersect(acc, other)
    return acc


def colon(a: Ideal, f: Polynomial) -> Ideal:
    """``(a : f)`` computed as ``(a ∩ <f>) / f``."""
    if not f:
        raise ValueError("colon by the zero polynomial")
    principal = Ideal([f], a.domain, a.nvars)
    meet = intersect(a, principal)
    gens = [exact_divide(g, f) for g in meet.generators]
    return Ideal(gens, a.domain, a.nvars)


def ideal_quotient(a: Ideal, b: Ideal) -> Ideal:
    """``(a : b) = ∩_g (a : g)`` over the generators of ``b``."""
    _same_ring(a, b)
    parts = [colon(a, g) for g in b.generators]
    return intersect_all(parts)


def saturate(a: Ideal, b: Ideal, max_iterations: int = 50) -> Ideal:
    """``a : b^∞``, iterating ideal quotients until the chain stabilises."""
    _same_ring(a, b)
    current = a
    for step in range(max_iterations):
        nxt = ideal_quotient(current, b)
        if ideal_equal(nxt, current):
            log.debug("saturation stabilised after %d steps", step)
            return current
        current = nxt
    raise SaturationError(f"no stabilisation within {max_iterations} quotient steps")
