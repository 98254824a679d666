"""Buchberger's algorithm, normal forms, membership and ideal equality.

The engine works on packed monomials: an exponent vector is stored as one
Python int with a 16-bit field per variable, the top bit of each field kept
free as a guard.  Multiplying monomials is integer addition and ``g | m`` is
the single test ``((m | GUARD) - g) & GUARD == GUARD``.

Pairs are selected by the normal strategy (smallest lcm first) with the
sugar degree as primary key, which coincides with the plain normal strategy
for homogeneous input under a graded order.  Useless pairs are discarded
with the Gebauer-Moeller installation of Buchberger's two criteria.
"""

from __future__ import annotations

import threading
from heapq import heapify, heappop, heappush

import gmpy2

from .coeffs import CoeffDomain
from .poly import GREVLEX, MonomialOrder, Polynomial

__all__ = [
    "Ideal",
    "reduce",
    "buchberger",
    "member",
    "ideal_equal",
    "divide",
    "exact_divide",
    "is_groebner_basis",
    "is_reduced_basis",
]

_W = 16
_FIELD = (1 << _W) - 1
_MAX_EXP = (1 << (_W - 1)) - 1


class _Packing:
    """Packed-monomial helpers plus a sort-key memo for one order."""

    def __init__(self, nvars: int, order: MonomialOrder):
        self.nvars = nvars
        self.order = order
        self.shifts = [_W * i for i in range(nvars)]
        self.guard = sum(1 << (s + _W - 1) for s in self.shifts)
        order_key = order.key
        unpack = self.unpack

        class _Keys(dict):
            def __missing__(self, m):
                k = order_key(unpack(m))
                self[m] = k
                return k

        self.keys = _Keys()

    def pack(self, exp) -> int:
        m = 0
        for e, s in zip(exp, self.shifts):
            if e > _MAX_EXP:
                raise OverflowError(f"exponent {e} too large for the packed representation")
            m |= e << s
        return m

    def unpack(self, m: int) -> tuple:
        return tuple((m >> s) & _FIELD for s in self.shifts)

    def divides(self, g: int, m: int) -> bool:
        guard = self.guard
        return ((m | guard) - g) & guard == guard

    def lcm(self, a: int, b: int) -> int:
        r = 0
        for s in self.shifts:
            x = (a >> s) & _FIELD
            y = (b >> s) & _FIELD
            r |= (x if x > y else y) << s
        return r

    def degree(self, m: int) -> int:
        return sum((m >> s) & _FIELD for s in self.shifts)

    def to_internal(self, f: Polynomial) -> dict:
        return {self.pack(e): c for e, c in f.terms.items()}

    def to_polynomial(self, terms: dict, domain, nvars: int | None = None) -> Polynomial:
        nvars = self.nvars if nvars is None else nvars
        return Polynomial(domain, nvars,
                          {self.unpack(m)[:nvars] if nvars != self.nvars else self.unpack(m): c
                           for m, c in terms.items()},
                          _trusted=True)

    def lead(self, terms: dict) -> int:
        return max(terms, key=self.keys.__getitem__)


class _Elem:
    """A monic basis element: leading monomial plus its tail terms."""

    __slots__ = ("lm", "tail", "terms", "sugar")

    def __init__(self, lm, terms, sugar):
        self.lm = lm
        self.terms = terms
        self.tail = [(m, c) for m, c in terms.items() if m != lm]
        self.sugar = sugar


def _make_monic(terms: dict, lead: int) -> dict:
    lc = terms[lead]
    if lc == 1:
        return terms
    inv = 1 / lc
    return {m: c * inv for m, c in terms.items()}


def _normal_form(terms: dict, basis, pk: _Packing, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by the monic ``basis`` elements.

    Reducers are tried in list order (lowest index first).  With
    ``full=False`` only the leading term is reduced (top reduction)."""
    keys = pk.keys
    guard = pk.guard
    f = dict(terms)
    heap = [(-keys[m], m) for m in f]
    heapify(heap)
    rem = {}
    while heap:
        _, m = heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        mg = m | guard
        for g in basis:
            if (mg - g.lm) & guard == guard:
                break
        else:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
            continue
        shift = m - g.lm
        for e, a in g.tail:
            ne = e + shift
            v = f.get(ne)
            if v is None:
                f[ne] = -(c * a)
                heappush(heap, (-keys[ne], ne))
            else:
                v = v - c * a
                if v:
                    f[ne] = v
                else:
                    del f[ne]
    return rem


def _update(active, pairs, heap, elems, h, pk: _Packing):
    """Gebauer-Moeller installation of the new element index ``h``."""
    lh = elems[h].lm
    lcm = pk.lcm
    divides = pk.divides

    cands = [(g, lcm(lh, elems[g].lm)) for g in active]
    kept = []
    for idx, (g1, l1) in enumerate(cands):
        coprime = l1 == lh + elems[g1].lm
        if coprime:
            kept.append((g1, l1, True))
            continue
        redundant = any(divides(l2, l1) for _, l2 in cands[idx + 1:]) or \
            any(divides(l2, l1) for _, l2, _ in kept)
        if not redundant:
            kept.append((g1, l1, False))

    # drop old pairs whose lcm is strictly divisible by lm(h) in the chain sense
    for pair in list(pairs):
        g1, g2 = pair
        l12 = pairs[pair][2]
        if divides(lh, l12) and lcm(elems[g1].lm, lh) != l12 \
                and lcm(elems[g2].lm, lh) != l12:
            del pairs[pair]

    for g, l, coprime in kept:
        if coprime:
            continue
        e_g, e_h = elems[g], elems[h]
        sugar = max(e_g.sugar + pk.degree(l - e_g.lm), e_h.sugar + pk.degree(l - lh))
        key = pk.keys[l]
        pairs[(g, h)] = (sugar, key, l)
        heappush(heap, (sugar, key, g, h))

    new_active = [g for g in active if not divides(lh, elems[g].lm)]
    new_active.append(h)
    return new_active


def _spoly(e1: _Elem, e2: _Elem, l: int) -> dict:
    s1 = l - e1.lm
    s2 = l - e2.lm
    out = {m + s1: c for m, c in e1.tail}
    for m, c in e2.tail:
        ne = m + s2
        v = out.get(ne)
        if v is None:
            out[ne] = -c
        else:
            v = v - c
            if v:
                out[ne] = v
            else:
                del out[ne]
    return out


# -- fraction-free variant over Q ----------------------------------------
#
# Over Q the basis elements are kept as primitive integer polynomials and
# reduction is pseudo-division: to cancel c*m against g with leading
# coefficient a, the whole working polynomial is scaled by a/gcd(a, c).
# This avoids normalising a rational at every step, which dominates the
# cost once coefficients grow.

_MPZ = type(gmpy2.mpz(0))
_MPQ = type(gmpy2.mpq(0))


def _primitive(terms: dict) -> dict:
    g = 0
    for c in terms.values():
        g = gmpy2.gcd(g, c)
        if g == 1:
            return terms
    return {m: c // g for m, c in terms.items()} if g else terms


def _to_integral(terms: dict) -> dict:
    den = 1
    for c in terms.values():
        if c.denominator != 1:
            den = gmpy2.lcm(den, c.denominator)
    return _primitive({m: gmpy2.mpz(c * den) for m, c in terms.items()})


def _normal_form_z(terms: dict, basis, pk: _Packing, full: bool = True) -> dict:
    """Integer pseudo-remainder of ``terms`` modulo primitive ``basis``, up
    to a nonzero rational factor; the result is primitive."""
    keys = pk.keys
    guard = pk.guard
    f = dict(terms)
    heap = [(-keys[m], m) for m in f]
    heapify(heap)
    rem = {}
    steps = 0
    while heap:
        _, m = heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        mg = m | guard
        for g in basis:
            if (mg - g.lm) & guard == guard:
                break
        else:
            rem[m] = c
            if not full:
                rem.update(f)
                return _primitive(rem)
            continue
        a = g.terms[g.lm]
        d = gmpy2.gcd(a, c)
        if d != 1:
            a //= d
            c //= d
        if a != 1:
            if a == -1:
                f = {k: -v for k, v in f.items()}
                rem = {k: -v for k, v in rem.items()}
            else:
                f = {k: v * a for k, v in f.items()}
                rem = {k: v * a for k, v in rem.items()}
        shift = m - g.lm
        for e, b in g.tail:
            ne = e + shift
            v = f.get(ne)
            if v is None:
                f[ne] = -(c * b)
                heappush(heap, (-keys[ne], ne))
            else:
                v = v - c * b
                if v:
                    f[ne] = v
                else:
                    del f[ne]
        steps += 1
        if steps % 16 == 0 and f:
            cont = 0
            for v in f.values():
                cont = gmpy2.gcd(cont, v)
                if cont == 1:
                    break
            for v in rem.values():
                if cont == 1:
                    break
                cont = gmpy2.gcd(cont, v)
            if cont > 1:
                f = {k: v // cont for k, v in f.items()}
                rem = {k: v // cont for k, v in rem.items()}
    return _primitive(rem) if rem else rem


def _spoly_z(e1: _Elem, e2: _Elem, l: int) -> dict:
    a1, a2 = e1.terms[e1.lm], e2.terms[e2.lm]
    d = gmpy2.gcd(a1, a2)
    a1 //= d
    a2 //= d
    s1 = l - e1.lm
    s2 = l - e2.lm
    out = {m + s1: c * a2 for m, c in e1.tail}
    for m, c in e2.tail:
        ne = m + s2
        v = out.get(ne)
        if v is None:
            out[ne] = -(c * a1)
        else:
            v = v - c * a1
            if v:
                out[ne] = v
            else:
                del out[ne]
    return out


def _buchberger_internal(polys: list, pk: _Packing, progress=None) -> list:
    """Reduced Groebner basis of packed polynomials; returns monic dicts."""
    polys = [t for t in polys if t]
    if polys and all(type(c) is _MPQ for t in polys for c in t.values()):
        integral = [_to_integral(t) for t in polys]
        out = _buchberger_core(integral, pk, progress, _normal_form_z, _spoly_z, lambda t, lead: t)
        return [_make_monic({m: gmpy2.mpq(c) for m, c in t.items()},
                            max(t, key=pk.keys.__getitem__)) for t in out]
    return _buchberger_core(polys, pk, progress, _normal_form, _spoly, _make_monic)


def _buchberger_core(polys: list, pk: _Packing, progress, nf, spoly, normalise) -> list:
    elems: list[_Elem] = []
    active: list[int] = []
    pairs: dict = {}
    heap: list = []
    keys = pk.keys

    def add(terms, sugar):
        nonlocal active
        lead = max(terms, key=keys.__getitem__)
        terms = normalise(terms, lead)
        elems.append(_Elem(lead, terms, sugar))
        active = _update(active, pairs, heap, elems, len(elems) - 1, pk)

    seeds = [(t, max(pk.degree(m) for m in t)) for t in polys if t]
    seeds.sort(key=lambda s: (s[1], keys[pk.lead(s[0])]))
    for terms, sugar in seeds:
        basis = [elems[g] for g in active]
        r = nf(terms, basis, pk)
        if r:
            add(r, sugar)

    done = 0
    while heap:
        sugar, _, g1, g2 = heappop(heap)
        info = pairs.pop((g1, g2), None)
        if info is None:
            continue
        s = spoly(elems[g1], elems[g2], info[2])
        if not s:
            continue
        basis = [elems[g] for g in active]
        r = nf(s, basis, pk)
        if r:
            deg = max(pk.degree(m) for m in r)
            add(r, max(sugar, deg))
        done += 1
        if progress is not None and done % 200 == 0:
            progress(done, len(pairs), len(active))

    # interreduce the (already minimal) active set: no other leading monomial
    # divides lm(e), so reducing e by the others only touches its tail
    final = []
    for g in active:
        e = elems[g]
        others = [elems[h] for h in active if h != g]
        final.append(nf(e.terms, others, pk) if e.tail else dict(e.terms))
    final.sort(key=lambda t: keys[max(t, key=keys.__getitem__)])
    return final


def _common(polys):
    polys = [p for p in polys if p]
    if not polys:
        return None, None, []
    dom, n = polys[0].domain, polys[0].nvars
    for p in polys[1:]:
        if p.domain != dom or p.nvars != n:
            raise TypeError("generators live in different rings")
    return dom, n, polys


def buchberger(gens, order: MonomialOrder = GREVLEX, progress=None) -> list:
    """Reduced Groebner basis of ``gens`` under ``order``.

    The result is monic, auto-reduced and sorted by increasing leading
    monomial, so two generating sets of the same ideal give equal lists."""
    dom, n, gens = _common(gens)
    if not gens:
        return []
    pk = _Packing(n, order)
    internal = _buchberger_internal([pk.to_internal(g) for g in gens], pk, progress)
    return [pk.to_polynomial(t, dom) for t in internal]


def reduce(f: Polynomial, basis, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Normal form of ``f`` on division by ``basis`` (lowest index first)."""
    if not f:
        return f
    pk = _Packing(f.nvars, order)
    elems = []
    for b in basis:
        if not b:
            raise ValueError("basis elements must be nonzero")
        if b.domain != f.domain or b.nvars != f.nvars:
            raise TypeError("basis and polynomial live in different rings")
        t = pk.to_internal(b)
        lead = pk.lead(t)
        elems.append(_Elem(lead, _make_monic(t, lead), 0))
    return pk.to_polynomial(_normal_form(pk.to_internal(f), elems, pk), f.domain)


def divide(f: Polynomial, divisors, order: MonomialOrder = GREVLEX):
    """Multivariate division; returns ``(quotients, remainder)``."""
    dom, n = f.domain, f.nvars
    lts = [d.leading_term(order) for d in divisors]
    quotients = [dict() for _ in divisors]
    rem = {}
    work = dict(f.terms)
    while work:
        m = max(work, key=order.key)
        c = work[m]
        for i, (lm, lc) in enumerate(lts):
            if all(a >= b for a, b in zip(m, lm)):
                shift = tuple(a - b for a, b in zip(m, lm))
                q = c / lc
                quotients[i][shift] = quotients[i].get(shift, dom.zero) + q
                for e, a in divisors[i].terms.items():
                    ne = tuple(x + y for x, y in zip(e, shift))
                    v = work.get(ne, dom.zero) - q * a
                    if v:
                        work[ne] = v
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[m] = work.pop(m)
    quots = [Polynomial(dom, n, {e: c for e, c in q.items() if c}, _trusted=True)
             for q in quotients]
    return quots, Polynomial(dom, n, rem, _trusted=True)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` when ``g`` divides ``f``; raises ``ValueError`` otherwise."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    (q,), r = divide(f, [g])
    if r:
        raise ValueError("divisor does not divide the polynomial exactly")
    return q


def is_groebner_basis(basis, order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = [b for b in basis if b]
    if not basis:
        return True
    pk = _Packing(basis[0].nvars, order)
    elems = []
    for b in basis:
        t = pk.to_internal(b)
        lead = pk.lead(t)
        elems.append(_Elem(lead, _make_monic(t, lead), 0))
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            l = pk.lcm(elems[i].lm, elems[j].lm)
            s = _spoly(elems[i], elems[j], l)
            if s and _normal_form(s, elems, pk):
                return False
    return True


def is_reduced_basis(basis, order: MonomialOrder = GREVLEX) -> bool:
    """Monic, and no term of any element divisible by another's lead."""
    leads = [b.leading_term(order) for b in basis]
    for i, b in enumerate(basis):
        if leads[i][1] != 1:
            return False
        for j, (lm, _) in enumerate(leads):
            if i == j:
                continue
            for e in b.terms:
                if all(x >= y for x, y in zip(e, lm)):
                    return False
    return True


class Ideal:
    """Homogeneous-aware ideal: a generator list plus cached reduced GBs.

    The cache is filled once per monomial order under a lock, so
    concurrent readers never see a partially built basis."""

    def __init__(self, generators, domain: CoeffDomain | None = None,
                 nvars: int | None = None, name: str | None = None):
        gens = [g for g in generators if g]
        if gens:
            domain = gens[0].domain if domain is None else domain
            nvars = gens[0].nvars if nvars is None else nvars
            for g in gens:
                if g.domain != domain or g.nvars != nvars:
                    raise TypeError("generators live in different rings")
        elif domain is None or nvars is None:
            raise ValueError("the zero ideal needs an explicit domain and nvars")
        self.domain = domain
        self.nvars = nvars
        self.generators = tuple(gens)
        self.name = name
        self.homogeneous = all(g.is_homogeneous() for g in gens)
        self._cache: dict = {}
        self._lock = threading.Lock()

    def groebner_basis(self, order: MonomialOrder = GREVLEX, progress=None) -> tuple:
        gb = self._cache.get(order)
        if gb is None:
            with self._lock:
                gb = self._cache.get(order)
                if gb is None:
                    gb = tuple(buchberger(self.generators, order, progress))
                    self._cache[order] = gb
        return gb

    gb = groebner_basis

    def _seed(self, order: MonomialOrder, basis) -> None:
        """Install a basis known to be the reduced GB (from elimination)."""
        with self._lock:
            self._cache.setdefault(order, tuple(basis))

    def has_cached_basis(self, order: MonomialOrder = GREVLEX) -> bool:
        return order in self._cache

    def reduce(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        return reduce(f, self.groebner_basis(order), order)

    def contains(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
        return member(f, self, order)

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].degree() == 0

    def leading_monomials(self, order: MonomialOrder = GREVLEX) -> list:
        return [g.leading_monomial(order) for g in self.groebner_basis(order)]

    def degrees(self) -> list:
        return sorted(g.degree() for g in self.generators)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return (f"<Ideal{label}: {len(self.generators)} generators over "
                f"{self.domain.descriptor()} in {self.nvars} variables>")


def member(f: Polynomial, ideal: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    if f.domain != ideal.domain or f.nvars != ideal.nvars:
        raise TypeError("polynomial and ideal live in different rings")
    if not f:
        return True
    return not ideal.reduce(f, order)


def ideal_equal(a: Ideal, b: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    if a.domain != b.domain or a.nvars != b.nvars:
        raise TypeError("ideals live in different rings")
    return list(a.groebner_basis(order)) == list(b.groebner_basis(order))
