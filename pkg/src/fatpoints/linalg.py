"""Exact rank and nullspace computations over the coefficient domains.

Ranks over Q and over quadratic number fields are computed by
fraction-free (Bareiss) elimination on integral rows: rows are first scaled
to clear denominators, which does not change the rank.  Over a quadratic
field ``Q(t)`` with ``t^2 = t0 + t1*t`` the entries are kept as pairs of
Python ints and Bareiss' exact divisions go through the norm.

Before any exact elimination the matrix is reduced modulo a prime.  Full
rank modulo p implies full rank in characteristic 0 (a nonzero minor stays
nonzero before reduction), so in that case no exact work is needed.  A rank
drop modulo p proves nothing and falls through to exact elimination.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import gmpy2
import numpy as np
from sympy import isprime
from sympy.ntheory import sqrt_mod

from .coeffs import NumberField, NumberFieldElement, PrimeField, Rationals

log = logging.getLogger(__name__)

__all__ = ["rank", "nullspace", "in_span", "rank_mod_p", "integral_rows",
           "certified_nullspace", "rational_reconstruction"]

_PRIME_START = 2_000_000_011  # < 2^31 so that products fit in int64


# -- integral forms -------------------------------------------------------

def _row_lcm_den(values) -> int:
    den = 1
    for v in values:
        if v.denominator != 1:
            den = gmpy2.lcm(den, v.denominator)
    return int(den)


def integral_rows(matrix, domain):
    """Scale each row to integral entries.

    Returns ``("int", rows)`` over Q, ``("pair", rows)`` over a quadratic
    field (entries ``(a, b)`` meaning ``a + b*t``), or ``None`` when no
    integral form is available."""
    if isinstance(domain, Rationals):
        out = []
        for row in matrix:
            den = _row_lcm_den(row)
            out.append([int(v * den) for v in row])
        return "int", out
    if isinstance(domain, NumberField) and domain.degree == 2 and all(
            c.denominator == 1 for c in domain.minpoly):
        out = []
        for row in matrix:
            flat = [c for v in row for c in v.coeffs]
            den = _row_lcm_den(flat)
            out.append([(int(v.coeffs[0] * den), int(v.coeffs[1] * den)) for v in row])
        return "pair", out
    return None


# -- modular rank ---------------------------------------------------------

@lru_cache(maxsize=None)
def _split_prime(minpoly: tuple | None, skip: int = 0):
    """A prime p < 2^31 (the ``skip``-th one found) together with a root of
    ``minpoly`` mod p, or ``(p, None)`` for Q."""
    p = _PRIME_START
    found = 0
    while True:
        p -= 2
        if not isprime(p):
            continue
        if minpoly is None:
            if found == skip:
                return p, None
            found += 1
            continue
        root = _root_mod_p(minpoly, p)
        if root is not None:
            if found == skip:
                return p, root
            found += 1


def _root_mod_p(minpoly, p):
    """Root of the monic quadratic ``t^2 + b t + c`` mod p, if it splits."""
    c, b, _ = (int(v) for v in minpoly)
    disc = (b * b - 4 * c) % p
    if disc == 0 or pow(disc, (p - 1) // 2, p) != 1:
        return None
    r = sqrt_mod(disc, p)
    return (-b + r) * pow(2, -1, p) % p


def _mod_matrix(kind, rows, p, root) -> np.ndarray:
    if kind == "int":
        data = [[v % p for v in row] for row in rows]
    else:
        data = [[(a + b * root) % p for a, b in row] for row in rows]
    return np.array(data, dtype=np.int64).reshape(len(rows), len(rows[0]) if rows else 0)


def _rank_mod_array(a: np.ndarray, p: int) -> int:
    a = a.copy()
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        hit = r + 1 + np.nonzero(a[r + 1:, c])[0]
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(a[hit, c], a[r, c:]) % p) % p
        r += 1
    return r


def rank_mod_p(matrix, domain, attempt: int = 0):
    """Rank of the reduction modulo a prime; ``None`` if not reducible."""
    form = integral_rows(matrix, domain)
    if form is None or not matrix:
        return None
    kind, rows = form
    minpoly = None if kind == "int" else domain.minpoly
    p, root = _split_prime(minpoly, attempt)
    return _rank_mod_array(_mod_matrix(kind, rows, p, root), p)


# -- exact elimination ----------------------------------------------------

def _bareiss_int(rows) -> int:
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j] - f * pr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (pv * row[j]) // prev
            row[c] = 0
        prev = pv
        r += 1
    return r


def _bareiss_pair(rows, t0: int, t1: int) -> int:
    """Bareiss over Z[t] with t^2 = t0 + t1 t; entries are int pairs."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    # prev pivot stored through its conjugate and norm for exact division
    conj0, conj1, norm = 1, 0, 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != (0, 0)), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        p0, p1 = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f0, f1 = row[c]
            for j in range(c + 1, ncols):
                a0, a1 = row[j]
                b0, b1 = pr[j]
                # x = p*a - f*b
                hi = p1 * a1 - f1 * b1
                x0 = p0 * a0 - f0 * b0 + hi * t0
                x1 = p0 * a1 + p1 * a0 - f0 * b1 - f1 * b0 + hi * t1
                if x0 or x1:
                    # divide exactly by the previous pivot: x * conj / norm
                    hi = x1 * conj1
                    y0 = x0 * conj0 + hi * t0
                    y1 = x0 * conj1 + x1 * conj0 + hi * t1
                    row[j] = (y0 // norm, y1 // norm)
                else:
                    row[j] = (0, 0)
            row[c] = (0, 0)
        # conj(a + b t) = (a + b t1) - b t ; norm = a^2 + a b t1 - b^2 t0
        conj0, conj1 = p0 + p1 * t1, -p1
        norm = p0 * p0 + p0 * p1 * t1 - p1 * p1 * t0
        r += 1
    return r


def _gauss_rank_field(matrix) -> int:
    m = [list(r) for r in matrix]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        pr = [v * inv for v in m[r]]
        m[r] = pr
        for i in range(r + 1, nrows):
            f = m[i][c]
            if f:
                row = m[i]
                for j in range(c, ncols):
                    if pr[j]:
                        row[j] = row[j] - f * pr[j]
        r += 1
    return r


_SMALL = 2500  # entries below which plain Bareiss beats the multimodular route


def rank(matrix, domain, use_modular: bool = True) -> int:
    """Exact rank of ``matrix`` (list of rows of domain elements)."""
    if not matrix or not matrix[0]:
        return 0
    full = min(len(matrix), len(matrix[0]))
    if isinstance(domain, PrimeField):
        return _gauss_rank_field(matrix)
    form = integral_rows(matrix, domain)
    if form is None:
        return _gauss_rank_field(matrix)
    kind, rows = form
    if use_modular:
        if rank_mod_p(matrix, domain) == full:
            return full
        if len(rows) * len(rows[0]) > _SMALL:
            return len(rows[0]) - len(_certified_kernel(kind, rows, domain))
    if kind == "int":
        return _bareiss_int(rows)
    t0, t1 = (int(-c) for c in domain.minpoly[:2])
    return _bareiss_pair(rows, t0, t1)


# -- certified multimodular kernels ---------------------------------------

def rational_reconstruction(x: int, mod: int):
    """``(a, b)`` with ``a/b = x mod mod`` and ``|a|, b <= sqrt(mod/2)``, else None."""
    bound = gmpy2.isqrt(mod // 2)
    r0, r1 = mod, x % mod
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gmpy2.gcd(r1, s1) != 1:
        return None
    return int(r1), int(s1)


def _echelon_mod(a: np.ndarray, p: int):
    """Pivot columns and the original indices of the pivot rows, mod p."""
    a = a.copy()
    nrows, ncols = a.shape
    perm = list(range(nrows))
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
            perm[r], perm[piv] = perm[piv], perm[r]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        hit = r + 1 + np.nonzero(a[r + 1:, c])[0]
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(a[hit, c], a[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return tuple(pivots), perm[:r]


def _rref_free_part(a: np.ndarray, pivots, p: int):
    """Gauss-Jordan on full-row-rank ``a``; returns the non-pivot columns of
    the reduced form, or None if the pivot pattern differs."""
    a = a.copy()
    R, ncols = a.shape
    r = 0
    found = []
    for c in range(ncols):
        if r == R:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(a[hit, c], a[r, c:]) % p) % p
        found.append(c)
        r += 1
    if tuple(found) != tuple(pivots):
        return None
    free = [c for c in range(ncols) if c not in set(pivots)]
    return a[:, free]


def _images(kind, domain, skip: int):
    """Prime and the list of roots of the minimal polynomial mod that prime."""
    if kind == "int":
        p, _ = _split_prime(None, skip)
        return p, [None]
    p, root = _split_prime(domain.minpoly, skip)
    other = (-int(domain.minpoly[1]) - root) % p
    return p, [root, other]


def _integral_kernel(kind, ncols, pivots, free, coef):
    """Kernel vectors scaled to integers: one list per coordinate plane."""
    planes = [[] for _ in range(1 if kind == "int" else 2)]
    for j, fc in enumerate(free):
        vals = [coef[i][j] for i in range(len(pivots))]
        fracs = vals if kind == "int" else [f for pair in vals for f in pair]
        den = 1
        for _, b in fracs:
            den = den * b // gmpy2.gcd(den, b)
        vs = [[0] * ncols for _ in planes]
        vs[0][fc] = int(den)
        for val, pc in zip(vals, pivots):
            for v, (a, b) in zip(vs, [val] if kind == "int" else val):
                v[pc] = -int(a) * int(den // b)
        for plane, v in zip(planes, vs):
            plane.append(v)
    return planes


def _bits(plane) -> int:
    top = 0
    for row in plane:
        if row:
            top = max(top, max(row), -min(row))
    return int(top).bit_length()


_FLOAT_EXACT = 52          # integers below 2^52 survive float64 sums exactly
_VERIFY_PRIME_TOP = 1 << 15  # n * p^2 < 2^52 for up to 2^22 columns


@lru_cache(maxsize=1)
def _verify_primes():
    return [p for p in range(_VERIFY_PRIME_TOP, 2, -1) if isprime(p)]


def _verify_kernel(kind, rows, pivots, free, coef, t0=0, t1=0) -> bool:
    """Exact check that every kernel vector annihilates every row.

    ``coef`` holds per free column the pivot entries as rational pairs
    (or pairs of pairs over a quadratic field); the vectors are scaled to
    integral form first.  Products run as float64 matrix products, which
    are exact while every partial sum stays below 2^52.  Larger bounds are
    handled modulo primes whose product exceeds twice the bound."""
    ncols = len(rows[0])
    if kind == "int":
        aplanes = [rows]
    else:
        aplanes = [[[x[0] for x in row] for row in rows], [[x[1] for x in row] for row in rows]]
    vplanes = _integral_kernel(kind, ncols, pivots, free, coef)
    abits = max(_bits(plane) for plane in aplanes)
    vbits = max(_bits(plane) for plane in vplanes)
    # |s0|, |s1|, |hi| <= 2 n |A| |V|; the checked values add |t| * |hi|
    scale = 2 * ncols * (1 + abs(t0) + abs(t1))
    bound_bits = abits + vbits + scale.bit_length()
    if bound_bits < _FLOAT_EXACT:
        A = [np.array(plane, dtype=np.float64) for plane in aplanes]
        V = [np.array(plane, dtype=np.float64).T for plane in vplanes]
        return _annihilates(kind, A, V, t0, t1, None)
    Aobj = [np.array(plane, dtype=object) for plane in aplanes]
    Vobj = [np.array(plane, dtype=object).T for plane in vplanes]
    covered = 1
    for p in _verify_primes():
        A = [(a % p).astype(np.float64) for a in Aobj]
        V = [(v % p).astype(np.float64) for v in Vobj]
        if not _annihilates(kind, A, V, t0, t1, p):
            return False
        covered *= p
        if covered.bit_length() > bound_bits + 1:
            return True
    raise RuntimeError("verification bound exceeds the prime table")


def _annihilates(kind, A, V, t0, t1, p) -> bool:
    """Whether A V vanishes (mod p when given); planes as in _verify_kernel."""
    def red(x):
        return x if p is None else np.fmod(x, p)
    if kind == "int":
        return not red(A[0] @ V[0]).any()
    s0 = red(A[0] @ V[0])
    s1 = red(red(A[0] @ V[1]) + red(A[1] @ V[0]))
    hi = red(A[1] @ V[1])
    return not red(s0 + t0 * hi).any() and not red(s1 + t1 * hi).any()


def _certified_kernel(kind, rows, domain, max_primes: int = 400):
    """Kernel basis of integral ``rows`` in reduced echelon normalisation.

    Each prime gives the reduced echelon form of the matrix modulo p (over
    a quadratic field, at both roots of the minimal polynomial, which pins
    down both coordinates).  Residues are combined by CRT for the best pivot
    pattern seen, lifted by rational reconstruction and checked exactly
    against every row.  Since the rank modulo p never exceeds the true rank,
    a verified kernel of the complementary dimension is the whole kernel."""
    ncols = len(rows[0])
    t0 = t1 = 0
    if kind == "pair":
        t0, t1 = (int(-c) for c in domain.minpoly[:2])
    best = None  # (rank, negated pivots): larger is better
    sub = None
    acc = None
    mod = 1
    previous = None
    for attempt in range(max_primes):
        p, roots = _images(kind, domain, attempt)
        mats = [_mod_matrix(kind, rows, p, root) for root in roots]
        if best is None:
            piv, sub = _echelon_mod(mats[0], p)
            best = (len(piv), tuple(-c for c in piv))
        pivots = tuple(-c for c in best[1])
        parts = [_rref_free_part(a[sub], pivots, p) for a in mats]
        if any(part is None for part in parts):
            # pattern mismatch: either this prime is unlucky or the current
            # pattern came from one; keep whichever pattern is better
            for a in mats:
                piv, used = _echelon_mod(a, p)
                cand = (len(piv), tuple(-c for c in piv))
                if cand > best:
                    best, sub = cand, used
                    acc, mod, previous = None, 1, None
            continue
        pivots = tuple(-c for c in best[1])
        free = [c for c in range(ncols) if c not in set(pivots)]
        if not free:
            return []
        if not pivots:
            coef = []
            return _kernel_vectors(kind, domain, ncols, pivots, free, coef)
        if kind == "int":
            res = parts[0]
            res = [[(int(x),) for x in row] for row in res]
        else:
            r1, r2 = roots
            inv = pow((r1 - r2) % p, -1, p)
            s1, s2 = parts
            res = []
            for row1, row2 in zip(s1, s2):
                out = []
                for x1, x2 in zip(row1, row2):
                    b = (int(x1) - int(x2)) * inv % p
                    a = (int(x1) - b * r1) % p
                    out.append((a, b))
                res.append(out)
        if acc is None:
            acc = res
            mod = p
        else:
            minv = pow(mod % p, -1, p)
            acc = [[tuple(x + mod * ((y - x) * minv % p) for x, y in zip(xs, ys))
                    for xs, ys in zip(ra, rr)] for ra, rr in zip(acc, res)]
            mod *= p
        lifted = _lift(acc, mod, kind)
        if lifted is None or lifted != previous:
            previous = lifted
            continue
        if _verify_kernel(kind, rows, pivots, free, lifted, t0, t1):
            log.debug("kernel certified with %d primes", attempt + 1)
            return _kernel_vectors(kind, domain, ncols, pivots, free, lifted)
    raise RuntimeError("multimodular kernel did not stabilise")


def _lift(acc, mod, kind):
    out = []
    for row in acc:
        new = []
        for comps in row:
            qs = []
            for x in comps:
                q = rational_reconstruction(x, mod)
                if q is None:
                    return None
                qs.append(q)
            new.append(qs[0] if kind == "int" else tuple(qs))
        out.append(new)
    return out


def _kernel_vectors(kind, domain, ncols, pivots, free, coef):
    zero, one = domain.zero, domain.one
    basis = []
    for j, fc in enumerate(free):
        v = [zero] * ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            if kind == "int":
                a, b = coef[i][j]
                v[pc] = -domain.convert(gmpy2.mpq(a, b))
            else:
                (a0, b0), (a1, b1) = coef[i][j]
                v[pc] = -(domain.convert(gmpy2.mpq(a0, b0))
                          + domain.convert(gmpy2.mpq(a1, b1)) * domain.gen)
        basis.append(v)
    return basis


def certified_nullspace(matrix, domain, ncols: int | None = None):
    """Multimodular kernel basis, or None when the domain has no integral form."""
    if not matrix:
        return None
    form = integral_rows(matrix, domain)
    if form is None:
        return None
    kind, rows = form
    return _certified_kernel(kind, rows, domain)


def nullspace(matrix, domain, ncols: int | None = None) -> list:
    """Basis of ``{v : matrix @ v = 0}`` in reduced echelon normalisation."""
    if matrix and len(matrix) * len(matrix[0]) > _SMALL and not isinstance(domain, PrimeField):
        fast = certified_nullspace(matrix, domain)
        if fast is not None:
            return fast
    return _gauss_jordan_nullspace(matrix, domain, ncols)


def _gauss_jordan_nullspace(matrix, domain, ncols: int | None = None) -> list:
    ncols = ncols if ncols is not None else (len(matrix[0]) if matrix else 0)
    m = [list(r) for r in matrix]
    zero, one = domain.zero, domain.one
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = one / m[r][c]
        m[r] = [v * inv for v in m[r]]
        pr = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row_idx, pc in enumerate(pivots):
            v[pc] = -m[row_idx][fc]
        basis.append(v)
    return basis


def in_span(vectors, target, domain) -> bool:
    """Whether ``target`` lies in the span of ``vectors``."""
    if not any(target):
        return True
    if not vectors:
        return False
    base = rank(vectors, domain)
    return rank(list(vectors) + [target], domain) == base
