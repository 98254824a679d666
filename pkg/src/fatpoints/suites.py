"""Verification suites over the fixture library.

Each suite is a list of independent jobs ``(function, args)``; every job
returns one table row whose last column is ``ok``.  Jobs are module-level
functions of plain arguments so they can run in a process pool.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import library
from .containment import (cor34_check, harbourne_check,
                          prop21_check, product_containment_check, symbolic_containment,
                          vanishes_to_order)
from .groebner import ideal_equal, reduce
from .ideal_ops import ideal_power
from .invariants import alpha, format_fraction, waldschmidt_bounds
from .oracle import alpha_oracle, power_piece_membership
from .schemes import fat_point_ideal, singular_locus, subproducts_ideal, symbolic_power

log = logging.getLogger(__name__)

__all__ = ["SUITES", "SuiteResult", "run_suite", "suite_jobs"]


@dataclass
class SuiteResult:
    name: str
    header: list
    rows: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors and all(row[-1] is True for row in self.rows)


def _arr_scheme(name: str):
    A = library.arrangement(name)
    return A, singular_locus(A)


def _points(name: str, seed: int):
    for S in library.point_fixtures(seed):
        if S.name == name:
            return S
    raise KeyError(name)


# -- jobs ----------------------------------------------------------------

def job_prop32(name: str, r: int):
    A, S = _arr_scheme(name)
    n = A.n
    odd = alpha_oracle(S, 2 * r - 1)
    even = alpha_oracle(S, 2 * r)
    ok = odd >= r * n - 1 and even >= r * n
    if name in library.GENERIC:
        ok = ok and odd == r * n - 1 and even == r * n
    return [name, r, odd, r * n - 1, even, r * n, ok]


def job_example33():
    A, S = _arr_scheme("xyxmyz")
    a_oracle = alpha_oracle(S, 3)
    a_gb = alpha(symbolic_power(S, 3))
    return ["xyxmyz", 3, a_oracle, a_gb, 7, a_oracle == a_gb == 7]


def job_cor34(name: str, r: int):
    A = library.arrangement(name)
    first, second = cor34_check(A, r)
    return [name, r, first.verdict, second.verdict, first.method, first.holds and second.holds]


def job_prop21(name: str, t: int, m: int, seed: int):
    S = _points(name, seed)
    rep = prop21_check(S, t, m)
    return [name, t, m, rep.verdict, rep.method, rep.holds]


def job_els(name: str, m: int, seed: int):
    S = _points(name, seed)
    rep = symbolic_containment(S, S.N * m, m)
    return [name, f"I^({S.N * m}) in I^{m}", rep.verdict, rep.method, rep.holds]


def job_j14():
    S = library.load("triangle")
    rep = product_containment_check(S, 2, (1, 0))
    return ["triangle", "I^(5) in I^(2)I", rep.verdict, rep.method, rep.holds]


def job_chudnovsky(s: int, seed: int):
    S = library.random_fixture(s, seed)
    est = waldschmidt_bounds(S, 4)
    worst = min(b for _, b in est.upper_bounds)
    vals = " ".join(f"{m}:{format_fraction(b)}" for m, b in est.upper_bounds)
    return [S.name, vals, format_fraction(worst), format_fraction(est.chudnovsky_lower),
            "heuristic", est.chudnovsky_holds()]


def job_dual_hesse(item: str):
    A, S = _arr_scheme("dual_hesse")
    J = S.support()
    F = A.defining_polynomial()
    if item == "F in J^(3)":
        ok = vanishes_to_order(F, J, 3)
        return [item, ok, True, ok]
    if item == "F in J^2":
        J2 = ideal_power(fat_point_ideal(J), 2)
        gb = not reduce(F, J2.groebner_basis())
        orc = power_piece_membership(F, fat_point_ideal(J), 2)
        return [item, gb or orc, False, not gb and not orc]
    if item == "I_8 = J^(2)":
        eq = ideal_equal(subproducts_ideal(A, A.n - 1), symbolic_power(J, 2))
        return [item, eq, True, eq]
    if item == "J^(6) in (J^(2))^2":
        rep = harbourne_check(J.scaled(2), 2)
        return [item, rep.holds, True, rep.holds]
    raise KeyError(item)


DUAL_HESSE_ITEMS = ("F in J^(3)", "F in J^2", "I_8 = J^(2)", "J^(6) in (J^(2))^2")

HEADERS = {
    "prop21": ["scheme", "t", "m", "verdict", "method", "ok"],
    "prop32": ["arrangement", "r", "alpha_odd", "bound_odd", "alpha_even", "bound_even", "ok"],
    "example33": ["arrangement", "m", "alpha_oracle", "alpha_groebner", "expected", "ok"],
    "cor34": ["arrangement", "r", "part1", "part2", "method", "ok"],
    "dual-hesse": ["claim", "computed", "expected", "ok"],
    "els-hh": ["scheme", "containment", "verdict", "method", "ok"],
    "chudnovsky": ["scheme", "alpha_m_over_m", "min_ratio", "chudnovsky_lower", "status", "ok"],
}

PROP21_SCHEMES = ("triangle", "xyxmyz.points", "generic4.points")
SMALL = ("generic3", "generic4", "generic5", "xyxmyz")


def suite_jobs(name: str, seed: int = library.RANDOM_SEED) -> list:
    if name == "prop21":
        jobs = [(job_prop21, (s, t, m, seed)) for s in PROP21_SCHEMES
                for t, ms in ((2, (1, 2, 3)), (3, (1, 2))) for m in ms]
        jobs.append((job_prop21, ("dual_hesse.points", 2, 2, seed)))
        return jobs
    if name == "prop32":
        return [(job_prop32, (a, r)) for a in library.ARRANGEMENTS for r in (1, 2)]
    if name == "example33":
        return [(job_example33, ())]
    if name == "cor34":
        jobs = [(job_cor34, (a, r)) for a in SMALL for r in (1, 2)]
        return jobs + [(job_cor34, ("dual_hesse", 1))]
    if name == "dual-hesse":
        return [(job_dual_hesse, (item,)) for item in DUAL_HESSE_ITEMS]
    if name == "els-hh":
        names = [S.name for S in library.point_fixtures(seed)]
        jobs = [(job_els, (n, m, seed)) for n in names for m in (1, 2)]
        return jobs + [(job_j14, ())]
    if name == "chudnovsky":
        return [(job_chudnovsky, (s, seed)) for s in library.RANDOM_SIZES]
    raise KeyError(name)


SUITES = ("prop21", "prop32", "example33", "cor34", "dual-hesse", "els-hh", "chudnovsky")


def _call(job):
    fn, args = job
    return fn(*args)


def run_suite(name: str, seed: int = library.RANDOM_SEED, jobs: int = 1, progress=None) -> SuiteResult:
    """Run every job of a suite; rows come back in job order."""
    work = suite_jobs(name, seed)
    res = SuiteResult(name, HEADERS[name])
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_call, job) for job in work]
            for job, fut in zip(work, futures):
                try:
                    res.rows.append(fut.result())
                except Exception as exc:  # reported per check, the suite goes on
                    res.errors.append(f"{job[0].__name__}{job[1]}: {exc}")
                if progress is not None:
                    progress(name, len(res.rows) + len(res.errors), len(work))
        return res
    for job in work:
        try:
            res.rows.append(_call(job))
        except Exception as exc:
            res.errors.append(f"{job[0].__name__}{job[1]}: {exc}")
        if progress is not None:
            progress(name, len(res.rows) + len(res.errors), len(work))
    return res
