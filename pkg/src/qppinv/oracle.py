"""Brute-force ground truth.

Everything here works from evaluation tables alone: bijectivity is a
seen-mask over all residues, inverses are found by enumerating coefficient
space and comparing tables.  None of it consults the structural criteria
it is used to check, except where a function says so explicitly.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np

from .errors import InvalidInputError, NotAPermutationError, ResourceLimitError
from .inverse import (
    exists_quadratic_inverse,
    exponent_profile,
    is_inverse_pair,
    partial_inverse,
    quadratic_inverse,
    quartic_vanishes,
    composition_residual,
)
from .polyring import PolynomialModN, QuadraticPP, is_quadratic_pp

log = logging.getLogger(__name__)

PERMUTATION_BOUND = 2**20
INVERSE_BOUND = 4096
SEARCH_BUDGET = 2**24
SWEEP_BUDGET = 2**28


def poly_table(poly: PolynomialModN, xs: np.ndarray | None = None) -> np.ndarray:
    """Evaluate ``poly`` at every residue (or at ``xs``) with numpy."""
    n = poly.modulus
    if xs is None:
        xs = np.arange(n, dtype=np.int64)
    # residues below 2^31 keep acc * x inside int64
    dtype = np.int64 if n < 2**31 else object
    xs = np.asarray(xs, dtype=dtype) % n
    acc = np.zeros_like(xs)
    for c in reversed(poly.coeffs):
        acc = (acc * xs + c) % n
    return acc


def brute_is_permutation(poly: PolynomialModN, bound: int = PERMUTATION_BOUND) -> bool:
    n = poly.modulus
    if n > bound:
        raise ResourceLimitError(f"N = {n} exceeds the permutation-check bound {bound}")
    seen = np.zeros(n, dtype=bool)
    seen[poly_table(poly)] = True
    return bool(seen.all())


@numba.njit(cache=True)
def _quadratic_bijection_grid(n):
    out = np.zeros((n, n), dtype=np.bool_)
    seen = np.zeros(n, dtype=np.int64)
    sq = np.empty(n, dtype=np.int64)
    for x in range(n):
        sq[x] = x * x % n
    stamp = 0
    for h1 in range(n):
        for h2 in range(n):
            stamp += 1
            ok = True
            for x in range(n):
                v = (h1 * x + h2 * sq[x]) % n
                if seen[v] == stamp:
                    ok = False
                    break
                seen[v] = stamp
            out[h1, h2] = ok
    return out


def quadratic_bijection_grid(n: int, bound: int = 4096) -> np.ndarray:
    """``grid[h1, h2]`` is True iff ``h1*x + h2*x^2`` permutes Z_n (brute force)."""
    if n < 2:
        raise InvalidInputError(f"modulus must be >= 2, got {n}")
    if n > bound:
        raise ResourceLimitError(f"N = {n} exceeds the grid bound {bound}")
    return _quadratic_bijection_grid(n)


def inverse_table(table: np.ndarray) -> np.ndarray:
    inv = np.empty_like(table)
    inv[table] = np.arange(len(table), dtype=table.dtype)
    return inv


def brute_quadratic_inverses(
    F: QuadraticPP, bound: int | None = INVERSE_BOUND, exhaustive: bool = False
) -> list[tuple[int, int]]:
    """Every ``(g1, g2)`` in ``[0, N)^2`` with ``g1*y + g2*y^2 = x`` for ``y = F(x)``.

    All N^2 pairs are screened at ``x = 1, 2`` (``x = 0`` holds trivially).
    Survivors are confirmed by ``quartic_vanishes`` on ``G(F(x)) - x``, or,
    with ``exhaustive=True``, by comparing against the full inverse table so
    that the confirmation does not depend on the quartic test.
    """
    n = F.modulus
    if bound is not None and n > bound:
        raise ResourceLimitError(f"N = {n} exceeds the inverse-search bound {bound}")
    y1, y2 = F(1), F(2)
    g1 = np.arange(n, dtype=np.int64)
    a1, a2 = g1 * y1 % n, g1 * y2 % n
    sq1, sq2 = y1 * y1 % n, y2 * y2 % n
    t1, t2 = 1 % n, 2 % n
    chunk = max(1, (1 << 20) // n)
    found = []
    for start in range(0, n, chunk):
        g2 = np.arange(start, min(n, start + chunk), dtype=np.int64)[:, None]
        hit = ((a1 + g2 * sq1) % n == t1) & ((a2 + g2 * sq2) % n == t2)
        rows, cols = np.nonzero(hit)
        found.extend((int(c), int(start + r)) for r, c in zip(rows, cols))
    if exhaustive:
        target = inverse_table(poly_table(F.poly))
        ys = np.arange(n, dtype=np.int64)
        keep = [
            (a, b) for a, b in found
            if np.array_equal((a * ys + b * (ys * ys % n)) % n, target)
        ]
    else:
        keep = [
            (a, b) for a, b in found
            if quartic_vanishes(composition_residual(F, PolynomialModN.quadratic(n, a, b)))
        ]
    return sorted(keep)


def brute_min_degree_inverse(
    F: QuadraticPP, dmax: int = 3, budget: int = SEARCH_BUDGET
) -> PolynomialModN | None:
    """Lowest-degree polynomial with zero constant term that inverts ``F``.

    Degrees 1..dmax are searched in order over the whole coefficient space;
    among matches of the lowest degree the lexicographically smallest
    ``(c1, ..., cd)`` is returned.  ``None`` means nothing within ``dmax``.
    """
    n = F.modulus
    if not 1 <= dmax <= 4:
        raise InvalidInputError(f"dmax must be in 1..4, got {dmax}")
    if n**dmax > budget:
        raise ResourceLimitError(f"N^dmax = {n}^{dmax} exceeds the search budget {budget}")
    target = inverse_table(poly_table(F.poly))
    ys = np.arange(n, dtype=np.int64)
    powers = [np.ones(n, dtype=np.int64)]
    for _ in range(dmax):
        powers.append(powers[-1] * ys % n)
    c2 = np.arange(n, dtype=np.int64)[:, None]
    probe = ys[: min(n, 8)]
    for d in range(1, dmax + 1):
        matches = []
        for high in itertools.product(range(n), repeat=max(d - 2, 0)):
            if high and high[-1] == 0:
                continue
            need = target.copy()
            for k, ck in enumerate(high, start=3):
                need = (need - ck * powers[k]) % n
            if d == 1:
                c1 = int(need[1 % n])
                if np.array_equal(c1 * ys % n, need):
                    matches.append((c1,))
                continue
            # at y = 1 the low part reads c1 + c2, so c1 is forced by c2
            c1 = (need[1 % n] - c2) % n
            part = (c1 * powers[1][probe] + c2 * powers[2][probe]) % n
            for j in np.nonzero((part == need[probe]).all(axis=1))[0]:
                a, b = int(c1[j, 0]), int(j)
                if d == 2 and b == 0:
                    continue
                if np.array_equal((a * ys + b * powers[2]) % n, need):
                    matches.append((a, b) + high)
        if matches:
            return PolynomialModN(n, (0,) + min(matches))
    return None


@dataclass
class SweepReport:
    """Tallies from comparing the structural results against brute force.

    ``rows`` groups tested polynomials by ``(N, f2)``: how many ``f1``
    values were tried and how many had a brute-force quadratic inverse.
    ``disagreements`` lists every instance where anything failed.
    """

    n_lo: int
    n_hi: int
    moduli: int = 0
    pps_tested: int = 0
    existence_agreements: int = 0
    existence_disagreements: int = 0
    inverse_failures: int = 0
    count_law_failures: int = 0
    coupling_failures: int = 0
    profile_failures: int = 0
    criterion_disagreements: int = 0
    disagreements: list[dict] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return not (
            self.existence_disagreements
            or self.inverse_failures
            or self.count_law_failures
            or self.coupling_failures
            or self.profile_failures
            or self.criterion_disagreements
            or self.disagreements
        )

    def merge(self, other: SweepReport) -> SweepReport:
        first = self.counterexample
        if other.counterexample and (
            first is None or _instance_key(other.counterexample) < _instance_key(first)
        ):
            first = other.counterexample
        return SweepReport(
            n_lo=min(self.n_lo, other.n_lo),
            n_hi=max(self.n_hi, other.n_hi),
            moduli=self.moduli + other.moduli,
            pps_tested=self.pps_tested + other.pps_tested,
            existence_agreements=self.existence_agreements + other.existence_agreements,
            existence_disagreements=self.existence_disagreements + other.existence_disagreements,
            inverse_failures=self.inverse_failures + other.inverse_failures,
            count_law_failures=self.count_law_failures + other.count_law_failures,
            coupling_failures=self.coupling_failures + other.coupling_failures,
            profile_failures=self.profile_failures + other.profile_failures,
            criterion_disagreements=self.criterion_disagreements + other.criterion_disagreements,
            disagreements=sorted(self.disagreements + other.disagreements, key=_instance_key),
            rows=sorted(self.rows + other.rows, key=lambda r: (r["N"], r["f2"])),
            counterexample=first,
        )

    def as_dict(self) -> dict:
        return {
            "range": [self.n_lo, self.n_hi],
            "moduli": self.moduli,
            "pps_tested": self.pps_tested,
            "existence_agreements": self.existence_agreements,
            "existence_disagreements": self.existence_disagreements,
            "inverse_failures": self.inverse_failures,
            "count_law_failures": self.count_law_failures,
            "coupling_failures": self.coupling_failures,
            "profile_failures": self.profile_failures,
            "criterion_disagreements": self.criterion_disagreements,
            "disagreements": self.disagreements,
            "rows": self.rows,
            "counterexample": self.counterexample,
            "ok": self.ok,
        }


def _instance_key(d: dict) -> tuple[int, int, int]:
    return d["N"], d["f2"], d["f1"]


def check_instance(F: QuadraticPP, exhaustive: bool = True) -> tuple[list[str], list[tuple[int, int]]]:
    """Cross-check one polynomial against brute force.

    Returns the names of failed checks and the brute-force inverse set.
    """
    n = F.modulus
    problems = []
    brute = brute_quadratic_inverses(F, bound=None, exhaustive=exhaustive)
    if exists_quadratic_inverse(F).exists != bool(brute):
        problems.append("existence")
    candidates = partial_inverse(F)
    if len(candidates) != (2 if n % 2 == 0 else 1):
        problems.append("count")
    polys = candidates.polynomials()
    for G in polys:
        if any(G(F(x)) != x % n for x in (0, 1, 2)):
            problems.append("three-point")
        if not all(r.holds for r in exponent_profile(F, G)):
            problems.append("profile")
    if len({is_inverse_pair(F, G) for G in polys}) > 1:
        problems.append("coupling")
    returned = quadratic_inverse(F)
    if sorted(returned.candidates) != brute:
        problems.append("values")
    ys = np.arange(n, dtype=np.int64)
    table = poly_table(F.poly)
    for G in returned.polynomials():
        if not np.array_equal(poly_table(G, table), ys):
            problems.append("pointwise")
    return problems, brute


_TALLY = {
    "existence": "existence_disagreements",
    "values": "inverse_failures",
    "pointwise": "inverse_failures",
    "three-point": "inverse_failures",
    "count": "count_law_failures",
    "coupling": "coupling_failures",
    "profile": "profile_failures",
}


def _sweep_one(n: int, include_linear: bool, exhaustive: bool) -> SweepReport:
    report = SweepReport(n, n, moduli=1)
    grid = quadratic_bijection_grid(n)
    per_f2 = Counter()
    with_inverse = Counter()
    for f2 in range(0 if include_linear else 1, n):
        for f1 in range(n):
            brute_pp = bool(grid[f1, f2])
            if brute_pp != is_quadratic_pp(n, f1, f2):
                report.criterion_disagreements += 1
                report.disagreements.append({"N": n, "f1": f1, "f2": f2, "failed": ["criterion"]})
                continue
            if not brute_pp:
                continue
            F = QuadraticPP(n, f1, f2)
            report.pps_tested += 1
            problems, brute = check_instance(F, exhaustive=exhaustive)
            per_f2[f2] += 1
            if brute:
                with_inverse[f2] += 1
            elif report.counterexample is None:
                report.counterexample = {"N": n, "f1": f1, "f2": f2}
            if "existence" not in problems:
                report.existence_agreements += 1
            for name in {_TALLY[p] for p in problems}:
                setattr(report, name, getattr(report, name) + 1)
            if problems:
                report.disagreements.append({"N": n, "f1": f1, "f2": f2, "failed": problems})
    for f2 in sorted(per_f2):
        report.rows.append(
            {"N": n, "f2": f2, "pps": per_f2[f2], "with_inverse": with_inverse[f2]}
        )
    return report


def sweep_cost(n_lo: int, n_hi: int) -> int:
    return sum(n**3 for n in range(max(n_lo, 2), n_hi + 1))


def sweep(
    n_lo: int,
    n_hi: int,
    *,
    include_linear: bool = False,
    exhaustive: bool = True,
    budget: int = SWEEP_BUDGET,
    search_budget: int = SEARCH_BUDGET,
    dmax: int = 4,
    workers: int = 1,
) -> SweepReport:
    """Compare every result of the library against brute force for N in ``[n_lo, n_hi]``.

    Every permutation polynomial ``f1*x + f2*x^2`` with ``f2 != 0`` is
    tested (``include_linear`` adds ``f2 = 0``).  The first polynomial found
    without a quadratic inverse is recorded as ``counterexample`` along with
    its lowest-degree polynomial inverse, searched up to the largest degree
    ``<= dmax`` that fits ``search_budget``.
    """
    n_lo = max(n_lo, 2)
    if n_hi < n_lo:
        raise InvalidInputError(f"empty modulus range [{n_lo}, {n_hi}]")
    cost = sweep_cost(n_lo, n_hi)
    if cost > budget:
        raise ResourceLimitError(f"sweep cost {cost} exceeds budget {budget}")
    moduli = range(n_lo, n_hi + 1)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_sweep_one, moduli, itertools.repeat(include_linear),
                                  itertools.repeat(exhaustive)))
    else:
        parts = [_sweep_one(n, include_linear, exhaustive) for n in moduli]
    report = SweepReport(n_lo, n_hi)
    for part in parts:
        report = report.merge(part)
    report.n_lo, report.n_hi = n_lo, n_hi
    if report.counterexample:
        _attach_inverse(report.counterexample, search_budget, dmax)
    log.info("sweep %d..%d: %d polynomials, ok=%s", n_lo, n_hi, report.pps_tested, report.ok)
    return report


def _attach_inverse(record: dict, budget: int, dmax: int) -> None:
    n = record["N"]
    F = QuadraticPP(n, record["f1"], record["f2"])
    d = dmax
    while d > 1 and n**d > budget:
        d -= 1
    inverse = brute_min_degree_inverse(F, dmax=d, budget=budget)
    record["searched_dmax"] = d
    record["inverse"] = list(inverse.coeffs) if inverse else None
    record["inverse_degree"] = inverse.degree if inverse else None


def find_counterexample(
    n: int, f1: int, f2: int, dmax: int = 3, budget: int = SEARCH_BUDGET
) -> dict:
    """Confirm by brute force that ``f1*x + f2*x^2`` has no quadratic inverse.

    Raises ``NotAPermutationError`` if it is not a permutation at all.
    """
    F = QuadraticPP(n, f1, f2)
    if not brute_is_permutation(F.poly):
        raise NotAPermutationError(f"{F} is not a permutation")
    record = {"N": n, "f1": F.f1, "f2": F.f2,
              "quadratic_inverses": brute_quadratic_inverses(F, bound=None, exhaustive=True)}
    _attach_inverse(record, budget, dmax)
    return record
