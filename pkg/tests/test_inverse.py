import random

import numpy as np
import pytest

from conftest import qpp_coefficients, random_qpp
from qppinv.errors import (
    InvalidInputError,
    NoQuadraticPPError,
    VerificationError,
)
from qppinv.inverse import (
    check_pair,
    InverseOutcome,
    composition_residual,
    exists_quadratic_inverse,
    existence_threshold,
    exponent_profile,
    is_inverse_pair,
    is_self_inverse,
    partial_inverse,
    quadratic_inverse,
    quartic_vanishes,
)
from qppinv.modmath import INF
from qppinv.oracle import poly_table
from qppinv import inverse as inverse_mod
from qppinv.polyring import PolynomialModN, QuadraticPP, is_permutation_polynomial

EX1 = QuadraticPP(15120, 11, 210)


def pointwise_inverse(F, G):
    ys = poly_table(F.poly)
    return np.array_equal(poly_table(G, ys), np.arange(F.modulus))


def test_partial_inverse_examples():
    assert partial_inverse(EX1).candidates == ((14891, 210), (7331, 7770))
    assert partial_inverse(QuadraticPP(9, 1, 0)).candidates == ((1, 0),)
    assert partial_inverse(QuadraticPP(1024, 1, 16)).candidates == ((1, 496), (513, 1008))


def test_partial_inverse_rejects_prime_modulus():
    fake = object.__new__(QuadraticPP)
    object.__setattr__(fake, "modulus", 7)
    object.__setattr__(fake, "f1", 1)
    object.__setattr__(fake, "f2", 1)
    from qppinv.modmath import factorize

    object.__setattr__(fake, "factorization", factorize(7))
    with pytest.raises(NoQuadraticPPError):
        partial_inverse(fake)


def test_existence_examples():
    report = exists_quadratic_inverse(EX1)
    assert report.exists
    assert [(r.prime, r.threshold, r.n_F) for r in report.rows] == [
        (2, 1, 1), (3, 1, 1), (5, 1, 1), (7, 1, 1)]

    report = exists_quadratic_inverse(QuadraticPP(125, 1, 5))
    assert not report.exists
    assert [(r.prime, r.n_N, r.n_F, r.threshold) for r in report.rows] == [(5, 3, 1, 2)]

    report = exists_quadratic_inverse(QuadraticPP(1024, 1, 16))
    assert report.exists and report.rows[0].threshold == 4


@pytest.mark.parametrize(
    "p, n, expected",
    [
        (2, 0, 0), (2, 1, 0), (2, 2, 1), (2, 3, 1), (2, 4, 1), (2, 5, 2), (2, 6, 2),
        (2, 10, 4), (2, 11, 5),
        (3, 0, 0), (3, 1, 1), (3, 2, 1), (3, 3, 1), (3, 4, 2), (3, 5, 2), (3, 6, 3),
        (5, 0, 0), (5, 1, 1), (5, 2, 1), (5, 3, 2), (7, 4, 2), (7, 5, 3),
    ],
)
def test_existence_threshold_formula(p, n, expected):
    import math

    if p == 2:
        ref = max(math.ceil((n - 2) / 2), 1) if n > 1 else 0
    elif p == 3:
        ref = max(math.ceil((n - 1) / 2), 1) if n > 0 else 0
    else:
        ref = math.ceil(n / 2)
    assert existence_threshold(p, n) == ref == expected


def test_degenerate_linear_polynomials():
    F = QuadraticPP(15, 7, 0)
    assert exists_quadratic_inverse(F).rows[0].n_F is INF
    assert quadratic_inverse(F).candidates == ((13, 0),)
    F = QuadraticPP(12, 5, 0)
    assert quadratic_inverse(F).candidates == ((5, 0), (11, 6))
    for G in quadratic_inverse(F).polynomials():
        assert pointwise_inverse(F, G)


def test_quadratic_inverse_examples():
    assert quadratic_inverse(EX1).candidates == ((14891, 210), (7331, 7770))
    assert quadratic_inverse(QuadraticPP(1024, 15, 16)).candidates == ((751, 272), (239, 784))
    outcome = quadratic_inverse(QuadraticPP(125, 1, 5))
    assert outcome.kind == "none" and not outcome


def test_quadratic_inverse_verify_flag(monkeypatch):
    assert quadratic_inverse(EX1, verify=True)
    monkeypatch.setattr(inverse_mod, "is_inverse_pair", lambda F, G: False)
    with pytest.raises(VerificationError):
        quadratic_inverse(EX1, verify=True)


def test_inverse_outcome_invariants():
    with pytest.raises(InvalidInputError):
        InverseOutcome(8, ((1, 0),))
    with pytest.raises(InvalidInputError):
        InverseOutcome(9, ((1, 0), (5, 4)))
    with pytest.raises(InvalidInputError):
        InverseOutcome(8, ((1, 0), (5, 5)))
    assert InverseOutcome(8, ((1, 0), (5, 4))).kind == "two"


def test_quartic_vanishes_examples():
    assert quartic_vanishes(PolynomialModN(10))
    assert quartic_vanishes(PolynomialModN(10, (0, 0, 10)))
    G1 = PolynomialModN.quadratic(15120, 14891, 210)
    T = composition_residual(EX1, G1)
    assert quartic_vanishes(T)
    assert all(T(x) == 0 for x in range(15120))


def test_quartic_vanishes_checks_precondition():
    with pytest.raises(InvalidInputError, match="T\\(1\\)"):
        quartic_vanishes(PolynomialModN(10, (0, 1)))
    with pytest.raises(InvalidInputError):
        quartic_vanishes(PolynomialModN(10, (0, 0, 0, 0, 0, 1)))


def test_is_inverse_pair_examples():
    G1 = PolynomialModN.quadratic(15120, 14891, 210)
    assert is_inverse_pair(EX1, G1)
    F = QuadraticPP(125, 1, 5)
    G = partial_inverse(F).polynomials()[0]
    assert not is_inverse_pair(F, G)
    assert 12 * 5 * G.coeff(2) % 125 != 0
    for n in (4, 9, 15, 100, 15120):
        assert is_inverse_pair(QuadraticPP(n, 1, 0), PolynomialModN.identity(n))
    with pytest.raises(InvalidInputError):
        is_inverse_pair(EX1, PolynomialModN.identity(15))
    assert not is_inverse_pair(EX1, PolynomialModN(15120, (1, 14891, 210)))


def test_exponent_profile_examples():
    G1, G2 = partial_inverse(EX1).polynomials()
    rows = {r.prime: r for r in exponent_profile(EX1, G1)}
    assert rows[5].relation == ">=" and rows[5].n_G == 1 and rows[5].holds
    assert all(r.holds for r in exponent_profile(EX1, G2))

    F = QuadraticPP(125, 1, 25)
    (G,) = quadratic_inverse(F).polynomials()
    (row,) = exponent_profile(F, G)
    assert (row.n_F, row.relation, row.n_G) == (2, "==", 2) and row.holds

    F = QuadraticPP(25, 1, 0)
    (row,) = exponent_profile(F, partial_inverse(F).polynomials()[0])
    assert row.relation == ">=" and row.bound == 2 and row.holds


def test_exponent_profile_skips_single_power_of_two():
    F = QuadraticPP(6, 2, 3)
    rows = exponent_profile(F, partial_inverse(F).polynomials()[0])
    assert [r.prime for r in rows] == [3]


def test_is_self_inverse_examples():
    assert is_self_inverse(QuadraticPP(31 * 4, 1, 0))
    F = QuadraticPP(4, 1, 2)
    t = F.table()
    assert t.then(t).is_identity()
    assert is_self_inverse(F)
    assert not is_self_inverse(EX1)
    assert check_pair(EX1, EX1.poly).failing_points


def test_self_inverse_matches_table(rng):
    for n in range(2, 65):
        for f1, f2 in qpp_coefficients(n, include_linear=True):
            F = QuadraticPP(n, f1, f2)
            t = F.table()
            assert is_self_inverse(F) == t.then(t).is_identity(), (n, f1, f2)


def test_three_point_contract_exhaustive():
    for n in range(2, 1025):
        for f1, f2 in qpp_coefficients(n):
            F = QuadraticPP(n, f1, f2)
            y1, y2 = F(1), F(2)
            for g1, g2 in partial_inverse(F):
                assert (g1 * y1 + g2 * y1 * y1) % n == 1 % n
                assert (g1 * y2 + g2 * y2 * y2) % n == 2 % n


def test_candidates_are_permutations_and_count_law():
    for n in range(2, 257):
        for f1, f2 in qpp_coefficients(n):
            outcome = partial_inverse(QuadraticPP(n, f1, f2))
            assert len(outcome) == (2 if n % 2 == 0 else 1)
            for G in outcome.polynomials():
                assert is_permutation_polynomial(G), (n, f1, f2)


def test_pair_coupling_even_moduli():
    for n in range(2, 513, 2):
        for f1, f2 in qpp_coefficients(n):
            F = QuadraticPP(n, f1, f2)
            G1, G2 = partial_inverse(F).polynomials()
            assert is_inverse_pair(F, G1) == is_inverse_pair(F, G2)


def test_exponent_profile_holds_exhaustive():
    for n in range(2, 513):
        for f1, f2 in qpp_coefficients(n):
            F = QuadraticPP(n, f1, f2)
            for G in partial_inverse(F).polynomials():
                assert all(r.holds for r in exponent_profile(F, G)), (n, f1, f2)


def test_soundness_pointwise(rng):
    for n in range(2, 1025):
        pairs = list(qpp_coefficients(n, include_linear=True))
        for f1, f2 in rng.sample(pairs, min(len(pairs), 8)):
            F = QuadraticPP(n, f1, f2)
            for G in quadratic_inverse(F).polynomials():
                assert pointwise_inverse(F, G), (n, f1, f2)
    for _ in range(30):
        F = random_qpp(rng, 1025, 20000, with_inverse=True)
        for G in quadratic_inverse(F).polynomials():
            assert pointwise_inverse(F, G)


def test_verifier_equivalence(rng):
    for _ in range(2000):
        F = random_qpp(rng, 2, 512)
        n = F.modulus
        G = PolynomialModN.quadratic(n, rng.randrange(n), rng.randrange(n))
        if rng.random() < 0.5:
            G = rng.choice(partial_inverse(F).polynomials())
        T = composition_residual(F, G)
        pointwise = pointwise_inverse(F, G)
        assert is_inverse_pair(F, G) == pointwise
        if all(T(x) == 0 for x in (0, 1, 2)):
            assert quartic_vanishes(T) == pointwise


def test_completeness_against_oracle(rng):
    from qppinv.oracle import brute_quadratic_inverses

    for _ in range(10_000):
        F = random_qpp(rng, 2, 512)
        brute = brute_quadratic_inverses(F)
        outcome = quadratic_inverse(F)
        assert bool(exists_quadratic_inverse(F)) == bool(brute), F
        assert sorted(outcome.candidates) == brute, F
