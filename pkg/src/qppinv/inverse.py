"""Quadratic inverses of quadratic permutation polynomials.

For a QPP ``F(x) = f1*x + f2*x^2 (mod N)`` there is always a quadratic
``G`` with ``G(F(x)) = x`` at ``x = 0, 1, 2``: exactly one when N is odd,
exactly two (differing by N/2 in both coefficients) when N is even.  Such a
``G`` inverts ``F`` everywhere iff ``12*f2*g2 = 0 (mod N)``, and whether
that happens is decided by comparing the p-adic valuations of f2 and N
prime by prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import InvalidInputError, NoQuadraticPPError, VerificationError
from .modmath import INF, arithmetic_inverse, solve_linear_congruence, valuation
from .polyring import PolynomialModN, QuadraticPP, compose


@dataclass(frozen=True)
class InverseOutcome:
    """Zero, one or two coefficient pairs ``(g1, g2)``."""

    modulus: int
    candidates: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n, cs = self.modulus, self.candidates
        if len(cs) > 2 or any(not (0 <= g < n) for pair in cs for g in pair):
            raise InvalidInputError(f"malformed inverse outcome {cs!r} mod {n}")
        if len(cs) == 1 and n % 2 == 0:
            raise InvalidInputError("a single inverse is only possible for odd N")
        if len(cs) == 2:
            (g11, g12), (g21, g22) = cs
            if n % 2 or g21 != (g11 + n // 2) % n or g22 != (g12 + n // 2) % n:
                raise InvalidInputError("second inverse must be the +N/2 companion")

    @property
    def kind(self) -> str:
        return ("none", "one", "two")[len(self.candidates)]

    def __bool__(self) -> bool:
        return bool(self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.candidates)

    def polynomials(self) -> list[PolynomialModN]:
        return [PolynomialModN.quadratic(self.modulus, g1, g2) for g1, g2 in self.candidates]


def partial_inverse(F: QuadraticPP) -> InverseOutcome:
    """Quadratic polynomial(s) inverting ``F`` at ``x = 0, 1, 2``.

    ``g2`` solves ``g2*(f1+f2)(f1+2f2)(f1+3f2) = -f2`` modulo N (N odd) or
    N/2 (N even), and ``g1 = (f1+f2)^-1 * (1 - g2*(f1+f2)^2) (mod N)``.
    For even N the second pair adds N/2 to both coefficients.
    """
    n, f1, f2 = F.modulus, F.f1, F.f2
    fac = F.factorization
    if f2 and n != 2 and fac.factors == ((n, 1),):
        raise NoQuadraticPPError(f"no quadratic permutation polynomial modulo the prime {n}")
    s = f1 + f2
    cubic = s * (f1 + 2 * f2) * (f1 + 3 * f2)
    half = n // 2
    if n % 2:
        sols = solve_linear_congruence(cubic, -f2, n)
        g2 = sols.base
    elif half == 1:
        g2 = 0
    else:
        sols = solve_linear_congruence(cubic, -f2, half)
        g2 = sols.base
    g1 = arithmetic_inverse(s, n) * (1 - g2 * s * s) % n
    if n % 2:
        return InverseOutcome(n, ((g1, g2),))
    return InverseOutcome(n, ((g1, g2), ((g1 + half) % n, (g2 + half) % n)))


@dataclass(frozen=True)
class ExistenceRow:
    prime: int
    n_N: int
    n_F: int | float
    threshold: int
    satisfied: bool


@dataclass(frozen=True)
class ExistenceReport:
    modulus: int
    f2: int
    rows: tuple[ExistenceRow, ...]

    @property
    def exists(self) -> bool:
        return all(r.satisfied for r in self.rows)

    def __bool__(self) -> bool:
        return self.exists


def existence_threshold(p: int, n_N: int) -> int:
    """Smallest valuation of f2 at ``p`` that allows a quadratic inverse."""
    if p == 2:
        # max(ceil((n-2)/2), 1) for n > 1
        return max((n_N - 1) // 2, 1) if n_N > 1 else 0
    if p == 3:
        # max(ceil((n-1)/2), 1) for n > 0
        return max(n_N // 2, 1) if n_N > 0 else 0
    return (n_N + 1) // 2


def exists_quadratic_inverse(F: QuadraticPP) -> ExistenceReport:
    n_F = F.n_F
    rows = []
    for p, e in F.factorization:
        t = existence_threshold(p, e)
        rows.append(ExistenceRow(p, e, n_F[p], t, n_F[p] >= t))
    return ExistenceReport(F.modulus, F.f2, tuple(rows))


def quadratic_inverse(F: QuadraticPP, verify: bool = False) -> InverseOutcome:
    """All quadratic inverses of ``F`` (none, one, or a +N/2 pair).

    With ``verify=True`` every returned polynomial is re-checked with
    :func:`is_inverse_pair`; a failure raises :class:`VerificationError`.
    """
    if not exists_quadratic_inverse(F):
        return InverseOutcome(F.modulus)
    outcome = partial_inverse(F)
    if verify:
        for G in outcome.polynomials():
            if not is_inverse_pair(F, G):
                raise VerificationError(f"{G} does not invert {F}")
    return outcome


def quartic_vanishes(T: PolynomialModN) -> bool:
    """Whether a quartic with ``T(0) = T(1) = T(2) = 0`` vanishes on all of Z_N.

    Only the two conditions ``24*t4 = 0`` and ``6*t3 + 36*t4 = 0 (mod N)``
    are evaluated.
    """
    if T.degree > 4:
        raise InvalidInputError(f"degree {T.degree} exceeds 4")
    for x in (0, 1, 2):
        if T(x):
            raise InvalidInputError(f"T({x}) = {T(x)} is not 0 mod {T.modulus}")
    n, t3, t4 = T.modulus, T.coeff(3), T.coeff(4)
    return (24 * t4) % n == 0 and (6 * t3 + 36 * t4) % n == 0


@dataclass(frozen=True)
class PairCheck:
    three_point: bool
    failing_points: tuple[int, ...]
    twelve_f2_g2: int
    is_inverse: bool


def check_pair(F: QuadraticPP, G: PolynomialModN) -> PairCheck:
    """The two ingredients of the inverse test, kept apart for reporting."""
    if not isinstance(G, PolynomialModN) or G.modulus != F.modulus:
        raise InvalidInputError("F and G must share the modulus")
    if G.degree > 2:
        raise InvalidInputError(f"{G} is not quadratic")
    n = F.modulus
    failing = tuple(x for x in (0, 1, 2) if G(F(x)) != x % n)
    residue = 12 * F.f2 * G.coeff(2) % n
    return PairCheck(not failing, failing, residue, not failing and residue == 0)


def is_inverse_pair(F: QuadraticPP, G: PolynomialModN) -> bool:
    return check_pair(F, G).is_inverse


def is_self_inverse(F: QuadraticPP) -> bool:
    return is_inverse_pair(F, F.poly)


@dataclass(frozen=True)
class ProfileRow:
    """Expected link between the valuations of g2, f2 and N at one prime.

    ``relation`` is ``"=="`` (``n_G`` must equal ``n_F``) or ``">="``
    (``n_G`` must reach ``bound``).
    """

    prime: int
    n_N: int
    n_F: int | float
    n_G: int | float
    relation: str
    bound: int | float
    holds: bool


def exponent_profile(F: QuadraticPP, G: PolynomialModN) -> list[ProfileRow]:
    n_F = F.n_F
    g2 = G.coeff(2)
    rows = []
    for p, e in F.factorization:
        if p == 2 and e == 1:
            continue
        cutoff = e - 1 if p == 2 else e
        n_G = valuation(g2, p) if g2 else INF
        if 1 <= n_F[p] < cutoff:
            rows.append(ProfileRow(p, e, n_F[p], n_G, "==", n_F[p], n_G == n_F[p]))
        else:
            rows.append(ProfileRow(p, e, n_F[p], n_G, ">=", cutoff, n_G >= cutoff))
    return rows


def composition_residual(F: QuadraticPP, G: PolynomialModN) -> PolynomialModN:
    """``G(F(x)) - x`` as a polynomial of degree at most 4."""
    return compose(G, F.poly) - PolynomialModN.identity(F.modulus)
