"""Exact modular arithmetic over Z_N.

gcd, the extended-Euclid arithmetic inverse, linear congruences,
trial-division factorization and p-adic valuations.  Python integers are
unbounded, so products of residues never overflow; moduli are still
expected to stay below ``MAX_MODULUS``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import InvalidInputError, NoInverseError, NoSolutionError

MAX_MODULUS = 2**32

#: Valuation of zero: ``p**k`` divides 0 for every k.
INF = math.inf


def gcd(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise InvalidInputError(f"gcd expects nonnegative arguments, got ({a}, {b})")
    if a == 0 and b == 0:
        raise InvalidInputError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a


def arithmetic_inverse(s: int, modulus: int) -> int:
    """Return ``s*`` in ``[0, modulus)`` with ``s * s* = 1 (mod modulus)``.

    Extended Euclid, tracking only the cofactor of ``s``.

    Raises:
        NoInverseError: if ``gcd(s, modulus) != 1``; the gcd is attached.
    """
    if modulus < 2:
        raise InvalidInputError(f"modulus must be >= 2, got {modulus}")
    s_orig = s % modulus
    s, m = s_orig, modulus
    s_star, r = 1, 0
    while m != 0:
        c = s % m
        quot = s // m
        s, m = m, c
        s_star, r = r, s_star - quot * r
    # s now holds gcd(s_orig, modulus)
    if s != 1:
        raise NoInverseError(s_orig, modulus, s)
    return s_star % modulus


@dataclass(frozen=True)
class CongruenceSolutions:
    """All solutions of ``a*u = b (mod modulus)``: ``base + k*step`` for ``k < count``."""

    base: int
    count: int
    step: int
    modulus: int

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.base, self.modulus, self.step))

    def __len__(self) -> int:
        return self.count

    def __contains__(self, u: object) -> bool:
        if not isinstance(u, int) or not 0 <= u < self.modulus:
            return False
        return (u - self.base) % self.step == 0


def solve_linear_congruence(a: int, b: int, modulus: int) -> CongruenceSolutions:
    """Solve ``a*u = b (mod modulus)``.

    With ``d = gcd(a, modulus)`` there are exactly ``d`` incongruent
    solutions when ``d | b`` and none otherwise.  Negative ``a`` and ``b``
    are reduced into ``[0, modulus)`` first.

    Raises:
        NoSolutionError: if ``d`` does not divide ``b``.
    """
    if modulus < 2:
        raise InvalidInputError(f"modulus must be >= 2, got {modulus}")
    a %= modulus
    b %= modulus
    d = gcd(a, modulus)
    if b % d:
        raise NoSolutionError(a, b, modulus, d)
    step = modulus // d
    if step == 1:
        return CongruenceSolutions(0, d, 1, modulus)
    base = (b // d) * arithmetic_inverse(a // d, step) % step
    return CongruenceSolutions(base, d, step, modulus)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ``((p1, e1), (p2, e2), ...)`` with increasing primes."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise InvalidInputError(f"malformed factorization {self.factors!r}")
            prev = p

    @classmethod
    def from_mapping(cls, exponents: Mapping[int, int]) -> Factorization:
        """Build from ``{prime: exponent}``; primality of keys is checked."""
        for p in exponents:
            if not is_prime(p):
                raise InvalidInputError(f"{p} is not prime")
        return cls(tuple(sorted((p, e) for p, e in exponents.items() if e)))

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Factor ``n >= 1`` by trial division up to sqrt(n)."""
    if n < 1:
        raise InvalidInputError(f"cannot factor {n}")
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return Factorization(tuple(factors))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n).factors == ((n, 1),)


def radical(n: int) -> int:
    """Product of the distinct primes dividing ``n``."""
    return math.prod(factorize(n).primes)


def valuation(n: int, p: int) -> int | float:
    """Largest ``e`` with ``p**e | n``; ``INF`` for ``n == 0``."""
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if n < 0:
        raise InvalidInputError(f"valuation expects n >= 0, got {n}")
    if n == 0:
        return INF
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e
