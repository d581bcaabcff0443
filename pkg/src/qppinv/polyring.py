"""Polynomials over Z_N and the permutations they induce.

A polynomial is stored as its modulus plus the least nonnegative residues
of its coefficients, lowest degree first, trailing zeros trimmed.  For
degree at most two, whether the polynomial permutes Z_N is decided from
the prime factorization of N alone; higher degrees fall back to building
the table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import (
    InvalidInputError,
    NoQuadraticPPError,
    NotAPermutationError,
)
from .modmath import INF, MAX_MODULUS, Factorization, factorize, valuation


def _check_modulus(modulus: int) -> None:
    if not isinstance(modulus, int) or not 2 <= modulus < MAX_MODULUS:
        raise InvalidInputError(f"modulus must satisfy 2 <= N < 2^32, got {modulus!r}")


@dataclass(frozen=True)
class PolynomialModN:
    modulus: int
    coeffs: tuple[int, ...] = (0,)

    def __post_init__(self):
        _check_modulus(self.modulus)
        cs = [int(c) % self.modulus for c in self.coeffs] or [0]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def quadratic(cls, modulus: int, f1: int, f2: int, f0: int = 0) -> PolynomialModN:
        return cls(modulus, (f0, f1, f2))

    @classmethod
    def identity(cls, modulus: int) -> PolynomialModN:
        return cls(modulus, (0, 1))

    @property
    def degree(self) -> int:
        """Degree of the reduced polynomial; the zero polynomial reports 0."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __call__(self, x: int) -> int:
        # any integer argument, reduced; evaluate() is the range-checked form
        n = self.modulus
        x %= n
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % n
        return acc

    def _same_ring(self, other: PolynomialModN) -> None:
        if not isinstance(other, PolynomialModN):
            raise InvalidInputError(f"expected PolynomialModN, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise InvalidInputError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}"
            )

    def __add__(self, other: PolynomialModN) -> PolynomialModN:
        self._same_ring(other)
        k = max(len(self.coeffs), len(other.coeffs))
        return PolynomialModN(
            self.modulus, tuple(self.coeff(i) + other.coeff(i) for i in range(k))
        )

    def __neg__(self) -> PolynomialModN:
        return PolynomialModN(self.modulus, tuple(-c for c in self.coeffs))

    def __sub__(self, other: PolynomialModN) -> PolynomialModN:
        return self + (-other)

    def __mul__(self, other: PolynomialModN | int) -> PolynomialModN:
        if isinstance(other, int):
            return PolynomialModN(self.modulus, tuple(c * other for c in self.coeffs))
        self._same_ring(other)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolynomialModN(self.modulus, tuple(out))

    __rmul__ = __mul__

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "x" if k == 1 else f"x^{k}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return f"{' + '.join(terms) or '0'} (mod {self.modulus})"


def evaluate(poly: PolynomialModN, x: int) -> int:
    """Horner evaluation at a residue ``x`` in ``[0, N)``."""
    if not 0 <= x < poly.modulus:
        raise InvalidInputError(f"x = {x} is outside [0, {poly.modulus})")
    return poly(x)


def compose(outer: PolynomialModN, inner: PolynomialModN) -> PolynomialModN:
    """Coefficients of ``outer(inner(x))`` reduced mod N."""
    outer._same_ring(inner)
    result = PolynomialModN(outer.modulus)
    for c in reversed(outer.coeffs):
        result = result * inner + PolynomialModN(outer.modulus, (c,))
    return result


def normalize_shift(poly: PolynomialModN) -> tuple[PolynomialModN, int]:
    """Split off the constant term: ``poly = shifted + h0``."""
    h0 = poly.coeffs[0]
    return PolynomialModN(poly.modulus, (0,) + poly.coeffs[1:]), h0


def shift_inverse(inverse: PolynomialModN, h0: int) -> PolynomialModN:
    """Turn an inverse of ``H`` into the inverse of ``H + h0``, i.e. ``I(x - h0)``."""
    if h0 % inverse.modulus == 0:
        return inverse
    return compose(inverse, PolynomialModN(inverse.modulus, (-h0, 1)))


@dataclass(frozen=True)
class PrimeCondition:
    prime: int
    exponent: int
    rule: str
    satisfied: bool


@dataclass(frozen=True)
class PPCertificate:
    """Outcome of a permutation test, truthy iff the polynomial permutes Z_N.

    ``case`` is 1 when 2 exactly divides N and 2 otherwise; ``rows`` holds
    one condition per prime factor of N.  ``method`` is ``"oracle"`` for
    degree three and up, where no rows are produced.
    """

    modulus: int
    is_pp: bool
    method: str
    case: int | None = None
    rows: tuple[PrimeCondition, ...] = ()
    degenerate: bool = False

    def __bool__(self) -> bool:
        return self.is_pp

    @property
    def failing(self) -> tuple[PrimeCondition, ...]:
        return tuple(r for r in self.rows if not r.satisfied)


def _prime_rows(fac: Factorization, h1: int, h2: int) -> Iterator[PrimeCondition]:
    for p, e in fac:
        if p == 2 and e == 1:
            yield PrimeCondition(2, 1, "h1 + h2 odd", (h1 + h2) % 2 == 1)
        else:
            yield PrimeCondition(
                p, e, f"{p} does not divide h1, {p} divides h2", h1 % p != 0 and h2 % p == 0
            )


def is_quadratic_pp(modulus: int, h1: int, h2: int) -> bool:
    """Whether ``h1*x + h2*x^2`` permutes Z_N, from the factorization of N."""
    for p, e in factorize(modulus):
        if p == 2 and e == 1:
            if (h1 + h2) % 2 == 0:
                return False
        elif h1 % p == 0 or h2 % p:
            return False
    return True


def is_permutation_polynomial(poly: PolynomialModN) -> PPCertificate:
    """Decide whether ``poly`` permutes Z_N.

    The constant term only shifts the image and is ignored.  Degree <= 2
    uses the per-prime criteria; higher degrees build the full table.
    """
    n = poly.modulus
    if poly.degree >= 3:
        return PPCertificate(n, _table_is_bijection(_table(poly)), "oracle")
    fac = factorize(n)
    h1, h2 = poly.coeff(1), poly.coeff(2)
    rows = tuple(_prime_rows(fac, h1, h2))
    return PPCertificate(
        modulus=n,
        is_pp=all(r.satisfied for r in rows),
        method="structural",
        case=1 if fac.exponent(2) == 1 else 2,
        rows=rows,
        degenerate=h2 == 0,
    )


def _table(poly: PolynomialModN) -> list[int]:
    return [poly(x) for x in range(poly.modulus)]


def _table_is_bijection(values: Sequence[int]) -> bool:
    seen = bytearray(len(values))
    for v in values:
        if seen[v]:
            return False
        seen[v] = 1
    return True


@dataclass(frozen=True)
class PermutationTable:
    """A bijection of ``{0, ..., N-1}``; ``mapping[x]`` is the image of ``x``."""

    mapping: tuple[int, ...]
    modulus: int = field(init=False)

    def __post_init__(self):
        mapping = tuple(int(v) for v in self.mapping)
        n = len(mapping)
        if n < 1 or any(not 0 <= v < n for v in mapping) or not _table_is_bijection(mapping):
            raise NotAPermutationError("table is not a bijection of {0..N-1}")
        object.__setattr__(self, "mapping", mapping)
        object.__setattr__(self, "modulus", n)

    @classmethod
    def identity(cls, modulus: int) -> PermutationTable:
        return cls(tuple(range(modulus)))

    def __getitem__(self, x: int) -> int:
        return self.mapping[x]

    def __len__(self) -> int:
        return self.modulus

    def __iter__(self) -> Iterator[int]:
        return iter(self.mapping)

    def then(self, other: PermutationTable) -> PermutationTable:
        """Apply ``self`` first, then ``other``."""
        if other.modulus != self.modulus:
            raise InvalidInputError("table length mismatch")
        return PermutationTable(tuple(other.mapping[v] for v in self.mapping))

    def is_identity(self) -> bool:
        return all(v == x for x, v in enumerate(self.mapping))


def permutation_table(poly: PolynomialModN) -> PermutationTable:
    values = _table(poly)
    if not _table_is_bijection(values):
        raise NotAPermutationError(f"{poly} does not permute Z_{poly.modulus}")
    return PermutationTable(tuple(values))


def invert_table(table: PermutationTable) -> PermutationTable:
    inv = [0] * table.modulus
    for x, v in enumerate(table.mapping):
        inv[v] = x
    return PermutationTable(tuple(inv))


@dataclass(frozen=True)
class QuadraticPP:
    """A validated permutation polynomial ``f1*x + f2*x^2 (mod N)``.

    ``f2 = 0`` is accepted as a degenerate (linear) member of the family.
    A caller that already knows the factorization of N may pass it in.
    """

    modulus: int
    f1: int
    f2: int
    factorization: Factorization | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        _check_modulus(self.modulus)
        n = self.modulus
        object.__setattr__(self, "f1", self.f1 % n)
        object.__setattr__(self, "f2", self.f2 % n)
        fac = self.factorization
        if fac is None:
            fac = factorize(n)
        elif fac.value != n:
            raise InvalidInputError(f"supplied factorization {fac} is not {n}")
        object.__setattr__(self, "factorization", fac)
        if self.f2 and n != 2 and fac.factors == ((n, 1),):
            raise NoQuadraticPPError(
                f"no quadratic permutation polynomial exists modulo the prime {n}"
            )
        if not is_quadratic_pp(n, self.f1, self.f2):
            cert = is_permutation_polynomial(self.poly)
            failed = ", ".join(f"p={r.prime}: {r.rule}" for r in cert.failing)
            raise NotAPermutationError(f"{self.poly} is not a permutation polynomial ({failed})")

    @classmethod
    def from_polynomial(cls, poly: PolynomialModN) -> QuadraticPP:
        if poly.degree > 2 or poly.coeff(0):
            raise InvalidInputError(f"{poly} is not of the form f1*x + f2*x^2")
        return cls(poly.modulus, poly.coeff(1), poly.coeff(2))

    @property
    def poly(self) -> PolynomialModN:
        return PolynomialModN.quadratic(self.modulus, self.f1, self.f2)

    @property
    def n_N(self) -> Factorization:
        return self.factorization

    @property
    def n_F(self) -> dict[int, int | float]:
        """Valuation of f2 at every prime dividing N (``INF`` when f2 = 0)."""
        return {p: valuation(self.f2, p) if self.f2 else INF for p in self.factorization.primes}

    def __call__(self, x: int) -> int:
        n = self.modulus
        x %= n
        return (self.f1 * x + self.f2 * x * x) % n

    def table(self) -> PermutationTable:
        return permutation_table(self.poly)

    def __str__(self) -> str:
        return str(self.poly)

