"""Exception hierarchy shared by the library and the command-line tool.

Every exception carries a short machine-readable ``code`` and the process
exit status the CLI uses when the error escapes a command.
"""

from __future__ import annotations


class QPPError(Exception):
    code = "error"
    exit_code = 2


class InvalidInputError(QPPError, ValueError):
    code = "invalid-input"
    exit_code = 2


class NoInverseError(InvalidInputError):
    """``s`` has no inverse modulo ``M``; ``gcd`` holds gcd(s, M)."""

    code = "no-inverse"

    def __init__(self, s: int, modulus: int, gcd: int):
        super().__init__(f"{s} has no inverse modulo {modulus} (gcd = {gcd})")
        self.s = s
        self.modulus = modulus
        self.gcd = gcd


class NoSolutionError(InvalidInputError):
    """``a*u = b (mod N)`` is unsolvable because ``d = gcd(a, N)`` does not divide ``b``."""

    code = "no-solution"

    def __init__(self, a: int, b: int, modulus: int, d: int):
        super().__init__(
            f"{a}*u = {b} (mod {modulus}) has no solution: gcd {d} does not divide {b}"
        )
        self.a = a
        self.b = b
        self.modulus = modulus
        self.d = d


class NotAPermutationError(QPPError, ValueError):
    code = "not-a-pp"
    exit_code = 3


class NoQuadraticPPError(NotAPermutationError):
    """Raised for a genuinely quadratic polynomial over a prime modulus other than 2."""

    code = "prime-modulus"


class ResourceLimitError(QPPError):
    code = "resource-limit"
    exit_code = 4


class VerificationError(QPPError, AssertionError):
    """A computed inverse failed its independent re-check."""

    code = "verification-failed"
    exit_code = 5
