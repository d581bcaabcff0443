import random

import pytest

from qppinv.modmath import radical
from qppinv.polyring import QuadraticPP, is_quadratic_pp


def qpp_coefficients(n, include_linear=False):
    """All (f1, f2) making f1*x + f2*x^2 a permutation of Z_n."""
    step = radical(n)
    if n % 4 == 2:
        step //= 2
    for f2 in range(0 if include_linear else step, n, step):
        for f1 in range(n):
            if is_quadratic_pp(n, f1, f2):
                yield f1, f2


def random_qpp(rng, n_lo=4, n_hi=512, with_inverse=None):
    """A random quadratic PP (f2 != 0), optionally conditioned on inverse existence."""
    from qppinv.inverse import exists_quadratic_inverse

    while True:
        n = rng.randint(n_lo, n_hi)
        pairs = list(qpp_coefficients(n))
        if not pairs:
            continue
        F = QuadraticPP(n, *rng.choice(pairs))
        if with_inverse is None or exists_quadratic_inverse(F).exists == with_inverse:
            return F


@pytest.fixture
def rng():
    return random.Random(20051115)
