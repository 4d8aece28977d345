import math
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from gendawson.triangular import UniTriangular

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance_log():
    """Record one pass/fail line per acceptance criterion."""

    def log(name: str, ok: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((name, bool(ok), detail))

    return log


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


def random_unitriangular(rng: random.Random, k: int, lo: int = -5, hi: int = 5) -> UniTriangular:
    return UniTriangular(tuple(tuple(rng.randint(lo, hi) for _ in range(r)) for r in range(k)))


def random_rational(rng: random.Random, num: int = 9, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def taylor_oracle(poly_b: list[Fraction], order: int) -> list[Fraction]:
    """Taylor coefficients of exp(-B) * int_0^x exp(B) by power-series arithmetic.

    Independent of the derivative recursion: builds exp(+-B) with the
    ``n E_n = sum_k k B_k E_{n-k}`` rule, integrates term-wise and multiplies.
    """
    big_b = [Fraction(0)] + [Fraction(c) / (j + 1) for j, c in enumerate(poly_b)]
    big_b = (big_b + [Fraction(0)] * (order + 1))[: order + 1]

    def exp_series(sign):
        e = [Fraction(1)]
        for n in range(1, order + 1):
            e.append(sum(sign * k * big_b[k] * e[n - k] for k in range(1, n + 1)) / n)
        return e

    e_plus, e_minus = exp_series(1), exp_series(-1)
    integral = [Fraction(0)] + [e_plus[n] / (n + 1) for n in range(order)]
    return [sum(e_minus[j] * integral[n - j] for j in range(n + 1)) for n in range(order + 1)]


def taylor_to_derivatives(coeffs):
    return [c * math.factorial(n) for n, c in enumerate(coeffs)]
