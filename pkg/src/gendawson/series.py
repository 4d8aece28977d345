"""MacLaurin data of the generalized Dawson function.

For ``D_b(x) = exp(-B(x)) * int_0^x exp(B(t)) dt`` with ``B' = b`` the
derivatives at the origin obey

    D(0) = 0,  D'(0) = 1,
    D^(k+1)(0) = -k b^(k-1)(0) - sum_{n=2}^{k} C(k, n) D^(n)(0) b^(k-n)(0),

which follows from differentiating ``D'' = -(D b)'`` with Leibniz' rule.
Sequences store raw derivative values (not Taylor coefficients) so the
binomials stay integral; :func:`derivs_to_taylor` does the factorial scaling.
All indexing here is 0-based: entry ``n`` holds the ``n``-th derivative.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputLengthError, NumericalOverflowError
from .scalars import EXACT, FLOATING, coerce, format_scalar, kind_of, pascal_table

DEFAULT_ORDER = 16
# float(n!) overflows for n > 170
FACTORIAL_CAP = 170


@dataclass(frozen=True)
class DerivativeSeq:
    """Derivative values at 0, entry ``n`` being the ``n``-th derivative."""

    values: tuple
    scalar_kind: str

    def __init__(self, values: Sequence, scalar_kind: str | None = None):
        values = tuple(values)
        if not values:
            raise ValueError("DerivativeSeq needs at least one entry")
        kind = scalar_kind or kind_of(values)
        if kind not in (EXACT, FLOATING):
            raise ValueError(f"unknown scalar kind {kind!r}")
        object.__setattr__(self, "values", tuple(coerce(v, kind) for v in values))
        object.__setattr__(self, "scalar_kind", kind)

    @classmethod
    def exact(cls, values: Sequence) -> "DerivativeSeq":
        return cls(values, EXACT)

    @classmethod
    def floating(cls, values: Sequence) -> "DerivativeSeq":
        return cls(values, FLOATING)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def __iter__(self):
        return iter(self.values)

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def to_floating(self) -> "DerivativeSeq":
        return DerivativeSeq.floating([float(v) for v in self.values])


@dataclass(frozen=True)
class TaylorPoly:
    """Truncated MacLaurin polynomial, ``coeffs[n] = f^(n)(0) / n!``."""

    coeffs: tuple
    scalar_kind: str
    radius_hint: float = math.inf

    def __init__(self, coeffs: Sequence, scalar_kind: str | None = None,
                 radius_hint: float = math.inf):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("TaylorPoly needs at least one coefficient")
        if not radius_hint > 0:
            raise ValueError("radius_hint must be positive")
        kind = scalar_kind or kind_of(coeffs)
        object.__setattr__(self, "coeffs", tuple(coerce(c, kind) for c in coeffs))
        object.__setattr__(self, "scalar_kind", kind)
        object.__setattr__(self, "radius_hint", float(radius_hint))


@dataclass(frozen=True)
class EvalReport:
    """Outcome of one evaluation.

    ``method`` is ``"series"``, ``"quadrature"`` or ``"ode"``; ``detail`` is the
    truncation order, number of accepted quadrature panels, or ODE step count.
    """

    value: float
    method: str
    est_error: float
    detail: int


def dawson_derivatives(b_derivs: DerivativeSeq, order: int) -> DerivativeSeq:
    """Return ``D_b^(0)(0), ..., D_b^(order)(0)`` from ``b^(n)(0)`` data.

    Needs ``b^(0..order-2)(0)``, i.e. ``len(b_derivs) >= order - 1``.  The
    scalar kind of the output follows ``b_derivs``; exact input gives exact
    output.

    >>> b = DerivativeSeq.exact([0, 2, 0, 0])          # b(x) = 2x
    >>> [str(v) for v in dawson_derivatives(b, 5)]
    ['0', '1', '0', '-4', '0', '32']
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if len(b_derivs) < order - 1:
        raise InputLengthError(
            f"order {order} needs {order - 1} derivatives of b, got {len(b_derivs)}"
        )
    kind = b_derivs.scalar_kind
    b = b_derivs.values
    one = Fraction(1) if kind == EXACT else 1.0
    d = [0 * one, one]
    pascal = pascal_table(order)
    for k in range(1, order):
        row = pascal[k]
        acc = -k * b[k - 1]
        for n in range(2, k + 1):
            acc -= row[n] * d[n] * b[k - n]
        if kind == FLOATING:
            if not math.isfinite(acc):
                raise NumericalOverflowError(
                    f"derivative recursion overflowed at order {k + 1}", order=k + 1
                )
            acc += 0.0  # no signed zeros in output

        d.append(acc)
    return DerivativeSeq(d, kind)


def derivs_to_taylor(d: DerivativeSeq, radius_hint: float = math.inf) -> TaylorPoly:
    if d.scalar_kind == EXACT:
        coeffs = [v / math.factorial(n) for n, v in enumerate(d.values)]
    else:
        if d.order > FACTORIAL_CAP:
            raise NumericalOverflowError(
                f"factorial overflows above order {FACTORIAL_CAP}", order=FACTORIAL_CAP + 1
            )
        coeffs = [v / float(math.factorial(n)) for n, v in enumerate(d.values)]
    return TaylorPoly(coeffs, d.scalar_kind, radius_hint)


def taylor_to_derivs(t: TaylorPoly) -> DerivativeSeq:
    if t.scalar_kind == EXACT:
        return DerivativeSeq.exact(c * math.factorial(n) for n, c in enumerate(t.coeffs))
    if len(t.coeffs) - 1 > FACTORIAL_CAP:
        raise NumericalOverflowError(
            f"factorial overflows above order {FACTORIAL_CAP}", order=FACTORIAL_CAP + 1
        )
    out = [c * float(math.factorial(n)) for n, c in enumerate(t.coeffs)]
    for n, v in enumerate(out):
        if not math.isfinite(v):
            raise NumericalOverflowError(f"derivative overflow at order {n}", order=n)
    return DerivativeSeq.floating(out)


def series_eval(d: DerivativeSeq, x: float) -> EvalReport:
    """Evaluate the truncated MacLaurin polynomial of ``d`` at ``x`` by Horner.

    The error estimate is the largest magnitude among the last three retained
    terms.  A single term is not enough: the series of odd or monomial ``b``
    has regular runs of zero coefficients, so the very last term can vanish
    while the tail does not.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    coeffs = [float(c) for c in derivs_to_taylor(d).coeffs]
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    n = len(coeffs) - 1
    tail = [abs(coeffs[j] * x**j) for j in range(max(0, n - 2), n + 1)]
    return EvalReport(acc, "series", max(tail), n)


def series_dump(b_spec: str, b_derivs: DerivativeSeq, order: int) -> dict:
    """JSON-ready dump of the derivative and Taylor data up to ``order``."""
    d = dawson_derivatives(b_derivs, order)
    t = derivs_to_taylor(d)
    return {
        "b_spec": b_spec,
        "order": order,
        "derivatives": [format_scalar(v) for v in d.values],
        "taylor_coefficients": [format_scalar(c) for c in t.coeffs],
    }


def series_dump_json(b_spec: str, b_derivs: DerivativeSeq, order: int) -> str:
    return json.dumps(series_dump(b_spec, b_derivs, order))
