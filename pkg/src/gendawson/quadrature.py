"""Direct evaluation of Dawson-type integrals by adaptive quadrature.

Every function here has the shape ``exp(-P(x)) * int_0^x exp(Q(t)) dt``.
Forming ``exp(Q)`` on its own overflows long before the product does, so the
integral is always taken of ``exp(Q(t) - M)`` with ``M`` the largest value of
``Q`` seen on the interval, and the prefactor becomes ``exp(M - P(x))``.  For
the generalized Dawson function with increasing ``B`` this is exactly the
integrand ``exp(B(t) - B(x)) <= 1``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, NumericalOverflowError
from .scalars import EXACT, format_scalar, parse_scalar
from .series import DerivativeSeq, EvalReport

DEFAULT_TOL = 1e-10
MAX_DEPTH = 40
REL_FLOOR = 50 * np.finfo(float).eps
# largest argument of exp() that stays finite in double precision
_EXP_MAX = 709.78

# 15-point Kronrod nodes on [-1, 1] (non-negative half) and weights.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])


@dataclass(frozen=True)
class QuadResult:
    value: float
    est_error: float
    panels: int


def _kronrod15(f: Callable, a: float, b: float) -> float:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    with np.errstate(over="ignore", invalid="ignore"):
        fx = np.asarray(f(mid + half * _NODES), dtype=float)
    if not np.all(np.isfinite(fx)):
        raise NumericalOverflowError(f"non-finite integrand on [{a}, {b}]")
    return float(half * np.dot(_WEIGHTS, fx))


def adaptive_integrate(f: Callable, a: float, b: float, tol: float = DEFAULT_TOL,
                       max_depth: int = MAX_DEPTH) -> QuadResult:
    """Integrate a vectorized ``f`` over the oriented interval ``[a, b]``.

    Each panel is compared against the sum of its two halves (15-point
    Kronrod rule on each); a panel is accepted when that difference is within
    its width-proportional share of ``tol``.  Panels are refined in a fixed
    order, so results are deterministic.

    ``tol`` is floored at ``REL_FLOOR * |I0|`` (``I0`` the one-panel estimate):
    an absolute target below the rounding level of the result cannot be met
    and would only drive every panel to the depth cap.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    width = abs(b - a)
    first = _kronrod15(f, a, b)
    tol = max(tol, REL_FLOOR * abs(first))
    pieces: list[float] = []
    errors: list[float] = []
    failed = False
    stack = [(a, b, 0, first)]
    while stack:
        lo, hi, depth, whole = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _kronrod15(f, lo, mid)
        right = _kronrod15(f, mid, hi)
        diff = abs(left + right - whole)
        share = tol * abs(hi - lo) / width
        if diff <= share or depth + 1 >= max_depth:
            if diff > share:
                failed = True
            pieces.append(left + right)
            errors.append(diff)
            continue
        stack.append((mid, hi, depth + 1, right))
        stack.append((lo, mid, depth + 1, left))
    value = math.fsum(pieces)
    err = math.fsum(errors)
    if failed and err > tol:
        raise ConvergenceError(
            f"quadrature on [{a}, {b}] stalled at depth {max_depth}", value, err
        )
    return QuadResult(value, err, len(pieces))


class BSpec:
    """Coefficient function ``b(x)``, held internally as a polynomial.

    Build one with :meth:`polynomial`, :meth:`monomial` or :meth:`series`, or
    parse the text forms ``poly:c0,c1,...``, ``mono:LAMBDA,P`` and
    ``series:d0,d1,...`` with :meth:`parse`.  Coefficients are kept as exact
    rationals so derivative data at 0 can be produced exactly.
    """

    def __init__(self, kind: str, coeffs: Sequence, label: str | None = None,
                 radius_hint: float = math.inf, mono: tuple | None = None):
        if kind not in ("polynomial", "monomial-family", "truncated-series"):
            raise ValueError(f"unknown BSpec kind {kind!r}")
        coeffs = [Fraction(c) for c in coeffs] or [Fraction(0)]
        self.kind = kind
        self.coeffs = tuple(coeffs)
        self.radius_hint = float(radius_hint)
        self.mono = mono
        self._fcoeffs = [float(c) for c in self.coeffs]
        self.label = label or self._default_label()

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "BSpec":
        return cls("polynomial", coeffs)

    @classmethod
    def monomial(cls, lam, p: int) -> "BSpec":
        """``b(x) = lam * p * x^(p-1)``, so ``B(x) = lam * x^p``."""
        lam = Fraction(lam)
        if lam == 0:
            raise DomainError("lambda must be nonzero")
        if int(p) != p or p < 1:
            raise DomainError("p must be a positive integer")
        p = int(p)
        coeffs = [Fraction(0)] * (p - 1) + [lam * p]
        return cls("monomial-family", coeffs, mono=(lam, p))

    @classmethod
    def series(cls, derivs: Sequence | DerivativeSeq, radius_hint: float = math.inf) -> "BSpec":
        """Truncated series given by derivative values ``b^(n)(0)``."""
        vals = derivs.values if isinstance(derivs, DerivativeSeq) else derivs
        coeffs = [Fraction(v) / math.factorial(n) for n, v in enumerate(vals)]
        label = "series:" + ",".join(format_scalar(Fraction(v)) for v in vals)
        return cls("truncated-series", coeffs, label=label, radius_hint=radius_hint)

    @classmethod
    def parse(cls, text: str) -> "BSpec":
        kind, sep, payload = text.strip().partition(":")
        if not sep or not payload.strip():
            raise ValueError(f"b-spec {text!r} must look like poly:..., mono:... or series:...")
        items = [parse_scalar(tok) for tok in payload.split(",")]
        if kind == "poly":
            spec = cls.polynomial(items)
        elif kind == "mono":
            if len(items) != 2:
                raise ValueError("mono: takes exactly LAMBDA,P")
            if items[1].denominator != 1:
                raise DomainError("p must be a positive integer")
            spec = cls.monomial(items[0], int(items[1]))
        elif kind == "series":
            spec = cls.series(items)
        else:
            raise ValueError(f"unknown b-spec kind {kind!r}")
        spec.label = text.strip()
        return spec

    def _default_label(self) -> str:
        if self.mono is not None:
            return f"mono:{format_scalar(self.mono[0])},{self.mono[1]}"
        return "poly:" + ",".join(format_scalar(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"BSpec({self.label!r})"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        """``b(x)``; accepts floats or numpy arrays."""
        acc = 0.0 * np.asarray(x, dtype=float) if isinstance(x, np.ndarray) else 0.0
        for c in reversed(self._fcoeffs):
            acc = acc * x + c
        return acc

    def derivative(self, x):
        """``b'(x)``."""
        acc = 0.0 * np.asarray(x, dtype=float) if isinstance(x, np.ndarray) else 0.0
        for j in range(len(self._fcoeffs) - 1, 0, -1):
            acc = acc * x + j * self._fcoeffs[j]
        return acc

    def big_B(self, x):
        """Antiderivative ``B(x) = int_0^x b``, exact term-wise power rule."""
        if self.mono is not None:
            lam, p = self.mono
            return float(lam) * x**p
        acc = 0.0 * np.asarray(x, dtype=float) if isinstance(x, np.ndarray) else 0.0
        for j in range(len(self._fcoeffs) - 1, -1, -1):
            acc = acc * x + self._fcoeffs[j] / (j + 1)
        return acc * x

    def derivs_at_zero(self, count: int, kind: str = EXACT) -> DerivativeSeq:
        """``b^(0)(0) .. b^(count-1)(0)``; zero beyond the polynomial's degree."""
        vals = [
            self.coeffs[n] * math.factorial(n) if n < len(self.coeffs) else Fraction(0)
            for n in range(max(count, 1))
        ]
        seq = DerivativeSeq.exact(vals)
        return seq if kind == EXACT else seq.to_floating()

    def check_radius(self, x: float) -> bool:
        """Warn (never raise) when ``|x|`` reaches the radius hint."""
        if abs(x) >= self.radius_hint:
            warnings.warn(
                f"|x| = {abs(x)} is at or beyond the radius hint {self.radius_hint} of {self.label}",
                RuntimeWarning,
                stacklevel=3,
            )
            return False
        return True


@dataclass(frozen=True)
class FamilyParams:
    """``F[(lam, p), (mu, s); x] = exp(-lam x^p) int_0^x exp(mu t^s) dt``."""

    lam: float
    p: int
    mu: float
    s: int

    def __post_init__(self):
        if self.lam == 0 or self.mu == 0:
            raise DomainError("lambda and mu must be nonzero")
        for name in ("p", "s"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise DomainError(f"{name} must be a positive integer")
            object.__setattr__(self, name, int(v))

    @classmethod
    def parse(cls, text: str) -> "FamilyParams":
        parts = [tok.strip() for tok in text.split(",")]
        if len(parts) != 4:
            raise ValueError("family parameters are LAMBDA,P,MU,S")
        lam, p, mu, s = (parse_scalar(t) for t in parts)
        if p.denominator != 1 or s.denominator != 1:
            raise DomainError("p and s must be positive integers")
        return cls(float(lam), int(p), float(mu), int(s))


def _check_x(x) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    return x


def _dawson_like(inner: Callable, outer: float, x: float, tol: float) -> EvalReport:
    """``exp(-outer) * int_0^x exp(inner(t)) dt`` without forming large exponentials."""
    if not (0 < tol < 1):
        raise ValueError("tol must lie in (0, 1)")
    if x == 0:
        return EvalReport(0.0, "quadrature", 0.0, 0)
    if not math.isfinite(outer):
        raise NumericalOverflowError(f"exponent overflow at x={x}", x=x)
    samples = np.asarray(inner(np.linspace(0.0, x, 65)), dtype=float)
    if not np.all(np.isfinite(samples)):
        raise NumericalOverflowError(f"exponent overflow at x={x}", x=x)
    shift = float(samples.max())
    log_scale = shift - outer
    if log_scale > _EXP_MAX:
        raise NumericalOverflowError(
            f"result exceeds the floating range at x={x} (log-magnitude {log_scale:.1f})", x=x
        )
    scale = math.exp(log_scale)
    quad_tol = tol / scale if scale > 1 else tol
    try:
        res = adaptive_integrate(lambda t: np.exp(inner(t) - shift), 0.0, x, quad_tol)
    except ConvergenceError as exc:
        raise ConvergenceError(
            f"tolerance {tol} not reached at x={x}",
            scale * exc.best_estimate,
            scale * exc.est_error,
        ) from exc
    return EvalReport(scale * res.value, "quadrature", scale * res.est_error, res.panels)


def big_B(b: BSpec, x: float) -> float:
    return b.big_B(_check_x(x))


def eval_Db(b: BSpec, x: float, tol: float = DEFAULT_TOL) -> EvalReport:
    """Generalized Dawson function ``exp(-B(x)) int_0^x exp(B(t)) dt``.

    ``x < 0`` integrates over the oriented interval, so the result is odd
    whenever ``B`` is even.
    """
    x = _check_x(x)
    b.check_radius(x)
    try:
        outer = b.big_B(x)
    except OverflowError:
        outer = math.inf
    return _dawson_like(b.big_B, outer, x, tol)


def eval_F_classical(p: int, x: float, tol: float = DEFAULT_TOL) -> EvalReport:
    """``F(p, x) = exp(-x^p) int_0^x exp(t^p) dt``; ``p = 2`` is Dawson's integral."""
    if int(p) != p or p < 1:
        raise DomainError("p must be a positive integer")
    p = int(p)
    x = _check_x(x)
    try:
        outer = x**p
    except OverflowError:
        outer = math.inf
    return _dawson_like(lambda t: t**p, outer, x, tol)


def eval_F_family(fp: FamilyParams, x: float, tol: float = DEFAULT_TOL) -> EvalReport:
    """``exp(-lam x^p) int_0^x exp(mu t^s) dt``.

    With ``lam == mu`` and ``p == s`` and ``lam > 0`` the shift reduces to the
    integrand ``exp(lam (t^p - x^p))``; in every other case the prefactor is
    folded in through the same shift and checked against the exponent range.
    """
    x = _check_x(x)
    lam, p, mu, s = fp.lam, fp.p, fp.mu, fp.s
    try:
        outer = lam * x**p
    except OverflowError:
        outer = math.inf if lam > 0 else -math.inf
    if outer == -math.inf:
        raise NumericalOverflowError(f"prefactor overflow at x={x}", x=x)
    return _dawson_like(lambda t: mu * t**s, outer, x, tol)


__all__ = [
    "BSpec",
    "DEFAULT_TOL",
    "FamilyParams",
    "QuadResult",
    "adaptive_integrate",
    "big_B",
    "eval_Db",
    "eval_F_classical",
    "eval_F_family",
]
