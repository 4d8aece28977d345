"""ODE-side verification of the Dawson-type functions.

``y'' + b1(x) y' + b2(x) y = 0`` is linked to the Riccati equation
``z' + z^2 + b1 z + b2 = 0`` by ``z = y'/y``.  Given one Riccati solution
``zbar`` the general solution is

    y(x) = exp(Z(x)) * [C1 + C2 * int_0^x exp(-A(t)) dt],
    Z = int_0 zbar,   A = int_0 (2 zbar + b1).

Choosing ``zbar = -b`` and ``b1 = b`` forces ``b2 = b'`` and turns the
``C1 = 0, C2 = 1`` solution into ``D_b``.  The harness here integrates the
Cauchy problems with classical fixed-step RK4 and compares against
quadrature and the MacLaurin series.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DivergenceError, NumericalError
from .quadrature import DEFAULT_TOL, BSpec, FamilyParams, adaptive_integrate, eval_Db
from .series import DEFAULT_ORDER, EvalReport, dawson_derivatives, series_eval

DEFAULT_STEP = 1e-3
WITNESS_TOL = 1e-8
WITNESS_SAMPLES = 33
ODE_FLAG = 1e-6
IDENTITY_FLAG = 1e-6
SERIES_SLACK = 1e-9

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class HLIIODECoeffs:
    """Coefficients of ``y'' + b1(x) y' + b2(x) y = 0``."""

    b1: Callable[[float], float]
    b2: Callable[[float], float]
    description: str = ""


@dataclass(frozen=True)
class RiccatiWitness:
    """A particular solution ``zbar`` of the Riccati equation for ``coeffs``.

    ``dzbar`` is optional; without it the residual check differentiates
    ``zbar`` numerically.
    """

    zbar: Callable[[float], float]
    coeffs: HLIIODECoeffs
    dzbar: Callable[[float], float] | None = None

    def residual(self, x: float) -> float:
        z = self.zbar(x)
        dz = self.dzbar(x) if self.dzbar is not None else central_diff(self.zbar, x)
        return dz + z * z + self.coeffs.b1(x) * z + self.coeffs.b2(x)

    def check(self, x_end: float, tol: float = WITNESS_TOL,
              samples: int = WITNESS_SAMPLES) -> float:
        """Largest scaled Riccati residual on ``[0, x_end]``; raises if above ``tol``."""
        worst = 0.0
        for x in np.linspace(0.0, x_end, samples):
            z = self.zbar(x)
            scale = 1.0 + abs(z * z) + abs(self.coeffs.b1(x) * z) + abs(self.coeffs.b2(x))
            worst = max(worst, abs(self.residual(x)) / scale)
        if worst > tol:
            raise ValueError(f"zbar is not a Riccati solution: residual {worst:.3g} > {tol:g}")
        return worst


@dataclass(frozen=True)
class Trajectory:
    x: np.ndarray
    y: np.ndarray
    dy: np.ndarray

    @property
    def steps(self) -> int:
        return len(self.x) - 1


def central_diff(f: Callable[[float], float], x: float, h: float | None = None) -> float:
    """First derivative, step ``cbrt(eps) * max(1, |x|)`` by default.

    Error model: ``h^2 |f'''| / 6 + eps |f| / h``.
    """
    if h is None:
        h = np.cbrt(_EPS) * max(1.0, abs(x))
    return (f(x + h) - f(x - h)) / (2 * h)


def central_diff2(f: Callable[[float], float], x: float, h: float | None = None) -> float:
    """Second derivative, step ``eps^(1/4) * max(1, |x|)`` by default.

    Error model: ``h^2 |f''''| / 12 + 4 eps |f| / h^2``.
    """
    if h is None:
        h = _EPS**0.25 * max(1.0, abs(x))
    return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)


def dawson_coeffs(b: BSpec) -> HLIIODECoeffs:
    """``y'' + b y' + b' y = 0``, the equation solved by ``D_b``."""
    return HLIIODECoeffs(b, b.derivative, f"y'' + ({b.label}) y' + ({b.label})' y = 0")


def dawson_witness(b: BSpec) -> RiccatiWitness:
    """``zbar = -b`` paired with :func:`dawson_coeffs`."""
    return RiccatiWitness(lambda x: -b(x), dawson_coeffs(b), lambda x: -b.derivative(x))


def family_coeffs(fp: FamilyParams) -> HLIIODECoeffs:
    """Coefficients of the equation satisfied by ``F[(lam, p), (mu, s); x]``.

    ``b1 = 2 lam p x^(p-1) - mu s x^(s-1)`` and
    ``b2 = lam^2 p^2 x^(2p-2) - lam mu p s x^(p+s-2) + lam p (p-1) x^(p-2)``.
    """
    lam, p, mu, s = fp.lam, fp.p, fp.mu, fp.s

    def b1(x):
        return 2 * lam * p * x ** (p - 1) - mu * s * x ** (s - 1)

    def b2(x):
        out = lam * lam * p * p * x ** (2 * p - 2) - lam * mu * p * s * x ** (p + s - 2)
        # prefactor vanishes for p = 1; x**(-1) must not be evaluated at 0
        if p >= 2:
            out += lam * p * (p - 1) * x ** (p - 2)
        return out

    return HLIIODECoeffs(b1, b2, f"family lam={lam:g} p={p} mu={mu:g} s={s}")


def integrate_cauchy(c: HLIIODECoeffs, x_end: float, h: float = DEFAULT_STEP,
                     y0: float = 0.0, dy0: float = 1.0) -> Trajectory:
    """Classical RK4 on ``(y, y')`` from ``x = 0`` to ``x_end``.

    The step is ``x_end / n`` with ``n = ceil(|x_end| / h)``, so the end point
    is hit exactly and negative ``x_end`` runs backwards.
    """
    if not h > 0:
        raise ValueError("step size must be positive")
    x_end = float(x_end)
    n = max(1, math.ceil(abs(x_end) / h - 1e-9)) if x_end != 0 else 0
    xs = np.zeros(n + 1)
    ys = np.zeros(n + 1)
    dys = np.zeros(n + 1)
    ys[0], dys[0] = y0, dy0
    if n == 0:
        return Trajectory(xs, ys, dys)
    step = x_end / n
    b1, b2 = c.b1, c.b2

    def rhs(x, y, v):
        return v, -b1(x) * v - b2(x) * y

    x, y, v = 0.0, float(y0), float(dy0)
    for i in range(1, n + 1):
        k1y, k1v = rhs(x, y, v)
        k2y, k2v = rhs(x + step / 2, y + step / 2 * k1y, v + step / 2 * k1v)
        k3y, k3v = rhs(x + step / 2, y + step / 2 * k2y, v + step / 2 * k2v)
        k4y, k4v = rhs(x + step, y + step * k3y, v + step * k3v)
        y_new = y + step / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        v_new = v + step / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if not (math.isfinite(y_new) and math.isfinite(v_new)):
            raise DivergenceError(f"ODE state became non-finite after x={x}", last_x=x)
        x = i * step
        y, v = y_new, v_new
        xs[i], ys[i], dys[i] = x, y, v
    return Trajectory(xs, ys, dys)


def eval_ode(b: BSpec, x: float, h: float = DEFAULT_STEP) -> EvalReport:
    """``D_b(x)`` from the Cauchy problem ``y(0)=0, y'(0)=1``.

    The error estimate comes from a second run at ``2h``: for a 4th-order
    scheme the error at ``h`` is about ``|y_h - y_2h| / 15``.
    """
    fine = integrate_cauchy(dawson_coeffs(b), x, h)
    coarse = integrate_cauchy(dawson_coeffs(b), x, 2 * h)
    est = abs(fine.y[-1] - coarse.y[-1]) / 15.0
    return EvalReport(float(fine.y[-1]), "ode", est, fine.steps)


def general_solution(w: RiccatiWitness, c1: float, c2: float, x: float,
                     tol: float = DEFAULT_TOL, check: bool = True) -> float:
    """``exp(Z(x)) * (C1 + C2 int_0^x exp(-A(t)) dt)`` by nested quadrature.

    The ``C2`` term is integrated as ``exp(Z(x) - A(t))`` so that the
    Dawson case becomes the bounded integrand ``exp(B(t) - B(x))``.
    """
    x = float(x)
    if x == 0:
        return float(c1)
    if check:
        w.check(x)

    def inner_integral(f, t):
        return adaptive_integrate(np.vectorize(f), 0.0, t, tol).value

    big_z = inner_integral(w.zbar, x)

    def a_of(t):
        return inner_integral(lambda u: 2 * w.zbar(u) + w.coeffs.b1(u), t)

    out = c1 * math.exp(big_z) if c1 else 0.0
    if c2:
        integrand = np.vectorize(lambda t: math.exp(big_z - a_of(t)))
        out += c2 * adaptive_integrate(integrand, 0.0, x, tol).value
    return out


def wronskian_at_zero(w: RiccatiWitness) -> tuple[tuple[float, float], tuple[float, float]]:
    """``((y1(0), y2(0)), (y1'(0), y2'(0)))`` for the two constructed solutions.

    ``y1 = exp(Z)`` and ``y2 = exp(Z) int exp(-A)``; the determinant is 1.
    """
    return ((1.0, 0.0), (float(w.zbar(0.0)), 1.0))


@dataclass(frozen=True)
class ResidualRow:
    x: float
    quad: float
    ode: float
    series: float
    resid_ode: float
    resid_series: float
    resid_identity: float
    flag: str

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in RESIDUAL_COLUMNS}


RESIDUAL_COLUMNS = ("x", "quad", "ode", "series", "resid_ode", "resid_series",
                    "resid_identity", "flag")


def identity_residual(b: BSpec, x: float, tol: float = DEFAULT_TOL) -> float:
    """``|D_b'(x) - 1 + b(x) D_b(x)|`` with ``D_b'`` from central differences."""
    def d(t):
        return eval_Db(b, t, tol).value

    return abs(central_diff(d, x) - 1.0 + b(x) * d(x))


def residual_report(b: BSpec, x_grid: Sequence[float], tol: float = DEFAULT_TOL,
                    order: int = DEFAULT_ORDER, h: float = DEFAULT_STEP) -> list[ResidualRow]:
    """Compare quadrature, RK4 and the MacLaurin series point by point.

    A row is flagged when the ODE or identity residual exceeds ``1e-6`` or the
    series residual exceeds its own truncation estimate plus ``1e-9``.  Points
    where evaluation fails are flagged with the error and reported as NaN.
    """
    derivs = dawson_derivatives(b.derivs_at_zero(max(order - 1, 1)), order).to_floating()
    rows = []
    for x in x_grid:
        x = float(x)
        in_radius = b.check_radius(x)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                quad = eval_Db(b, x, tol).value
                ode = eval_ode(b, x, h).value
                resid_id = identity_residual(b, x, tol)
            if in_radius:
                srep = series_eval(derivs, x)
                series, resid_series = srep.value, abs(srep.value - quad)
                series_bad = resid_series > srep.est_error + SERIES_SLACK
            else:
                series, resid_series, series_bad = math.nan, math.nan, False
            resid_ode = abs(quad - ode)
        except (NumericalError, OverflowError) as exc:
            nan = math.nan
            rows.append(ResidualRow(x, nan, nan, nan, nan, nan, nan,
                                    f"error:{type(exc).__name__}"))
            continue
        flags = []
        if resid_ode > ODE_FLAG:
            flags.append("ode")
        if series_bad:
            flags.append("series")
        if resid_id > IDENTITY_FLAG:
            flags.append("identity")
        rows.append(ResidualRow(x, quad, ode, series, resid_ode, resid_series, resid_id,
                                "|".join(flags) or "ok"))
    return rows


def _csv_number(v: float) -> str:
    return "nan" if math.isnan(v) else f"{v:.17g}"


def residual_table_csv(rows: Sequence[ResidualRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RESIDUAL_COLUMNS)
    for r in rows:
        writer.writerow([_csv_number(getattr(r, k)) for k in RESIDUAL_COLUMNS[:-1]] + [r.flag])
    return buf.getvalue()


def residual_table_json(rows: Sequence[ResidualRow]) -> str:
    def clean(v):
        return None if isinstance(v, float) and math.isnan(v) else v

    return json.dumps([{k: clean(v) for k, v in r.as_dict().items()} for r in rows])
