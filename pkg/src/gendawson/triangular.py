"""Unit lower-triangular systems and their cofactors.

Public functions take 1-based ``(row, column)`` indices, matching the usual
matrix notation ``c_{r,s}``; storage is 0-based.  This module is the only
place where that translation happens.

The system solved for ``D_b^(2)(0), ..., D_b^(k+1)(0)`` has matrix ``A_k`` with
``a_{i,j} = C(i, j+1) b^(i-j-1)(0)`` below the diagonal and right-hand side
``-i b^(i-1)(0)``.  Replacing the last column of ``A_k`` by the right-hand side
gives a bordered matrix ``P_k`` whose determinant is ``D_b^(k+1)(0)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DomainError, InputLengthError
from .scalars import binomial, format_scalar, is_exact, parse_scalar
from .series import DerivativeSeq


@dataclass(frozen=True)
class UniTriangular:
    """Lower triangular matrix with unit diagonal.

    ``rows[r]`` holds the ``r`` strictly-lower entries of (0-based) row ``r``,
    so ``rows[0]`` is empty.
    """

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        for r, row in enumerate(rows):
            if len(row) != r:
                raise ValueError(f"row {r + 1} must have {r} strictly-lower entries")
        if not rows:
            raise ValueError("order must be >= 1")
        object.__setattr__(self, "rows", rows)

    @property
    def order(self) -> int:
        return len(self.rows)

    def entry(self, r: int, s: int):
        """``c_{r,s}`` with 1-based indices."""
        if not (1 <= r <= self.order and 1 <= s <= self.order):
            raise DomainError(f"index ({r}, {s}) outside order {self.order}")
        if s > r:
            return 0
        if s == r:
            return 1
        return self.rows[r - 1][s - 1]

    def dense(self) -> list[list]:
        k = self.order
        return [[self.entry(r, s) for s in range(1, k + 1)] for r in range(1, k + 1)]

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence]) -> "UniTriangular":
        """Build from a full square matrix, checking the unit-triangular shape."""
        k = len(matrix)
        rows = []
        for r, row in enumerate(matrix):
            if len(row) != k:
                raise ValueError("matrix is not square")
            if row[r] != 1:
                raise ValueError(f"diagonal entry {r + 1} is {row[r]}, expected 1")
            if any(v != 0 for v in row[r + 1:]):
                raise ValueError(f"row {r + 1} has nonzero entries above the diagonal")
            rows.append(tuple(row[:r]))
        return cls(tuple(rows))

    @classmethod
    def identity(cls, k: int) -> "UniTriangular":
        return cls(tuple((0,) * r for r in range(k)))


@dataclass(frozen=True)
class BorderedSystem:
    """``[[core, alpha], [beta, corner]]`` with a unit-triangular core.

    The core may be empty (``core is None``), in which case the matrix is
    the 1x1 matrix ``(corner)``.
    """

    core: UniTriangular | None
    alpha: tuple
    beta: tuple
    corner: object

    def __post_init__(self):
        n = 0 if self.core is None else self.core.order
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "beta", tuple(self.beta))
        if len(self.alpha) != n or len(self.beta) != n:
            raise ValueError(
                f"border lengths {len(self.alpha)}, {len(self.beta)} do not match core order {n}"
            )

    @property
    def size(self) -> int:
        return len(self.alpha)

    def dense(self) -> list[list]:
        n = self.size
        core = self.core.dense() if n else []
        out = [list(core[r]) + [self.alpha[r]] for r in range(n)]
        out.append(list(self.beta) + [self.corner])
        return out


def _need(b_derivs: DerivativeSeq, count: int) -> None:
    if len(b_derivs) < count:
        raise InputLengthError(f"need {count} derivatives of b, got {len(b_derivs)}")


def build_system(b_derivs: DerivativeSeq, k: int) -> tuple[UniTriangular, tuple]:
    """Return ``(A_k, rhs)`` for the unknowns ``D_b^(2)(0) .. D_b^(k+1)(0)``.

    The right-hand side uses ``b^(k-1)(0)``, so ``k`` derivatives are needed.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    _need(b_derivs, k)
    b = b_derivs.values
    rows = tuple(
        tuple(binomial(i, j + 1) * b[i - j - 1] for j in range(1, i))
        for i in range(1, k + 1)
    )
    rhs = tuple(-i * b[i - 1] for i in range(1, k + 1))
    return UniTriangular(rows), rhs


def forward_solve(a: UniTriangular, rhs: Sequence) -> tuple:
    if len(rhs) != a.order:
        raise ValueError(f"rhs length {len(rhs)} does not match order {a.order}")
    x = []
    for r, row in enumerate(a.rows):
        acc = rhs[r]
        for s, c in enumerate(row):
            acc -= c * x[s]
        x.append(acc)
    return tuple(x)


def cofactor_chains(n: int) -> Iterator[tuple[int, ...]]:
    """Yield every chain ``(n, p_1, ..., p_s)`` with ``n > p_1 > ... > p_s = 0``.

    Depth-first in lexicographically decreasing order.  A chain with ``s``
    steps corresponds to the product ``c_{i+n,i+p_1} ... c_{i+p_{s-1},i}``.
    """
    if n < 1:
        raise DomainError("chain length n must be >= 1")

    def descend(chain):
        top = chain[-1]
        # jump straight to 0, or through an intermediate index first
        yield chain + (0,)
        for p in range(top - 1, 0, -1):
            yield from descend(chain + (p,))

    yield from descend((n,))


def chain_term_counts(n: int) -> dict[int, int]:
    """Number of chain products of each length ``s`` in the cofactor formula."""
    counts: dict[int, int] = {}
    for chain in cofactor_chains(n):
        s = len(chain) - 1
        counts[s] = counts.get(s, 0) + 1
    return counts


def cofactor_closed_form(c: UniTriangular, i: int, n: int):
    """Cofactor of entry ``(i, i+n)`` of a unit lower-triangular matrix.

    Sum over descending index chains ``n > p_1 > ... > p_s = 0`` of
    ``(-1)^s c_{i+n,i+p_1} c_{i+p_1,i+p_2} ... c_{i+p_{s-1},i}``.  Costs
    ``2^(n-1)`` products; use :func:`forward_solve` for production work.
    """
    k = c.order
    if not (1 <= i <= k - 1 and 1 <= n <= k - i):
        raise DomainError(f"(i, n) = ({i}, {n}) invalid for order {k}")
    total = 0
    for chain in cofactor_chains(n):
        term = 1
        for hi, lo in zip(chain, chain[1:]):
            term *= c.rows[i + hi - 1][i + lo - 1]
            if term == 0:
                break
        total += -term if (len(chain) - 1) % 2 else term
    return total


def cofactor(c: UniTriangular, r: int, s: int):
    """``Delta_{r,s}``: 0 below the diagonal, 1 on it, closed form above."""
    if not (1 <= r <= c.order and 1 <= s <= c.order):
        raise DomainError(f"index ({r}, {s}) outside order {c.order}")
    if r > s:
        return 0
    if r == s:
        return 1
    return cofactor_closed_form(c, r, s - r)


def dense_det(matrix: Sequence[Sequence]):
    """Determinant by fraction-free (Bareiss) elimination with row pivoting.

    Exact for integer and :class:`~fractions.Fraction` entries; the empty
    matrix has determinant 1.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    exact = all(is_exact(v) for row in m for v in row)
    if exact:
        m = [[Fraction(v) for v in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0 * m[0][0]
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for r in range(k + 1, n):
            for col in range(k + 1, n):
                m[r][col] = (m[r][col] * m[k][k] - m[r][k] * m[k][col]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _permutation_det(matrix: Sequence[Sequence]):
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = 1
        for r in range(n):
            term *= matrix[r][perm[r]]
            if term == 0:
                break
        total += -term if inversions % 2 else term
    return total


def cofactor_oracle(c: UniTriangular, r: int, s: int, *, method: str = "bareiss"):
    """``(-1)^(r+s)`` times the minor with row ``r`` and column ``s`` deleted.

    ``method="permutation"`` expands the minor over all permutations
    (orders up to about 8); the default uses :func:`dense_det`.
    """
    k = c.order
    if not (1 <= r <= k and 1 <= s <= k):
        raise DomainError(f"index ({r}, {s}) outside order {k}")
    full = c.dense()
    minor = [
        [full[a][b] for b in range(k) if b != s - 1] for a in range(k) if a != r - 1
    ]
    if method == "bareiss":
        det = dense_det(minor)
    elif method == "permutation":
        det = _permutation_det(minor) if minor else 1
    else:
        raise ValueError(f"unknown method {method!r}")
    return -det if (r + s) % 2 else det


def bordered_det(system: BorderedSystem):
    """``corner * det(core) - sum_{r,s} alpha_r beta_s Delta_{r,s}``.

    ``det(core) = 1`` for a unit-triangular core, and ``Delta_{r,s}`` vanishes
    for ``r > s``, so only the upper triangle of cofactors is visited.
    """
    n = system.size
    if n == 0:
        return system.corner
    total = system.corner
    for r in range(1, n + 1):
        a_r = system.alpha[r - 1]
        if a_r == 0:
            continue
        for s in range(r, n + 1):
            b_s = system.beta[s - 1]
            if b_s == 0:
                continue
            total -= a_r * b_s * cofactor(system.core, r, s)
    return total


def bordered_system_for(b_derivs: DerivativeSeq, k: int) -> BorderedSystem:
    """Assemble ``P_k``: ``A_k`` with its last column replaced by the rhs."""
    a_k, rhs = build_system(b_derivs, k)
    if k == 1:
        return BorderedSystem(None, (), (), rhs[0])
    core = UniTriangular(a_k.rows[: k - 1])
    return BorderedSystem(core, rhs[: k - 1], a_k.rows[k - 1], rhs[k - 1])


def dawson_derivative_cramer(b_derivs: DerivativeSeq, k: int):
    """``D_b^(k+1)(0) = det P_k`` evaluated through the bordered formula."""
    return bordered_det(bordered_system_for(b_derivs, k))


def expanded_cramer_sum(b_derivs: DerivativeSeq, k: int):
    """``-k b^(k-1) + sum_{i,j<k} i C(k, j+1) b^(k-j-1) b^(i-1) Delta_{i,j}``.

    The bordered formula written out with the signs of the rhs absorbed; kept
    as a separate identity for testing.
    """
    _need(b_derivs, k)
    b = b_derivs.values
    total = -k * b[k - 1]
    if k == 1:
        return total
    a_k, _ = build_system(b_derivs, k)
    core = UniTriangular(a_k.rows[: k - 1])
    for i in range(1, k):
        for j in range(i, k):
            total += i * binomial(k, j + 1) * b[k - j - 1] * b[i - 1] * cofactor(core, i, j)
    return total


def format_matrix(matrix: UniTriangular | Sequence[Sequence]) -> str:
    """Plain-text dump: order on the first line, then one row per line."""
    rows = matrix.dense() if isinstance(matrix, UniTriangular) else matrix
    lines = [str(len(rows))]
    lines += [" ".join(format_scalar(v) if is_exact(v) else repr(float(v)) for v in row)
              for row in rows]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> UniTriangular:
    """Inverse of :func:`format_matrix`; entries are parsed exactly."""
    lines = [ln for ln in (ln.strip() for ln in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        k = int(lines[0])
    except ValueError as exc:
        raise ValueError(f"first line must be the order, got {lines[0]!r}") from exc
    if k < 1 or len(lines) - 1 != k:
        raise ValueError(f"expected {k} rows, got {len(lines) - 1}")
    return UniTriangular.from_dense([[parse_scalar(tok) for tok in ln.split()] for ln in lines[1:]])


__all__ = [
    "BorderedSystem",
    "UniTriangular",
    "bordered_det",
    "bordered_system_for",
    "build_system",
    "chain_term_counts",
    "cofactor",
    "cofactor_chains",
    "cofactor_closed_form",
    "cofactor_oracle",
    "dawson_derivative_cramer",
    "dense_det",
    "expanded_cramer_sum",
    "format_matrix",
    "forward_solve",
    "parse_matrix",
]
