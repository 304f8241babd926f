"""Exact rational arithmetic: Bernoulli numbers, power-sum polynomials,
univariate polynomials over Q, and truncated q-series.

Everything in this module is immutable after construction and safe to share
between threads.  Coefficients are `Rat` (gmpy2.mpq when available, else
fractions.Fraction); the two are hash- and arithmetic-compatible.
"""

from __future__ import annotations

import math
from functools import lru_cache

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def rat_str(x) -> str:
    """Canonical "p/q" (or "p") string for a rational."""
    return str(Rat(x))


def parse_rat(s: str):
    return Rat(s.strip())


def format_linear(pairs) -> str:
    """Readable signed sum of (coefficient, body) pairs; body "" means 1."""
    parts = []
    for c, body in pairs:
        mag = rat_str(abs(c))
        term = body if (mag == "1" and body) else (mag if not body else f"{mag}*{body}")
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def bernoulli(k: int):
    """Bernoulli number B_k, convention B_1 = -1/2.

    Akiyama-Tanigawa recurrence; exact. The recurrence produces B_1 = +1/2,
    all other values agree with the B_1 = -1/2 convention.
    """
    if k < 0:
        raise ValueError("Bernoulli index must be >= 0")
    row = [ZERO] * (k + 1)
    for m in range(k + 1):
        row[m] = Rat(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
    return -row[0] if k == 1 else row[0]


def bernoulli_poly_at_half(j: int):
    """B_j(1/2) = (2^(1-j) - 1) * B_j."""
    if j < 0:
        raise ValueError("index must be >= 0")
    return (Rat(2) ** (1 - j) - 1) * bernoulli(j)


class Poly:
    """Dense univariate polynomial over Q, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def x_power(n: int, c=1) -> "Poly":
        return Poly([0] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Rat(c)
        return Poly([c * a for a in self.coeffs])

    def shift(self, c) -> "Poly":
        """p(x + c)."""
        c = Rat(c)
        out = Poly([])
        for a in reversed(self.coeffs):
            out = out * Poly([c, 1]) + Poly([a])
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(rat_str(c))
            elif i == 1:
                parts.append(f"{rat_str(c)}*x")
            else:
                parts.append(f"{rat_str(c)}*x^{i}")
        return "Poly(" + " + ".join(parts) + ")"


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> Poly:
    """Bernoulli polynomial B_n(x) = sum_j C(n,j) B_j x^(n-j)."""
    coeffs = [ZERO] * (n + 1)
    for j in range(n + 1):
        coeffs[n - j] = Rat(math.comb(n, j)) * bernoulli(j)
    return Poly(coeffs)


@lru_cache(maxsize=None)
def faulhaber_poly(k: int) -> Poly:
    """The degree-(k+1) polynomial p with p(n) = 1^k + 2^k + ... + n^k, p(0) = 0."""
    if k < 0:
        raise ValueError("power must be >= 0")
    if k == 0:
        return Poly([0, 1])
    # sum_{i<=n} i^k = (B_{k+1}(n+1) - B_{k+1}) / (k+1); the i=0 term only
    # matters for k = 0, handled above
    b = bernoulli_poly(k + 1)
    shifted = b.shift(1)
    return (shifted - Poly([b.coeffs[0]])).scale(Rat(1, k + 1))


@lru_cache(maxsize=None)
def shifted_power_sum_poly(a: int) -> Poly:
    """Polynomial of degree a+1 equal to sum_{i=1}^n (i - 1/2)^a; vanishes at 0."""
    if a < 0:
        raise ValueError("power must be >= 0")
    out = Poly([])
    half = Rat(-1, 2)
    for j in range(a + 1):
        out = out + faulhaber_poly(j).scale(Rat(math.comb(a, j)) * half ** (a - j))
    return out


class InconsistentSystem(ValueError):
    pass


class UnderdeterminedSystem(ValueError):
    pass


def solve_exact(rows, rhs):
    """Solve a (possibly overdetermined) linear system over Q exactly.

    Requires a unique solution: raises InconsistentSystem when no solution
    exists and UnderdeterminedSystem when a column has no pivot.
    """
    m = [list(map(Rat, row)) + [Rat(b)] for row, b in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            raise UnderdeterminedSystem(f"free column {c}")
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            raise InconsistentSystem("inconsistent row")
    return [m[i][ncols] for i in range(ncols)]


class OrderMismatch(ValueError):
    """Two q-series of different truncation order were combined."""


class QSeries:
    """Truncated power series in q over Q: coefficients of q^0 .. q^order.

    Binary operations require equal truncation orders; this is checked on
    every call because silently mixing orders is the classic q-series bug.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = [Rat(c) for c in coeffs]
        if len(cs) > order + 1:
            raise ValueError("more coefficients than order+1")
        cs.extend([ZERO] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(order: int) -> "QSeries":
        return QSeries(order, [])

    @staticmethod
    def one(order: int) -> "QSeries":
        return QSeries(order, [ONE])

    def _check(self, other: "QSeries"):
        if self.order != other.order:
            raise OrderMismatch(f"orders differ: {self.order} != {other.order}")

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        return QSeries(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        return QSeries(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "QSeries":
        return QSeries(self.order, [-a for a in self.coeffs])

    def __mul__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        n = self.order
        out = [ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return QSeries(n, out)

    def scale(self, c) -> "QSeries":
        c = Rat(c)
        return QSeries(self.order, [c * a for a in self.coeffs])

    def divide_by_unit(self, other: "QSeries") -> "QSeries":
        """self / other, requiring other to have nonzero constant term."""
        self._check(other)
        if other.coeffs[0] == 0:
            raise ZeroDivisionError("division by a q-series with zero constant term")
        n = self.order
        inv0 = ONE / other.coeffs[0]
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            acc = self.coeffs[i]
            for j in range(1, i + 1):
                b = other.coeffs[j]
                if b != 0:
                    acc -= b * out[i - j]
            out[i] = acc * inv0
        return QSeries(n, out)

    def q_d_dq(self) -> "QSeries":
        return QSeries(self.order, [n * c for n, c in enumerate(self.coeffs)])

    def eval_float(self, q0: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * q0 + float(c)
        return acc

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise OrderMismatch("cannot extend a truncated series")
        return QSeries(order, self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if len(parts) >= 8:
                parts.append("...")
                break
            term = rat_str(c) if n == 0 else (f"{rat_str(c)}*q^{n}" if n > 1 else f"{rat_str(c)}*q")
            parts.append(term)
        body = " + ".join(parts) if parts else "0"
        return f"QSeries[{self.order}]({body})"


@lru_cache(maxsize=None)
def partition_counts(n_max: int):
    """p(0..n_max) by Euler's pentagonal-number recurrence."""
    p = [0] * (n_max + 1)
    p[0] = 1
    for n in range(1, n_max + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n:
                break
            sign = -1 if k % 2 == 0 else 1
            total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return tuple(p)


def partition_gf(order: int) -> QSeries:
    """Generating function sum p(n) q^n truncated at the given order."""
    return QSeries(order, list(partition_counts(order)))


def euler_product(order: int) -> QSeries:
    """prod_{m<=order} (1 - q^m), the inverse of the partition generating function."""
    out = QSeries.one(order)
    for m in range(1, order + 1):
        factor = [ZERO] * (order + 1)
        factor[0] = ONE
        factor[m] = -ONE
        out = out * QSeries(order, factor)
    return out
