"""Fast q-brackets from the nested-sum closed form, Eisenstein series,
quasimodularity detection by exact linear algebra, and numeric degree probing
of (1-q)^a scaled brackets near q = 1.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .exact import (
    InconsistentSystem,
    Poly,
    QSeries,
    Rat,
    UnderdeterminedSystem,
    ZERO,
    bernoulli,
    format_linear,
    solve_exact,
)
from .words import Model, WordSum, get_model


# ---------------------------------------------------------------------------
# exact q-brackets of word sums

@lru_cache(maxsize=None)
def _word_bracket_coeffs(name: str, word, order: int) -> tuple:
    """Coefficients of the q-bracket of a single basis word.

    The bracket is sum over m_1 > ... > m_r >= 1 of
    prod_j m_j^(d_j) sum_{n>=1} delta f_(k_j)(n) q^(m_j n), truncated at the
    order; accumulated right to left with cumulative-in-m prefix sums so each
    position only sees exponents m*n <= order.
    """
    r = len(word)
    if r == 0:
        out = [ZERO] * (order + 1)
        out[0] = Rat(1)
        return tuple(out)
    model = Model(name)
    prev_cum = None  # prev_cum[m] = coeffs of the suffix sum with m_{j+1} <= m
    for j in reversed(range(r)):
        k, d = word[j]
        running = [ZERO] * (order + 1)
        cums = [None] * (order + 1)
        cums[0] = tuple(running)
        for m in range(1, order + 1):
            md = Rat(m) ** d
            if j == r - 1:
                for n in range(1, order // m + 1):
                    dv = model.delta_f(k, n)
                    if dv != 0:
                        running[m * n] += md * dv
            else:
                tail = prev_cum[m - 1]
                for n in range(1, order // m + 1):
                    dv = model.delta_f(k, n)
                    if dv == 0:
                        continue
                    c1 = md * dv
                    base = m * n
                    for e2 in range(order - base + 1):
                        c2 = tail[e2]
                        if c2 != 0:
                            running[base + e2] += c1 * c2
            cums[m] = tuple(running)
        prev_cum = cums
    return prev_cum[order]


def qbracket_fast(model, u, order: int) -> QSeries:
    """Exact q-bracket of a WordSum (or single word) to the given order."""
    model = get_model(model)
    if not isinstance(u, WordSum):
        u = WordSum.single(tuple(u))
    out = [ZERO] * (order + 1)
    for word, c in u.terms.items():
        for e, cw in enumerate(_word_bracket_coeffs(model.name, word, order)):
            if cw != 0:
                out[e] += c * cw
    return QSeries(order, out)


# ---------------------------------------------------------------------------
# Eisenstein series and quasimodularity detection

def eisenstein(k: int, order: int) -> QSeries:
    """G_k = -B_k/(2 k!) + sum sigma_(k-1)(n)/(k-1)! q^n.

    Defined for every k >= 2; only the even ones generate the quasimodular
    ring, but odd k arise via the derivative identities.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    coeffs = [ZERO] * (order + 1)
    coeffs[0] = -bernoulli(k) / (2 * math.factorial(k))
    inv = Rat(1, math.factorial(k - 1))
    for m in range(1, order + 1):
        mk = m ** (k - 1)
        for n in range(m, order + 1, m):
            coeffs[n] += mk * inv
    return QSeries(order, coeffs)


class InsufficientOrder(ValueError):
    """The series is too short to certify a quasimodular representation."""


def quasimod_monomials(max_weight: int) -> list:
    """Exponent triples (a, b, c) for G2^a G4^b G6^c of mixed weight <= max."""
    out = []
    for c in range(max_weight // 6 + 1):
        for b in range((max_weight - 6 * c) // 4 + 1):
            for a in range((max_weight - 6 * c - 4 * b) // 2 + 1):
                out.append((a, b, c))
    out.sort(key=lambda t: (2 * t[0] + 4 * t[1] + 6 * t[2], t))
    return out


@lru_cache(maxsize=None)
def _g_monomial_series(a: int, b: int, c: int, order: int) -> QSeries:
    if a + b + c == 0:
        return QSeries.one(order)
    if a > 0:
        return _g_monomial_series(a - 1, b, c, order) * eisenstein(2, order)
    if b > 0:
        return _g_monomial_series(a, b - 1, c, order) * eisenstein(4, order)
    return _g_monomial_series(a, b, c - 1, order) * eisenstein(6, order)


class QuasimodularPoly:
    """Polynomial in G2, G4, G6 with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {
            tuple(mono): Rat(c) for mono, c in terms.items() if Rat(c) != 0
        }

    @property
    def mixed_weight(self) -> int:
        return max(
            (2 * a + 4 * b + 6 * c for a, b, c in self.terms), default=0
        )

    def items(self):
        return sorted(
            self.terms.items(),
            key=lambda t: (2 * t[0][0] + 4 * t[0][1] + 6 * t[0][2], t[0]),
        )

    def to_qseries(self, order: int) -> QSeries:
        out = QSeries.zero(order)
        for (a, b, c), coeff in self.terms.items():
            out = out + _g_monomial_series(a, b, c, order).scale(coeff)
        return out

    def __eq__(self, other):
        return isinstance(other, QuasimodularPoly) and self.terms == other.terms

    def __repr__(self):
        def body(mono):
            names = []
            for g, e in zip(("G2", "G4", "G6"), mono):
                if e == 1:
                    names.append(g)
                elif e > 1:
                    names.append(f"{g}^{e}")
            return "*".join(names)

        return format_linear((coeff, body(mono)) for mono, coeff in self.items())


def quasimod_detect(series: QSeries, max_weight: int):
    """Exact representation of the series as a polynomial in G2, G4, G6 of
    mixed weight <= max_weight, or None if no such polynomial matches every
    stored coefficient.

    A positive result certifies agreement to the stored order only.  Raises
    InsufficientOrder unless the series carries at least 5 more coefficients
    than the dimension of the candidate space.
    """
    monos = quasimod_monomials(max_weight)
    dim = len(monos)
    if series.order + 1 < dim + 5:
        raise InsufficientOrder(
            f"order {series.order} too small for weight {max_weight}: "
            f"need at least {dim + 4}"
        )
    basis = [_g_monomial_series(a, b, c, series.order) for a, b, c in monos]
    rows = []
    rhs = []
    for n in range(series.order + 1):
        rows.append([s.coeffs[n] for s in basis])
        rhs.append(series.coeffs[n])
    try:
        sol = solve_exact(rows, rhs)
    except InconsistentSystem:
        return None
    except UnderdeterminedSystem as exc:  # pragma: no cover - basis is free
        raise AssertionError("Eisenstein monomials became dependent") from exc
    return QuasimodularPoly(dict(zip(monos, sol)))


# ---------------------------------------------------------------------------
# floating-point brackets near q = 1 and degree probing

@lru_cache(maxsize=None)
def _eulerian_numerator(k: int) -> Poly:
    """P_k with sum_{n>=1} n^(k-1) x^n = P_k(x)/(1-x)^k; P_k(1) = (k-1)!."""
    if k == 1:
        return Poly([0, 1])
    prev = _eulerian_numerator(k - 1)
    deriv = Poly([(i + 1) * c for i, c in enumerate(prev.coeffs[1:])])
    return Poly([0, 1]) * ((Poly([1, -1]) * deriv) + prev.scale(k - 1))


@lru_cache(maxsize=None)
def _eulerian_float(k: int) -> np.ndarray:
    p = _eulerian_numerator(k).scale(Rat(1, math.factorial(k - 1)))
    return np.array([float(c) for c in p.coeffs], dtype=float)


def _poly_at(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(x)
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc


def qbracket_float(u, q: float, m_cap: int = 4_000_000) -> float:
    """Numeric Bernoulli-Seki q-bracket at a single 0 < q < 1.

    Each position contributes m^d E_k(q^m)/(1-q^m)^k; the strictly decreasing
    nested sum is a cumulative-sum recursion over m.  Truncation where q^m
    drops below machine precision.
    """
    if not 0.0 < q < 1.0:
        raise ValueError("q must be in (0, 1)")
    if not isinstance(u, WordSum):
        u = WordSum.single(tuple(u))
    M = min(int(38.0 / -math.log(q)) + 16, m_cap)
    m = np.arange(1, M + 1, dtype=float)
    x = np.exp(m * math.log(q))
    one_minus = -np.expm1(m * math.log(q))
    total = 0.0
    for word, c in u.terms.items():
        cum = None
        for k, d in reversed(word):
            g = _poly_at(_eulerian_float(k), x) / one_minus**k
            if d:
                g = g * m**d
            if cum is not None:
                shifted = np.empty_like(cum)
                shifted[0] = 0.0
                shifted[1:] = cum[:-1]
                g = g * shifted
            cum = np.cumsum(g)
        total += float(c) * (float(cum[-1]) if cum is not None else 1.0)
    return total


class ProbeResult(NamedTuple):
    estimate: float
    values: tuple
    diverging: bool

    def __float__(self):
        return self.estimate


DEFAULT_PROBE_SAMPLES = (0.9, 0.95, 0.99, 0.995)


def _probe_basis(log_power: int, count: int):
    """1 plus the strongest correction shapes for a model whose subleading
    term behaves like (1-q) ln^J(1/(1-q))."""
    lg = lambda x: np.log(1.0 / x)
    fns = [lambda x: np.ones_like(x)]
    if log_power == 0:
        fns += [lambda x: x, lambda x: x * x, lambda x: x**3]
    else:
        shapes = [
            lambda x, p=p: x * lg(x) ** p for p in range(log_power, -1, -1)
        ]
        shapes.append(lambda x: x * x * lg(x) ** log_power)
        shapes.append(lambda x: x * x)
        fns += shapes[:3]
    return fns[:count]


def _extrapolate(xs, vals, log_power: int) -> float:
    fns = _probe_basis(log_power, len(xs))
    A = np.stack([f(xs) for f in fns], axis=1)
    return float(np.linalg.solve(A, vals)[0])


def degree_probe(evaluator, a, samples=DEFAULT_PROBE_SAMPLES, log_power=None) -> ProbeResult:
    """Numeric estimate of lim_{q->1} (1-q)^a F(q).

    `evaluator` maps a float q to F(q).  The limit is extrapolated by an
    exact fit in x = 1 - q over 1 and the three strongest correction shapes
    x ln^p(1/x); `log_power` picks the highest p.  For brackets of words the
    right power is the number of (1;0) letters (capped at 3); when no hint is
    given the power whose 4-point and 3-point extrapolants agree best is
    used.  A cross-check, never ground truth.
    """
    a = float(a)
    qs = sorted(samples)  # ascending, so values approach the q -> 1 limit
    xs = np.array([1.0 - q for q in qs], dtype=float)
    vals = np.array([(1.0 - q) ** a * evaluator(q) for q in qs], dtype=float)
    steps = np.abs(np.diff(vals))
    monotone = all(abs(vals[i]) <= abs(vals[i + 1]) + 1e-12 for i in range(len(vals) - 1))
    # for a convergent scaled bracket the steps shrink roughly like 1 - q;
    # logarithmic or power divergence keeps them large
    diverging = bool(
        monotone
        and len(steps) >= 2
        and steps[-1] > 1e-9
        and steps[-1] >= 0.4 * steps[0]
    )
    if log_power is not None:
        estimate = _extrapolate(xs, vals, min(int(log_power), 3))
    else:
        best = None
        for p in range(4):
            full = _extrapolate(xs, vals, p)
            sub_fns = _probe_basis(p, len(xs) - 1)
            A = np.stack([f(xs[1:]) for f in sub_fns], axis=1)
            sub = float(np.linalg.solve(A, vals[1:])[0])
            score = abs(full - sub)
            if best is None or score < best[0]:
                best = (score, full)
        estimate = best[1]
    return ProbeResult(estimate, tuple(float(v) for v in vals), diverging)


def word_log_power(word) -> int:
    """Highest power of ln(1/(1-q)) expected in the first correction to the
    scaled bracket of a word: its count of (1;0) letters, capped at 3."""
    return min(3, sum(1 for letter in word if letter == (1, 0)))
