"""Evaluate everything on explicit partitions: word sums, exp-words, shifted
symmetric Q_k, arm-leg and hook-length moments, the Moller transform,
convolution, and the enumeration q-bracket used as the slow oracle.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from .exact import QSeries, Rat, ZERO, bernoulli, partition_gf, rat_str
from .partitions import (
    arm_leg_cells,
    character,
    check_partition,
    conjugacy_class_size,
    conjugate,
    hook_lengths,
    partitions_of,
    partitions_up_to,
    size,
    stanley,
)
from .words import WordSum, get_model


@lru_cache(maxsize=None)
def _stanley_cached(lam):
    return stanley(lam)


def eval_word(model, u, lam):
    """sum over strictly decreasing part values m_1 > ... > m_r of
    prod m_j^(d_j) f_(k_j)(count of m_j); WordSum or single word accepted."""
    model = get_model(model)
    lam = tuple(lam)
    if isinstance(u, WordSum):
        items = u.terms.items()
    else:
        items = [(tuple(u), Rat(1))]
    rvec, mvec = _stanley_cached(lam)
    depth = len(mvec)
    total = ZERO
    for word, c in items:
        r = len(word)
        if r > depth:
            continue
        acc = ZERO
        for combo in itertools.combinations(range(depth), r):
            prod = c
            for (k, d), idx in zip(word, combo):
                prod = prod * mvec[idx] ** d * model.f_value(k, rvec[idx])
                if prod == 0:
                    break
            acc += prod
        total += acc
    return total


def eval_expword(model, word, lam):
    """Weakly decreasing variant with 1/Aut symmetry factor."""
    model = get_model(model)
    lam = tuple(lam)
    word = tuple(word)
    rvec, mvec = _stanley_cached(lam)
    depth = len(mvec)
    r = len(word)
    if r == 0:
        return Rat(1)
    total = ZERO
    for combo in itertools.combinations_with_replacement(range(depth), r):
        aut = 1  # product of factorials of repeat-run lengths
        i = 0
        while i < r:
            j = i
            while j < r and combo[j] == combo[i]:
                j += 1
            aut *= math.factorial(j - i)
            i = j
        prod = Rat(1, aut)
        for (k, d), idx in zip(word, combo):
            prod = prod * mvec[idx] ** d * model.f_value(k, rvec[idx])
            if prod == 0:
                break
        total += prod
    return total


def beta_constant(k: int):
    """(2^(1-k) - 1) B_k / k!, the constant term of Q_k."""
    return (Rat(2) ** (1 - k) - 1) * bernoulli(k) / math.factorial(k)


def eval_qk(k: int, lam):
    """Shifted symmetric generator: beta_k + sum over rows of the shifted
    (k-1)-st powers; rows beyond the length contribute nothing."""
    if k < 2:
        raise ValueError("k must be >= 2")
    lam = tuple(lam)
    half = Rat(1, 2)
    acc = beta_constant(k)
    scale = Rat(1, math.factorial(k - 1))
    for i, part in enumerate(lam, start=1):
        acc += scale * ((part - i + half) ** (k - 1) - (-i + half) ** (k - 1))
    return acc


def eval_armleg(a: int, b: int, lam):
    """Moment of (arm + 1/2, leg + 1/2) over Young-diagram cells, divided by a! b!."""
    lam = tuple(lam)
    half = Rat(1, 2)
    scale = Rat(1, math.factorial(a) * math.factorial(b))
    acc = ZERO
    for arm, leg in arm_leg_cells(lam):
        acc += (arm + half) ** a * (leg + half) ** b
    return scale * acc


def eval_hook_moment(k: int, lam):
    """sum over cells of hook^(k-2)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return Rat(sum(h ** (k - 2) for h in hook_lengths(lam)))


def moebius(lam) -> int:
    lam = tuple(lam)
    if len(set(lam)) != len(lam):
        return 0
    return (-1) ** len(lam)


@lru_cache(maxsize=None)
def submultiset_pairs(lam) -> tuple:
    """All (alpha, beta) with alpha cup beta = lam as multisets."""
    rvec, mvec = stanley(lam)
    out = []
    for counts in itertools.product(*(range(r + 1) for r in rvec)):
        alpha = []
        beta = []
        for c, r, m in zip(counts, rvec, mvec):
            alpha.extend([m] * c)
            beta.extend([m] * (r - c))
        out.append((tuple(alpha), tuple(beta)))
    return tuple(out)


def convolve(f, g, lam):
    """(f * g)(lam) = sum over decompositions lam = alpha cup beta."""
    acc = ZERO
    for alpha, beta in submultiset_pairs(tuple(lam)):
        fa = f(alpha)
        if fa == 0:
            continue
        acc += fa * g(beta)
    return acc


def omega_conj(f, lam):
    """Conjugation pullback: evaluate f on the transposed partition."""
    return f(conjugate(tuple(lam)))


def ubracket_coeff(f, lam):
    """Coefficient of u_lam in the normalized u-bracket of f: (f * mu)(lam)."""
    return convolve(f, moebius, tuple(lam))


def ubracket_coeff_word(model, u, lam):
    """Same coefficient, by the closed form: a word of depth r contributes
    only on partitions of depth exactly r, with value
    prod m_j^(d_j) delta f_(k_j)(r_j) in Stanley coordinates."""
    model = get_model(model)
    lam = tuple(lam)
    rvec, mvec = _stanley_cached(lam)
    if isinstance(u, WordSum):
        items = u.terms.items()
    else:
        items = [(tuple(u), Rat(1))]
    total = ZERO
    for word, c in items:
        if len(word) != len(mvec):
            continue
        prod = c
        for (k, d), m, r in zip(word, mvec, rvec):
            prod = prod * m**d * model.delta_f(k, r)
            if prod == 0:
                break
        total += prod
    return total


def moller_transform(f, lam):
    """Character-squared average over same-size partitions; preserves the
    q-bracket."""
    lam = tuple(lam)
    n = size(lam)
    acc = ZERO
    for mu in partitions_of(n):
        chi = character(lam, mu)
        if chi == 0:
            continue
        acc += Rat(conjugacy_class_size(mu)) * chi * chi * f(mu)
    return acc / math.factorial(n)


def qbracket_enum(f, order: int) -> QSeries:
    """Enumeration q-bracket: sum f(lam) q^|lam| over |lam| <= order, divided
    by the partition generating function.  The slow-but-sure oracle."""
    sums = [ZERO] * (order + 1)
    for n in range(order + 1):
        for lam in partitions_of(n):
            sums[n] += Rat(f(lam))
    return QSeries(order, sums).divide_by_unit(partition_gf(order))


class PartitionFunction:
    """A rational-valued function on partitions, tagged by construction."""

    __slots__ = ("kind", "payload", "_fn")

    def __init__(self, kind: str, payload, fn):
        self.kind = kind
        self.payload = payload
        self._fn = fn

    def __call__(self, lam):
        return self._fn(tuple(lam))

    def __repr__(self):
        return f"PartitionFunction({self.kind}, {self.payload})"

    @staticmethod
    def word(model, u) -> "PartitionFunction":
        model = get_model(model)
        if not isinstance(u, WordSum):
            u = WordSum.single(tuple(u))
        return PartitionFunction(
            "word", (model.name, u), lambda lam: eval_word(model, u, lam)
        )

    @staticmethod
    def expword(model, word) -> "PartitionFunction":
        model = get_model(model)
        word = tuple(tuple(c) for c in word)
        return PartitionFunction(
            "expword", (model.name, word), lambda lam: eval_expword(model, word, lam)
        )

    @staticmethod
    def shifted_symmetric_q(k: int) -> "PartitionFunction":
        return PartitionFunction("shifted_symmetric_Q", k, lambda lam: eval_qk(k, lam))

    @staticmethod
    def armleg(a: int, b: int) -> "PartitionFunction":
        return PartitionFunction("armleg", (a, b), lambda lam: eval_armleg(a, b, lam))

    @staticmethod
    def hook_moment(k: int) -> "PartitionFunction":
        return PartitionFunction("hook_moment", k, lambda lam: eval_hook_moment(k, lam))

    @staticmethod
    def moebius_fn() -> "PartitionFunction":
        return PartitionFunction("moebius", None, lambda lam: Rat(moebius(lam)))

    @staticmethod
    def custom(fn, label="custom") -> "PartitionFunction":
        return PartitionFunction("custom", label, fn)

    def moller(self) -> "PartitionFunction":
        return PartitionFunction(
            "custom", f"moller({self.payload})", lambda lam: moller_transform(self, lam)
        )


def qk_exp_combination(k: int) -> list:
    """Q_k as a constant plus a combination of weakly-decreasing-basis words
    whose letters all have k = 1 (hence are model independent).

    Returns (constant, [(coeff, word), ...]); pointwise it agrees with
    eval_qk, which is the content of the Stanley-coordinate expansion of Q_k.
    """
    from .exact import bernoulli_poly_at_half

    const = bernoulli_poly_at_half(k) / math.factorial(k)
    combo = []
    for i in range(k - 1):
        for j in range(i + 1):
            coeff = (
                Rat((-1) ** (i + j))
                / math.factorial(k - i - 1)
                * bernoulli_poly_at_half(j)
                / math.factorial(j)
            )
            if coeff == 0:
                continue
            word = tuple([(1, 0)] * (i - j) + [(1, k - 1 - i)])
            combo.append((coeff, word))
    return const, combo


def eval_qk_via_words(k: int, lam):
    const, combo = qk_exp_combination(k)
    acc = const
    for coeff, word in combo:
        acc += coeff * eval_expword("monomial", word, lam)
    return acc
