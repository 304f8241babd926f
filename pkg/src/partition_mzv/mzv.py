"""Multiple zeta values: symbolic linear combinations, reduction of integer
(possibly non-positive) nested-sum indices, conjugated zeta values via the
factorial operator, word limits at the degree, the regularized word-to-MZV
map, and floating-point evaluation with a tail estimate.

No relations between admissible MZV symbols are ever applied automatically;
the only products used are the defining nested-sum (stuffle) expansions, and
numeric evaluation is the equality oracle everywhere else.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .exact import Rat, ZERO, faulhaber_poly, format_linear
from .words import WordSum, _p1_split, _regularize_word, weight


def check_admissible(idx) -> tuple:
    idx = tuple(int(k) for k in idx)
    if idx and (idx[0] < 2 or any(k < 1 for k in idx)):
        raise ValueError(f"not an admissible index: {idx}")
    return idx


def check_general_index(entries) -> tuple:
    """Integer entries, possibly <= 0, with all partial sums k_1+...+k_j > j."""
    entries = tuple(int(k) for k in entries)
    acc = 0
    for j, k in enumerate(entries, start=1):
        acc += k
        if acc <= j:
            raise ValueError(f"nested sum diverges: partial sum rule fails at {j}: {entries}")
    return entries


@lru_cache(maxsize=None)
def _stuffle_index(i1: tuple, i2: tuple) -> tuple:
    """Harmonic (nested-sum) product of two admissible indices."""
    if not i1:
        return ((i2, 1),)
    if not i2:
        return ((i1, 1),)
    if i2 < i1:
        i1, i2 = i2, i1
    a, u = i1[0], i1[1:]
    b, v = i2[0], i2[1:]
    out: dict = {}
    for idx, c in _stuffle_index(u, i2):
        idx = (a,) + idx
        out[idx] = out.get(idx, 0) + c
    for idx, c in _stuffle_index(i1, v):
        idx = (b,) + idx
        out[idx] = out.get(idx, 0) + c
    for idx, c in _stuffle_index(u, v):
        idx = (a + b,) + idx
        out[idx] = out.get(idx, 0) + c
    return tuple(sorted(out.items()))


def _index_key(idx):
    return (sum(idx), len(idx), idx)


class MzvLin:
    """Rational linear combination of admissible multiple zeta value symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for idx, c in terms.items():
                c = Rat(c)
                if c != 0:
                    data[check_admissible(idx)] = c
        self.terms = data

    @staticmethod
    def single(idx, coeff=1) -> "MzvLin":
        return MzvLin({tuple(idx): coeff})

    @staticmethod
    def one() -> "MzvLin":
        return MzvLin({(): 1})

    @staticmethod
    def zero() -> "MzvLin":
        return MzvLin()

    def items(self):
        return sorted(self.terms.items(), key=lambda t: _index_key(t[0]))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "MzvLin") -> "MzvLin":
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out.get(idx, ZERO) + c
        return MzvLin(out)

    def __sub__(self, other: "MzvLin") -> "MzvLin":
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out.get(idx, ZERO) - c
        return MzvLin(out)

    def __neg__(self) -> "MzvLin":
        return MzvLin({idx: -c for idx, c in self.terms.items()})

    def scale(self, c) -> "MzvLin":
        c = Rat(c)
        return MzvLin({idx: c * cc for idx, cc in self.terms.items()})

    def __mul__(self, other: "MzvLin") -> "MzvLin":
        out: dict = {}
        for i1, c1 in self.terms.items():
            for i2, c2 in other.terms.items():
                c = c1 * c2
                for idx, m in _stuffle_index(i1, i2):
                    out[idx] = out.get(idx, ZERO) + c * m
        return MzvLin(out)

    def max_weight(self) -> int:
        return max((sum(idx) for idx in self.terms), default=0)

    def value(self, cutoff: int = 200_000) -> float:
        return sum(float(c) * mzv_eval(idx, cutoff)[0] for idx, c in self.terms.items())

    def value_error(self, cutoff: int = 200_000) -> float:
        return sum(abs(float(c)) * mzv_eval(idx, cutoff)[1] for idx, c in self.terms.items())

    def __eq__(self, other):
        return isinstance(other, MzvLin) and self.terms == other.terms

    def __repr__(self):
        return format_linear(
            (c, "z(%s)" % ",".join(map(str, idx)) if idx else "") for idx, c in self.items()
        )


# ---------------------------------------------------------------------------
# reduction of general integer indices

@lru_cache(maxsize=None)
def _reduce_general(kappa: tuple) -> tuple:
    pos = next((p for p in range(len(kappa) - 1, -1, -1) if kappa[p] <= 0), None)
    if pos is None:
        return ((kappa, Rat(1)),)
    if pos == 0:
        raise AssertionError("outermost exponent <= 0 cannot converge")
    out: dict = {}

    def add(new_kappa, coeff):
        for idx, c in _reduce_general(new_kappa):
            out[idx] = out.get(idx, ZERO) + coeff * c

    fb = faulhaber_poly(-kappa[pos])
    upper = fb.shift(-1)  # sum_{m < M} m^(-kappa[pos]) as a polynomial in M
    for e, c in enumerate(upper.coeffs):
        if c != 0:
            add(kappa[: pos - 1] + (kappa[pos - 1] - e,) + kappa[pos + 1:], c)
    if pos < len(kappa) - 1:
        for e, c in enumerate(fb.coeffs):
            if c != 0:
                add(kappa[:pos] + (kappa[pos + 1] - e,) + kappa[pos + 2:], -c)
    return tuple(sorted(((idx, c) for idx, c in out.items() if c != 0),
                        key=lambda t: _index_key(t[0])))


def reduce_general_zeta(entries) -> MzvLin:
    """Express a nested sum over m_1 > ... > m_r >= 1 of prod m_i^(-k_i) with
    integer entries (non-positive allowed) in admissible MZV symbols.

    Interior non-positive exponents are summed out with power-sum polynomials,
    innermost first; total weight never exceeds the entry sum.
    """
    entries = check_general_index(entries)
    return MzvLin(dict(_reduce_general(entries)))


# ---------------------------------------------------------------------------
# conjugated zeta values and the limit machinery

def _compositions(total: int, parts: int) -> list:
    if parts == 0:
        return [()] if total == 0 else []
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        out.extend((first,) + rest for rest in _compositions(total - first, parts - 1))
    return out


@lru_cache(maxsize=None)
def _increasing_omega_sum(ks: tuple, ds: tuple) -> MzvLin:
    """sum over 0 < r_1 < ... < r_t of
    prod_i (r_i - r_{i-1})^(k_i - 1) / r_i  times  Omega applied to
    prod_i (1/r_i + ... + 1/r_t)^(d_i), where Omega rescales each monomial
    prod r_j^(-l_j) by prod l_j!.

    Expanded exactly into general integer indices and reduced; this is the
    head factor of every degree limit, and with all k_i = 1 it is the
    conjugated zeta value xi(d_1, ..., d_t).
    """
    t = len(ks)
    if t == 0:
        return MzvLin.one()
    # distribute each d_i over the variables r_i .. r_t
    states = {(0,) * t: 1}
    for i in range(t):
        d = ds[i]
        if d == 0:
            continue
        new: dict = {}
        for comp in _compositions(d, t - i):
            mult = math.factorial(d)
            for x in comp:
                mult //= math.factorial(x)
            for state, c in states.items():
                ns = state[:i] + tuple(state[i + lf] + x for lf, x in enumerate(comp))
                new[ns] = new.get(ns, 0) + c * mult
        states = new
    omega_terms = []
    for lvec, c in states.items():
        for l in lvec:
            c *= math.factorial(l)
        omega_terms.append((lvec, c))
    # expand prod_i (r_i - r_{i-1})^(k_i - 1), r_0 = 0
    bstates = {(0,) * t: 1}
    for i in range(t):
        e = ks[i] - 1
        new: dict = {}
        for state, c in bstates.items():
            if i == 0:
                choices = [((e,), 1)]
            else:
                choices = [((x, e - x), math.comb(e, x) * (-1) ** (e - x))
                           for x in range(e + 1)]
            for exps, mult in choices:
                ns = list(state)
                if i == 0:
                    ns[0] += exps[0]
                else:
                    ns[i] += exps[0]
                    ns[i - 1] += exps[1]
                ns = tuple(ns)
                new[ns] = new.get(ns, 0) + c * mult
        bstates = new
    norm = Rat(1)
    for k in ks:  # well-normalized models carry 1/(k-1)! on each entry
        norm /= math.factorial(k - 1)
    total = MzvLin.zero()
    for lvec, cl in omega_terms:
        for cvec, cb in bstates.items():
            coeff = norm * cl * cb
            if coeff == 0:
                continue
            kappa = tuple(1 + lvec[i] - cvec[i] for i in reversed(range(t)))
            total = total + reduce_general_zeta(kappa).scale(coeff)
    return total


def xi_expand(ds) -> MzvLin:
    """Conjugated zeta value xi(d_1, ..., d_r): requires d_r >= 1."""
    ds = tuple(int(d) for d in ds)
    if any(d < 0 for d in ds):
        raise ValueError("entries must be >= 0")
    if ds and ds[-1] < 1:
        raise ValueError("the last entry must be >= 1")
    return _increasing_omega_sum((1,) * len(ds), ds)


class LimitResult(NamedTuple):
    degree: int
    argmax: int           # smallest maximizing split index
    unique: bool
    value: MzvLin | None  # None when the maximizing split is not unique

    @property
    def divergent(self) -> bool:
        return self.value is None


def degree(word) -> LimitResult:
    """Order of the pole of the q-bracket at q = 1: the best split of the word
    into a head counted by (d_i + 1) and a tail counted by k_i."""
    word = tuple(word)
    r = len(word)
    vals = []
    for j in range(r + 1):
        vals.append(
            sum(d + 1 for _, d in word[:j]) + sum(k for k, _ in word[j:])
        )
    deg = max(vals)
    argmax = vals.index(deg)
    unique = vals.count(deg) == 1
    return LimitResult(deg, argmax, unique, None)


@lru_cache(maxsize=None)
def zdegree_limit(word) -> LimitResult:
    """Limit of (1-q)^degree times the q-bracket, for any well-normalized
    model: the head factor is an Omega sum, the tail factor a general zeta
    with entries k_i - d_i, and the value is their product.  Divergent (value
    None) exactly when the maximizing split is not unique."""
    word = tuple(word)
    info = degree(word)
    if not info.unique:
        return info
    t = info.argmax
    head = word[:t]
    tail = word[t:]
    glin = _increasing_omega_sum(tuple(k for k, _ in head), tuple(d for _, d in head))
    if tail:
        hlin = reduce_general_zeta(tuple(k - d for k, d in tail))
    else:
        hlin = MzvLin.one()
    return LimitResult(info.degree, t, True, glin * hlin)


def weight_limit(word) -> LimitResult:
    """Limit of (1-q)^weight times the q-bracket: the degree limit when the
    degree reaches the weight, zero when it falls short, divergent when the
    weight is reached at more than one split."""
    word = tuple(word)
    info = degree(word)
    if info.degree < weight(word):
        return LimitResult(info.degree, info.argmax, info.unique, MzvLin.zero())
    return zdegree_limit(word)


def wordsum_degree_limit(u: WordSum, target_degree: int) -> MzvLin:
    """Degree limit of a combination: words below the target contribute zero;
    any word above it, or divergent at it, is an error."""
    total = MzvLin.zero()
    for word, c in u.terms.items():
        info = degree(word)
        if info.degree > target_degree:
            raise ValueError(f"word {word} exceeds degree {target_degree}")
        if info.degree < target_degree:
            continue
        lim = zdegree_limit(word)
        if lim.divergent:
            raise ValueError(f"word {word} diverges at degree {target_degree}")
        total = total + lim.value.scale(c)
    return total


# ---------------------------------------------------------------------------
# the regularized word-to-MZV map

class BiMzv:
    """Polynomial in the regularization symbol T with MzvLin coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @staticmethod
    def constant(lin: MzvLin) -> "BiMzv":
        return BiMzv([lin])

    @staticmethod
    def zero() -> "BiMzv":
        return BiMzv([])

    def tcoeff(self, p: int) -> MzvLin:
        return self.coeffs[p] if p < len(self.coeffs) else MzvLin.zero()

    def tdegree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "BiMzv") -> "BiMzv":
        n = max(len(self.coeffs), len(other.coeffs))
        return BiMzv([self.tcoeff(p) + other.tcoeff(p) for p in range(n)])

    def __sub__(self, other: "BiMzv") -> "BiMzv":
        n = max(len(self.coeffs), len(other.coeffs))
        return BiMzv([self.tcoeff(p) - other.tcoeff(p) for p in range(n)])

    def scale(self, c) -> "BiMzv":
        return BiMzv([lin.scale(c) for lin in self.coeffs])

    def __mul__(self, other: "BiMzv") -> "BiMzv":
        if not self.coeffs or not other.coeffs:
            return BiMzv([])
        out = [MzvLin.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BiMzv(out)

    def values(self, cutoff: int = 200_000) -> tuple:
        return tuple(lin.value(cutoff) for lin in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, BiMzv) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for p, lin in enumerate(self.coeffs):
            if not lin:
                continue
            tpow = "" if p == 0 else ("*T" if p == 1 else f"*T^{p}")
            parts.append(f"({lin}){tpow}")
        return " + ".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def _zeta_admissible_word(word) -> MzvLin:
    """xi of the head exponents times zeta of the tail entries, for a word in
    the admissible shape."""
    head, j, tail = _p1_split(word)
    if j != 0:
        raise ValueError("word is not admissible")
    ds = tuple(d for _, d in head)
    ks = tuple(k for k, _ in tail)
    return xi_expand(ds) * MzvLin.single(ks)


def bimzv(u) -> BiMzv:
    """The regularized MZV value of a word sum: null-ideal words map to zero,
    admissible words to xi times zeta, and each separating (1;0) contributes
    one power of T through the regularization."""
    if not isinstance(u, WordSum):
        u = WordSum.single(tuple(u))
    acc: list = []
    for word, c in u.terms.items():
        for p, terms in enumerate(_regularize_word(word)):
            while len(acc) <= p:
                acc.append(MzvLin.zero())
            for w2, c2 in terms.items():
                acc[p] = acc[p] + _zeta_admissible_word(w2).scale(c * c2)
    return BiMzv(acc)


# ---------------------------------------------------------------------------
# numeric evaluation

def _log_tail_integral(j: int, a: float, k: int) -> float:
    """Integral over (a, infinity) of (ln x)^j x^(-k) dx, k >= 2."""
    if j == 0:
        return a ** (1 - k) / (k - 1)
    return (math.log(a) ** j * a ** (1 - k) + j * _log_tail_integral(j - 1, a, k)) / (k - 1)


_MZV_CACHE: dict = {}


def mzv_eval(idx, cutoff: int = 200_000):
    """(value, error estimate) for an admissible index.

    Truncated nested summation with cumulative sums up to the cutoff; the tail
    of the outermost variable is added back by fitting the inner partial sum
    with a polynomial in ln m and integrating it against m^(-k_1).  The error
    figure is an estimate (fit residual plus float accumulation), not a proof.
    """
    idx = check_admissible(idx)
    key = (idx, cutoff)
    hit = _MZV_CACHE.get(key)
    if hit is not None:
        return hit
    if not idx:
        return (1.0, 0.0)
    M = int(cutoff)
    n = np.arange(0, M + 1, dtype=float)
    n[0] = 1.0  # index 0 is unused
    inner = None  # inner[m] = partial sum of the tail indices up to m
    for k in reversed(idx[1:]):
        t = n ** float(-k)
        t[0] = 0.0
        if inner is not None:
            t[1:] *= inner[:-1]
        inner = np.cumsum(t)
    t1 = n ** float(-idx[0])
    t1[0] = 0.0
    if inner is not None:
        t1[1:] *= inner[:-1]
    total = float(np.sum(t1))
    k1 = idx[0]
    a = M + 0.5
    if inner is None:
        tail = _log_tail_integral(0, a, k1)
        err = abs(tail) * 1e-9 + 1e-14 * (abs(total) + 1.0)
    else:
        p = len(idx) - 1  # log-degree bound for the inner partial sum
        nodes = np.unique(np.geomspace(max(M // 2, 2), M, p + 3).astype(int))
        phi = inner[nodes - 1]
        u = np.log(nodes.astype(float))
        A = np.vander(u, p + 1, increasing=True)
        coeffs, *_ = np.linalg.lstsq(A, phi, rcond=None)
        resid = float(np.max(np.abs(A @ coeffs - phi)))
        tail = sum(
            float(c) * _log_tail_integral(j, a, k1) for j, c in enumerate(coeffs)
        )
        err = (
            resid * _log_tail_integral(0, a, k1)
            + abs(tail) * 1e-7
            + 1e-13 * (abs(total) + 1.0)
        )
    out = (total + tail, err)
    _MZV_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# the sum formula

def sum_formula_sides(a: int, b: int):
    """Three expressions with a common value: the alternating xi combination,
    the single zeta of weight a+b+2, and the sum of all admissible depth-(b+1)
    zetas of that weight."""
    if a < 0 or b < 0:
        raise ValueError("a, b must be >= 0")
    lhs = MzvLin.zero()
    for i in range(a + 1):
        if b == 0:
            ds = (a + 1,)
        else:
            ds = (i,) + (0,) * (b - 1) + (a - i + 1,)
        coeff = Rat((-1) ** (a - i)) / (math.factorial(i) * math.factorial(a + 1 - i))
        lhs = lhs + xi_expand(ds).scale(coeff)
    mid = MzvLin.single((a + b + 2,))
    rhs = MzvLin.zero()
    for comp in _compositions(a + b + 2 - (b + 1), b + 1):
        idx = tuple(x + 1 for x in comp)
        if idx[0] >= 2:
            rhs = rhs + MzvLin.single(idx)
    return lhs, mid, rhs


def verify_sum_formula(a: int, b: int, cutoff: int = 200_000, tol: float = 1e-4) -> dict:
    """Check the three sides symbolically where they coincide termwise and
    numerically otherwise; returns a small report dict."""
    lhs, mid, rhs = sum_formula_sides(a, b)
    symbolic = (lhs == mid, mid == rhs)
    vl, vm, vr = lhs.value(cutoff), mid.value(cutoff), rhs.value(cutoff)
    report = {
        "a": a,
        "b": b,
        "xi_side": vl,
        "zeta": vm,
        "sum_side": vr,
        "symbolic_xi": symbolic[0],
        "symbolic_sum": symbolic[1],
        "max_deviation": max(abs(vl - vm), abs(vm - vr)),
        "tolerance": tol,
    }
    report["passed"] = report["max_deviation"] <= tol
    return report
