"""The quasi-shuffle algebra of words over letters (k; d), k >= 1, d >= 0.

A letter is a pair (k, d); a word is a tuple of letters (leftmost first); a
WordSum is a finite rational linear combination of words.  Each polynomial
model (monomial, Bernoulli-Seki, binomial, shifted binomial) induces a letter
product `diamond` via structure constants alpha, and with it a quasi-shuffle
product `stuffle` on words:

    a.w * b.v = a(w * b.v) + b(a.w * v) + (a<>b)(w * v)

The Bernoulli-Seki model additionally carries an involution `iota` (realized
two independent ways) and with it a shuffle product.  Words classify into the
admissible space, its (1;0)-regularizable extension, and the null ideal; the
regularization rewrites any word as a polynomial in (1;0) with admissible
coefficients, modulo the null ideal.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterator, NamedTuple

from .exact import Poly, Rat, ZERO, bernoulli, faulhaber_poly, format_linear, solve_exact

# ---------------------------------------------------------------------------
# letters, words, word sums

LETTER_SIZE = (1, 1)  # evaluates to |lambda| in every model
LETTER_DIV = (1, 0)   # the divergent letter; evaluates to the number of distinct parts


def check_letter(letter) -> tuple:
    k, d = letter
    k, d = int(k), int(d)
    if k < 1 or d < 0:
        raise ValueError(f"letter must have k >= 1, d >= 0: {(k, d)}")
    return (k, d)


def check_word(word) -> tuple:
    return tuple(check_letter(c) for c in word)


def weight(word) -> int:
    return sum(k + d for k, d in word)


def word_depth(word) -> int:
    return len(word)


def display_key(word):
    return (weight(word), len(word), word)


class WordSum:
    """Finite rational linear combination of words; zero terms are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for word, c in terms.items():
                c = Rat(c)
                if c != 0:
                    data[word] = c
        self.terms = data

    @staticmethod
    def single(word, coeff=1) -> "WordSum":
        return WordSum({check_word(word): Rat(coeff)})

    @staticmethod
    def unit() -> "WordSum":
        return WordSum({(): Rat(1)})

    @staticmethod
    def zero() -> "WordSum":
        return WordSum()

    def items(self):
        return sorted(self.terms.items(), key=lambda t: display_key(t[0]))

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, word):
        return self.terms.get(tuple(word), ZERO)

    def __add__(self, other: "WordSum") -> "WordSum":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return WordSum(out)

    def __sub__(self, other: "WordSum") -> "WordSum":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) - c
        return WordSum(out)

    def __neg__(self) -> "WordSum":
        return WordSum({w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "WordSum":
        c = Rat(c)
        if c == 0:
            return WordSum()
        return WordSum({w: c * cw for w, cw in self.terms.items()})

    def max_weight(self) -> int:
        return max((weight(w) for w in self.terms), default=0)

    def max_depth(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, WordSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        def body(word):
            if not word:
                return ""
            return "P(%s;%s)" % (
                ",".join(str(k) for k, _ in word),
                ",".join(str(d) for _, d in word),
            )

        return format_linear((c, body(w)) for w, c in self.items())


@lru_cache(maxsize=None)
def words_of_weight(w: int) -> tuple:
    """All words of exact weight w, in display order."""
    if w < 0:
        return ()
    if w == 0:
        return ((),)
    out = []
    for v in range(1, w + 1):
        for k in range(1, v + 1):
            first = (k, v - k)
            out.extend((first,) + rest for rest in words_of_weight(w - v))
    return tuple(sorted(out, key=display_key))


def words_up_to_weight(w_max: int) -> list:
    """All words of weight <= w_max including the empty word, in display order."""
    out = []
    for w in range(w_max + 1):
        out.extend(words_of_weight(w))
    return out


# ---------------------------------------------------------------------------
# models

class Model:
    """A family of polynomials f_k (f_k(0) = 0, deg f_k = k) indexing a basis
    of functions on partitions, together with its quasi-shuffle structure
    constants alpha(k1, k2, j)."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return f"Model({self.name})"

    def __eq__(self, other):
        return isinstance(other, Model) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    @property
    def well_normalized(self) -> bool:
        return self.name != "monomial"

    def f_poly(self, k: int) -> Poly:
        return _f_poly(self.name, k)

    def f_value(self, k: int, n: int):
        return _f_value(self.name, k, n)

    def delta_f(self, k: int, n: int):
        """f_k(n) - f_k(n-1) for n >= 1; 0 at n = 0 (since f_k(0) = 0, k >= 1)."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if n <= 0:
            return ZERO
        name = self.name
        if name == "monomial":
            return Rat(n**k - (n - 1) ** k)
        if name == "seki":
            return Rat(n ** (k - 1), math.factorial(k - 1))
        if name == "binomial":
            return Rat(math.comb(n - 1, k - 1))
        if name == "binomial-shifted":
            return Rat(math.comb(n, k - 1))
        raise ValueError(name)

    def alpha(self, k1: int, k2: int, j: int):
        if not (1 <= j <= k1 + k2 - 1):
            raise ValueError(f"j out of range 1..{k1 + k2 - 1}: {j}")
        return _alpha_vec(self.name, k1, k2).get(j, ZERO)

    def alpha_vec(self, k1: int, k2: int) -> dict:
        return _alpha_vec(self.name, k1, k2)


MONOMIAL = Model("monomial")
SEKI = Model("seki")
BINOMIAL = Model("binomial")
BINOMIAL_SHIFTED = Model("binomial-shifted")

MODELS = (MONOMIAL, SEKI, BINOMIAL, BINOMIAL_SHIFTED)

_MODEL_ALIASES = {
    "m": MONOMIAL, "monomial": MONOMIAL,
    "s": SEKI, "seki": SEKI, "bernoulli-seki": SEKI, "bernoulli_seki": SEKI,
    "b": BINOMIAL, "binomial": BINOMIAL,
    "b+": BINOMIAL_SHIFTED, "binomial-shifted": BINOMIAL_SHIFTED,
    "binomial_shifted": BINOMIAL_SHIFTED, "shifted-binomial": BINOMIAL_SHIFTED,
}


def get_model(name) -> Model:
    if isinstance(name, Model):
        return name
    try:
        return _MODEL_ALIASES[str(name).strip().lower()]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; choose from "
                         "monomial, seki, binomial, binomial-shifted") from None


@lru_cache(maxsize=None)
def _f_poly(name: str, k: int) -> Poly:
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return Poly([1])
    if name == "monomial":
        return Poly.x_power(k)
    if name == "seki":
        return faulhaber_poly(k - 1).scale(Rat(1, math.factorial(k - 1)))
    if name == "binomial":
        out = Poly([1])
        for i in range(k):
            out = out * Poly([-i, 1])
        return out.scale(Rat(1, math.factorial(k)))
    if name == "binomial-shifted":
        out = Poly([1])
        for i in range(k):
            out = out * Poly([1 - i, 1])
        out = out.scale(Rat(1, math.factorial(k)))
        if k == 1:
            out = out - Poly([1])
        return out
    raise ValueError(name)


@lru_cache(maxsize=None)
def _f_value(name: str, k: int, n: int):
    return _f_poly(name, k)(Rat(n))


def _convolved_delta(model: Model, k1: int, k2: int, n: int):
    return sum(
        (model.delta_f(k1, n1) * model.delta_f(k2, n - n1) for n1 in range(1, n)),
        ZERO,
    )


@lru_cache(maxsize=None)
def _alpha_vec(name: str, k1: int, k2: int) -> dict:
    """Structure constants: conv(delta f_k1, delta f_k2)(n) =
    delta f_{k1+k2}(n) + sum_j alpha(k1,k2,j) delta f_j(n) for all n >= 1.

    Only the well-normalized families admit such constants; the monomial
    model instead carries the value identity f_k1 f_k2 = f_{k1+k2}, i.e. all
    alpha vanish, and its word product realizes the pointwise product of
    functions rather than the harmonic one.
    """
    if k1 > k2:
        return _alpha_vec(name, k2, k1)
    K = k1 + k2
    if name in ("binomial", "monomial"):
        return {}
    if name == "seki":
        out = {}
        for j in range(1, K):
            c1 = (-1) ** k1 * math.comb(K - 1 - j, k2 - j) if k2 - j >= 0 else 0
            c2 = (-1) ** k2 * math.comb(K - 1 - j, k1 - j) if k1 - j >= 0 else 0
            val = -Rat(c1 + c2) * bernoulli(K - j) / math.factorial(K - j)
            if val != 0:
                out[j] = val
        return out
    # No closed form used for the remaining models: sample the defining
    # identity at n = 1..K-1 and solve the (triangular-free) exact system.
    model = Model(name)
    rows = []
    rhs = []
    for n in range(1, K):
        rows.append([model.delta_f(j, n) for j in range(1, K)])
        rhs.append(_convolved_delta(model, k1, k2, n) - model.delta_f(K, n))
    sol = solve_exact(rows, rhs)
    out = {j + 1: c for j, c in enumerate(sol) if c != 0}
    for n in range(K, K + 8):  # defining identity must hold beyond the samples
        lhs = _convolved_delta(model, k1, k2, n)
        rr = model.delta_f(K, n) + sum(
            (c * model.delta_f(j, n) for j, c in out.items()), ZERO
        )
        if lhs != rr:
            raise ArithmeticError(f"alpha solve failed for {name} ({k1},{k2})")
    return out


# ---------------------------------------------------------------------------
# letter product and quasi-shuffle

@lru_cache(maxsize=None)
def _diamond_k(name: str, k1: int, k2: int) -> tuple:
    out = [(k1 + k2, Rat(1))]
    out.extend(sorted(_alpha_vec(name, k1, k2).items()))
    return tuple(out)


def diamond(model, a, b) -> WordSum:
    """Product of two letters: a sum of single-letter words."""
    model = get_model(model)
    (k1, d1), (k2, d2) = check_letter(a), check_letter(b)
    return WordSum(
        {((j, d1 + d2),): c for j, c in _diamond_k(model.name, k1, k2)}
    )


_STUFFLE_MEMO: dict = {}


def _stuffle_words(name: str, w1: tuple, w2: tuple) -> dict:
    if not w1:
        return {w2: Rat(1)}
    if not w2:
        return {w1: Rat(1)}
    if w2 < w1:  # the product is commutative; canonicalize the memo key
        w1, w2 = w2, w1
    key = (name, w1, w2)
    hit = _STUFFLE_MEMO.get(key)
    if hit is not None:
        return hit
    a, w = w1[0], w1[1:]
    b, v = w2[0], w2[1:]
    out: dict = {}
    for word, c in _stuffle_words(name, w, w2).items():
        word = (a,) + word
        out[word] = out.get(word, ZERO) + c
    for word, c in _stuffle_words(name, w1, v).items():
        word = (b,) + word
        out[word] = out.get(word, ZERO) + c
    rest = _stuffle_words(name, w, v)
    for j, dc in _diamond_k(name, a[0], b[0]):
        letter = (j, a[1] + b[1])
        for word, c in rest.items():
            word2 = (letter,) + word
            out[word2] = out.get(word2, ZERO) + dc * c
    out = {word: c for word, c in out.items() if c != 0}
    _STUFFLE_MEMO[key] = out
    return out


def stuffle(model, u: WordSum, v: WordSum) -> WordSum:
    """Quasi-shuffle (harmonic/stuffle) product in the given model."""
    name = get_model(model).name
    out: dict = {}
    for w1, c1 in u.terms.items():
        for w2, c2 in v.terms.items():
            c = c1 * c2
            for word, cw in _stuffle_words(name, w1, w2).items():
                out[word] = out.get(word, ZERO) + c * cw
    return WordSum(out)


def stuffle_power(model, u: WordSum, n: int) -> WordSum:
    out = WordSum.unit()
    for _ in range(n):
        out = stuffle(model, out, u)
    return out


def pointwise(u: WordSum, v: WordSum) -> WordSum:
    """Pointwise product of functions in monomial-model coordinates.

    Monomial letters multiply by plain exponent addition, so the pointwise
    product is the alpha-free quasi-shuffle (the binomial model's product).
    """
    return stuffle(BINOMIAL, u, v)


# ---------------------------------------------------------------------------
# the involution iota of the Bernoulli-Seki model

def _compositions(total: int, parts: int, minpart: int) -> Iterator[tuple]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= minpart:
            yield (total,)
        return
    for first in range(minpart, total - minpart * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minpart):
            yield (first,) + rest


def _coeff_prefix_powers(a: tuple, target: tuple):
    """Coefficient of prod Y_l^target[l] in prod_i (Y_1+...+Y_{r+1-i})^(a_i - 1)."""
    r = len(a)
    states = {tuple([0] * r): 1}
    for i in range(1, r + 1):
        e = a[i - 1] - 1
        nvars = r + 1 - i
        factor = []
        for comp in _compositions(e, nvars, 0):
            coeff = math.factorial(e)
            for x in comp:
                coeff //= math.factorial(x)
            factor.append((comp, coeff))
        new: dict = {}
        for state, c in states.items():
            for comp, fc in factor:
                ns = list(state)
                ok = True
                for l, x in enumerate(comp):
                    ns[l] += x
                    if ns[l] > target[l]:
                        ok = False
                        break
                if ok:
                    ns = tuple(ns)
                    new[ns] = new.get(ns, 0) + c * fc
        states = new
        if not states:
            return 0
    return states.get(target, 0)


def _coeff_diff_powers(b: tuple, target: tuple):
    """Coefficient of prod X_l^target[l] in prod_i (X_{r+1-i} - X_{r+2-i})^b_i,
    where X_{r+1} is absent (the i = 1 factor is X_r^b_1).  Integer valued."""
    r = len(b)
    states = {tuple([0] * r): 1}
    for i in range(1, r + 1):
        hi = r - i      # 0-based index of X_{r+1-i}
        lo = r - i + 1  # 0-based index of X_{r+2-i}, absent for i = 1
        e = b[i - 1]
        new: dict = {}
        for state, c in states.items():
            if i == 1:
                parts = [(e, 0, 1)]
            else:
                parts = [
                    (x, e - x, math.comb(e, x) * (-1) ** (e - x)) for x in range(e + 1)
                ]
            for x_hi, x_lo, fc in parts:
                ns = list(state)
                ns[hi] += x_hi
                if ns[hi] > target[hi]:
                    continue
                if x_lo:
                    ns[lo] += x_lo
                    if ns[lo] > target[lo]:
                        continue
                ns = tuple(ns)
                new[ns] = new.get(ns, 0) + c * fc
        states = new
        if not states:
            return 0
    return states.get(target, 0)


DEFAULT_IOTA_DEPTH_CAP = 8


def _iota_candidates(word):
    r = len(word)
    ks = tuple(k for k, _ in word)
    ds = tuple(d for _, d in word)
    return r, ks, ds, sum(ks), sum(ds)


@lru_cache(maxsize=None)
def iota_word_series(word) -> tuple:
    """iota of a single Bernoulli-Seki word via generating-series coefficient
    extraction; returns ((word, coeff), ...)."""
    r, ks, ds, wk, wd = _iota_candidates(word)
    if r == 0:
        return (((), Rat(1)),)
    if r > DEFAULT_IOTA_DEPTH_CAP:
        raise ValueError(f"iota depth {r} exceeds cap {DEFAULT_IOTA_DEPTH_CAP}")
    dfact = 1
    for d in ds:
        dfact *= math.factorial(d)
    target_y = ds
    target_x = tuple(k - 1 for k in ks)
    y_parts = []
    for a in _compositions(wd + r, r, 1):
        cy = _coeff_prefix_powers(a, target_y)
        if cy:
            y_parts.append((a, cy))
    x_parts = []
    for b in _compositions(wk - r, r, 0):
        cx = _coeff_diff_powers(b, target_x)
        if cx:
            bfact = 1
            for x in b:
                bfact *= math.factorial(x)
            x_parts.append((b, Rat(cx, bfact)))
    out = {}
    for a, cy in y_parts:
        for b, cx in x_parts:
            new_word = tuple(zip(a, b))
            c = dfact * cy * cx
            out[new_word] = out.get(new_word, ZERO) + c
    return tuple(sorted(((w, c) for w, c in out.items() if c != 0),
                        key=lambda t: display_key(t[0])))


def _signed_binom(n: int, k: int) -> int:
    # Index bookkeeping for the closed-form constants: out-of-range choices
    # contribute nothing, and an empty choice is 1 even from a negative pool.
    if k < 0:
        return 0
    if n < 0:
        return 1 if k == 0 else 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def iota_word_constants(word) -> tuple:
    """iota of a single Bernoulli-Seki word via the closed-form constants;
    returns ((word, coeff), ...).  Independent of iota_word_series."""
    r, ks, ds, wk, wd = _iota_candidates(word)
    if r == 0:
        return (((), Rat(1)),)
    sk = [sum(ks[:j]) for j in range(r + 1)]          # sk[j]  = k_1+...+k_j
    sd = [sum(ds[:j]) for j in range(r + 1)]
    out = {}
    for a in _compositions(wd + r, r, 1):
        sa_top = [sum(a[r - j + 1:]) for j in range(r + 1)]   # s^j(a)
        for b in _compositions(wk - r, r, 0):
            sb = [sum(b[:j]) for j in range(r + 1)]
            sk_top = [sum(ks[r - j + 1:]) for j in range(r + 1)]
            c = Rat((-1) ** sum(b))
            for j in range(1, r + 1):
                c *= _signed_binom(sd[j] - sa_top[j] + j - 1, a[r - j] - 1)
                c *= _signed_binom(ks[r - j] - 1, sb[j] - sk_top[j] + j - 1)
                c *= Rat(math.factorial(a[j - 1] - 1), math.factorial(ks[j - 1] - 1))
                c *= (-1) ** (sk[j] + sum(b[r - j + 1:]) + j)
                if c == 0:
                    break
            if c != 0:
                new_word = tuple(zip(a, b))
                out[new_word] = out.get(new_word, ZERO) + c
    return tuple(sorted(((w, c) for w, c in out.items() if c != 0),
                        key=lambda t: display_key(t[0])))


def iota(u: WordSum, route: str = "series") -> WordSum:
    """The conjugation involution on Bernoulli-Seki word sums."""
    per_word = iota_word_series if route == "series" else iota_word_constants
    out: dict = {}
    for word, c in u.terms.items():
        for w2, c2 in per_word(word):
            out[w2] = out.get(w2, ZERO) + c * c2
    return WordSum(out)


def shuffle(u: WordSum, v: WordSum) -> WordSum:
    """Shuffle product on Bernoulli-Seki word sums: iota(iota(u) * iota(v))."""
    return iota(stuffle(SEKI, iota(u), iota(v)))


# ---------------------------------------------------------------------------
# derivation

def derive(model, u: WordSum) -> WordSum:
    """Word-level image of the derivation f |-> f*|.| - (f stuffle |.|).

    The q-bracket of the result is q d/dq of the q-bracket of the input.
    """
    model = get_model(model)
    size_ws = WordSum.single((LETTER_SIZE,))
    mono = model_convert(model, MONOMIAL, u)
    pw = pointwise(mono, size_ws)
    term1 = model_convert(MONOMIAL, model, pw)
    term2 = stuffle(model, u, size_ws)
    return term1 - term2


# ---------------------------------------------------------------------------
# classification and regularization

class Classification(NamedTuple):
    kind: str          # "P0" (admissible), "P1" (regularizable), "N" (null ideal)
    j: int | None      # number of separating (1;0) letters; None for "N"


def classify(word) -> Classification:
    """Decide the shape v_{d_1}..v_{d_m} (1;0)^j z_{k_1}..z_{k_r}.

    A word fails (lands in the null ideal) iff it has a letter with k >= 2 and
    d >= 1, or a letter (1; d>=1) to the right of a letter with k >= 2.
    """
    word = tuple(word)
    last_d = 0
    for i, (k, d) in enumerate(word, start=1):
        if d >= 1:
            if k >= 2:
                return Classification("N", None)
            last_d = i
    for k, _ in word[:last_d]:
        if k >= 2:
            return Classification("N", None)
    j = 0
    for k, d in word[last_d:]:
        if (k, d) == LETTER_DIV:
            j += 1
        else:
            break
    rest = word[last_d + j:]
    # everything after the run is the z-part; it must open with k >= 2
    if rest and rest[0][0] < 2:
        # the run above was maximal, so this cannot happen
        raise AssertionError("unreachable")
    return Classification("P0" if j == 0 else "P1", j)


def _p1_split(word):
    word = tuple(word)
    cls = classify(word)
    if cls.kind == "N":
        raise ValueError("word lies in the null ideal")
    last_d = 0
    for i, (k, d) in enumerate(word, start=1):
        if d >= 1:
            last_d = i
    u = word[:last_d]
    j = cls.j
    v = word[last_d + j:]
    return u, j, v


_REG_MEMO: dict = {}


def _regularize_word(word) -> tuple:
    """Regularization of a single word: tuple of dicts (by power of (1;0)),
    each a sum of admissible words; terms in the null ideal are dropped."""
    word = tuple(word)
    hit = _REG_MEMO.get(word)
    if hit is not None:
        return hit
    cls = classify(word)
    if cls.kind == "N":
        out = ()
    elif cls.j == 0:
        out = ({word: Rat(1)},)
    else:
        u, j, v = _p1_split(word)
        wprime = u + (LETTER_DIV,) * (j - 1) + v
        product = _stuffle_words("binomial", wprime, (LETTER_DIV,))
        if product.get(word) != j:
            raise AssertionError("expected multiplicity j in the insertion product")
        inv_j = Rat(1, j)
        acc: list = []

        def add(power: int, terms, scalar):
            while len(acc) <= power:
                acc.append({})
            bucket = acc[power]
            for w2, c2 in terms.items():
                bucket[w2] = bucket.get(w2, ZERO) + scalar * c2

        for p, terms in enumerate(_regularize_word(wprime)):
            add(p + 1, terms, inv_j)
        for other, c in product.items():
            if other == word:
                continue
            for p, terms in enumerate(_regularize_word(other)):
                add(p, terms, -inv_j * c)
        out = tuple({w2: c2 for w2, c2 in bucket.items() if c2 != 0} for bucket in acc)
        while out and not out[-1]:
            out = out[:-1]
    _REG_MEMO[word] = out
    return out


def regularize(u: WordSum) -> list:
    """Rewrite u as sum_j w_j * (1;0)^(*j) modulo the null ideal, with every
    w_j supported on admissible words.  Returns [w_0, w_1, ...] as WordSums."""
    acc: list = []
    for word, c in u.terms.items():
        for p, terms in enumerate(_regularize_word(word)):
            while len(acc) <= p:
                acc.append({})
            bucket = acc[p]
            for w2, c2 in terms.items():
                bucket[w2] = bucket.get(w2, ZERO) + c * c2
    out = [WordSum(bucket) for bucket in acc]
    while out and not out[-1]:
        out.pop()
    return out


def regularization_defect(u: WordSum) -> WordSum:
    """sum_j w_j * (1;0)^(*j) - u; every term must lie in the null ideal."""
    parts = regularize(u)
    recon = WordSum.zero()
    div = WordSum.single((LETTER_DIV,))
    for p, ws in enumerate(parts):
        recon = recon + stuffle(BINOMIAL, ws, stuffle_power(BINOMIAL, div, p))
    return recon - u


# ---------------------------------------------------------------------------
# model conversion

@lru_cache(maxsize=None)
def _f_basis_expansion(src: str, dst: str, k: int) -> tuple:
    """Coefficients c_j with f_k^src = sum_j c_j f_j^dst (triangular)."""
    poly = _f_poly(src, k)
    return _expand_in_f_basis(dst, poly)


def _expand_in_f_basis(dst: str, poly: Poly) -> tuple:
    if not poly.is_zero() and poly.coeffs[0] != 0:
        raise ValueError("polynomial must vanish at 0")
    out = []
    work = poly
    while not work.is_zero():
        deg = work.degree
        base = _f_poly(dst, deg)
        c = work.leading() / base.leading()
        out.append((deg, c))
        work = work - base.scale(c)
        if not work.is_zero() and work.degree >= deg:
            raise AssertionError("basis reduction failed to decrease degree")
    return tuple(out)


def model_convert(src, dst, u: WordSum) -> WordSum:
    """Rewrite coordinates so the represented function on partitions is
    unchanged: substitute each f_k^src by its expansion in the f^dst basis."""
    src, dst = get_model(src), get_model(dst)
    if src == dst:
        return u
    out: dict = {}
    for word, c in u.terms.items():
        options = []
        for k, d in word:
            options.append(
                [((j, d), cj) for j, cj in _f_basis_expansion(src.name, dst.name, k)]
            )
        for combo in itertools.product(*options):
            new_word = tuple(letter for letter, _ in combo)
            cc = c
            for _, cj in combo:
                cc = cc * cj
            out[new_word] = out.get(new_word, ZERO) + cc
    return WordSum(out)


# ---------------------------------------------------------------------------
# exp-basis (weakly decreasing sums) -> strict basis

def _block_decompositions(r: int) -> Iterator[tuple]:
    """All ways to cut positions 0..r-1 into consecutive blocks."""
    if r == 0:
        yield ()
        return
    for cuts in itertools.product((False, True), repeat=r - 1):
        blocks = []
        start = 0
        for i, cut in enumerate(cuts, start=1):
            if cut:
                blocks.append((start, i))
                start = i
        blocks.append((start, r))
        yield tuple(blocks)


def exp_to_strict(model, word) -> WordSum:
    """Express a weakly-decreasing-sum basis element as a strict-basis WordSum.

    Positions sharing a part value merge: their f-factors multiply (re-expanded
    in the model's f-basis), their d-exponents add, and each merged block of
    size s carries a 1/s! symmetry factor.
    """
    model = get_model(model)
    word = check_word(word)
    r = len(word)
    out: dict = {}
    for blocks in _block_decompositions(r):
        sym = Rat(1)
        options = []
        for start, end in blocks:
            s = end - start
            sym = sym / math.factorial(s)
            dd = sum(word[i][1] for i in range(start, end))
            poly = Poly([1])
            for i in range(start, end):
                poly = poly * model.f_poly(word[i][0])
            options.append([((j, dd), cj) for j, cj in _expand_in_f_basis(model.name, poly)])
        for combo in itertools.product(*options):
            new_word = tuple(letter for letter, _ in combo)
            cc = sym
            for _, cj in combo:
                cc = cc * cj
            out[new_word] = out.get(new_word, ZERO) + cc
    return WordSum(out)


# ---------------------------------------------------------------------------
# canonical strict-basis form of a raw polynomial in part values and counts

def canonicalize_psi(monomials: dict) -> WordSum:
    """Canonical monomial-model WordSum for sum_{m_1 > ... > m_n > 0}
    p(m_1..m_n, r_{m_1}..r_{m_n}).

    `monomials` maps ((x-exponents), (y-exponents)) to a coefficient; x_i is
    the part value m_i and y_i its count.  Positions whose count never occurs
    (y-exponent 0) are summed out between their neighbours with power-sum
    polynomials, which lowers the depth; the result is the unique strict-basis
    representation.  The leading position must involve its count.
    """
    out: dict = {}

    def emit(alphas, betas, coeff):
        word = tuple((b, a) for a, b in zip(alphas, betas))
        out[word] = out.get(word, ZERO) + coeff

    def reduce(alphas, betas, coeff):
        if coeff == 0:
            return
        n = len(alphas)
        pos = next((i for i in range(n - 1, -1, -1) if betas[i] == 0), None)
        if pos is None:
            emit(alphas, betas, coeff)
            return
        if pos == 0:
            raise ValueError(
                "sum over the outermost part value diverges: its count must appear"
            )
        fb = faulhaber_poly(alphas[pos])
        upper = fb.shift(-1)  # sum_{m < M} m^a as a polynomial in M
        rest_a = alphas[:pos] + alphas[pos + 1:]
        rest_b = betas[:pos] + betas[pos + 1:]
        for e, ce in enumerate(upper.coeffs):
            if ce == 0:
                continue
            na = list(rest_a)
            na[pos - 1] += e
            reduce(tuple(na), rest_b, coeff * ce)
        if pos < n - 1:
            for e, ce in enumerate(fb.coeffs):
                if ce == 0:
                    continue
                na = list(rest_a)
                na[pos] += e  # index pos now names the old pos+1 position
                reduce(tuple(na), rest_b, -coeff * ce)

    for (alphas, betas), coeff in monomials.items():
        alphas = tuple(int(a) for a in alphas)
        betas = tuple(int(b) for b in betas)
        if len(alphas) != len(betas):
            raise ValueError("x- and y-exponent tuples must have equal length")
        reduce(alphas, betas, Rat(coeff))

    return WordSum(out)
