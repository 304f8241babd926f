"""Named verification suites behind the command line's `verify` subcommand.

Every suite returns {"suite": name, "passed": bool, "cases": [...]} where each
case is {"id": ..., "passed": bool, ...extras}.  Bounds are parameters so the
acceptance tests can run the full-strength versions while the CLI defaults
stay interactive.
"""

from __future__ import annotations

from .brackets import (
    degree_probe,
    qbracket_fast,
    qbracket_float,
    quasimod_detect,
    word_log_power,
)
from .exact import QSeries, ZERO, partition_gf
from .mzv import verify_sum_formula, zdegree_limit
from .partitions import conjugate, partitions_up_to, size
from .peval import (
    eval_expword,
    eval_hook_moment,
    eval_qk,
    eval_word,
    moebius,
    moller_transform,
    qbracket_enum,
    qk_exp_combination,
    submultiset_pairs,
)
from .words import (
    MODELS,
    SEKI,
    WordSum,
    get_model,
    iota,
    iota_word_constants,
    iota_word_series,
    shuffle,
    stuffle,
    weight,
    words_up_to_weight,
)


def _suite(name: str, cases: list) -> dict:
    return {"suite": name, "passed": all(c["passed"] for c in cases), "cases": cases}


# ---------------------------------------------------------------------------

def run_double_shuffle(max_weight_sum: int = 5, order: int = 30) -> dict:
    """The shuffle and stuffle products of Bernoulli-Seki words have equal
    q-brackets: the bracket of their difference vanishes identically."""
    words = [w for w in words_up_to_weight(max_weight_sum - 1) if w]
    cases = []
    for i, u in enumerate(words):
        for v in words[i:]:
            if weight(u) + weight(v) > max_weight_sum:
                continue
            us, vs = WordSum.single(u), WordSum.single(v)
            diff = shuffle(us, vs) - stuffle(SEKI, us, vs)
            ok = qbracket_fast(SEKI, diff, order).is_zero()
            cases.append({"id": f"{u}x{v}", "passed": ok})
    return _suite("double-shuffle", cases)


# ---------------------------------------------------------------------------

def _a_coeff_table(fn, partitions) -> dict:
    """u-bracket coefficients a_lam(fn) by Moebius convolution, for every
    partition in the list (whose submultisets are again in the list)."""
    values = {lam: fn(lam) for lam in partitions}
    out = {}
    for lam in partitions:
        acc = ZERO
        for alpha, beta in submultiset_pairs(lam):
            mb = moebius(beta)
            if mb:
                acc += values[alpha] * mb
        out[lam] = acc
    return out


def run_iota(max_weight: int = 5, part_bound: int = 10, order: int = 30) -> dict:
    """Closed-form constants, generating-series extraction, coefficient
    conjugation, and q-bracket invariance all agree for the involution."""
    parts = list(partitions_up_to(part_bound))
    cases = []
    for w in words_up_to_weight(max_weight):
        by_series = dict(iota_word_series(w))
        by_constants = dict(iota_word_constants(w))
        routes_ok = by_series == by_constants
        iw = WordSum(by_series)
        ws = WordSum.single(w)
        invol_ok = iota(iw) == ws
        a_direct = _a_coeff_table(lambda lam: eval_word(SEKI, ws, lam), parts)
        a_image = _a_coeff_table(lambda lam: eval_word(SEKI, iw, lam), parts)
        conj_ok = all(a_image[lam] == a_direct[conjugate(lam)] for lam in parts)
        bracket_ok = qbracket_fast(SEKI, ws, order) == qbracket_fast(SEKI, iw, order)
        cases.append(
            {
                "id": str(w),
                "passed": routes_ok and invol_ok and conj_ok and bracket_ok,
                "routes": routes_ok,
                "involution": invol_ok,
                "conjugation": conj_ok,
                "bracket": bracket_ok,
            }
        )
    return _suite("iota", cases)


# ---------------------------------------------------------------------------

def run_oracle(max_weight: int = 4, order: int = 20, models=MODELS) -> dict:
    """Enumeration q-bracket equals the nested-sum q-bracket for every basis
    word, model by model."""
    words = words_up_to_weight(max_weight)
    partitions = list(partitions_up_to(order))
    gf = partition_gf(order)
    cases = []
    for model in models:
        model = get_model(model)
        sums = {w: [ZERO] * (order + 1) for w in words}
        for lam in partitions:
            n = size(lam)
            for w in words:
                val = eval_word(model, w, lam)
                if val != 0:
                    sums[w][n] += val
        for w in words:
            enum = QSeries(order, sums[w]).divide_by_unit(gf)
            fast = qbracket_fast(model, WordSum.single(w), order)
            cases.append({"id": f"{model.name}:{w}", "passed": enum == fast})
    return _suite("oracle", cases)


# ---------------------------------------------------------------------------

def run_bloch_okounkov(
    ks=(2, 4, 6), order: int = 30, part_bound: int = 12, pointwise_kmax: int = 6
) -> dict:
    """Shifted symmetric generators: quasimodular q-brackets for even k, and
    the exp-basis expansion agrees pointwise for all k."""
    cases = []
    for k in ks:
        series = qbracket_enum(lambda lam: eval_qk(k, lam), order)
        poly = quasimod_detect(series, k)
        cases.append({"id": f"<Q{k}> quasimodular", "passed": poly is not None,
                      "detected": None if poly is None else repr(poly)})
    parts = list(partitions_up_to(part_bound))
    for k in range(2, pointwise_kmax + 1):
        const, combo = qk_exp_combination(k)
        ok = True
        for lam in parts:
            acc = const
            for coeff, word in combo:
                acc += coeff * eval_expword("monomial", word, lam)
            if acc != eval_qk(k, lam):
                ok = False
                break
        cases.append({"id": f"Q{k} exp-expansion pointwise <= {part_bound}", "passed": ok})
    return _suite("bloch-okounkov", cases)


# ---------------------------------------------------------------------------

def run_moller(order: int = 12, part_bound: int = 12, ks=(2, 3, 4)) -> dict:
    """The character-squared average preserves q-brackets and sends the
    depth-one power words to hook-length moments."""
    cases = []
    targets = [((1, 1),), ((1, 2),), ((2, 0),)]
    for w in targets:
        fn = lambda lam: eval_word(SEKI, w, lam)
        mf = lambda lam: moller_transform(fn, lam)
        ok = qbracket_enum(mf, order) == qbracket_enum(fn, order)
        cases.append({"id": f"<M {w}> = <{w}> at order {order}", "passed": ok})
    parts = list(partitions_up_to(part_bound))
    for k in ks:
        fn = lambda lam: eval_word(SEKI, ((1, k - 1),), lam)
        ok = all(
            moller_transform(fn, lam) == eval_hook_moment(k, lam) for lam in parts
        )
        cases.append({"id": f"M(1;{k-1}) = hook moment {k} pointwise", "passed": ok})
    return _suite("moller", cases)


# ---------------------------------------------------------------------------

def run_limits(
    max_weight: int = 5,
    tol: float = 5e-2,
    samples=(0.9, 0.95, 0.99, 0.995),
    cutoff: int = 200_000,
) -> dict:
    """Numeric extrapolation of the scaled bracket near q = 1 agrees with the
    exact degree-limit MZV combination, for every word with a unique split."""
    cases = []
    for w in words_up_to_weight(max_weight):
        lim = zdegree_limit(w)
        if lim.divergent:
            continue
        expected = lim.value.value(cutoff)
        probe = degree_probe(
            lambda q: qbracket_float(WordSum.single(w), q),
            lim.degree,
            samples,
            log_power=word_log_power(w),
        )
        err = abs(probe.estimate - expected)
        cases.append(
            {
                "id": str(w),
                "passed": err <= tol,
                "probe": probe.estimate,
                "exact": expected,
                "error": err,
                "trend_flag": probe.diverging,
            }
        )
    return _suite("limits", cases)


# ---------------------------------------------------------------------------

def run_sum_formula(max_ab: int = 4, tol: float = 1e-4, cutoff: int = 200_000) -> dict:
    cases = []
    for a in range(max_ab + 1):
        for b in range(max_ab - a + 1):
            rep = verify_sum_formula(a, b, cutoff=cutoff, tol=tol)
            rep["id"] = f"a={a},b={b}"
            cases.append(rep)
    return _suite("sum-formula", cases)


# ---------------------------------------------------------------------------

def run_quasimod(pairs=((2, 0), (4, 0), (3, 1)), max_reps: int = 3, order: int = 30) -> dict:
    """Repetitions of a single even letter have quasimodular q-brackets."""
    cases = []
    for k, d in pairs:
        for reps in range(1, max_reps + 1):
            word = ((k, d),) * reps
            series = qbracket_fast(SEKI, WordSum.single(word), order)
            poly = quasimod_detect(series, (k + d) * reps)
            cases.append(
                {
                    "id": f"({k};{d})^{reps}",
                    "passed": poly is not None,
                    "detected": None if poly is None else repr(poly),
                }
            )
    return _suite("quasimod", cases)


# ---------------------------------------------------------------------------

def three_one_lift(n: int = 1) -> WordSum:
    """The alternating sum of shuffles of repeated-(2;0) basis words that
    lifts the weight-4n zeta evaluation; for n = 1 it collapses to
    4 P(3,1;0,0) + 2 P(3;1) - 2 P(3;0)."""
    total = WordSum.zero()
    for j in range(-n, n + 1):
        left = WordSum.single(((2, 0),) * (n - j))
        right = WordSum.single(((2, 0),) * (n + j))
        term = shuffle(left, right)
        total = total + (term if j % 2 == 0 else -term)
    return total


def run_three_one(order: int = 30, n: int = 1) -> dict:
    cases = []
    lift = three_one_lift(n)
    if n == 1:
        expected = (
            WordSum.single(((3, 0), (1, 0)), 4)
            + WordSum.single(((3, 1),), 2)
            + WordSum.single(((3, 0),), -2)
        )
        cases.append({"id": "shuffle construction", "passed": lift == expected,
                      "lift": repr(lift)})
    series = qbracket_fast(SEKI, lift, order)
    poly = quasimod_detect(series, 4 * n)
    cases.append(
        {
            "id": f"T({n}) quasimodular at order {order}",
            "passed": poly is not None,
            "detected": None if poly is None else repr(poly),
        }
    )
    return _suite("three-one", cases)


# ---------------------------------------------------------------------------

SUITES = {
    "double-shuffle": run_double_shuffle,
    "iota": run_iota,
    "oracle": run_oracle,
    "bloch-okounkov": run_bloch_okounkov,
    "moller": run_moller,
    "limits": run_limits,
    "sum-formula": run_sum_formula,
    "quasimod": run_quasimod,
    "three-one": run_three_one,
}


def run_suite(name: str, **kwargs) -> dict:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(
            f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}"
        ) from None
    return fn(**kwargs)
