import math

import pytest

from partition_mzv.exact import QSeries, Rat, euler_product, partition_gf
from partition_mzv.partitions import conjugate, depth, partitions_of, partitions_up_to, size
from partition_mzv.peval import (
    PartitionFunction,
    beta_constant,
    convolve,
    eval_armleg,
    eval_expword,
    eval_hook_moment,
    eval_qk,
    eval_qk_via_words,
    eval_word,
    moebius,
    moller_transform,
    omega_conj,
    qbracket_enum,
    submultiset_pairs,
    ubracket_coeff,
    ubracket_coeff_word,
)
from partition_mzv.words import BINOMIAL, MODELS, MONOMIAL, SEKI, WordSum, stuffle


def ws(*letters, coeff=1):
    return WordSum.single(tuple(letters), coeff)


# ---------------------------------------------------------------------------
# evaluation of words

def test_eval_word_size_letter():
    for model in MODELS:
        for lam in partitions_up_to(9):
            assert eval_word(model, ((1, 1),), lam) == size(lam)


def test_eval_word_depth_letter():
    for model in (MONOMIAL, SEKI):
        for lam in partitions_up_to(9):
            assert eval_word(model, ((1, 0),), lam) == depth(lam)


def test_eval_word_hand_example():
    # (2,1;0,0) on (2,2,1) in the monomial model: f2(2) f1(1) with 2 > 1
    assert eval_word(MONOMIAL, ((2, 0), (1, 0)), (2, 2, 1)) == 4


def test_eval_word_empty():
    for lam in partitions_up_to(5):
        assert eval_word(SEKI, (), lam) == 1


def test_eval_expword_weak_inequalities():
    # depth-2 all-ones exp word counts weakly decreasing pairs with symmetry factor
    lam = (3, 2, 2)
    val = eval_expword(MONOMIAL, ((1, 0), (1, 0)), lam)
    strict = eval_word(MONOMIAL, ((1, 0), (1, 0)), lam)
    diag = sum(Rat(r) ** 2 for r in (1, 2)) / 2
    assert val == strict + diag


# ---------------------------------------------------------------------------
# shifted symmetric generators

def test_qk_beta_constants():
    assert beta_constant(2) == Rat(-1, 24)
    for k in range(2, 8):
        assert eval_qk(k, ()) == beta_constant(k)


def test_q2_is_size_minus_constant():
    for lam in partitions_up_to(10):
        assert eval_qk(2, lam) == size(lam) - Rat(1, 24)


def test_qk_rows_beyond_length_vanish():
    # extending the sum over longer row indices must not change anything
    lam = (3, 1)
    half = Rat(1, 2)
    for k in range(2, 7):
        padded = beta_constant(k)
        scale = Rat(1, math.factorial(k - 1))
        for i in range(1, 40):
            part = lam[i - 1] if i <= len(lam) else 0
            padded += scale * ((part - i + half) ** (k - 1) - (-i + half) ** (k - 1))
        assert padded == eval_qk(k, lam)


def test_qk_exp_expansion_pointwise():
    for k in range(2, 7):
        for lam in partitions_up_to(12):
            assert eval_qk(k, lam) == eval_qk_via_words(k, lam)


# ---------------------------------------------------------------------------
# arm-leg and hook moments

def test_armleg_cell_count():
    for lam in partitions_up_to(8):
        assert eval_armleg(0, 0, lam) == size(lam)


def test_armleg_hand_example():
    assert eval_armleg(1, 0, (2,)) == 2


def test_armleg_conjugation_swap():
    for a in range(4):
        for b in range(4):
            for lam in partitions_up_to(10):
                assert eval_armleg(a, b, lam) == eval_armleg(b, a, conjugate(lam))


def test_hook_moments():
    for lam in partitions_up_to(10):
        assert eval_hook_moment(2, lam) == size(lam)
        for k in (2, 3, 4):
            assert eval_hook_moment(k, lam) == eval_hook_moment(k, conjugate(lam))
    assert eval_hook_moment(3, (2, 1)) == 5


# ---------------------------------------------------------------------------
# Moebius, convolution, u-bracket coefficients

def test_moebius():
    assert moebius((3, 1)) == 1
    assert moebius((2, 2)) == 0
    assert moebius(()) == 1
    assert moebius((5, 3, 1)) == -1


def test_moebius_inversion():
    one = lambda lam: Rat(1)
    for lam in partitions_up_to(10):
        expect = 1 if not lam else 0
        assert convolve(moebius, one, lam) == expect


def test_submultiset_pairs():
    pairs = submultiset_pairs((2, 1, 1))
    assert len(pairs) == 6  # (r+1) over multiplicities: 2 * 3
    for alpha, beta in pairs:
        assert sorted(alpha + beta, reverse=True) == [2, 1, 1]


def test_omega_conj():
    f = lambda lam: Rat(len(lam))
    # conjugate of (3,1) is (2,1,1), of length 3
    assert omega_conj(f, (3, 1)) == 3
    for lam in partitions_up_to(8):
        assert omega_conj(f, lam) == len(conjugate(lam))


def test_ubracket_constant_function():
    one = lambda lam: Rat(1)
    for lam in partitions_up_to(8):
        assert ubracket_coeff(one, lam) == (1 if not lam else 0)


def test_ubracket_closed_form_matches_enumeration():
    for model in MODELS:
        for w in [((2, 0),), ((1, 1), (1, 0)), ((2, 1), (1, 0))]:
            fn = lambda lam: eval_word(model, w, lam)
            for lam in partitions_up_to(10):
                assert ubracket_coeff(fn, lam) == ubracket_coeff_word(model, w, lam)


def test_ubracket_binomial_depth_one_support():
    # binomial depth-1 coefficients live on single-part-value shapes only
    fn = lambda lam: eval_word(BINOMIAL, ((3, 0),), lam)
    for lam in partitions_up_to(10):
        a = ubracket_coeff(fn, lam)
        if depth(lam) != 1:
            assert a == 0
        else:
            assert a == Rat(math.comb(len(lam) - 1, 2))


def test_iota_conjugates_coefficients():
    from partition_mzv.words import iota

    w = ws((2, 0), (1, 1))
    iw = iota(w)
    f = lambda lam: eval_word(SEKI, w, lam)
    g = lambda lam: eval_word(SEKI, iw, lam)
    for lam in partitions_up_to(10):
        assert ubracket_coeff(g, lam) == ubracket_coeff(f, conjugate(lam))


# ---------------------------------------------------------------------------
# products as convolutions

def test_harmonic_product_pointwise():
    for model in (SEKI, BINOMIAL):
        u, v = ws((2, 0)), ws((1, 1))
        prod = stuffle(model, u, v)
        f = lambda lam: eval_word(model, u, lam)
        g = lambda lam: eval_word(model, v, lam)
        fg = lambda lam: convolve(f, g, lam)
        for lam in partitions_up_to(10):
            assert eval_word(model, prod, lam) == convolve(fg, moebius, lam)


def test_pointwise_product_in_monomial_model():
    u, v = ws((2, 0)), ws((1, 1), (1, 0))
    prod = stuffle(BINOMIAL, u, v)
    for lam in partitions_up_to(10):
        assert eval_word(MONOMIAL, prod, lam) == eval_word(MONOMIAL, u, lam) * eval_word(
            MONOMIAL, v, lam
        )


# ---------------------------------------------------------------------------
# the enumeration q-bracket

def test_qbracket_enum_size():
    series = qbracket_enum(lambda lam: Rat(size(lam)), 8)
    assert [int(c) for c in series.coeffs] == [0, 1, 3, 4, 7, 6, 12, 8, 15]


def test_qbracket_enum_depth():
    series = qbracket_enum(lambda lam: Rat(depth(lam)), 10)
    assert series == QSeries(10, [0] + [1] * 10)  # q/(1-q)


def test_qbracket_enum_moebius():
    series = qbracket_enum(moebius, 12)
    ep = euler_product(12)
    assert series == ep * ep


def test_qbracket_enum_binomial_series():
    # 1 + sum over distinct parts of (-1)^m C(x, m) brackets to (1-q)^x
    x = Rat(1, 2)

    def binom(x, m):
        out = Rat(1)
        for i in range(m):
            out = out * (x - i) / (i + 1)
        return out

    def fn(lam):
        return Rat(1) + sum(
            ((-1) ** m * binom(x, m) for m in set(lam)), Rat(0)
        )

    series = qbracket_enum(fn, 10)
    expect = QSeries(10, [(-1) ** n * binom(x, n) for n in range(11)])
    assert series == expect


# ---------------------------------------------------------------------------
# the Moller transform

def test_moller_fixes_size_polynomials():
    fn = lambda lam: Rat(size(lam)) ** 2 + 3 * size(lam)
    for lam in partitions_up_to(10):
        assert moller_transform(fn, lam) == fn(lam)


def test_moller_hook_moments():
    for k in (2, 3, 4):
        fn = lambda lam: eval_word(SEKI, ((1, k - 1),), lam)
        for lam in partitions_up_to(12):
            assert moller_transform(fn, lam) == eval_hook_moment(k, lam)


def test_moller_preserves_bracket():
    fn = PartitionFunction.word(SEKI, ((2, 0),))
    mf = lambda lam: moller_transform(fn, lam)
    assert qbracket_enum(mf, 12) == qbracket_enum(fn, 12)


# ---------------------------------------------------------------------------
# the PartitionFunction wrapper

def test_partition_function_kinds():
    lam = (3, 2, 2, 1)
    assert PartitionFunction.word(SEKI, ((1, 1),))(lam) == size(lam)
    assert PartitionFunction.shifted_symmetric_q(2)(lam) == size(lam) - Rat(1, 24)
    assert PartitionFunction.armleg(0, 0)(lam) == size(lam)
    assert PartitionFunction.hook_moment(2)(lam) == size(lam)
    assert PartitionFunction.moebius_fn()(lam) == 0
    assert PartitionFunction.expword(MONOMIAL, ((1, 1),))(lam) == size(lam)
    assert PartitionFunction.custom(lambda l: Rat(len(l)))(lam) == 4
    assert PartitionFunction.word(SEKI, ((1, 1),)).moller()(lam) == size(lam)
