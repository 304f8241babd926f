import math

import pytest

from partition_mzv.brackets import (
    InsufficientOrder,
    QuasimodularPoly,
    _eulerian_numerator,
    degree_probe,
    eisenstein,
    qbracket_fast,
    qbracket_float,
    quasimod_detect,
    quasimod_monomials,
    word_log_power,
)
from partition_mzv.exact import QSeries, Rat, bernoulli
from partition_mzv.peval import PartitionFunction, qbracket_enum
from partition_mzv.words import (
    MODELS,
    SEKI,
    WordSum,
    iota,
    shuffle,
    stuffle,
    weight,
    words_up_to_weight,
)


def ws(*letters, coeff=1):
    return WordSum.single(tuple(letters), coeff)


# ---------------------------------------------------------------------------
# the nested-sum bracket

def test_fast_bracket_depth_one_seki():
    series = qbracket_fast(SEKI, ws((2, 0)), 8)
    assert [int(c) for c in series.coeffs] == [0, 1, 3, 4, 7, 6, 12, 8, 15]


def test_fast_bracket_binomial_divisor_counts():
    series = qbracket_fast("binomial", ws((1, 0)), 5)
    assert [int(c) for c in series.coeffs] == [0, 1, 2, 2, 3, 2]


def test_fast_bracket_empty_word():
    assert qbracket_fast(SEKI, WordSum.unit(), 6) == QSeries.one(6)


@pytest.mark.parametrize("model", MODELS)
def test_fast_equals_enum_spot(model):
    for w in [((2, 0), (1, 1)), ((1, 2),), ((3, 0), (1, 0))]:
        enum = qbracket_enum(PartitionFunction.word(model, w), 14)
        fast = qbracket_fast(model, ws(*w), 14)
        assert enum == fast


def test_bracket_homomorphism():
    # <sigma(u *_F v)> = <sigma(u)> <sigma(v)> exactly for the well-normalized
    # models, order 30; the monomial word product is pointwise, not harmonic
    order = 30
    for model in MODELS:
        if model.name == "monomial":
            continue
        for u, v in [(((2, 0),), ((1, 1),)), (((1, 0),), ((2, 1),)), (((2, 0),), ((2, 0),))]:
            us, vs = ws(*u), ws(*v)
            lhs = qbracket_fast(model, stuffle(model, us, vs), order)
            rhs = qbracket_fast(model, us, order) * qbracket_fast(model, vs, order)
            assert lhs == rhs


def test_iota_bracket_invariance():
    order = 30
    for w in words_up_to_weight(7):
        u = ws(*w)
        assert qbracket_fast(SEKI, u, order) == qbracket_fast(SEKI, iota(u), order)


def test_double_shuffle_vanishing_spot():
    order = 30
    for u, v in [(((2, 0),), ((3, 0),)), (((2, 0),), ((2, 0),)), (((1, 1),), ((2, 0),))]:
        us, vs = ws(*u), ws(*v)
        diff = shuffle(us, vs) - stuffle(SEKI, us, vs)
        assert qbracket_fast(SEKI, diff, order).is_zero()


def test_symmetry_relation():
    # <ms(k;d)> = d!/(k-1)! <ms(d+1;k-1)>, all weights <= 8
    order = 30
    for k in range(1, 8):
        for d in range(0, 8 - k):
            lhs = qbracket_fast(SEKI, ws((k, d)), order)
            rhs = qbracket_fast(SEKI, ws((d + 1, k - 1)), order).scale(
                Rat(math.factorial(d), math.factorial(k - 1))
            )
            assert lhs == rhs, (k, d)


# ---------------------------------------------------------------------------
# Eisenstein series

def test_eisenstein_g2():
    g2 = eisenstein(2, 8)
    assert g2.coeffs[0] == Rat(-1, 24)
    assert [int(c) for c in g2.coeffs[1:]] == [1, 3, 4, 7, 6, 12, 8, 15]


def test_eisenstein_constant_offset():
    # G_k differs from the depth-one bracket only in the constant term
    for k in (2, 4, 6):
        diff = eisenstein(k, 12) - qbracket_fast(SEKI, ws((k, 0)), 12)
        assert diff.coeffs[0] == -bernoulli(k) / (2 * math.factorial(k))
        assert all(c == 0 for c in diff.coeffs[1:])


def test_eisenstein_derivative_identity():
    # <ms(4;1)> = (2!/3!) (q d/dq) G_3 to order 30
    lhs = qbracket_fast(SEKI, ws((4, 1)), 30)
    rhs = eisenstein(3, 30).q_d_dq().scale(Rat(2, 6))
    assert lhs == rhs


def test_eisenstein_rejects_small_k():
    with pytest.raises(ValueError):
        eisenstein(1, 10)


def test_g2_plus_offset_is_depth_one_bracket():
    g2 = eisenstein(2, 20)
    b11 = qbracket_fast(SEKI, ws((1, 1)), 20)
    b20 = qbracket_fast(SEKI, ws((2, 0)), 20)
    assert b11 == b20
    assert b20 - g2 == QSeries(20, [Rat(1, 24)])


# ---------------------------------------------------------------------------
# quasimodularity detection

def test_quasimod_monomial_count():
    assert quasimod_monomials(0) == [(0, 0, 0)]
    assert set(quasimod_monomials(4)) == {(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0)}


def test_quasimod_detect_depth_two_bracket():
    series = qbracket_fast(SEKI, ws((2, 0), (2, 0)), 30)
    poly = quasimod_detect(series, 4)
    assert poly is not None
    assert poly.terms == {
        (2, 0, 0): Rat(1, 2),
        (0, 1, 0): Rat(-1, 2),
        (1, 0, 0): Rat(1, 8),
        (0, 0, 0): Rat(3, 640),
    }
    assert poly.to_qseries(30) == series
    assert poly.mixed_weight == 4


def test_quasimod_detect_g4():
    poly = quasimod_detect(eisenstein(4, 30), 4)
    assert poly == QuasimodularPoly({(0, 1, 0): 1})


def test_quasimod_detect_odd_weight_absent():
    series = qbracket_fast(SEKI, ws((3, 0)), 40)
    assert quasimod_detect(series, 8) is None


def test_quasimod_insufficient_order():
    with pytest.raises(InsufficientOrder):
        quasimod_detect(eisenstein(4, 8), 6)


def test_quasimod_three_one_lift():
    lift = ws((3, 0), (1, 0), coeff=4) + ws((3, 1), coeff=2) + ws((3, 0), coeff=-2)
    series = qbracket_fast(SEKI, lift, 30)
    poly = quasimod_detect(series, 4)
    assert poly is not None
    assert poly.to_qseries(30) == series


# ---------------------------------------------------------------------------
# floating-point brackets and the degree probe

def test_eulerian_numerators():
    assert _eulerian_numerator(1).coeffs == (Rat(0), Rat(1))
    assert _eulerian_numerator(3).coeffs == (Rat(0), Rat(1), Rat(1))
    assert _eulerian_numerator(4).coeffs == (Rat(0), Rat(1), Rat(4), Rat(1))
    for k in range(1, 8):
        assert _eulerian_numerator(k)(1) == math.factorial(k - 1)


def test_qbracket_float_matches_exact():
    for w in [((2, 0),), ((2, 0), (1, 1)), ((1, 2),)]:
        val = qbracket_float(ws(*w), 0.4)
        exact = qbracket_fast(SEKI, ws(*w), 70).eval_float(0.4)
        assert abs(val - exact) < 1e-10


def test_degree_probe_zeta2():
    probe = degree_probe(lambda q: qbracket_float(ws((2, 0)), q), 2)
    assert abs(probe.estimate - math.pi**2 / 6) < 1e-2
    assert not probe.diverging


def test_degree_probe_closed_form_power():
    # F = (1-q)^x probed at a = -x recovers the limit 1
    x = 0.5
    probe = degree_probe(lambda q: (1 - q) ** x, -x)
    assert abs(probe.estimate - 1.0) < 1e-9
    assert not probe.diverging


def test_degree_probe_log_divergence_flag():
    probe = degree_probe(lambda q: qbracket_float(ws((1, 0)), q), 1)
    assert probe.diverging


def test_word_log_power():
    assert word_log_power(((2, 0),)) == 0
    assert word_log_power(((1, 0), (1, 1))) == 1
    assert word_log_power(((1, 0),) * 5) == 3
