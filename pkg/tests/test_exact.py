import pytest

from partition_mzv.exact import (
    InconsistentSystem,
    OrderMismatch,
    Poly,
    QSeries,
    Rat,
    UnderdeterminedSystem,
    bernoulli,
    bernoulli_poly_at_half,
    euler_product,
    faulhaber_poly,
    partition_counts,
    partition_gf,
    parse_rat,
    rat_str,
    shifted_power_sum_poly,
    solve_exact,
)


def bernoulli_double_sum(n):
    """Independent oracle: B_n = sum_k 1/(k+1) sum_j (-1)^j C(k,j) j^n,
    which lands on the B_1 = -1/2 convention."""
    from math import comb

    total = Rat(0)
    for k in range(n + 1):
        inner = Rat(0)
        for j in range(k + 1):
            inner += Rat((-1) ** j * comb(k, j)) * Rat(j) ** n
        total += inner / (k + 1)
    return total


def test_bernoulli_small():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Rat(-1, 2)
    assert bernoulli(2) == Rat(1, 6)
    assert bernoulli(12) == Rat(-691, 2730)


@pytest.mark.parametrize("n", range(0, 16))
def test_bernoulli_matches_double_sum(n):
    assert bernoulli(n) == bernoulli_double_sum(n)


def test_bernoulli_poly_at_half():
    assert bernoulli_poly_at_half(0) == 1
    assert bernoulli_poly_at_half(1) == 0
    assert bernoulli_poly_at_half(2) == Rat(-1, 12)
    for j in range(1, 14, 2):
        assert bernoulli_poly_at_half(j) == 0


@pytest.mark.parametrize("k", range(0, 13))
def test_faulhaber_brute_force(k):
    p = faulhaber_poly(k)
    assert p(0) == 0
    total = Rat(0)
    for n in range(1, 51):
        total += Rat(n) ** k
        assert p(n) == total


def test_faulhaber_goldens():
    assert faulhaber_poly(0) == Poly([0, 1])
    assert faulhaber_poly(1) == Poly([0, Rat(1, 2), Rat(1, 2)])
    assert faulhaber_poly(3) == Poly([0, 0, Rat(1, 4), Rat(1, 2), Rat(1, 4)])


@pytest.mark.parametrize("a", range(0, 9))
def test_shifted_power_sum_brute_force(a):
    p = shifted_power_sum_poly(a)
    assert p(0) == 0
    assert p.degree == a + 1
    assert p.leading() == Rat(1, a + 1)
    total = Rat(0)
    for n in range(1, 51):
        total += (Rat(n) - Rat(1, 2)) ** a
        assert p(n) == total


def test_shifted_power_sum_goldens():
    assert shifted_power_sum_poly(0) == Poly([0, 1])
    assert shifted_power_sum_poly(1) == Poly([0, 0, Rat(1, 2)])
    assert shifted_power_sum_poly(2) == Poly([0, Rat(-1, 12), 0, Rat(1, 3)])


def test_poly_shift_and_mul():
    p = Poly([1, 2, 3])  # 1 + 2x + 3x^2
    assert p.shift(1)(5) == p(6)
    q = Poly([0, 1]) * Poly([1, 1])
    assert q == Poly([0, 1, 1])


def test_qseries_geometric():
    n = 20
    one_minus_q = QSeries(n, [1, -1])
    geom = QSeries(n, [1] * (n + 1))
    assert one_minus_q * geom == QSeries.one(n)
    assert QSeries.one(n).divide_by_unit(one_minus_q) == geom


def test_qseries_qddq():
    n = 10
    s = QSeries(n, [1] * (n + 1))
    assert s.q_d_dq() == QSeries(n, list(range(n + 1)))


def test_qseries_divide_roundtrip():
    # pseudo-random unit with mixed-sign rational coefficients, order 30
    n = 30
    g = QSeries(n, [Rat((-1) ** i * (i * i + 3), i + 1) for i in range(n + 1)])
    f = QSeries(n, [Rat(2 * i - 7, 3) for i in range(n + 1)])
    assert (f * g).divide_by_unit(g) == f


def test_qseries_errors():
    with pytest.raises(OrderMismatch):
        QSeries.one(5) + QSeries.one(6)
    with pytest.raises(ZeroDivisionError):
        QSeries.one(5).divide_by_unit(QSeries.zero(5))


def test_qseries_eval_float():
    s = QSeries(4, [1, 1, 1, 1, 1])
    assert abs(s.eval_float(0.5) - (1 - 0.5**5) / 0.5) < 1e-12


def test_partition_gf():
    gf = partition_gf(20)
    assert gf.coeffs[0] == 1
    assert [int(c) for c in gf.coeffs[:6]] == [1, 1, 2, 3, 5, 7]
    assert gf.coeffs[20] == 627


def test_partition_counts_match_enumeration():
    from partition_mzv.partitions import partitions_of

    counts = partition_counts(20)
    for n in (0, 1, 5, 9, 20):
        assert counts[n] == sum(1 for _ in partitions_of(n))


def test_euler_product_inverts_partition_gf():
    n = 30
    assert partition_gf(n) * euler_product(n) == QSeries.one(n)


def test_rat_strings():
    assert rat_str(Rat(-1, 12)) == "-1/12"
    assert rat_str(Rat(5)) == "5"
    assert parse_rat("-1/12") == Rat(-1, 12)


def test_solve_exact():
    sol = solve_exact([[1, 1], [1, -1], [2, 0]], [3, 1, 4])
    assert sol == [Rat(2), Rat(1)]
    with pytest.raises(InconsistentSystem):
        solve_exact([[1, 0], [0, 1], [1, 1]], [1, 1, 3])
    with pytest.raises(UnderdeterminedSystem):
        solve_exact([[1, 0], [2, 0]], [1, 2])
