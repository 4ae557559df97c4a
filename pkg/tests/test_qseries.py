import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thetaquad import qseries as qs
from thetaquad.qseries import QSeries, SeriesOverflowError, TruncationError

coeff_lists = st.lists(st.integers(-1000, 1000), min_size=1, max_size=40)


def series(values):
    return QSeries(values)


def test_phi_small():
    assert qs.phi_series(1, 5).tolist() == [1, 2, 0, 0, 2, 0]
    assert qs.phi_series(2, 9).tolist() == [1, 0, 2, 0, 0, 0, 0, 0, 2, 0]
    assert qs.phi_series(1, 16)[16] == 2
    assert qs.phi_series(7, 0).tolist() == [1]


def test_psi_small():
    assert np.flatnonzero(qs.psi_series(1, 10).coeffs).tolist() == [0, 1, 3, 6, 10]
    assert np.flatnonzero(qs.psi_series(3, 9).coeffs).tolist() == [0, 3, 9]
    assert qs.psi_series(1, 0).tolist() == [1]


@pytest.mark.parametrize("bad", [0, -3])
def test_theta_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        qs.phi_series(bad, 4)
    with pytest.raises(ValueError):
        qs.psi_series(bad, 4)


@given(st.integers(1, 12), st.integers(0, 400))
def test_theta_coefficient_ranges(a, trunc):
    phi = qs.phi_series(a, trunc).coeffs
    psi = qs.psi_series(a, trunc).coeffs
    assert set(np.unique(phi)) <= {0, 1, 2}
    assert set(np.unique(psi)) <= {0, 1}
    assert phi[0] == 1 and psi[0] == 1
    assert phi.size == psi.size == trunc + 1


def test_mul_psi_squared():
    psi = qs.psi_series(1, 4)
    assert (psi * psi).tolist() == [1, 2, 1, 2, 2]


def test_mul_identity_and_eq_1_5_shape():
    s = QSeries([3, -1, 4, 1, 5])
    assert qs.mul(s, qs.one(4)) == s
    lhs = qs.psi_series(1, 200) ** 2
    rhs = qs.phi_series(1, 200) * qs.psi_series(2, 200)
    assert qs.series_equal(lhs, rhs)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_mul_commutative_associative(a, b, c):
    s, t, u = series(a), series(b), series(c)
    assert s * t == t * s
    assert (s * t) * u == s * (t * u)
    assert (s * t).trunc == min(s.trunc, t.trunc)


@given(coeff_lists, coeff_lists)
def test_mul_matches_naive_convolution(a, b):
    T = min(len(a), len(b)) - 1
    expected = [sum(a[j] * b[i - j] for j in range(i + 1)) for i in range(T + 1)]
    assert (series(a) * series(b)).tolist() == expected


def test_add_sub_scale():
    psi = qs.psi_series(1, 3)
    assert qs.scale(psi, 2).tolist() == [2, 2, 0, 2]
    s = QSeries([5, -2, 7])
    assert qs.add(s, qs.zero(2)) == s
    assert qs.sub(s, s).tolist() == [0, 0, 0]
    assert (s + QSeries([1, 1, 1, 1, 1])).trunc == 2


def test_shift():
    s = qs.shift(QSeries([1, 2]), 1)
    assert s.tolist() == [0, 1, 2]
    t = QSeries([4, 5, 6])
    assert qs.shift(t, 0) == t
    with pytest.raises(ValueError):
        qs.shift(t, -1)


def test_shift_builds_two_term_dissection_of_phi():
    T = 300
    rhs = qs.phi_series(4, T) + 2 * qs.shift(qs.psi_series(8, T), 1)
    assert qs.series_equal(qs.phi_series(1, T), rhs, T)


def test_dissect_examples():
    assert qs.dissect(qs.phi_series(1, 10), 0, 2)[2] == 2
    s = QSeries([1, 2, 3, 4])
    assert qs.dissect(s, 0, 1) == s
    assert qs.dissect(QSeries(list(range(11))), 2, 3).tolist() == [2, 5, 8]
    with pytest.raises(ValueError):
        qs.dissect(s, 3, 3)


@given(coeff_lists, st.integers(1, 7))
def test_dissection_reassembles(values, m):
    s = series(values)
    total = qs.zero(s.trunc)
    for r in range(min(m, s.trunc + 1)):
        part = qs.shift(qs.substitute(qs.dissect(s, r, m), m), r)
        total = total + QSeries(part.coeffs, s.trunc)
    assert total == s


@given(coeff_lists, st.integers(1, 5), st.integers(0, 12))
def test_progression(values, m, r):
    s = series(values)
    if r > s.trunc:
        with pytest.raises(TruncationError):
            qs.progression(s, m, r)
        return
    p = qs.progression(s, m, r)
    assert p.tolist() == [values[m * n + r] for n in range(p.trunc + 1)]


def test_series_equal_reports_first_mismatch():
    T = 50
    lhs = qs.psi_series(1, T) ** 2
    rhs = qs.phi_series(1, T) * qs.psi_series(2, T) + qs.monomial(1, T)
    cmp = qs.series_equal(lhs, rhs)
    assert not cmp
    assert (cmp.mismatch.index, cmp.mismatch.left, cmp.mismatch.right) == (1, 2, 3)
    with pytest.raises(TruncationError):
        qs.series_equal(lhs, rhs, T + 1)


def test_getitem_outside_range():
    with pytest.raises(TruncationError):
        qs.phi_series(1, 3)[4]


def test_overflow_is_an_error():
    big = QSeries([2**62, 2**62])
    with pytest.raises(SeriesOverflowError) as info:
        big + big
    assert info.value.index == 0
    with pytest.raises(SeriesOverflowError):
        qs.scale(big, 4)
    with pytest.raises(SeriesOverflowError):
        big * big
    with pytest.raises(SeriesOverflowError):
        QSeries([2**64])


def test_values_are_immutable():
    s = qs.phi_series(1, 5)
    with pytest.raises(ValueError):
        s.coeffs[0] = 7


@settings(max_examples=30)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 300))
def test_theta_products_count_two_squares(a, b, n):
    # direct count of a x^2 + b y^2 = n
    direct = sum(
        1
        for x in range(-20, 21)
        for y in range(-20, 21)
        if a * x * x + b * y * y == n
    )
    prod = qs.phi_series(a, 300) * qs.phi_series(b, 300)
    assert prod[n] == direct
