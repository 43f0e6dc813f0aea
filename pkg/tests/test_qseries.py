from hypothesis import given, strategies as st
import pytest

from symfermion.qseries import QSeries, euler_product, eta_series
from symfermion.scalar import mpq


def pentagonal(top: int) -> dict:
    """Coefficients of prod (1 - q^n) below q^top from generalized pentagonal numbers."""
    out = {}
    k = 0
    while True:
        added = False
        for j in ((k, -k) if k else (0,)):
            e = j * (3 * j - 1) // 2
            if e < top:
                out[e] = (-1) ** (j % 2)
                added = True
        if not added:
            return out
        k += 1


def test_euler_product_matches_pentagonal_numbers():
    s = euler_product(1, 60)
    exact = pentagonal(60)
    for n in range(60):
        assert s.coefficient(n) == exact.get(n, 0), n


def test_eta_examples():
    eta = eta_series(1, 5)
    assert eta.leading() == (mpq(1, 24), 1)
    assert eta.coefficient(mpq(1, 24) + 1) == -1
    eta2 = eta_series(2, 12)
    assert all((x - mpq(1, 12)) % 2 == 0 for x, _ in eta2.terms())
    etah = eta_series(mpq(1, 2), 6)
    assert etah.leading() == (mpq(1, 48), 1)


def test_eta_needs_positive_order():
    with pytest.raises(ValueError):
        eta_series(1, 0)


def test_coefficient_errors():
    s = QSeries.monomial(mpq(1, 48), 3, order=10)
    assert s.coefficient(mpq(1, 48)) == 3
    with pytest.raises(ValueError):
        s.coefficient(mpq(1, 5))
    with pytest.raises(ValueError):
        s.coefficient(1)
    with pytest.raises(ValueError):
        QSeries({0: 1}, 10, 1).coefficient(0)


def test_sqrt2_prefactor_normalizes():
    s = QSeries({0: mpq(3)}, 10, 1)
    sq = s * s
    assert sq.sqrt2 == 0 and sq.coefficient(0) == 18


series = st.dictionaries(st.integers(0, 60), st.integers(-5, 5), min_size=1, max_size=8)


@given(series, series, series)
def test_ring_laws(a, b, c):
    A, B, C = (QSeries(x, 96) for x in (a, b, c))
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C


@given(series, series)
def test_division_inverts_multiplication(a, b):
    A, B = QSeries(a, 200), QSeries(b, 200)
    if not B.coeffs:
        return
    assert (A * B) / B == A


def test_division_by_zero_series():
    with pytest.raises(ZeroDivisionError):
        QSeries({0: 1}, 10) / QSeries({}, 10)


def test_evaluate_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        eta_series(1, 10).evaluate(-1j)
