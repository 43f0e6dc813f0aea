import pytest

from symfermion.characters import (
    MODULES,
    character_series,
    enumerate_vs_character,
    modular_report,
    modular_residual,
    phi_series,
    t_transform_checks,
    theta_trace_series,
)
from symfermion.scalar import mpq

TAUS = (1j, 0.2 + 1.3j, -0.4 + 0.9j)


def test_phi_leading_terms():
    assert phi_series(1, 3).leading() == (mpq(-1, 48), 1)
    assert phi_series(2, 3).leading() == (mpq(-1, 48), 1)
    p3 = phi_series(3, 3)
    assert p3.sqrt2 == 1 and p3.leading() == (mpq(1, 24), 1)
    half_sq = (p3 * p3).scale(mpq(1, 2))
    assert half_sq.sqrt2 == 0 and half_sq.leading() == (mpq(1, 12), 1)
    with pytest.raises(ValueError):
        phi_series(4, 3)


def test_character_examples():
    assert character_series("SF+", 1, 3).coefficient(mpq(1, 12)) == 1
    assert character_series("SF(theta)+", 1, 3).leading()[0] == mpq(-1, 24)
    assert character_series("SF-", 1, 3).coefficient(mpq(1, 12) + 1) == 2
    with pytest.raises(ValueError):
        character_series("SF", 1, 3)


@pytest.mark.parametrize("d", [1, 2])
def test_theta_traces(d):
    assert theta_trace_series("untwisted", d, 10) == character_series("SF+", d, 10) - character_series("SF-", d, 10)
    assert theta_trace_series("twisted", d, 10) == (
        character_series("SF(theta)+", d, 10) - character_series("SF(theta)-", d, 10)
    )
    assert theta_trace_series("untwisted", 1, 3).coefficient(mpq(1, 12) + 1) == -2


@pytest.mark.parametrize("module", MODULES)
@pytest.mark.parametrize("d", [1, 2, 3])
def test_enumeration_matches_characters(module, d):
    rep = enumerate_vs_character(module, d, 20)
    assert rep["ok"], [r for r in rep["rows"] if not r[3]]


@pytest.mark.parametrize("module", MODULES)
@pytest.mark.parametrize("d", [1, 2])
def test_exponent_lattice(module, d):
    chi = character_series(module, d, 12)
    lead = chi.leading()[0]
    assert all((x - lead).denominator == 1 for x, _ in chi.terms())


@pytest.mark.parametrize("d", [1, 2, 3])
def test_t_laws_exact(d):
    assert all(t_transform_checks(d).values())


def test_t_law_detects_wrong_phase():
    from symfermion.characters import _turn_equal

    chi = character_series("SF(theta)+", 1, 20)
    assert not _turn_equal(chi, chi, mpq(1, 24))


@pytest.mark.parametrize("d", [1, 2])
def test_s_laws_numeric(d):
    for row in modular_report(d, taus=TAUS):
        assert row["residual"] < 1e-6, row


def test_eta_s_law_tight():
    for tau in TAUS:
        assert modular_residual("S", "eta", tau) < 1e-9
        assert modular_residual("S", "phi1", tau) < 1e-9


def test_t_residual_numeric():
    for item in ("eta", "phi1", "SF+", "SF(theta)-"):
        assert modular_residual("T", item, 0.1 + 1.1j, d=1) < 1e-9


def test_s_law_detects_wrong_sign():
    # pairing SF+ at -1/tau against the SF- right-hand side must fail
    from symfermion.characters import _functions, _s_law

    f = {k: v.evaluate for k, v in _functions(1, 200).items()}
    lhs, _ = _s_law("SF+", 1, f, 0.2 + 1.3j)
    _, rhs = _s_law("SF-", 1, f, 0.2 + 1.3j)
    assert abs(lhs - rhs) > 1e-3


def test_modular_errors():
    with pytest.raises(ValueError):
        modular_residual("S", "eta", -1j)
    with pytest.raises(ValueError):
        modular_residual("U", "eta", 1j)
