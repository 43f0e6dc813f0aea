import random
from functools import lru_cache

import pytest
import sympy
from hypothesis import given, strategies as st

from symfermion.fock import LatticeError, Sector, State, apply_mode, enumerate_basis
from symfermion.report import random_state
from symfermion.scalar import HALF, mpq
from symfermion.symplectic import gen_index, skew_form
from symfermion.twisted import (
    computed_action,
    delta_coeffs,
    delta_exponential,
    lowest_weight_report,
    psi_psi_correction,
    twisted_borcherds_residual,
    twisted_field_mode,
    twisted_state,
    twisted_vacuum,
    twisted_virasoro,
    zero_mode_action_table,
)
from symfermion.vertex import gen_state, is_singular, omega, pair_state

E, F = gen_index("e", 1), gen_index("f", 1)
TW = Sector.TWISTED
TVAC = twisted_vacuum()


@lru_cache(maxsize=1)
def sympy_delta(N):
    x, y = sympy.symbols("x y")
    f = -sympy.log((sympy.sqrt(1 + x) + sympy.sqrt(1 + y)) / 2)
    out = {}
    for m in range(N + 1):
        fx = sympy.diff(f, x, m) if m else f
        for n in range(N + 1 - m):
            fxy = sympy.diff(fx, y, n) if n else fx
            val = sympy.nsimplify(fxy.subs({x: 0, y: 0})) / (sympy.factorial(m) * sympy.factorial(n))
            out[(m, n)] = sympy.Rational(val)
    return out


def test_delta_coefficients_match_series_oracle():
    oracle = sympy_delta(5)
    c = delta_coeffs(5)
    for (m, n), v in oracle.items():
        assert c[(m, n)] == mpq(int(v.p), int(v.q)), (m, n)


def test_delta_table_shape():
    c = delta_coeffs(8)
    assert c[(0, 0)] == 0
    assert c[(1, 0)] == mpq(-1, 4)
    assert all(c[(m, n)] == c[(n, m)] for (m, n) in c)
    with pytest.raises(ValueError):
        delta_coeffs(-1)


def test_delta_exponential_examples():
    vac = State.vacuum()
    assert delta_exponential(vac) == [(0, vac)]
    assert delta_exponential(gen_state(E)) == [(0, gen_state(E))]
    om = omega(1)
    assert delta_exponential(om) == [(0, om), (-2, vac * mpq(-1, 8))]


def test_generators_act_by_their_modes():
    for g in range(4):
        for n in (HALF, -HALF, mpq(3, 2), mpq(-3, 2)):
            for v in (TVAC, twisted_state([(HALF, 1)])):
                assert twisted_field_mode(gen_state(g), n, v) == apply_mode(g, n, v)


@pytest.mark.parametrize("g,h", [(a, b) for a in range(4) for b in range(4)])
def test_pair_correction(g, h):
    diff, expected = psi_psi_correction({g: 1}, {h: 1})
    assert expected == skew_form({g: 1}, {h: 1}) / 8
    assert diff == TVAC * expected


@pytest.mark.parametrize("d", [1, 2, 3])
def test_vacuum_weight(d):
    assert twisted_virasoro(0, TVAC, d) == TVAC * mpq(-d, 8)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_lowest_weights(d):
    rep = lowest_weight_report(d)
    assert rep["ok"] and not rep["mismatches"]
    assert rep["lowest_even"] == mpq(-d, 8)
    assert rep["lowest_odd"] == mpq(-d + 4, 8)


def test_twisted_borcherds_examples():
    psi = gen_state(E)
    assert not twisted_borcherds_residual(psi, psi, TVAC, 0, -HALF, -HALF)
    u = twisted_state([(HALF, E)])
    assert not twisted_borcherds_residual(omega(1), psi, u, 1, 1, -HALF)


def _nonzero(rng, d, w, sector=Sector.UNTWISTED):
    while True:
        v = random_state(rng, d, w, sector)
        if v:
            return v


@given(st.integers(1, 2), st.integers(0, 10_000), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_twisted_borcherds_property(d, seed, p, q, r):
    rng = random.Random(seed)
    a = _nonzero(rng, d, rng.randint(1, 3))
    b = _nonzero(rng, d, rng.randint(1, 3))
    u = _nonzero(rng, d, mpq(rng.randint(0, 4), 2), TW)
    qq = q + (HALF if a.homogeneous_parity() else 0)
    rr = r + (HALF if b.homogeneous_parity() else 0)
    assert not twisted_borcherds_residual(a, b, u, p, qq, rr)


def test_selection_rule():
    even, odd = omega(1), gen_state(E)
    u = twisted_state([(HALF, E)])
    with pytest.raises(LatticeError):
        twisted_field_mode(even, HALF, u)
    with pytest.raises(LatticeError):
        twisted_field_mode(odd, 1, u)
    for n in (HALF, mpq(-1, 2), mpq(3, 2)):
        assert not twisted_field_mode(even, n, u, strict=False)
    for n in (0, 1, -1):
        assert not twisted_field_mode(odd, n, u, strict=False)


def test_twisted_grading():
    rng = random.Random(11)
    for _ in range(20):
        k = rng.randint(1, 3)
        a = _nonzero(rng, 1, k)
        m = mpq(rng.randint(0, 4), 2)
        v = _nonzero(rng, 1, m, TW)
        n = rng.randint(-2, 3) + (HALF if a.homogeneous_parity() else 0)
        out = twisted_field_mode(a, n, v)
        assert all(w == k + m - n - 1 for w in out.weights())


def test_virasoro_generator_commutator_on_twisted_states():
    d = 1
    for w2 in range(0, 7):
        for mono in enumerate_basis(TW, mpq(w2, 2), d):
            u = State({mono: 1}, TW)
            for m in range(-2, 3):
                for n in (mpq(-3, 2), -HALF, HALF, mpq(3, 2)):
                    for g in range(2):
                        lhs = twisted_virasoro(m, apply_mode(g, n, u), d) - apply_mode(g, n, twisted_virasoro(m, u, d))
                        assert lhs == apply_mode(g, m + n, u) * (-n)


def test_twisted_top_is_one_dimensional():
    assert enumerate_basis(TW, 0, 2) == [()]
    assert is_singular(TVAC, 2)
    for g in range(4):
        for n in (HALF, mpq(3, 2)):
            assert not apply_mode(g, n, TVAC)


# ---- zero-mode tables -------------------------------------------------------------------


def test_zero_mode_examples():
    h11 = pair_state({E: 1}, 1, {F: 1}, 1)
    assert twisted_field_mode(h11, 1, TVAC) == TVAC * mpq(-1, 8)
    act1 = computed_action(1, 2)
    assert act1[("h", 1, 1, "x1")] == {"x1": 1}
    for k in ("x1", "x2"):
        assert act1[("e", 1, 2, k)] == {}
        assert computed_action(mpq(3, 8), 2)[("e", 1, 2, k)] == {}


@pytest.mark.parametrize("d", [2, 3])
def test_corrected_table_is_exact(d):
    rep = zero_mode_action_table(d)
    assert rep["ok"]
    assert rep["vacua_ok"]


@pytest.mark.parametrize("d,counts", [(2, (6, 10)), (3, (18, 30))])
def test_printed_table_mismatches_are_frozen(d, counts):
    rep = zero_mode_action_table(d, "printed")
    assert (len(rep["1"]["mismatches"]), len(rep["3/8"]["mismatches"])) == counts
    kinds = {k[0] for h in ("1", "3/8") for k in rep[h]["mismatches"]}
    assert kinds == {"h", "e", "f"}
