import random

import pytest
from hypothesis import given, strategies as st

from symfermion.fock import Sector, State, apply_mode, enumerate_basis
from symfermion.report import random_state
from symfermion.scalar import mpq
from symfermion.symplectic import LinearMap, gen_index, random_symplectic, rotation_map, swap_map
from symfermion.vertex import (
    act,
    automorphism_residual,
    bilinear_form,
    borcherds_residual,
    field_mode,
    gen_state,
    invariance_residual,
    is_singular,
    omega,
    virasoro,
)

E, F = gen_index("e", 1), gen_index("f", 1)
VAC = State.vacuum()


def ef():
    return State.monomial([(1, E), (1, F)])


def homogeneous(rng, d, w):
    while True:
        v = random_state(rng, d, w)
        if v:
            return v


# ---- modes and the Virasoro algebra -----------------------------------------------


def test_vacuum_axioms():
    for g in range(2):
        for n in range(0, 4):
            assert not field_mode(gen_state(g), n, VAC)
    a = State.monomial([(2, E), (1, F)])
    assert field_mode(a, -1, VAC) == a
    assert field_mode(VAC, -1, a) == a
    assert not field_mode(VAC, 0, a)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_central_charge(d):
    om = omega(d)
    assert virasoro(2, om, d) == VAC * (-d)
    assert virasoro(0, om, d) == om * 2
    assert not virasoro(1, om, d)


def test_l0_and_l_minus_one():
    for g in range(2):
        assert virasoro(0, gen_state(g), 1) == gen_state(g)
    a = ef()
    assert virasoro(-1, a, 1) == field_mode(a, -2, VAC)


@pytest.mark.parametrize("d", [1, 2])
def test_virasoro_bracket(d):
    c = -2 * d
    rng = random.Random(d)
    for w in range(0, 4):
        u = homogeneous(rng, d, w)
        for m in range(-2, 3):
            for n in range(-2, 3):
                lhs = virasoro(m, virasoro(n, u, d), d) - virasoro(n, virasoro(m, u, d), d)
                rhs = virasoro(m + n, u, d) * (m - n)
                if m + n == 0:
                    rhs = rhs + u * mpq((m**3 - m) * c, 12)
                assert lhs == rhs


def test_virasoro_generator_commutator():
    # [L_n, psi(m)] = -m psi(m+n)
    rng = random.Random(3)
    for w in range(0, 4):
        u = homogeneous(rng, 1, w)
        for n in range(-2, 3):
            for m in range(-3, 4):
                for g in range(2):
                    lhs = virasoro(n, apply_mode(g, m, u), 1) - apply_mode(g, m, virasoro(n, u, 1))
                    assert lhs == apply_mode(g, m + n, u) * (-m)


def test_translation_property():
    rng = random.Random(4)
    for _ in range(12):
        a = homogeneous(rng, 1, rng.randint(1, 3))
        v = homogeneous(rng, 1, rng.randint(0, 3))
        n = rng.randint(-3, 3)
        assert field_mode(virasoro(-1, a, 1), n, v) == field_mode(a, n - 1, v) * (-n)


def test_grading():
    rng = random.Random(5)
    for _ in range(20):
        k, m, n = rng.randint(0, 3), rng.randint(0, 3), rng.randint(-3, 4)
        out = field_mode(homogeneous(rng, 2, k), n, homogeneous(rng, 2, m))
        assert all(w == k + m - n - 1 for w in out.weights())


# ---- Borcherds identity ---------------------------------------------------------


def test_borcherds_examples():
    assert not borcherds_residual(gen_state(E), gen_state(F), VAC, 0, 0, -1)
    assert not borcherds_residual(omega(1), omega(1), ef(), 1, 1, 0)


@given(
    st.integers(1, 2),
    st.integers(0, 10_000),
    st.integers(-3, 3),
    st.integers(-3, 3),
    st.integers(-3, 3),
)
def test_borcherds_property(d, seed, p, q, r):
    rng = random.Random(seed)
    a = homogeneous(rng, d, rng.randint(0, 3))
    b = homogeneous(rng, d, rng.randint(0, 3))
    u = homogeneous(rng, d, rng.randint(0, 3))
    assert not borcherds_residual(a, b, u, p, q, r)


def test_borcherds_on_extended_sector():
    rng = random.Random(6)
    u = State({m: 1 for m in enumerate_basis(Sector.EXTENDED, 1, 1)[:3]}, Sector.EXTENDED)
    for _ in range(10):
        a, b = homogeneous(rng, 1, rng.randint(1, 2)), homogeneous(rng, 1, rng.randint(1, 2))
        assert not borcherds_residual(a, b, u, rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-2, 2))


# ---- invariant bilinear form -----------------------------------------------------


def test_bilinear_examples():
    assert bilinear_form(VAC, VAC) == 1
    assert bilinear_form(gen_state(E), gen_state(F)) == 1
    assert bilinear_form(gen_state(E), ef()) == 0


def test_bilinear_form_parity_orthogonality():
    for w in range(0, 5):
        ms = enumerate_basis(Sector.UNTWISTED, w, 1)
        for x in ms:
            for y in ms:
                if len(x) % 2 != len(y) % 2:
                    assert bilinear_form(State({x: 1}), State({y: 1})) == 0


def test_invariance_examples():
    rng = random.Random(7)
    for g in range(2):
        for n in range(-2, 3):
            u = homogeneous(rng, 1, rng.randint(1, 3))
            u = u.parity_component(1) or gen_state(E)
            wv = int(u.homogeneous_weight()) - n
            v = homogeneous(rng, 1, max(wv, 0))
            assert invariance_residual(gen_state(g), u, v, n, 1) == 0
    assert invariance_residual(omega(1), omega(1), omega(1), 1, 1) == 0


def test_invariance_random_d1():
    rng = random.Random(8)
    for _ in range(30):
        a = homogeneous(rng, 1, rng.randint(1, 4))
        u = homogeneous(rng, 1, rng.randint(0, 4))
        n = rng.randint(-2, 4)
        wv = int(u.homogeneous_weight() + a.homogeneous_weight()) - n - 1
        if not 0 <= wv <= 4:
            continue
        v = homogeneous(rng, 1, wv)
        assert invariance_residual(a, u, v, n, 1) == 0


def test_is_singular():
    assert is_singular(VAC, 1)
    assert not is_singular(gen_state(E), 1)
    assert is_singular(VAC * 5, 2)


# ---- automorphisms ---------------------------------------------------------------


def test_identity_and_swap():
    ident = LinearMap.identity(2)
    a = State.monomial([(2, E), (1, F)])
    assert not automorphism_residual(ident, a, 0, ef())
    g = swap_map(1)
    assert act(g, omega(1)) == omega(1)
    assert not automorphism_residual(g, omega(1), 1, omega(1))


def test_rotation_equivariance():
    g = rotation_map(1)
    assert act(g, omega(1)) == omega(1)
    rng = random.Random(9)
    for _ in range(10):
        a, b = homogeneous(rng, 1, rng.randint(1, 3)), homogeneous(rng, 1, rng.randint(0, 3))
        assert not automorphism_residual(g, a, rng.randint(-2, 3), b)


def test_nonsymplectic_map_is_rejected():
    printed = LinearMap.from_rows([[1, mpq(1, 2)], [1, mpq(-1, 2)]])
    with pytest.raises(ValueError):
        automorphism_residual(printed, gen_state(E), 1, gen_state(F))
    # and the equivariance genuinely breaks for it
    lhs = act(printed, field_mode(gen_state(E), 1, gen_state(F)))
    rhs = field_mode(act(printed, gen_state(E)), 1, act(printed, gen_state(F)))
    assert lhs != rhs


@given(st.integers(1, 2), st.integers(0, 10_000))
def test_random_symplectic_fixes_omega(d, seed):
    g = random_symplectic(d, random.Random(seed))
    assert act(g, omega(d)) == omega(d)
