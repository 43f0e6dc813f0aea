import random

import pytest
from hypothesis import given, strategies as st

from symfermion.linalg import dense_rank
from symfermion.scalar import mpq
from symfermion.symplectic import (
    LinearMap,
    form,
    gen_index,
    hvec,
    is_symplectic,
    make_space,
    random_symplectic,
    rotation_map,
    skew_form,
    swap_map,
)

E1, F1 = gen_index("e", 1), gen_index("f", 1)


def test_canonical_pairings():
    assert make_space(1).matrix[E1][F1] == -1
    assert make_space(2).matrix[E1][gen_index("f", 2)] == 0
    assert make_space(1).matrix[E1][E1] == 0


def test_make_space_rejects_zero():
    with pytest.raises(ValueError):
        make_space(0)


def test_skew_form_examples():
    assert skew_form({F1: 1}, {E1: 1}) == 1
    assert skew_form({E1: 1, F1: 1}, {E1: 1, F1: 1}) == 0
    assert skew_form({E1: 1, F1: 1}, {E1: 1, F1: -1}) == 2


@pytest.mark.parametrize("d", [1, 2, 3])
def test_form_is_skew_and_nondegenerate(d):
    n = 2 * d
    for g in range(n):
        for h in range(n):
            assert form(g, h) == -form(h, g)
    assert dense_rank(make_space(d).matrix) == n


def test_printed_rotation_negates_the_form():
    # (e, f) -> (e + f, (e - f)/2) pairs to +1, so it is anti-symplectic
    printed = LinearMap.from_rows([[1, mpq(1, 2)], [1, mpq(-1, 2)]])
    assert skew_form(printed.image(E1), printed.image(F1)) == 1
    assert not is_symplectic(printed)


def test_symplectic_examples():
    assert is_symplectic(LinearMap.identity(2))
    assert is_symplectic(swap_map(1))
    assert is_symplectic(rotation_map(1))
    assert not is_symplectic(LinearMap.from_rows([[2, 0], [0, 1]]))


@given(st.integers(1, 3), st.integers(0, 10_000))
def test_random_maps_preserve_form(d, seed):
    g = random_symplectic(d, random.Random(seed))
    assert is_symplectic(g)
    n = 2 * d
    for a in range(n):
        for b in range(n):
            assert skew_form(g.image(a), g.image(b), d) == form(a, b)


def test_hvec_keywords():
    assert hvec(e1=1, f2=mpq(1, 2)) == {E1: 1, gen_index("f", 2): mpq(1, 2)}
