import pytest

from symfermion.modules import (
    generator_matrices,
    irreducible_action_check,
    module_tops,
    representation_rank,
    zero_mode_matrix,
)
from symfermion.presented import presented_algebra_build
from symfermion.scalar import mpq
from symfermion.vertex import omega


@pytest.mark.parametrize("d", [1, 2, 3])
def test_omega_eigenvalues(d):
    rep = irreducible_action_check(d)
    assert rep["eigenvalues"] == {
        "SF+": 0,
        "SF-": 1,
        "SF(theta)+": mpq(-d, 8),
        "SF(theta)-": mpq(4 - d, 8),
    }
    assert rep["ok"]


def test_top_dimensions():
    tops = module_tops(1)
    assert {k: len(v) for k, v in tops.items()} == {
        "SF+": 1,
        "SF-": 2,
        "SF(theta)+": 1,
        "SF(theta)-": 2,
        "log": 2,
    }


def test_log_top_is_a_jordan_block():
    m = zero_mode_matrix(omega(1), module_tops(1)["log"])
    assert m[0][0] == m[1][1] == 0
    assert (m[0][1], m[1][0]) in ((0, 1), (1, 0))
    assert m[0][1] or m[1][0]


def test_relations_and_irreducibility():
    rep = irreducible_action_check(1)
    assert all(rep["relations_hold"].values())
    assert rep["irreducible"] == {"SF-": True, "SF(theta)-": True}


def test_zero_mode_representation_is_faithful():
    rep = representation_rank()
    assert rep["rank"] == presented_algebra_build().dimension == 11
    assert rep["rank_without_log"] == 10
    assert rep["ok"]


def test_generator_matrix_shapes():
    mats = generator_matrices(1)
    for name, gens in mats.items():
        n = len(module_tops(1)[name])
        assert all(len(m) == n and all(len(r) == n for r in m) for m in gens.values())
