"""Frequently used vectors of SF+: quadratic B-vectors, their Zhu/C2 shorthands
and the strong generators e, h, f (weight 2) and E, H, F (weight 3)."""

from __future__ import annotations

from math import comb, factorial
from typing import Dict, Sequence, Tuple

from .fock import Monomial, Sector, State, add_into, create
from .scalar import ONE, mpq
from .symplectic import gen_index
from .vertex import field_mode, omega, pair_state

HVec = Dict[int, mpq]


def e(i: int = 1) -> HVec:
    return {gen_index("e", i): ONE}


def f(i: int = 1) -> HVec:
    return {gen_index("f", i): ONE}


def word_state(word: Sequence[Tuple[HVec, int]]) -> State:
    """psi1(-n1) psi2(-n2) ... 1 for word [(psi1, n1), (psi2, n2), ...]."""
    terms: Dict[Monomial, mpq] = {(): ONE}
    for psi, n in reversed(word):
        nxt: Dict[Monomial, mpq] = {}
        for m, c in terms.items():
            for g, a in psi.items():
                r = create(g, n, m)
                if r is not None:
                    add_into(nxt, r[1], r[0] * a * c)
        terms = nxt
    return State(terms)


def B(m: int, n: int, psi: HVec, phi: HVec) -> State:
    return mpq(factorial(m - 1) * factorial(n - 1), factorial(m + n - 1)) * pair_state(psi, m, phi, n)


def A(m: int, n: int, psi: HVec, phi: HVec) -> State:
    return factorial(m - 1) * factorial(n - 1) * pair_state(psi, m, phi, n)


def theta_rep(m: int, psi: HVec, phi: HVec) -> State:
    """Representative B_{m-1,1}(psi, phi) of the Zhu class Theta_m."""
    if m < 2:
        raise ValueError("Theta_m needs m >= 2")
    return B(m - 1, 1, psi, phi)


def gamma_rep(m: int, psi: HVec, phi: HVec) -> State:
    """Representative A_{m-1,1}(psi, phi) of the C2 class Gamma_m."""
    if m < 2:
        raise ValueError("Gamma_m needs m >= 2")
    return A(m - 1, 1, psi, phi)


def theta_combination(coeffs: Sequence, start: int, psi: HVec, phi: HVec) -> State:
    """sum_k coeffs[k] Theta_{start+k}(psi, phi)."""
    acc = State.zero()
    for k, c in enumerate(coeffs):
        if c:
            acc = acc + mpq(c) * theta_rep(start + k, psi, phi)
    return acc


# ---- generators -------------------------------------------------------------------


def e_ij(i: int, j: int) -> State:
    return pair_state(e(i), 1, e(j), 1)


def h_ij(i: int, j: int) -> State:
    return pair_state(e(i), 1, f(j), 1)


def f_ij(i: int, j: int) -> State:
    return pair_state(f(i), 1, f(j), 1)


def _sym2(psi: HVec, phi: HVec) -> State:
    return mpq(1, 2) * (pair_state(psi, 2, phi, 1) + pair_state(phi, 2, psi, 1))


def E_ij(i: int, j: int) -> State:
    return _sym2(e(i), e(j))


def H_ij(i: int, j: int) -> State:
    return _sym2(e(i), f(j))


def F_ij(i: int, j: int) -> State:
    return _sym2(f(i), f(j))


def E1() -> State:
    return E_ij(1, 1)


def H1() -> State:
    return H_ij(1, 1)


def F1() -> State:
    return F_ij(1, 1)


def W1() -> State:
    return omega(1)


def l_minus_one(v: State, d: int) -> State:
    return field_mode(omega(d), 0, v)
