"""Catalog of Zhu-algebra and C2-algebra relations of SF+ with exact verification.

Each relation produces one or more states that must vanish in A(V) (checked by
an O(V) membership certificate) or in V/C2(V) (checked by graded reduction).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .fock import State
from .named import (
    B,
    E1,
    E_ij,
    F1,
    F_ij,
    H1,
    H_ij,
    e,
    e_ij,
    f,
    f_ij,
    gamma_rep,
    h_ij,
    theta_combination,
    theta_rep,
    word_state,
)
from .scalar import ONE, mpq
from .symplectic import gen_index, skew_form
from .vertex import omega, vacuum
from .zhu import (
    MembershipCertificate,
    NotFoundWithinCut,
    c2_product,
    c2_quotient,
    o_pool,
    star_product,
)

Items = List[Tuple[str, State]]

DEFAULT_CUT = {1: 14, 2: 9}
C2_CUT = 12


@dataclass(frozen=True)
class Relation:
    id: str
    kind: str  # "zhu" or "c2"
    d: int
    description: str
    build: Callable[[], Items]
    cut: int
    support: Optional[FrozenSet[int]] = None


@dataclass
class RelationResult:
    id: str
    kind: str
    d: int
    cut: int
    passed: bool
    items: List[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def status(self) -> str:
        if self.passed:
            return "pass"
        if any(it.get("not_found") for it in self.items):
            return "inconclusive"
        return "fail"


# ---- polynomial helpers ---------------------------------------------------------------


def wpoly(coeffs: Sequence, x: State, w: State) -> State:
    """sum_k coeffs[k] [w]^k * [x], lowest degree first, by Horner's rule."""
    acc = State.zero()
    for c in reversed(coeffs):
        acc = star_product(w, acc) if acc else acc
        if c:
            acc = acc + mpq(c) * x
    return acc


def c2_wpoly(coeffs: Sequence, x: State, w: State) -> State:
    acc = State.zero()
    for c in reversed(coeffs):
        acc = c2_product(w, acc) if acc else acc
        if c:
            acc = acc + mpq(c) * x
    return acc


Q = mpq
# W^2 (8W+1)(W-1)(8W-3) = 64W^5 - 80W^4 + 13W^3 + 3W^2
QUINTIC = [0, 0, 3, 13, -80, 64]
# (W-1)(8W-3) = 8W^2 - 11W + 3
QUADRATIC = [3, -11, 8]
# W^2 (8W+1) / 9
H2_POLY = [0, 0, Q(1, 9), Q(8, 9)]
# (6W-1)/5
LIN = [Q(-1, 5), Q(6, 5)]


# ---- d = 1 relations ----------------------------------------------------------------------


def _pairs():
    return {"e": e(1), "f": f(1)}


def _theta_reduction() -> Items:
    out: Items = []
    H = _pairs()
    for (a, psi), (b, phi) in product(H.items(), H.items()):
        for m in range(1, 7):
            for n in range(1, 8 - m):
                lhs = B(m, n, psi, phi)
                rhs = State.zero()
                for j in range(n):
                    rhs = rhs + comb(n - 1, j) * theta_rep(m + n - j, psi, phi)
                rhs = rhs * (-1 if (n - 1) % 2 else 1)
                out.append((f"B{m},{n}({a},{b})", lhs - rhs))
    for (a, psi), (b, phi) in product(H.items(), H.items()):
        for m in range(2, 8):
            rhs = State.zero()
            for i in range(m - 1):
                rhs = rhs + comb(m - 2, i) * theta_rep(m - i, psi, phi)
            rhs = rhs * (-1 if (m - 1) % 2 else 1)
            out.append((f"Theta{m}({b},{a})", theta_rep(m, phi, psi) - rhs))
    return out


def theta2_product_rhs(psi, phi, xi, eta, m: int) -> State:
    """Closed-form expansion of Theta_2(psi,phi) * Theta_m(xi,eta)."""
    p = skew_form
    rhs = mpq(1, m - 1) * word_state([(psi, 1), (phi, 1), (xi, m - 1), (eta, 1)])
    lin = [m - 1, 2 * m, m + 1]
    quad = [comb(m - 1, 2), 2 * comb(m, 2), comb(m + 1, 2)]
    rhs = rhs + p(phi, xi) * theta_combination(lin, m, psi, eta)
    rhs = rhs - p(psi, xi) * theta_combination(lin, m, phi, eta)
    rhs = rhs + p(phi, eta) * theta_combination(quad, m, xi, psi)
    rhs = rhs - p(psi, eta) * theta_combination(quad, m, xi, phi)
    return rhs


def theta3_product_rhs(psi, phi, xi, eta, m: int) -> State:
    """Closed-form expansion of Theta_3(psi,phi) * Theta_m(xi,eta)."""
    p = skew_form
    rhs = mpq(1, 2 * (m - 1)) * word_state([(psi, 2), (phi, 1), (xi, m - 1), (eta, 1)])
    c1 = [comb(m - 1, 2), 3 * comb(m, 2), 3 * comb(m + 1, 2), comb(m + 2, 2)]
    c2 = [m - 1, 3 * m, 3 * (m + 1), m + 2]
    c3 = [comb(m, 3), m * comb(m, 2), m * comb(m + 1, 2), comb(m + 2, 3)]
    c4 = [comb(m - 1, 3), 3 * comb(m, 3), 3 * comb(m + 1, 3), comb(m + 2, 3)]
    rhs = rhs + p(phi, xi) * theta_combination(c1, m, psi, eta)
    rhs = rhs + mpq(m, 2) * p(psi, xi) * theta_combination(c2, m, phi, eta)
    rhs = rhs - mpq(3, 2) * p(phi, eta) * theta_combination(c3, m, xi, psi)
    rhs = rhs - p(psi, eta) * theta_combination(c4, m, xi, phi)
    return rhs


def _theta_products(which: int) -> Items:
    out: Items = []
    H = _pairs()
    rhs_fn = theta2_product_rhs if which == 2 else theta3_product_rhs
    for names in product("ef", repeat=4):
        vecs = [H[n] for n in names]
        for m in (2, 3, 4):
            lhs = star_product(theta_rep(which, vecs[0], vecs[1]), theta_rep(m, vecs[2], vecs[3]))
            tag = "".join(names)
            out.append((f"m={m},{tag}", lhs - rhs_fn(*vecs, m)))
    return out


def _d1_theta_identities() -> Dict[str, Tuple[str, Callable[[], Items]]]:
    E, F = e(1), f(1)
    T = theta_rep
    W = omega(1)

    def ee_kills():
        out = []
        for m in range(2, 6):
            out.append((f"ee,m={m}", star_product(T(3, E, E), T(m, E, E))))
            out.append((f"ff,m={m}", star_product(T(3, F, F), T(m, F, F))))
        return out

    def single(st: Callable[[], State]):
        return lambda: [("", st())]

    t = {}
    t["theta-ee-annihilates"] = ("Theta_3(e,e) * Theta_m(e,e) = 0 and the f analogue, m = 2..5", ee_kills)
    t["theta-swap"] = (
        "Theta_3(e,f) = Theta_3(f,e) - Theta_2(e,f)",
        single(lambda: T(3, E, F) - T(3, F, E) + T(2, E, F)),
    )
    t["theta2-square"] = (
        "Theta_2(e,f)^2 = 6 Theta_4 + 6 Theta_3 + Theta_2",
        single(lambda: star_product(T(2, E, F), T(2, E, F)) - theta_combination([1, 6, 6], 2, E, F)),
    )
    t["theta2-theta3"] = (
        "Theta_2(e,f) * Theta_3(e,f) = 10 Theta_5 + 12 Theta_4 + 3 Theta_3",
        single(lambda: star_product(T(2, E, F), T(3, E, F)) - theta_combination([3, 12, 10], 3, E, F)),
    )
    t["theta2-theta4"] = (
        "Theta_2(e,f) * Theta_4(e,f) = 15 Theta_6 + 20 Theta_5 + 6 Theta_4",
        single(lambda: star_product(T(2, E, F), T(4, E, F)) - theta_combination([6, 20, 15], 4, E, F)),
    )
    t["theta3fe-theta3ee"] = (
        "Theta_3(f,e) * Theta_3(e,e) = 11 Theta_5(e,e) - 10 Theta_3(e,e)",
        single(lambda: star_product(T(3, F, E), T(3, E, E)) - 11 * T(5, E, E) + 10 * T(3, E, E)),
    )
    t["theta7-reduction"] = (
        "Theta_7(e,e) = 23/8 Theta_5(e,e) - 15/8 Theta_3(e,e)",
        single(lambda: T(7, E, E) - Q(23, 8) * T(5, E, E) + Q(15, 8) * T(3, E, E)),
    )
    t["theta2-theta3ee"] = (
        "Theta_2(e,f) * Theta_3(e,e) = 10 Theta_5(e,e) - 9 Theta_3(e,e)",
        single(lambda: star_product(T(2, E, F), T(3, E, E)) - 10 * T(5, E, E) + 9 * T(3, E, E)),
    )
    t["theta3ef-square"] = (
        "Theta_3(e,f)^2 = 20 Theta_6 + 30 Theta_5 + 12 Theta_4 + Theta_3",
        single(lambda: star_product(T(3, E, F), T(3, E, F)) - theta_combination([1, 12, 30, 20], 3, E, F)),
    )
    t["theta6-reduction"] = (
        "Theta_6(e,f) in terms of Theta_2(e,f) and Theta_3(e,f)",
        single(
            lambda: T(6, E, F)
            + Q(1, 5) * star_product(T(2, E, F), T(3, E, F))
            + Q(4, 5) * T(3, E, F)
            - wpoly([0, Q(-1, 5), Q(17, 90), Q(1, 90)], vacuum(), W)
        ),
    )
    t["theta3ff-theta3ee"] = (
        "Theta_3(f,f) * Theta_3(e,e) expansion with the quartic term",
        single(
            lambda: star_product(T(3, F, F), T(3, E, E))
            + Q(1, 4) * word_state([(F, 2), (E, 1), (E, 2), (F, 1)])
            + theta_combination([Q(9, 2), 36, 73, Q(85, 2)], 3, E, F)
        ),
    )
    t["theta3fe-theta3ef"] = (
        "Theta_3(f,e) * Theta_3(e,f) expansion with the quartic term",
        single(
            lambda: star_product(T(3, F, E), T(3, E, F))
            - Q(1, 4) * word_state([(F, 2), (E, 1), (E, 2), (F, 1)])
            - theta_combination([Q(9, 2), 27, 45, Q(45, 2)], 3, E, F)
        ),
    )
    return t


def _generator_products_d1() -> Dict[str, Tuple[str, Callable[[], Items]]]:
    W, E, H, F, one = omega(1), E1(), H1(), F1(), vacuum()
    xs = {"E": E, "H": H, "F": F}
    r: Dict[str, Tuple[str, Callable[[], Items]]] = {}
    r["omega-central"] = (
        "[w] * [x] = [x] * [w] for x = E, H, F",
        lambda: [(k, star_product(W, x) - star_product(x, W)) for k, x in xs.items()],
    )
    r["omega-quintic"] = (
        "[w]^2 (8[w]+1)([w]-1)(8[w]-3) = 0",
        lambda: [("", wpoly(QUINTIC, one, W))],
    )
    r["omega-quadratic"] = (
        "([w]-1)(8[w]-3) * [x] = 0 for x = E, H, F",
        lambda: [(k, wpoly(QUADRATIC, x, W)) for k, x in xs.items()],
    )
    r["E2"] = ("[E]^2 = 0", lambda: [("", star_product(E, E))])
    r["F2"] = ("[F]^2 = 0", lambda: [("", star_product(F, F))])
    r["H2"] = (
        "[H]^2 = 1/9 [w]^2 (8[w]+1)",
        lambda: [("", star_product(H, H) - wpoly(H2_POLY, one, W))],
    )
    r["HE"] = ("[H]*[E] = 1/5 (6[w]-1) [E]", lambda: [("", star_product(H, E) - wpoly(LIN, E, W))])
    r["EH"] = ("[E]*[H] = -1/5 (6[w]-1) [E]", lambda: [("", star_product(E, H) + wpoly(LIN, E, W))])
    r["HF"] = ("[H]*[F] = -1/5 (6[w]-1) [F]", lambda: [("", star_product(H, F) + wpoly(LIN, F, W))])
    r["FH"] = ("[F]*[H] = 1/5 (6[w]-1) [F]", lambda: [("", star_product(F, H) - wpoly(LIN, F, W))])
    r["EF"] = (
        "[E]*[F] = -2/5 (6[w]-1) [H] - 2/9 [w]^2 (8[w]+1)",
        lambda: [("", star_product(E, F) + 2 * wpoly(LIN, H, W) + 2 * wpoly(H2_POLY, one, W))],
    )
    r["FE"] = (
        "[F]*[E] = 2/5 (6[w]-1) [H] - 2/9 [w]^2 (8[w]+1)",
        lambda: [("", star_product(F, E) - 2 * wpoly(LIN, H, W) + 2 * wpoly(H2_POLY, one, W))],
    )
    return r


def _c2_d1() -> Dict[str, Tuple[str, Callable[[], Items]]]:
    W, E, H, F, one = omega(1), E1(), H1(), F1(), vacuum()
    P = c2_product
    ee, ff, ef = (e(1), e(1)), (f(1), f(1)), (e(1), f(1))
    r: Dict[str, Tuple[str, Callable[[], Items]]] = {}
    r["EE"] = ("E.E = 0", lambda: [("", P(E, E))])
    r["FF"] = ("F.F = 0", lambda: [("", P(F, F))])
    r["HE"] = ("H.E = 0", lambda: [("", P(H, E))])
    r["HF"] = ("H.F = 0", lambda: [("", P(H, F))])
    r["H2-EF"] = ("2 H.H = -E.F", lambda: [("", 2 * P(H, H) + P(E, F))])
    r["H2-W3"] = ("2 H.H = 16/9 w^3", lambda: [("", 2 * P(H, H) - Q(16, 9) * c2_wpoly([0, 0, 0, 1], one, W))])
    r["W2x"] = (
        "w^2 . x = 0 for x = E, H, F",
        lambda: [(k, c2_wpoly([0, 0, 1], x, W)) for k, x in (("E", E), ("H", H), ("F", F))],
    )
    r["W5"] = ("w^5 = 0", lambda: [("", c2_wpoly([0, 0, 0, 0, 0, 1], one, W))])
    r["gamma3-ee-square"] = (
        "Gamma_3(e,e) . Gamma_3(e,e) = 0",
        lambda: [("", P(gamma_rep(3, *ee), gamma_rep(3, *ee)))],
    )
    r["gamma3-ef-square"] = (
        "Gamma_3(e,f)^2 = 8/9 Gamma_2(e,f)^3",
        lambda: [
            (
                "",
                P(gamma_rep(3, *ef), gamma_rep(3, *ef))
                - Q(8, 9) * P(gamma_rep(2, *ef), P(gamma_rep(2, *ef), gamma_rep(2, *ef))),
            )
        ],
    )
    r["gamma3-ee-ff"] = (
        "Gamma_3(e,e) . Gamma_3(f,f) = -16/9 Gamma_2(e,f)^3",
        lambda: [
            (
                "",
                P(gamma_rep(3, *ee), gamma_rep(3, *ff))
                + Q(16, 9) * P(gamma_rep(2, *ef), P(gamma_rep(2, *ef), gamma_rep(2, *ef))),
            )
        ],
    )
    return r


# ---- d = 2 relations ------------------------------------------------------------------------


def _d2(i: int, j: int) -> Dict[str, Tuple[str, Callable[[], Items]]]:
    S = star_product
    T = theta_rep
    ei, ej, fi, fj = e(i), e(j), f(i), f(j)
    hii, hjj, hij, hji = h_ij(i, i), h_ij(j, j), h_ij(i, j), h_ij(j, i)
    eij, fij = e_ij(i, j), f_ij(i, j)
    delta = hii - hjj

    def d2():
        return S(delta, delta)

    r: Dict[str, Tuple[str, Callable[[], Items]]] = {}
    r["h-diag-times-offdiag"] = (
        "[h^ii]*[x^ij], [h^jj]*[x^ij] as Theta combinations for x = e, h, f",
        lambda: [
            ("hii*eij", S(hii, eij) - theta_combination([1, 4, 3], 2, ei, ej)),
            ("hjj*eij", S(hjj, eij) - theta_combination([0, 2, 3], 2, ei, ej)),
            ("hii*hij", S(hii, hij) - theta_combination([1, 4, 3], 2, ei, fj)),
            ("hjj*hij", S(hjj, hij) - theta_combination([0, 2, 3], 2, ei, fj)),
            ("hii*fij", S(hii, fij) - theta_combination([1, 4, 3], 2, fi, fj)),
            ("hjj*fij", S(hjj, fij) - theta_combination([0, 2, 3], 2, fi, fj)),
        ],
    )
    r["weight3-offdiag"] = (
        "[X^ij] = ([h^ii]-[h^jj]) * [x^ij] for (X, x) = (E, e), (H, h), (F, f)",
        lambda: [
            ("E", E_ij(i, j) - S(delta, eij)),
            ("H", H_ij(i, j) - S(delta, hij)),
            ("F", F_ij(i, j) - S(delta, fij)),
        ],
    )
    r["weight3-diag"] = (
        "[E^ii] = -2[h^ij]*[e^ij] and [F^ii] = -2[h^ji]*[f^ij]",
        lambda: [
            ("hij*eij", S(hij, eij) - theta_combination([0, 2, 3], 2, ei, ei)),
            ("hji*fij", S(hji, fij) - theta_combination([0, 2, 3], 2, fi, fi)),
            ("E", E_ij(i, i) + 2 * S(hij, eij)),
            ("F", F_ij(i, i) + 2 * S(hji, fij)),
        ],
    )
    r["ef-and-hh"] = (
        "[e^ij]*[f^ij] and [h^ij]*[h^ji] through [H^ii], [H^jj] and ([h^ii]-[h^jj])^2",
        lambda: [
            (
                "eij*fij-expanded",
                S(eij, fij)
                - word_state([(ei, 1), (ej, 1), (fi, 1), (fj, 1)])
                - theta_combination([1, 4, 3], 2, ei, fi)
                - theta_combination([1, 4, 3], 2, ej, fj),
            ),
            (
                "hij*hji-expanded",
                S(hij, hji)
                - word_state([(ei, 1), (fj, 1), (ej, 1), (fi, 1)])
                - theta_combination([1, 4, 3], 2, ei, fi)
                - theta_combination([0, 2, 3], 2, ej, fj),
            ),
            ("eij*fij", S(eij, fij) - Q(1, 2) * (H_ij(i, i) + H_ij(j, j)) - Q(1, 2) * d2()),
            ("hij*hji", S(hij, hji) - Q(1, 2) * (H_ij(i, i) - H_ij(j, j)) - Q(1, 2) * d2()),
            ("Hjj", H_ij(j, j) - S(eij, fij) + S(hij, hji)),
            ("Hii", H_ij(i, i) - S(eij, fij) - S(hij, hji) + d2()),
        ],
    )
    r["involution-consequences"] = (
        "[h^ii]*[x] = [x]*[h^jj]; [h^ij]*[y] = -[y]*[h^ij]; [e^ij]*[f^ij] + [f^ij]*[e^ij] = ([h^ii]-[h^jj])^2",
        lambda: [
            ("hii,eij", S(hii, eij) - S(eij, hjj)),
            ("hii,hij", S(hii, hij) - S(hij, hjj)),
            ("hii,hji", S(hii, hji) - S(hji, hjj)),
            ("hii,fij", S(hii, fij) - S(fij, hjj)),
            ("hij,eij", S(hij, eij) + S(eij, hij)),
            ("hij,fij", S(hij, fij) + S(fij, hij)),
            ("ef+fe", S(eij, fij) + S(fij, eij) - d2()),
        ],
    )
    r["hh-anticommutator"] = (
        "[h^ij]*[h^ji] + [h^ji]*[h^ij] = ([h^ii]-[h^jj])^2",
        lambda: [("", S(hij, hji) + S(hji, hij) - d2())],
    )
    r["E-diag-quadratic"] = (
        "(([h^ii]-[h^jj])^2 - 1/5 (6[h^ii]-1)) * [E^ii] = 0",
        lambda: [
            (
                "",
                S(delta, S(delta, E_ij(i, i)))
                - Q(6, 5) * S(hii, E_ij(i, i))
                + Q(1, 5) * E_ij(i, i),
            )
        ],
    )
    return r


def _quintic_d2(i: int) -> Items:
    return [("", wpoly(QUINTIC, vacuum(), h_ij(i, i)))]


# ---- registry -------------------------------------------------------------------------------


def _build_catalog() -> Dict[str, Relation]:
    cat: Dict[str, Relation] = {}

    def add(rid, kind, d, desc, build, cut, support=None):
        cat[rid] = Relation(rid, kind, d, desc, build, cut, support)

    add(
        "zhu-d1/theta-reduction",
        "zhu",
        1,
        "[B_{m,n}] = (-1)^{n-1} sum_j C(n-1,j) Theta_{m+n-j}, m+n <= 7, and the swap formula",
        _theta_reduction,
        14,
    )
    add(
        "zhu-d1/theta2-product",
        "zhu",
        1,
        "closed-form Theta_2(psi,phi)*Theta_m(xi,eta), m = 2..4, all basis quadruples",
        lambda: _theta_products(2),
        14,
    )
    add(
        "zhu-d1/theta3-product",
        "zhu",
        1,
        "closed-form Theta_3(psi,phi)*Theta_m(xi,eta), m = 2..4, all basis quadruples",
        lambda: _theta_products(3),
        14,
    )
    for key, (desc, fn) in _d1_theta_identities().items():
        add(f"zhu-d1/{key}", "zhu", 1, desc, fn, 14)
    for key, (desc, fn) in _generator_products_d1().items():
        add(f"zhu-d1/{key}", "zhu", 1, desc, fn, 14)
    for key, (desc, fn) in _c2_d1().items():
        add(f"c2-d1/{key}", "c2", 1, desc, fn, C2_CUT)
    for i, j in ((1, 2), (2, 1)):
        for key, (desc, fn) in _d2(i, j).items():
            add(f"zhu-d2/{key}[{i}{j}]", "zhu", 2, desc, fn, 9)
    for i in (1, 2):
        sup = frozenset({gen_index("e", i), gen_index("f", i)})
        add(
            f"zhu-d2/h-diag-quintic[{i}]",
            "zhu",
            2,
            "[h^ii]^2 ([h^ii]-1)(8[h^ii]+1)(8[h^ii]-3) = 0, certified inside the (e^i, f^i) subalgebra",
            (lambda i=i: _quintic_d2(i)),
            14,
            sup,
        )
    return cat


_CATALOG: Optional[Dict[str, Relation]] = None


def catalog() -> Dict[str, Relation]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return _CATALOG


def relation_ids(d: Optional[int] = None, kind: Optional[str] = None) -> List[str]:
    return [r.id for r in catalog().values() if (d is None or r.d == d) and (kind is None or r.kind == kind)]


def verify_relation(rel_id: str, d: Optional[int] = None, cut: Optional[int] = None) -> RelationResult:
    cat = catalog()
    if rel_id not in cat:
        raise KeyError(f"unknown relation id {rel_id!r}")
    rel = cat[rel_id]
    if d is not None and d != rel.d:
        raise ValueError(f"relation {rel_id} is stated for d={rel.d}")
    t0 = time.perf_counter()
    cut = cut or rel.cut
    items = rel.build()
    out: List[dict] = []
    ok = True
    if rel.kind == "c2":
        q = c2_quotient(rel.d, cut)
        for label, st in items:
            red = q.reduce(st)
            good = not red
            ok &= good
            out.append({"label": label, "zero_in_quotient": good, "residual_terms": len(red)})
    else:
        pool = o_pool(rel.d, cut, rel.support)
        for label, st in items:
            cert = pool.certify(st)
            if isinstance(cert, MembershipCertificate):
                good = cert.evaluate() == st
                ok &= good
                out.append({"label": label, "certificate_size": len(cert.terms), "reevaluates": good})
            else:
                ok = False
                out.append({"label": label, "not_found": True, "cut": cut, "residual_terms": len(cert.residual)})
    return RelationResult(rel_id, rel.kind, rel.d, cut, ok, out, time.perf_counter() - t0)
