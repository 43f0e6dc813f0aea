"""The module SF-hat = A/A_+ with zero modes, its filtration and singular vectors.

States live in the extended sector, where psi(0) is a free exterior generator.
L0 has a nontrivial Jordan block on the weight-zero space, which is the
non-semisimplicity behind the irrationality of SF+.
"""

from __future__ import annotations

from math import comb
from typing import Dict, List, Optional

from .fock import Monomial, Sector, State, apply_mode, enumerate_basis, graded_dimension, zero_count
from .linalg import Echelon, Vec, mat_mul, nullspace
from .scalar import ONE, ZERO, mpq
from .vertex import field_mode, omega

EX = Sector.EXTENDED
Matrix = List[List[mpq]]


def shat_basis(d: int, w: int) -> List[Monomial]:
    return enumerate_basis(EX, w, d)


def _coords(v: State, index: Dict[Monomial, int]) -> Vec:
    return {index[m]: c for m, c in v.terms.items()}


def l0_block(d: int, w: int) -> Matrix:
    """Matrix of L0 on SF-hat of generalized weight w (column j = image of basis j)."""
    basis = shat_basis(d, w)
    index = {m: i for i, m in enumerate(basis)}
    n = len(basis)
    mat = [[ZERO] * n for _ in range(n)]
    om = omega(d)
    for j, m in enumerate(basis):
        img = field_mode(om, 1, State({m: ONE}, EX))
        for k, c in _coords(img, index).items():
            mat[k][j] = c
    return mat


def _shift(mat: Matrix, s) -> Matrix:
    return [[x - (s if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(mat)]


def _rank(mat: Matrix) -> int:
    ech = Echelon()
    for row in mat:
        ech.add({j: x for j, x in enumerate(row) if x})
    return ech.rank


def jordan_ranks(mat: Matrix, eigenvalue=0) -> List[int]:
    """ranks of (M - lambda)^k for k = 1, 2, ... until it stabilizes."""
    n = len(mat)
    if n == 0:
        return [0]
    N = _shift(mat, eigenvalue)
    cur = N
    ranks = [_rank(cur)]
    while ranks[-1] and len(ranks) <= n:
        cur = mat_mul(cur, N)
        ranks.append(_rank(cur))
    return ranks


def nilpotency_report(d: int, max_weight: int = 1) -> dict:
    out = {"d": d, "weights": {}}
    for w in range(max_weight + 1):
        ranks = jordan_ranks(l0_block(d, w), w)
        out["weights"][w] = {
            "dim": len(shat_basis(d, w)),
            "ranks": ranks,
            "nilpotent": ranks[-1] == 0,
            "index": len(ranks) if ranks[0] else 1,
        }
    w0 = out["weights"][0]
    out["is_semisimple"] = w0["ranks"][0] == 0
    out["nilpotent_index"] = w0["index"]
    out["ok"] = (not out["is_semisimple"]) and all(v["nilpotent"] for v in out["weights"].values())
    return out


def l0_on_vacuum(d: int) -> State:
    return field_mode(omega(d), 1, State.vacuum(EX))


# ---- filtration ---------------------------------------------------------------------------


def filtration_span(d: int, r: int, N: int) -> Dict[int, int]:
    """dim SF-hat[r]_n for n <= N: span generated from exterior degree >= r by the modes psi(m)."""
    gens = range(2 * d)
    spans = {w: Echelon() for w in range(N + 1)}
    index: Dict[int, Dict[Monomial, int]] = {w: {m: i for i, m in enumerate(shat_basis(d, w))} for w in range(N + 1)}
    frontier = [State({m: ONE}, EX) for m in shat_basis(d, 0) if zero_count(m) >= r]
    for v in frontier:
        spans[0].add(_coords(v, index[0]))
    while frontier:
        nxt = []
        for v in frontier:
            w = int(max(v.weights()))
            for g in gens:
                for n in range(-(N - w), N + 1):
                    u = apply_mode(g, n, v)
                    if not u:
                        continue
                    wu = w - n
                    if spans[wu].add(_coords(u, index[wu])):
                        nxt.append(u)
        frontier = nxt
    return {w: spans[w].rank for w in range(N + 1)}


def filtration_dims(d: int, r: int, N: int) -> Dict[int, int]:
    """dims of SF-hat[r]/SF-hat[r+1] per weight n <= N."""
    if not 0 <= r <= 2 * d:
        raise ValueError("r must lie in 0..2d")
    a = filtration_span(d, r, N)
    b = filtration_span(d, r + 1, N) if r < 2 * d else {w: 0 for w in a}
    return {w: a[w] - b[w] for w in a}


def filtration_expected(d: int, r: int, N: int) -> Dict[int, int]:
    return {n: comb(2 * d, r) * graded_dimension(Sector.UNTWISTED, None, n, d) for n in range(N + 1)}


# ---- singular vectors -------------------------------------------------------------------------


def _lowering_generators(d: int) -> List[State]:
    out = []
    for k in (2, 3):
        for m in enumerate_basis(Sector.UNTWISTED, k, d):
            if len(m) % 2 == 0:
                out.append(State({m: ONE}))
    return out


def omega_space(d: int, N: int) -> Dict[int, List[State]]:
    """Basis of singular vectors of generalized weight w <= N (kernel of all lowering modes)."""
    gens = _lowering_generators(d)
    out = {}
    for w in range(N + 1):
        basis = shat_basis(d, w)
        keys: Dict[tuple, int] = {}
        images = []
        for m in basis:
            v = State({m: ONE}, EX)
            vec: Vec = {}
            for ai, a in enumerate(gens):
                k = int(a.homogeneous_weight())
                for n in range(k, k + w + 1):
                    for mono, c in field_mode(a, n, v).terms.items():
                        key = keys.setdefault((ai, n, mono), len(keys))
                        vec[key] = c
            images.append(vec)
        kern = nullspace(images)
        out[w] = [State({basis[i]: c for i, c in kv.items()}, EX) for kv in kern]
    return out


def omega_report(d: int, N: int = 2) -> dict:
    om = omega_space(d, N)
    dims = {w: len(v) for w, v in om.items()}
    expected = {w: (2 ** (2 * d) if w == 0 else (2 * d if w == 1 else 0)) for w in om}
    top1 = all(zero_count(m) == 2 * d for v in om.get(1, []) for m in v.terms)
    by_parity = {
        w: {p: sum(1 for v in vs if v.homogeneous_parity() == p) for p in (0, 1)} for w, vs in om.items()
    }
    return {
        "dims": dims,
        "expected": expected,
        "weight1_in_top": top1,
        "by_parity": by_parity,
        "ok": dims == expected and top1,
    }


def socle_evidence(d: int, N: int = 2) -> dict:
    """Singular vectors of weight one lie in SF-hat[2d], and the weight-zero criterion
    (psi_(-2)phi)_(1) u = phi_(-1) psi_(0) u vanishes exactly on the top exterior power."""
    rep = omega_report(d, N)
    basis0 = shat_basis(d, 0)
    identity_ok = True
    images = []
    keys: Dict[tuple, int] = {}
    for m in basis0:
        u = State({m: ONE}, EX)
        vec: Vec = {}
        for g in range(2 * d):
            for h in range(2 * d):
                a = State.monomial([(2, g), (1, h)])
                lhs = field_mode(a, 1, u)
                rhs = apply_mode(h, -1, apply_mode(g, 0, u))
                if lhs != rhs:
                    identity_ok = False
                for mono, c in lhs.terms.items():
                    vec[keys.setdefault((g, h, mono), len(keys))] = c
        images.append(vec)
    kern = nullspace(images)
    kernel_is_top = len(kern) == 1 and all(zero_count(basis0[i]) == 2 * d for i in kern[0])
    return {
        "weight1_in_top": rep["weight1_in_top"],
        "criterion_identity": identity_ok,
        "criterion_kernel_is_top": kernel_is_top,
        "ok": rep["weight1_in_top"] and identity_ok and kernel_is_top,
    }


def zero_mode_raises(d: int, N: int = 2) -> bool:
    """psi_(0) maps SF-hat[r] into SF-hat[r+1] on monomials of weight <= N."""
    for w in range(N + 1):
        for m in shat_basis(d, w):
            r = zero_count(m)
            for g in range(2 * d):
                img = apply_mode(g, 0, State({m: ONE}, EX))
                if any(zero_count(x) < r + 1 for x in img.terms):
                    return False
    return True
