"""Vertex operator modes a_(n) on Fock states, and checks built on them.

For a = psi(-k) b the mode is expanded by the normal-ordering recursion

    a_(n) = sum_{i<0}  C(-i-1, k-1) psi(i) b_(n-i-k)
          + (-1)^|b| sum_{i>=0} C(-i-1, k-1) b_(n-i-k) psi(i)

with 1_(m) = delta_{m,-1}.  Only finitely many i contribute on a given vector:
annihilators need a matching level in the target, and creators are bounded by
the weight of b_(m)v.  The same recursion with half-odd i gives the twisted
W-operators.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Tuple

from .fock import (
    LatticeError,
    Monomial,
    Sector,
    State,
    add_into,
    annihilate,
    create,
    weight,
)
from .scalar import HALF, ONE, ZERO, binom, mpq
from .symplectic import LinearMap, form, is_symplectic

Terms = Tuple[Tuple[Monomial, mpq], ...]


@lru_cache(maxsize=None)
def _binom(x, k: int) -> mpq:
    return binom(x, k)


@lru_cache(maxsize=1 << 22)
def _mode(a: Monomial, n, v: Monomial, sector: Sector) -> Terms:
    if not a:
        return ((v, ONE),) if n == -1 else ()
    (k, g), b = a[0], a[1:]
    out: Dict[Monomial, mpq] = {}
    wb = weight(b)
    wv = weight(v)
    sign_b = -1 if len(b) % 2 else 1
    top = wb + wv - 1 - n + k  # creation needs -i <= top
    i = -HALF if sector is Sector.TWISTED else -1
    while -i <= top:
        inner = _mode(b, n - i - k, v, sector)
        if inner:
            c = _binom(-i - 1, k - 1)
            for mono, coef in inner:
                r = create(g, -i, mono)
                if r is not None:
                    add_into(out, r[1], r[0] * c * coef)
        i -= 1
    levels = {p for p, h in v if form(g, h) and p > 0}
    for i in sorted(levels):
        c = sign_b * _binom(-i - 1, k - 1)
        for s, v1 in annihilate(g, i, v):
            for mono, coef in _mode(b, n - i - k, v1, sector):
                add_into(out, mono, c * s * coef)
    if sector is Sector.EXTENDED:
        c = sign_b * _binom(-1, k - 1)
        r = create(g, 0, v)
        if r is not None:
            for mono, coef in _mode(b, n - k, r[1], sector):
                add_into(out, mono, c * r[0] * coef)
    return tuple(out.items())


def mode_terms(a_mono: Monomial, n, v_mono: Monomial, sector: Sector) -> Terms:
    """Raw recursion on monomials; a_mono has untwisted integer levels."""
    return _mode(a_mono, n, v_mono, sector)


def clear_caches() -> None:
    _mode.cache_clear()


def field_mode(a: State, n: int, v: State) -> State:
    """a_(n) v for a in SF and v in the untwisted or extended sector."""
    if a.sector is not Sector.UNTWISTED:
        raise ValueError("the field must be an untwisted state")
    if v.sector is Sector.TWISTED:
        raise ValueError("use twisted.twisted_field_mode on twisted states")
    if mpq(n).denominator != 1:
        raise LatticeError("untwisted modes have integer index")
    n = int(n)
    out: Dict[Monomial, mpq] = {}
    for am, ac in a.terms.items():
        for vm, vc in v.terms.items():
            for mono, coef in _mode(am, n, vm, v.sector):
                add_into(out, mono, ac * vc * coef)
    return State._raw(out, v.sector)


def omega(d: int) -> State:
    return State({((1, 2 * j), (1, 2 * j + 1)): ONE for j in range(d)})


def virasoro(n: int, v: State, d: int) -> State:
    return field_mode(omega(d), n + 1, v)


def vacuum() -> State:
    return State.vacuum()


def h_state(psi: Dict[int, mpq], level: int = 1) -> State:
    """psi(-level) 1 for an h-vector psi."""
    return State({((level, g),): c for g, c in psi.items()})


def gen_state(g: int, level: int = 1) -> State:
    return State({((level, g),): ONE})


def pair_state(psi: Dict[int, mpq], m: int, phi: Dict[int, mpq], n: int) -> State:
    """psi(-m) phi(-n) 1, expanded bilinearly and canonicalized."""
    out: Dict[Monomial, mpq] = {}
    for g, a in psi.items():
        for h, b in phi.items():
            r = create(g, m, ((n, h),))
            if r is not None:
                add_into(out, r[1], r[0] * a * b)
    return State._raw(out, Sector.UNTWISTED)


# ---- Borcherds identity ---------------------------------------------------------


def _gbinom(x, i: int) -> mpq:
    return _binom(mpq(x), i)


def _mode_bound(a: State, v: State) -> int:
    """Largest m with a_(m) v possibly nonzero (by weight)."""
    wa = max(a.weights()) if a else 0
    wv = max(v.weights()) if v else 0
    return int(wa + wv - 1 + (1 if mpq(wa + wv).denominator != 1 else 0))


def borcherds_residual(a: State, b: State, u: State, p: int, q: int, r: int) -> State:
    """LHS - RHS of the super Borcherds identity applied to u.

    sum_i C(q,i) (a_(p+i) b)_(q+r-i)
      = sum_i (-1)^i C(p,i) (a_(p+q-i) b_(r+i) - (-1)^(p+kl) b_(p+r-i) a_(q+i))
    """
    k = a.homogeneous_parity()
    l = b.homogeneous_parity()
    sign = -1 if (p + k * l) % 2 else 1
    lhs = State.zero(u.sector)
    for i in range(0, max(_mode_bound(a, b) - p, -1) + 1):
        c = _gbinom(q, i)
        if c:
            lhs = lhs + c * field_mode(field_mode(a, p + i, b), q + r - i, u)
    rhs = State.zero(u.sector)
    top = max(_mode_bound(b, u) - r, _mode_bound(a, u) - q, -1)
    for i in range(0, top + 1):
        c = _gbinom(p, i)
        if not c:
            continue
        s = -1 if i % 2 else 1
        t1 = field_mode(a, p + q - i, field_mode(b, r + i, u))
        t2 = field_mode(b, p + r - i, field_mode(a, q + i, u))
        rhs = rhs + (s * c) * (t1 - sign * t2)
    return lhs - rhs


# ---- invariant bilinear form ----------------------------------------------------


def _det(mat: List[List[mpq]]) -> mpq:
    m = [row[:] for row in mat]
    n = len(m)
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f = f / pv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def monomial_pairing(x: Monomial, y: Monomial) -> mpq:
    r = len(x)
    if r != len(y):
        return ZERO
    if sorted(p for p, _ in x) != sorted(p for p, _ in y):
        return ZERO
    mat = [[mpq(n * form(g, h)) if n == m else ZERO for (m, h) in y] for (n, g) in x]
    sign = -1 if (r * (r + 1) // 2) % 2 else 1
    return sign * _det(mat)


def bilinear_form(u: State, v: State) -> mpq:
    if u.sector is not Sector.UNTWISTED or v.sector is not Sector.UNTWISTED:
        raise ValueError("the invariant form is defined on untwisted states")
    acc = ZERO
    for x, a in u.terms.items():
        for y, b in v.terms.items():
            acc += a * b * monomial_pairing(x, y)
    return acc


def invariance_residual(a: State, u: State, v: State, n: int, d: int) -> mpq:
    """(a_(n)u, v) minus the contragredient side of the invariance identity."""
    K = a.homogeneous_weight()
    k = a.homogeneous_parity()
    l = u.homogeneous_parity()
    lhs = bilinear_form(field_mode(a, n, u), v)
    rhs = ZERO
    cur = a
    j = 0
    while cur:
        sign = -1 if (K % 2) else 1
        rhs += mpq(sign, factorial(j)) * bilinear_form(u, field_mode(cur, 2 * K - 2 - n - j, v))
        cur = virasoro(1, cur, d)
        j += 1
    sgn = -1 if (k * l) % 2 else 1
    return lhs - sgn * rhs


def is_singular(u: State, d: int) -> bool:
    """True iff every positive h-mode kills u."""
    if not u:
        return True
    top = max(u.weights())
    from .fock import apply_mode

    for g in range(2 * d):
        lv = HALF if u.sector is Sector.TWISTED else 1
        while lv <= top:
            if apply_mode(g, lv, u):
                return False
            lv += 1
    return True


# ---- symplectic automorphisms -------------------------------------------------------


def act(gmap: LinearMap, v: State) -> State:
    """Induced action on Fock states: each factor psi(-n) goes to g(psi)(-n)."""
    out: Dict[Monomial, mpq] = {}
    images = [gmap.image(h) for h in range(gmap.dim)]
    for mono, c in v.terms.items():
        partial: Dict[Monomial, mpq] = {(): c}
        for p, h in reversed(mono):
            nxt: Dict[Monomial, mpq] = {}
            for pm, pc in partial.items():
                for g, gc in images[h].items():
                    r = create(g, p, pm)
                    if r is not None:
                        add_into(nxt, r[1], r[0] * gc * pc)
            partial = nxt
        for m, cc in partial.items():
            add_into(out, m, cc)
    return State._raw(out, v.sector)


def automorphism_residual(gmap: LinearMap, a: State, n: int, b: State) -> State:
    if not is_symplectic(gmap):
        raise ValueError("map is not symplectic")
    return act(gmap, field_mode(a, n, b)) - field_mode(act(gmap, a), n, act(gmap, b))
