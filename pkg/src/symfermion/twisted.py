"""The theta-twisted module SF(theta).

Vertex operators are Y(v,z) = W(e^{Delta(z)} v, z), where W is the normal
ordered product of half-integer mode fields and

    Delta(z) = 2 sum_i sum_{m,n>=0} c_mn e^i_(n) f^i_(m) z^{-m-n},
    sum c_mn x^m y^n = -log((sqrt(1+x) + sqrt(1+y)) / 2).

Delta lowers weight, so e^{Delta} v is a finite sum sum_s z^{-s} u_s and
a_(n) = sum_s W(u_s)_(n-s).
"""

from __future__ import annotations

from functools import lru_cache
from math import floor
from typing import Dict, List, Optional, Tuple

from .fock import (
    LatticeError,
    Monomial,
    Sector,
    State,
    add_into,
    apply_mode,
    enumerate_basis,
    parity,
)
from .scalar import HALF, ONE, ZERO, binom, mpq
from .symplectic import gen_index
from .vertex import _gbinom, field_mode, h_state, mode_terms, omega, pair_state

TW = Sector.TWISTED
DeltaTable = Dict[Tuple[int, int], mpq]


# ---- Delta ----------------------------------------------------------------------


def _mul(p: DeltaTable, q: DeltaTable, N: int) -> DeltaTable:
    out: DeltaTable = {}
    for (a, b), x in p.items():
        for (c, e), y in q.items():
            if a + b + c + e <= N:
                k = (a + c, b + e)
                out[k] = out.get(k, ZERO) + x * y
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _delta_coeffs(N: int) -> Tuple[Tuple[Tuple[int, int], mpq], ...]:
    # u = (sqrt(1+x) + sqrt(1+y))/2 - 1, then -log(1+u) = sum_j (-1)^j u^j / j
    u: DeltaTable = {}
    for k in range(1, N + 1):
        c = binom(HALF, k) / 2
        u[(k, 0)] = c
        u[(0, k)] = c
    out: DeltaTable = {}
    power: DeltaTable = {(0, 0): ONE}
    for j in range(1, N + 1):
        power = _mul(power, u, N)
        for k, v in power.items():
            out[k] = out.get(k, ZERO) + (-1 if j % 2 else 1) * v / j
    return tuple(sorted((k, v) for k, v in out.items() if v))


def delta_coeffs(N: int) -> DeltaTable:
    """c_mn for m + n <= N (absent keys are zero; c_00 = 0)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    table = dict(_delta_coeffs(N))
    for m in range(N + 1):
        for n in range(N + 1 - m):
            table.setdefault((m, n), ZERO)
    return table


def _rank_d(v: State) -> int:
    gs = [g for m in v.terms for _, g in m]
    return max(gs) // 2 + 1 if gs else 0


def delta_apply(v: State, d: Optional[int] = None) -> Dict[int, State]:
    """{s: coefficient of z^{-s} in Delta(z) v}."""
    if v.sector is not Sector.UNTWISTED:
        raise ValueError("Delta acts on untwisted states")
    d = _rank_d(v) if d is None else d
    if not v:
        return {}
    top = int(max(v.weights()))
    c = delta_coeffs(top)
    out: Dict[int, State] = {}
    for i in range(1, d + 1):
        ge, gf = gen_index("e", i), gen_index("f", i)
        # zero modes vanish on SF, so only m, n >= 1 contribute
        for m in range(1, top + 1):
            fv = apply_mode(gf, m, v)
            if not fv:
                continue
            for n in range(1, top + 1 - m):
                if not c[(m, n)]:
                    continue
                t = apply_mode(ge, n, fv)
                if t:
                    out[m + n] = out.get(m + n, State.zero()) + (2 * c[(m, n)]) * t
    return {s: w for s, w in out.items() if w}


def delta_exponential(v: State, d: Optional[int] = None) -> List[Tuple[int, State]]:
    """e^{Delta(z)} v as [(z-exponent, state)], exponents descending from 0."""
    d = _rank_d(v) if d is None else d
    acc: Dict[int, State] = {0: v}
    cur: Dict[int, State] = {0: v}
    k = 1
    while cur:
        nxt: Dict[int, State] = {}
        for s, w in cur.items():
            for t, x in delta_apply(w, d).items():
                nxt[s + t] = nxt.get(s + t, State.zero()) + x * mpq(1, k)
        cur = {s: w for s, w in nxt.items() if w}
        for s, w in cur.items():
            acc[s] = acc.get(s, State.zero()) + w
        k += 1
    return [(-s, acc[s]) for s in sorted(acc) if acc[s]]


# ---- twisted modes ---------------------------------------------------------------


def twisted_vacuum() -> State:
    return State.vacuum(TW)


def twisted_state(factors, coef=1) -> State:
    """State.monomial in the twisted sector, e.g. [(1/2, g)] for g(-1/2) 1_theta."""
    return State.monomial(factors, TW, coef)


def _check_lattice(a: State, n) -> None:
    q = mpq(n)
    if (2 * q).denominator != 1:
        raise LatticeError(f"twisted mode index {n} is not in Z/2")
    pars = {parity(m) for m in a.terms}
    if len(pars) == 1:
        p = pars.pop()
        if (q.denominator == 1) != (p == 0):
            raise LatticeError(f"parity {p} field has no mode {n} on the twisted module")


def w_mode(a: State, n, v: State) -> State:
    """Mode n of the normal ordered product W(a, z) on a twisted state."""
    out: Dict[Monomial, mpq] = {}
    n = mpq(n)
    for am, ac in a.terms.items():
        for vm, vc in v.terms.items():
            for mono, coef in mode_terms(am, n, vm, TW):
                add_into(out, mono, ac * vc * coef)
    return State._raw(out, TW)


def twisted_field_mode(a: State, n, v: State, strict: bool = True) -> State:
    """a_(n) v for untwisted a and twisted v.

    With strict=False a parity/lattice mismatch returns the (vanishing) raw
    result instead of raising.
    """
    if a.sector is not Sector.UNTWISTED:
        raise ValueError("the field must be an untwisted state")
    if v.sector is not TW:
        raise ValueError("target must be a twisted state")
    if strict:
        _check_lattice(a, n)
    elif (2 * mpq(n)).denominator != 1:
        raise LatticeError(f"twisted mode index {n} is not in Z/2")
    n = mpq(n)
    out = State.zero(TW)
    for e, u in delta_exponential(a):
        out = out + w_mode(u, n + e, v)
    return out


def _wmax(x: State):
    return max(x.weights()) if x else 0


def twisted_borcherds_residual(a: State, b: State, u: State, p: int, q, r) -> State:
    """LHS - RHS of the twisted Borcherds identity on u (same labelling as the untwisted one)."""
    q, r = mpq(q), mpq(r)
    _check_lattice(a, q)
    _check_lattice(b, r)
    k = a.homogeneous_parity()
    l = b.homogeneous_parity()
    sign = -1 if (p + k * l) % 2 else 1
    wa, wb, wu = _wmax(a), _wmax(b), _wmax(u)
    lhs = State.zero(TW)
    for i in range(0, max(int(wa + wb - 1 - p), -1) + 1):
        c = _gbinom(q, i)
        if c:
            ab = field_mode(a, p + i, b)
            if ab:
                lhs = lhs + c * twisted_field_mode(ab, q + r - i, u, strict=False)
    rhs = State.zero(TW)
    top = max(floor(wb + wu - 1 - r), floor(wa + wu - 1 - q), -1)
    for i in range(0, top + 1):
        c = _gbinom(p, i)
        if not c:
            continue
        s = -1 if i % 2 else 1
        t1 = twisted_field_mode(a, p + q - i, twisted_field_mode(b, r + i, u))
        t2 = twisted_field_mode(b, p + r - i, twisted_field_mode(a, q + i, u))
        rhs = rhs + (s * c) * (t1 - sign * t2)
    return lhs - rhs


def twisted_virasoro(m: int, v: State, d: int) -> State:
    return twisted_field_mode(omega(d), m + 1, v)


# ---- weights and zero-mode actions --------------------------------------------------------


def lowest_weight_report(d: int, max_raw=2) -> dict:
    """L0 on twisted basis monomials of raw weight <= max_raw, and the lowest weights."""
    off = mpq(-d, 8)
    checked = 0
    bad = []
    lowest = {0: None, 1: None}
    w = mpq(0)
    while w <= max_raw:
        for m in enumerate_basis(TW, w, d):
            v = State({m: ONE}, TW)
            if twisted_virasoro(0, v, d) != v * (off + w):
                bad.append(m)
            checked += 1
            par = parity(m)
            if lowest[par] is None:
                lowest[par] = off + w
        w += HALF
    return {
        "d": d,
        "checked": checked,
        "mismatches": bad,
        "lowest_even": lowest[0],
        "lowest_odd": lowest[1],
        "ok": not bad and lowest[0] == off and lowest[1] == mpq(-d + 4, 8),
    }


def _o(a: State, v: State) -> State:
    """o(a) = a_(wt a - 1) for homogeneous a."""
    if not a:
        return State.zero(v.sector)
    n = int(a.homogeneous_weight()) - 1
    if v.sector is TW:
        return twisted_field_mode(a, n, v)
    return field_mode(a, n, v)


def omega_basis(h, d: int) -> Dict[str, State]:
    """Basis {x^k, y^k} of the lowest space for h = 1 (SF-) or h = 3/8 (SF(theta)-)."""
    out = {}
    for k in range(1, d + 1):
        for name, kind in (("x", "e"), ("y", "f")):
            g = gen_index(kind, k)
            if mpq(h) == 1:
                out[f"{name}{k}"] = State({((1, g),): ONE})
            elif mpq(h) == mpq(3, 8):
                out[f"{name}{k}"] = State({((HALF, g),): ONE}, TW)
            else:
                raise ValueError("h must be 1 or 3/8")
    return out


def _weight2(kind: str, i: int, j: int) -> State:
    e = lambda k: {gen_index("e", k): ONE}
    f = lambda k: {gen_index("f", k): ONE}
    if kind == "h":
        return pair_state(e(i), 1, f(j), 1)
    if kind == "e":
        return pair_state(e(i), 1, e(j), 1)
    return pair_state(f(i), 1, f(j), 1)


def _expand(v: State, basis: Dict[str, State]) -> Dict[str, mpq]:
    """Coordinates of v in a basis of single-factor monomials."""
    index = {next(iter(b.terms)): k for k, b in basis.items()}
    out = {}
    for m, c in v.terms.items():
        if m not in index:
            raise ValueError("image leaves the lowest space")
        out[index[m]] = c
    return out


def computed_action(h, d: int) -> Dict[Tuple[str, int, int, str], Dict[str, mpq]]:
    """{(kind, i, j, basis name): image coordinates} for o(h^ij), o(e^ij), o(f^ij)."""
    basis = omega_basis(h, d)
    out = {}
    for kind in "hef":
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                a = _weight2(kind, i, j)
                for name, v in basis.items():
                    out[(kind, i, j, name)] = _expand(_o(a, v), basis)
    return out


ALPHA = {mpq(1): ONE, mpq(3, 8): HALF}


def expected_action(h, d: int, variant: str = "corrected") -> Dict[Tuple[str, int, int, str], Dict[str, mpq]]:
    """Closed-form table of o(a) on {x^k, y^k}.

    The printed variant is the literal closed form (off-diagonal entries only
    for i != j).  The corrected variant also covers i = j and fixes the
    entries that disagree with direct computation.
    """
    h = mpq(h)
    al = ALPHA[h]
    out = {}
    delta = lambda a, b: 1 if a == b else 0

    def put(key, coords):
        out[key] = {k: mpq(v) for k, v in coords.items() if v}

    for i in range(1, d + 1):
        for j in range(1, d + 1):
            for k in range(1, d + 1):
                x, y = f"x{k}", f"y{k}"
                if i == j:
                    if variant == "printed":
                        put(("h", i, i, x), {f"x{i}": h * delta(i, k)})
                        put(("h", i, i, y), {f"y{i}": h * delta(i, k)})
                        continue
                    dk = delta(i, k)
                    # diagonal h^ii carries the vacuum-level shift on the other pairs
                    base = ZERO if h == 1 else mpq(-1, 8)
                    put(("h", i, i, x), {x: (h if dk else base)})
                    put(("h", i, i, y), {y: (h if dk else base)})
                    # e^ii = f^ii = 0 in SF
                    for kind in "ef":
                        put((kind, i, i, x), {})
                        put((kind, i, i, y), {})
                    continue
                put(("h", i, j, x), {f"x{i}": al * delta(j, k)})
                put(("e", i, j, x), {})
                put(("f", i, j, y), {})
                if variant == "printed":
                    put(("h", i, j, y), {f"y{j}": -al * delta(i, k)})
                    ey = {f"x{i}": -al * delta(j, k)}
                    ey[f"x{j}"] = ey.get(f"x{j}", 0) - al * delta(i, k)
                    fx = {f"y{i}": al * delta(j, k)}
                    fx[f"x{j}"] = fx.get(f"x{j}", 0) + al * delta(i, k)
                else:
                    # e^ij = -e^ji and f^ij = -f^ji force antisymmetric deltas
                    put(("h", i, j, y), {f"y{j}": al * delta(i, k)})
                    ey = {f"x{i}": -al * delta(j, k), f"x{j}": al * delta(i, k)}
                    fx = {f"y{i}": al * delta(j, k), f"y{j}": -al * delta(i, k)}
                put(("e", i, j, y), ey)
                put(("f", i, j, x), fx)
    return out


def zero_mode_action_table(d: int, variant: str = "corrected") -> dict:
    """Compare computed zero-mode actions with the closed-form table for h = 1, 3/8."""
    report = {}
    for h in (mpq(1), mpq(3, 8)):
        comp = computed_action(h, d)
        exp = expected_action(h, d, variant)
        mism = sorted(k for k in exp if comp.get(k, {}) != exp[k])
        report[str(h)] = {"entries": len(exp), "mismatches": mism}
    vac = {}
    for kind in "hef":
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                a = _weight2(kind, i, j)
                vac[(kind, i, j)] = (_o(a, State.vacuum()), _o(a, twisted_vacuum()))
    vac_ok = all(
        not u and t == twisted_vacuum() * (mpq(-1, 8) if kind == "h" and i == j else 0)
        for (kind, i, j), (u, t) in vac.items()
    )
    report["vacua_ok"] = vac_ok
    report["ok"] = vac_ok and all(not r["mismatches"] for k, r in report.items() if isinstance(r, dict))
    return report


def psi_psi_correction(psi, phi) -> Tuple[State, mpq]:
    """(Y(psi_(-1)phi, z) - W(psi_(-1)phi, z)) at z^{-2} on 1_theta, and <psi,phi>/8."""
    from .symplectic import skew_form

    a = pair_state(psi, 1, phi, 1)
    diff = twisted_field_mode(a, 1, twisted_vacuum(), strict=False) - w_mode(a, 1, twisted_vacuum())
    return diff, skew_form(psi, phi) / 8
