"""Characters of the four irreducible SF+-modules and their modular behaviour."""

from __future__ import annotations

import cmath
from typing import Callable, Dict, List, Tuple

from .fock import Sector, graded_dimension
from .qseries import UNIT, QSeries, _key, eta_series
from .scalar import HALF, ONE, mpq

MODULES = ("SF+", "SF-", "SF(theta)+", "SF(theta)-")


def phi_series(k: int, order) -> QSeries:
    """phi_1 = eta^2/(eta(2t) eta(t/2)), phi_2 = eta(t/2)/eta, phi_3 = sqrt2 eta(2t)/eta."""
    # a little headroom so divisions stay exact up to the requested order
    o = mpq(order) + 1
    eta, eta2, etah = eta_series(1, o), eta_series(2, o), eta_series(HALF, o)
    if k == 1:
        s = (eta * eta) / (eta2 * etah)
    elif k == 2:
        s = etah / eta
    elif k == 3:
        s = eta2 / eta
        s = QSeries(s.coeffs, s.order, 1)
    else:
        raise ValueError("k must be 1, 2 or 3")
    return s.truncate(order)


def character_series(module: str, d: int, order) -> QSeries:
    if module in ("SF+", "SF-"):
        a = phi_series(3, order) ** (2 * d) / (2**d)
        b = eta_series(1, order) ** (2 * d)
    elif module in ("SF(theta)+", "SF(theta)-"):
        a = phi_series(1, order) ** (2 * d)
        b = phi_series(2, order) ** (2 * d)
    else:
        raise ValueError(f"unknown module {module!r}")
    s = a + b if module.endswith("+") else a - b
    return s.scale(HALF).truncate(order)


def theta_trace_series(sector: str, d: int, order) -> QSeries:
    """tr theta q^{L0 + d/12}: eta^{2d} untwisted, (eta(t/2)/eta)^{2d} twisted."""
    if sector == "untwisted":
        return eta_series(1, order) ** (2 * d)
    if sector == "twisted":
        return phi_series(2, order) ** (2 * d)
    raise ValueError("sector must be 'untwisted' or 'twisted'")


def lowest_weight(module: str, d: int) -> mpq:
    return {
        "SF+": mpq(0),
        "SF-": mpq(1),
        "SF(theta)+": mpq(-d, 8),
        "SF(theta)-": mpq(-d + 4, 8),
    }[module]


def enumerate_vs_character(module: str, d: int, N: int) -> dict:
    """Compare the first N character coefficients with Fock-space state counts."""
    h = lowest_weight(module, d)
    shift = mpq(d, 12)  # -c/24 with c = -2d
    chi = character_series(module, d, h + shift + N)
    twisted = "theta" in module
    sector = Sector.TWISTED if twisted else Sector.UNTWISTED
    par = 0 if module.endswith("+") else 1
    raw0 = HALF if (twisted and par) else (1 if par else 0)
    rows = []
    for n in range(N):
        count = graded_dimension(sector, par, raw0 + n, d)
        coef = chi.coefficient(h + shift + n)
        rows.append((n, int(coef), count, coef == count))
    return {"module": module, "d": d, "rows": rows, "ok": all(r[3] for r in rows)}


# ---- modular transformations -----------------------------------------------------------


def _turn_equal(a: QSeries, b: QSeries, turn) -> bool:
    """Exact test of a(tau+1) = e^{2 pi i turn} b(tau), coefficientwise."""
    if a.sqrt2 != b.sqrt2:
        return False
    order = min(a.order, b.order)
    t = _key(turn)
    for k in set(a.coeffs) | set(b.coeffs):
        if k >= order:
            continue
        ca, cb = a.coeffs.get(k, 0), b.coeffs.get(k, 0)
        diff = k - t  # e^{2 pi i (x - turn)} must be real, i.e. x - turn in Z/2
        if diff % (UNIT // 2):
            if ca or cb:
                return False
            continue
        sign = -1 if (diff // (UNIT // 2)) % 2 else 1
        if sign * ca != cb:
            return False
    return True


def t_transform_checks(d: int, order=20) -> Dict[str, bool]:
    phi = {k: phi_series(k, order) for k in (1, 2, 3)}
    eta = eta_series(1, order)
    ch = {m: character_series(m, d, order) for m in MODULES}
    return {
        "eta": _turn_equal(eta, eta, mpq(1, 24)),
        "phi1": _turn_equal(phi[1], phi[2], mpq(-1, 48)),
        "phi2": _turn_equal(phi[2], phi[1], mpq(-1, 48)),
        "phi3": _turn_equal(phi[3], phi[3], mpq(1, 24)),
        "SF+": _turn_equal(ch["SF+"], ch["SF+"], mpq(d, 12)),
        "SF-": _turn_equal(ch["SF-"], ch["SF-"], mpq(d, 12)),
        "SF(theta)+": _turn_equal(ch["SF(theta)+"], ch["SF(theta)+"], mpq(-d, 24)),
        "SF(theta)-": _turn_equal(ch["SF(theta)-"], ch["SF(theta)-"], mpq(-d, 24) + HALF),
    }


def _functions(d: int, order) -> Dict[str, QSeries]:
    out = {"eta": eta_series(1, order)}
    for k in (1, 2, 3):
        out[f"phi{k}"] = phi_series(k, order)
    for m in MODULES:
        out[m] = character_series(m, d, order)
    return out


def _s_law(item: str, d: int, f: Dict[str, Callable[[complex], complex]], tau: complex) -> Tuple[complex, complex]:
    """(value at -1/tau, closed-form right-hand side at tau)."""
    s = -1 / tau
    if item == "eta":
        return f["eta"](s), cmath.sqrt(-1j * tau) * f["eta"](tau)
    if item == "phi1":
        return f["phi1"](s), f["phi1"](tau)
    if item == "phi2":
        return f["phi2"](s), f["phi3"](tau)
    if item == "phi3":
        return f["phi3"](s), f["phi2"](tau)
    tp, tm = f["SF(theta)+"](tau), f["SF(theta)-"](tau)
    up, um = f["SF+"](tau), f["SF-"](tau)
    if item in ("SF+", "SF-"):
        sg = 1 if item.endswith("+") else -1
        return f[item](s), (tp - tm) / 2 ** (d + 1) + sg * (-1j * tau) ** d / 2 * (up - um)
    if item in ("SF(theta)+", "SF(theta)-"):
        sg = 1 if item.endswith("+") else -1
        return f[item](s), (tp + tm) / 2 + sg * 2 ** (d - 1) * (up + um)
    raise ValueError(f"unknown item {item!r}")


def modular_residual(transform: str, item: str, tau: complex, d: int = 1, order=200) -> float:
    """|LHS - RHS| of the S or T law for item at tau (numerical)."""
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    series = _functions(d, order)
    f = {k: v.evaluate for k, v in series.items()}
    if transform == "S":
        lhs, rhs = _s_law(item, d, f, tau)
        return abs(lhs - rhs)
    if transform == "T":
        turns = {
            "eta": ("eta", mpq(1, 24)),
            "phi1": ("phi2", mpq(-1, 48)),
            "phi2": ("phi1", mpq(-1, 48)),
            "phi3": ("phi3", mpq(1, 24)),
            "SF+": ("SF+", mpq(d, 12)),
            "SF-": ("SF-", mpq(d, 12)),
            "SF(theta)+": ("SF(theta)+", mpq(-d, 24)),
            "SF(theta)-": ("SF(theta)-", mpq(-d, 24) + HALF),
        }
        other, turn = turns[item]
        phase = cmath.exp(2j * cmath.pi * float(turn))
        return abs(f[item](tau + 1) - phase * f[other](tau))
    raise ValueError("transform must be 'S' or 'T'")


def modular_report(d: int, taus=(1j, 0.2 + 1.3j), order=200) -> List[dict]:
    series = _functions(d, order)
    f = {k: v.evaluate for k, v in series.items()}
    out = []
    for tau in taus:
        for item in ("eta", "phi1", "phi2", "phi3") + MODULES:
            lhs, rhs = _s_law(item, d, f, tau)
            out.append({"item": item, "tau": str(tau), "transform": "S", "residual": abs(lhs - rhs)})
    return out
