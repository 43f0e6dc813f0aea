"""Named verification checks and the JSON report format.

Every check returns a CheckResult; a report is
{version, seed, config, checks: [{id, params, status, witness, wall_time}]}.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import __version__
from .fock import Sector, State, enumerate_basis, format_state, state_to_json
from .linalg import Echelon
from .scalar import HALF, ONE, fmt, mpq

Witness = Dict[str, Any]


@dataclass
class CheckResult:
    id: str
    params: Dict[str, Any]
    status: str
    witness: Witness = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "wall_time": round(self.wall_time, 6),
        }


def _timed(check_id: str, params: Dict[str, Any], body: Callable[[], tuple]) -> CheckResult:
    t0 = time.perf_counter()
    status, witness = body()
    return CheckResult(check_id, params, status, witness, time.perf_counter() - t0)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, float, str)):
        return x
    if type(x).__name__ == "mpq":
        return fmt(x)
    if isinstance(x, State):
        return state_to_json(x)
    return str(x)


# ---- random sampling -----------------------------------------------------------------------


def random_state(rng: random.Random, d: int, w, sector: Sector = Sector.UNTWISTED, parity: Optional[int] = None) -> State:
    """A random nonzero combination of at most two basis monomials of weight w and one parity."""
    ms = enumerate_basis(sector, w, d)
    if parity is None:
        parity = rng.choice(sorted({len(m) % 2 for m in ms}))
    ms = [m for m in ms if len(m) % 2 == parity]
    if not ms:
        return State.zero(sector)
    pick = rng.sample(ms, min(len(ms), rng.randint(1, 2)))
    return State({m: mpq(rng.choice([-2, -1, 1, 2, 3]), rng.randint(1, 2)) for m in pick}, sector)


def _nonzero_state(rng, d, max_w, sector=Sector.UNTWISTED, min_w=0):
    while True:
        if sector is Sector.TWISTED:
            w = mpq(rng.randint(0, 2 * max_w), 2)
        else:
            w = rng.randint(min_w, max_w)
        v = random_state(rng, d, w, sector)
        if v:
            return v


# ---- checks ---------------------------------------------------------------------------


def central_charge_check() -> CheckResult:
    from .vertex import field_mode, omega

    def body():
        rows = {}
        ok = True
        for d in (1, 2, 3):
            om = omega(d)
            r3 = field_mode(om, 3, om) == State.vacuum() * (-d)
            r1 = field_mode(om, 1, om) == om * 2
            r2 = not field_mode(om, 2, om)
            rows[f"d={d}"] = {"omega_(3)omega=-d": r3, "omega_(1)omega=2omega": r1, "omega_(2)omega=0": r2}
            ok &= r3 and r1 and r2
        return _status(ok), rows

    return _timed("vertex/central-charge", {"d": [1, 2, 3]}, body)


def borcherds_check(
    seed: int = 0, samples: int = 100, twisted_samples: int = 50, max_weight: int = 5, d: Optional[int] = None
) -> CheckResult:
    from .twisted import twisted_borcherds_residual
    from .vertex import borcherds_residual

    def body():
        rng = random.Random(seed)
        bad = []
        for t in range(samples):
            dd = d or rng.choice([1, 2])
            a = _nonzero_state(rng, dd, max_weight)
            b = _nonzero_state(rng, dd, max_weight)
            u = _nonzero_state(rng, dd, max_weight)
            p, q, r = (rng.randint(-3, 3) for _ in range(3))
            res = borcherds_residual(a, b, u, p, q, r)
            if res:
                bad.append({"sample": t, "residual": state_to_json(res)})
        tw_bad = []
        for t in range(twisted_samples):
            dd = d or rng.choice([1, 2])
            a = _nonzero_state(rng, dd, 3, min_w=1)
            b = _nonzero_state(rng, dd, 3, min_w=1)
            u = _nonzero_state(rng, dd, 2, Sector.TWISTED)
            p = rng.randint(-3, 3)
            q = rng.randint(-3, 3) + (HALF if a.homogeneous_parity() else 0)
            r = rng.randint(-3, 3) + (HALF if b.homogeneous_parity() else 0)
            res = twisted_borcherds_residual(a, b, u, p, q, r)
            if res:
                tw_bad.append({"sample": t, "residual": state_to_json(res)})
        w = {"untwisted_samples": samples, "twisted_samples": twisted_samples, "nonzero": bad, "twisted_nonzero": tw_bad}
        return _status(not bad and not tw_bad), w

    params = {"seed": seed, "samples": samples, "twisted_samples": twisted_samples, "d": d}
    return _timed("vertex/borcherds", params, body)


def c2_check(d: int = 1, cut: int = 12, expected_total: Optional[int] = 11) -> CheckResult:
    from .zhu import c2_quotient_dims

    def body():
        dims, total = c2_quotient_dims(d, cut)
        profile = {w: n for w, n in dims.items() if n}
        ok = expected_total is None or total == expected_total
        return _status(ok), {"total": total, "profile": profile}

    return _timed("zhu/c2-dimension", {"d": d, "cut": cut}, body)


def relation_check(rel_id: str, d: Optional[int] = None, cut: Optional[int] = None) -> CheckResult:
    from .relations import verify_relation

    t0 = time.perf_counter()
    res = verify_relation(rel_id, d, cut)
    return CheckResult(
        rel_id,
        {"d": res.d, "cut": res.cut, "kind": res.kind},
        res.status,
        {"items": res.items},
        time.perf_counter() - t0,
    )


def presented_check() -> CheckResult:
    from .presented import ideal_decomposition, matrix_unit_check, presented_algebra_build, product_table_check

    def body():
        alg = presented_algebra_build()
        pt = product_table_check(alg)
        dec = ideal_decomposition(alg)
        w = {
            "dimension": alg.dimension,
            "basis": ["".join(b) or "1" for b in alg.basis],
            "unresolved_ambiguities": len(alg.unresolved_ambiguities()),
            "product_table": {lam: all(v.values()) for lam, v in pt.items()},
            "matrix_units": {lam: matrix_unit_check(alg, mpq(lam)) for lam in ("1", "3/8")},
            "ideal_dims": dec["dims"],
            "pairwise_zero": dec["pairwise_zero"],
        }
        ok = (
            alg.dimension == 11
            and w["unresolved_ambiguities"] == 0
            and all(w["product_table"].values())
            and all(w["matrix_units"].values())
            and dec["ok"]
        )
        return _status(ok), w

    return _timed("zhu/presented-algebra", {}, body)


def irreducible_check(d: int = 1) -> CheckResult:
    from .modules import irreducible_action_check, representation_rank

    def body():
        r = irreducible_action_check(d)
        w = {"eigenvalues": r["eigenvalues"], "table_ok": r["table_ok"], "distinct": r["distinct"]}
        ok = r["ok"]
        if d == 1:
            rr = representation_rank()
            w["representation_rank"] = rr["rank"]
            w["rank_without_log"] = rr["rank_without_log"]
            ok &= rr["ok"]
        return _status(ok), w

    return _timed("zhu/irreducible-actions", {"d": d}, body)


def twisted_check(d: int = 2) -> CheckResult:
    from .twisted import delta_coeffs, lowest_weight_report, psi_psi_correction, zero_mode_action_table

    def body():
        c = delta_coeffs(8)
        sym = all(c[(m, n)] == c[(n, m)] for (m, n) in c)
        lw = lowest_weight_report(d)
        table = zero_mode_action_table(d)
        corr = []
        for g in range(2 * d):
            for h in range(2 * d):
                diff, expect = psi_psi_correction({g: ONE}, {h: ONE})
                corr.append(diff == State.vacuum(Sector.TWISTED) * expect)
        w = {
            "c00": c[(0, 0)],
            "c10": c[(1, 0)],
            "symmetric": sym,
            "lowest_even": lw["lowest_even"],
            "lowest_odd": lw["lowest_odd"],
            "l0_mismatches": len(lw["mismatches"]),
            "action_table_mismatches": {k: len(v["mismatches"]) for k, v in table.items() if isinstance(v, dict)},
            "pair_correction_ok": all(corr),
        }
        ok = sym and not c[(0, 0)] and c[(1, 0)] == mpq(-1, 4) and lw["ok"] and table["ok"] and all(corr)
        return _status(ok), w

    return _timed("twisted/sector", {"d": d}, body)


def characters_check(d: int = 1, N: int = 20) -> CheckResult:
    from .characters import MODULES, enumerate_vs_character, t_transform_checks

    def body():
        rows = {m: enumerate_vs_character(m, d, N)["ok"] for m in MODULES}
        t = t_transform_checks(d)
        return _status(all(rows.values()) and all(t.values())), {"enumeration": rows, "T_exact": t}

    return _timed("characters/enumeration", {"d": d, "N": N}, body)


def modular_check(d: int = 1, taus: Sequence[complex] = (1j, 0.2 + 1.3j), order: int = 200, tol: float = 1e-6) -> CheckResult:
    from .characters import modular_report

    def body():
        rep = modular_report(d, taus, order)
        worst = max(r["residual"] for r in rep)
        return _status(worst < tol), {"max_residual": worst, "residuals": rep}

    return _timed("characters/modular-S", {"d": d, "taus": [str(t) for t in taus], "order": order}, body)


def logmod_check(d: int = 1, N: Optional[int] = None) -> CheckResult:
    from .logmod import filtration_dims, filtration_expected, l0_on_vacuum, nilpotency_report, omega_report, socle_evidence

    N = N if N is not None else (4 if d == 1 else 2)

    def body():
        nil = nilpotency_report(d)
        filt = {r: filtration_dims(d, r, N) == filtration_expected(d, r, N) for r in range(2 * d + 1)}
        om = omega_report(d, 2)
        soc = socle_evidence(d)
        v = l0_on_vacuum(d)
        w = {
            "L0_vacuum": format_state(v),
            "nilpotent_index": nil["nilpotent_index"],
            "filtration_ok": filt,
            "omega_dims": om["dims"],
            "socle": soc,
        }
        ok = nil["ok"] and all(filt.values()) and om["ok"] and soc["ok"] and bool(v)
        return _status(ok), w

    return _timed("logmod/structure", {"d": d, "N": N}, body)


def automorphism_check(seed: int = 0, maps: int = 3, triples: int = 20) -> CheckResult:
    from .symplectic import is_symplectic, random_symplectic
    from .vertex import act, automorphism_residual, omega

    def body():
        rng = random.Random(seed)
        bad = []
        for k in range(maps):
            d = 1 + k % 2
            g = random_symplectic(d, rng)
            if not is_symplectic(g) or act(g, omega(d)) != omega(d):
                bad.append({"map": k, "omega_fixed": False})
                continue
            for t in range(triples):
                a = _nonzero_state(rng, d, 3)
                b = _nonzero_state(rng, d, 3)
                n = rng.randint(-2, 3)
                if automorphism_residual(g, a, n, b):
                    bad.append({"map": k, "triple": t})
        return _status(not bad), {"failures": bad}

    return _timed("automorphisms/equivariance", {"seed": seed, "maps": maps, "triples": triples}, body)


def bilinear_check(seed: int = 0, max_weight: int = 6, samples: int = 50) -> CheckResult:
    from .vertex import bilinear_form, invariance_residual

    def body():
        ranks = {}
        ok = True
        for d in (1, 2):
            for w in range(max_weight + 1):
                basis = enumerate_basis(Sector.UNTWISTED, w, d)
                ech = Echelon()
                for x in basis:
                    u = State({x: ONE})
                    row = {}
                    for j, y in enumerate(basis):
                        c = bilinear_form(u, State({y: ONE}))
                        if c:
                            row[j] = c
                    ech.add(row)
                ranks[f"d={d},w={w}"] = [ech.rank, len(basis)]
                ok &= ech.rank == len(basis)
        rng = random.Random(seed)
        bad = 0
        for _ in range(samples):
            d = rng.choice([1, 2])
            a = _nonzero_state(rng, d, 3, min_w=1)
            u = _nonzero_state(rng, d, 3)
            n = rng.randint(-2, 4)
            K = int(a.homogeneous_weight())
            wv = int(u.homogeneous_weight()) + K - n - 1
            if wv < 0:
                wv = 0
            v = _nonzero_state(rng, d, wv, min_w=wv)
            if invariance_residual(a, u, v, n, d):
                bad += 1
        ok &= bad == 0
        return _status(ok), {"gram_ranks": ranks, "invariance_failures": bad, "samples": samples}

    return _timed("vertex/bilinear-form", {"seed": seed, "max_weight": max_weight, "samples": samples}, body)


# ---- reports ---------------------------------------------------------------------------------


def all_checks(seed: int = 0, include_relations: bool = True) -> List[Callable[[], CheckResult]]:
    from .relations import catalog

    out: List[Callable[[], CheckResult]] = [
        central_charge_check,
        lambda: borcherds_check(seed),
        lambda: c2_check(1, 12),
    ]
    if include_relations:
        for rid in catalog():
            out.append(lambda rid=rid: relation_check(rid))
    out += [
        presented_check,
        lambda: irreducible_check(1),
        lambda: irreducible_check(2),
        lambda: characters_check(1),
        lambda: characters_check(2),
        lambda: characters_check(3),
        lambda: modular_check(1),
        lambda: modular_check(2),
        lambda: twisted_check(2),
        lambda: logmod_check(1),
        lambda: logmod_check(2),
        lambda: automorphism_check(seed),
        lambda: bilinear_check(seed),
    ]
    return out


def emit_report(results: Sequence[CheckResult], seed: Optional[int] = None, config: Optional[dict] = None) -> str:
    doc = {
        "version": __version__,
        "seed": seed,
        "config": _jsonable(config or {}),
        "checks": [_jsonable(r.to_json()) for r in results],
    }
    return json.dumps(doc, indent=2)
