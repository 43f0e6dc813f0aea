"""Command-line entry point.

Exit status: 0 when every selected check passes, 1 on a failed check, 2 on usage errors.
An optional ``--config`` file holds plain ``key=value`` lines that act as defaults; flags win.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Dict, List, Optional, Sequence

from .fock import Sector, enumerate_basis, format_monomial
from .scalar import fmt, mpq
from . import report as rp

DEFAULTS: Dict[str, object] = {
    "d": 1,
    "seed": 0,
    "samples": 100,
    "cut": None,
    "order": 20,
    "sector": "untwisted",
    "weight": "2",
    "module": "SF+",
    "transform": "S",
    "tau": "i",
}


class UsageError(Exception):
    pass


def load_config(path: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def parse_tau(text: str) -> complex:
    """'i', '2i', '0.2+1.3i', '-0.3+0.9j' -> complex."""
    try:
        tau = _parse_complex(text)
    except ValueError:
        raise UsageError(f"cannot parse tau {text!r}") from None
    if tau.imag <= 0:
        raise UsageError("tau must lie in the upper half-plane")
    return tau


def _parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("j", "i")
    if s.endswith("i"):
        head = s[:-1]
        # split off the imaginary coefficient at the last sign not in an exponent
        cut = max((k for k, ch in enumerate(head) if ch in "+-" and (k == 0 or head[k - 1] not in "eE")), default=-1)
        re_part, im_part = (head[:cut], head[cut:]) if cut > 0 else ("", head)
        if im_part in ("", "+", "-"):
            im_part += "1"
        return complex(float(re_part or 0), float(im_part))
    return complex(float(s), 0)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symfermion", description="Exact checks for symplectic fermion vertex superalgebras.")
    p.add_argument("--config", help="key=value defaults file")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="list Fock-space monomials of one weight")
    b.add_argument("--sector", choices=["untwisted", "twisted", "extended"])
    b.add_argument("--d", type=int)
    b.add_argument("--weight")

    s = sub.add_parser("borcherds", help="sampled Borcherds identity residuals")
    s.add_argument("--d", type=int)
    s.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int)

    c = sub.add_parser("c2", help="dimension of the C2 quotient")
    c.add_argument("--d", type=int)
    c.add_argument("--cut", type=int)

    z = sub.add_parser("zhu", help="Zhu algebra relations and the presented algebra")
    zsub = z.add_subparsers(dest="zcommand", required=True)
    zv = zsub.add_parser("verify", help="certify relations")
    g = zv.add_mutually_exclusive_group(required=True)
    g.add_argument("--rel")
    g.add_argument("--all", action="store_true")
    zv.add_argument("--d", type=int)
    zv.add_argument("--cut", type=int)
    zsub.add_parser("list", help="list relation ids")
    zsub.add_parser("algebra", help="presented algebra: dimension, idempotent table, ideals")

    t = sub.add_parser("twisted", help="Delta coefficients, lowest weights and zero-mode tables")
    t.add_argument("--d", type=int)

    ch = sub.add_parser("characters", help="character coefficients and enumeration cross-check")
    ch.add_argument("--module", choices=list(("SF+", "SF-", "SF(theta)+", "SF(theta)-")))
    ch.add_argument("--d", type=int)
    ch.add_argument("--order", type=int)
    ch.add_argument("--csv", action="store_true")

    m = sub.add_parser("modular", help="numerical S and T transformation residuals")
    m.add_argument("--transform", choices=["S", "T"])
    m.add_argument("--tau")
    m.add_argument("--order", type=int)
    m.add_argument("--d", type=int)

    lg = sub.add_parser("logmod", help="structure of the logarithmic module")
    lg.add_argument("--d", type=int)
    lg.add_argument("--cut", type=int)

    r = sub.add_parser("report", help="run checks and write a JSON report")
    r.add_argument("--all", action="store_true", help="include every relation of the catalog")
    r.add_argument("--json", dest="json_path")
    r.add_argument("--seed", type=int)
    return p


def _opt(args, config, key):
    v = getattr(args, key, None)
    if v is not None:
        return v
    if key in config:
        raw = config[key]
        default = DEFAULTS.get(key)
        return int(raw) if isinstance(default, int) or key == "cut" else raw
    return DEFAULTS.get(key)


def _print_check(r: rp.CheckResult) -> None:
    print(f"{r.status.upper():5s} {r.id}  ({r.wall_time:.2f}s)")


def _finish(results: Sequence[rp.CheckResult]) -> int:
    return 0 if all(r.passed for r in results) else 1


def cmd_basis(args, config) -> int:
    name = str(_opt(args, config, "sector")).upper()
    if name not in Sector.__members__:
        raise UsageError(f"unknown sector {name.lower()!r}")
    sector = Sector[name]
    d = _opt(args, config, "d")
    w = mpq(str(_opt(args, config, "weight")))
    ms = enumerate_basis(sector, w, d)
    for m in ms:
        print(format_monomial(m, sector))
    print(f"# {len(ms)} monomials")
    return 0


def cmd_borcherds(args, config) -> int:
    r = rp.borcherds_check(_opt(args, config, "seed"), _opt(args, config, "samples"), d=_opt(args, config, "d"))
    _print_check(r)
    for bad in r.witness["nonzero"] + r.witness["twisted_nonzero"]:
        print("  residual", bad)
    return _finish([r])


def cmd_c2(args, config) -> int:
    d, cut = _opt(args, config, "d"), _opt(args, config, "cut") or 12
    r = rp.c2_check(d, cut, expected_total=11 if d == 1 else None)
    print(f"total {r.witness['total']}")
    for w, n in sorted(r.witness["profile"].items()):
        print(f"  weight {w}: {n}")
    _print_check(r)
    return _finish([r])


def cmd_zhu(args, config) -> int:
    from .relations import catalog, relation_ids

    if args.zcommand == "list":
        for rid, rel in catalog().items():
            print(f"{rid}\td={rel.d}\t{rel.kind}\t{rel.description}")
        return 0
    if args.zcommand == "algebra":
        r = rp.presented_check()
        w = r.witness
        print(f"dimension {w['dimension']}")
        print("basis " + " ".join(w["basis"]))
        print(f"unresolved ambiguities {w['unresolved_ambiguities']}")
        for lam, ok in w["product_table"].items():
            print(f"A,B,C,D product table at {lam}: {'ok' if ok else 'FAIL'}")
        for lam, ok in w["matrix_units"].items():
            print(f"matrix units at {lam}: {'ok' if ok else 'FAIL'}")
        print("ideal dimensions " + ", ".join(f"{fmt(mpq(k))}: {v}" for k, v in w["ideal_dims"].items()))
        _print_check(r)
        return _finish([r])
    d = getattr(args, "d", None)
    cut = getattr(args, "cut", None)
    if args.rel:
        if args.rel not in catalog():
            raise UsageError(f"unknown relation id {args.rel!r}; see 'zhu list'")
        if d is not None and catalog()[args.rel].d != d:
            raise UsageError(f"relation {args.rel} is stated for d={catalog()[args.rel].d}")
        ids = [args.rel]
    else:
        ids = relation_ids(d)
    results = []
    for rid in ids:
        r = rp.relation_check(rid, None, cut)
        _print_check(r)
        for it in r.witness["items"]:
            if "certificate_size" in it:
                print(f"    {it['label'] or rid}: certificate size {it['certificate_size']}")
            else:
                print(f"    {it}")
        results.append(r)
    return _finish(results)


def cmd_twisted(args, config) -> int:
    from .twisted import delta_coeffs

    d = _opt(args, config, "d")
    c = delta_coeffs(8)
    print("Delta coefficients c_mn (rows m, columns n):")
    for m in range(5):
        print("  " + "  ".join(f"{fmt(c[(m, n)]):>10s}" for n in range(5)))
    r = rp.twisted_check(d)
    w = r.witness
    print(f"lowest weights: even {fmt(w['lowest_even'])}, odd {fmt(w['lowest_odd'])}")
    print(f"L0 mismatches on twisted monomials: {w['l0_mismatches']}")
    for h, n in w["action_table_mismatches"].items():
        print(f"zero-mode table at h={h}: {n} mismatches")
    _print_check(r)
    return _finish([r])


def cmd_characters(args, config) -> int:
    from .characters import character_series, enumerate_vs_character, lowest_weight

    module, d = _opt(args, config, "module"), _opt(args, config, "d")
    N = _opt(args, config, "order")
    chk = enumerate_vs_character(module, d, N)
    h = lowest_weight(module, d)
    if args.csv:
        wr = csv.writer(sys.stdout)
        wr.writerow(["exponent", "coefficient", "state_count"])
        for n, coef, count, _ in chk["rows"]:
            wr.writerow([fmt(h + mpq(d, 12) + n), coef, count])
    else:
        for n, coef, count, ok in chk["rows"]:
            print(f"{fmt(h + mpq(d, 12) + n):>10s} {coef}" + ("" if ok else f"   # count {count}"))
    print(f"{'PASS' if chk['ok'] else 'FAIL'} characters/{module} d={d} N={N}", file=sys.stderr if args.csv else sys.stdout)
    return 0 if chk["ok"] else 1


def cmd_modular(args, config) -> int:
    from .characters import MODULES, modular_residual

    transform = _opt(args, config, "transform")
    tau = parse_tau(str(_opt(args, config, "tau")))
    order = getattr(args, "order", None) or int(config.get("order", 200))
    d = _opt(args, config, "d")
    worst = 0.0
    for item in ("eta", "phi1", "phi2", "phi3") + MODULES:
        res = modular_residual(transform, item, tau, d, order)
        worst = max(worst, res)
        print(f"{item:12s} {res:.3e}")
    ok = worst < 1e-6
    print(f"max residual {worst:.3e}")
    print(f"{'PASS' if ok else 'FAIL'} modular/{transform} tau={tau}")
    return 0 if ok else 1


def cmd_logmod(args, config) -> int:
    from .logmod import nilpotency_report

    d = _opt(args, config, "d")
    cut = _opt(args, config, "cut")
    nil = nilpotency_report(d)
    for w, row in nil["weights"].items():
        print(f"weight {w}: dim {row['dim']}, ranks of (L0-{w})^k {row['ranks']}")
    r = rp.logmod_check(d, cut)
    for k, v in r.witness.items():
        if k not in ("socle",):
            print(f"{k}: {v}")
    _print_check(r)
    return _finish([r])


def cmd_report(args, config) -> int:
    seed = _opt(args, config, "seed")
    results = []
    for fn in rp.all_checks(seed, include_relations=args.all):
        r = fn()
        _print_check(r)
        results.append(r)
    text = rp.emit_report(results, seed, {"all": args.all, **config})
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return _finish(results)


COMMANDS = {
    "basis": cmd_basis,
    "borcherds": cmd_borcherds,
    "c2": cmd_c2,
    "zhu": cmd_zhu,
    "twisted": cmd_twisted,
    "characters": cmd_characters,
    "modular": cmd_modular,
    "logmod": cmd_logmod,
    "report": cmd_report,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad usage
    try:
        config = load_config(args.config) if args.config else {}
        return COMMANDS[args.command](args, config)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"symfermion: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
