"""Fermionic Fock spaces: canonical monomials, sparse states and the mode action.

A monomial is a tuple of creation factors (level, generator) applied to the
sector vacuum, where the factor (p, g) stands for the mode g(-p).  Canonical
order is level descending, then generator index ascending.  Levels are ints in
the untwisted and extended sectors and half-odd mpq values in the twisted one.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .scalar import HALF, ONE, ZERO, fmt, mpq
from .symplectic import form, gen_label, parse_gen

Factor = Tuple[object, int]
Monomial = Tuple[Factor, ...]


class Sector(Enum):
    UNTWISTED = "untwisted"
    TWISTED = "twisted"
    EXTENDED = "extended"

    @property
    def vacuum_label(self) -> str:
        return {"untwisted": "|0>", "twisted": "|th>", "extended": "|hat>"}[self.value]


class LatticeError(ValueError):
    pass


def _key(f: Factor):
    return (-f[0], f[1])


def level_ok(sector: Sector, n) -> bool:
    den = mpq(n).denominator
    return den == 2 if sector is Sector.TWISTED else den == 1


def norm_level(sector: Sector, n):
    """Store integral levels as int, half-odd levels as mpq."""
    if not level_ok(sector, n):
        raise LatticeError(f"level {n} not on the {sector.value} lattice")
    q = mpq(n)
    return int(q) if q.denominator == 1 else q


def canonicalize(factors: Sequence[Factor], sector: Sector = Sector.UNTWISTED):
    """Sort creation factors; returns (sign, monomial) or None for a repeated mode."""
    facs = []
    for p, g in factors:
        p = norm_level(sector, p)
        if p < 0 or (p == 0 and sector is not Sector.EXTENDED):
            raise LatticeError(f"factor level {p} is not a creation level in {sector.value}")
        facs.append((p, g))
    return _canon(tuple(facs))


def _canon(facs: Tuple[Factor, ...]):
    keys = [_key(f) for f in facs]
    if len(set(keys)) != len(keys):
        return None
    inv = 0
    for i in range(len(keys)):
        ki = keys[i]
        for j in range(i + 1, len(keys)):
            if keys[j] < ki:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(facs, key=_key))


def weight(m: Monomial):
    return sum((p for p, _ in m), 0)


def parity(m: Monomial) -> int:
    """0 for even, 1 for odd."""
    return len(m) % 2


def zero_count(m: Monomial) -> int:
    return sum(1 for p, _ in m if p == 0)


class State:
    """Sparse exact combination of monomials in one sector."""

    __slots__ = ("sector", "terms")

    def __init__(self, terms: Optional[Dict[Monomial, mpq]] = None, sector: Sector = Sector.UNTWISTED):
        self.sector = sector
        self.terms: Dict[Monomial, mpq] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = mpq(c)

    @classmethod
    def vacuum(cls, sector: Sector = Sector.UNTWISTED) -> "State":
        return cls({(): ONE}, sector)

    @classmethod
    def zero(cls, sector: Sector = Sector.UNTWISTED) -> "State":
        return cls(None, sector)

    @classmethod
    def monomial(cls, factors: Sequence[Factor], sector: Sector = Sector.UNTWISTED, coef=1) -> "State":
        r = canonicalize(factors, sector)
        if r is None:
            return cls.zero(sector)
        s, m = r
        return cls({m: s * mpq(coef)}, sector)

    @classmethod
    def _raw(cls, terms: Dict[Monomial, mpq], sector: Sector) -> "State":
        st = cls.__new__(cls)
        st.sector = sector
        st.terms = terms
        return st

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, mpq]]:
        return iter(sorted(self.terms.items(), key=lambda t: monomial_sort_key(t[0])))

    def items(self):
        return self.terms.items()

    def coefficient(self, m: Monomial) -> mpq:
        return self.terms.get(m, ZERO)

    def _check(self, other: "State") -> None:
        if self.sector is not other.sector:
            raise ValueError(f"sector mismatch: {self.sector.value} vs {other.sector.value}")

    def __add__(self, other: "State") -> "State":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return State._raw(out, self.sector)

    def __neg__(self) -> "State":
        return State._raw({m: -c for m, c in self.terms.items()}, self.sector)

    def __sub__(self, other: "State") -> "State":
        return self + (-other)

    def __mul__(self, c) -> "State":
        c = mpq(c)
        if not c:
            return State.zero(self.sector)
        return State._raw({m: c * v for m, v in self.terms.items()}, self.sector)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "State":
        return self * (ONE / mpq(c))

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, State):
            return NotImplemented
        return self.sector is other.sector and self.terms == other.terms

    def __hash__(self):
        return hash((self.sector, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"State({format_state(self)})"

    def weights(self) -> List:
        return sorted({weight(m) for m in self.terms})

    def weight_component(self, w) -> "State":
        return State._raw({m: c for m, c in self.terms.items() if weight(m) == w}, self.sector)

    def homogeneous_components(self) -> List[Tuple[object, "State"]]:
        return [(w, self.weight_component(w)) for w in self.weights()]

    def parity_component(self, par: int) -> "State":
        return State._raw({m: c for m, c in self.terms.items() if len(m) % 2 == par}, self.sector)

    def parities(self) -> List[int]:
        return sorted({len(m) % 2 for m in self.terms})

    def homogeneous_weight(self):
        ws = self.weights()
        if len(ws) != 1:
            raise ValueError("state is not weight-homogeneous")
        return ws[0]

    def homogeneous_parity(self) -> int:
        ps = self.parities()
        if len(ps) > 1:
            raise ValueError("state has mixed parity")
        return ps[0] if ps else 0


def monomial_sort_key(m: Monomial):
    return (weight(m), tuple(_key(f) for f in m))


def add_into(acc: Dict[Monomial, mpq], m: Monomial, c) -> None:
    v = acc.get(m, ZERO) + c
    if v:
        acc[m] = v
    else:
        acc.pop(m, None)


# ---- mode action on monomials -------------------------------------------------


def create(g: int, p, mono: Monomial):
    """g(-p) applied to a canonical monomial: (sign, monomial) or None."""
    k = (-p, g)
    pos = 0
    for f in mono:
        kf = (-f[0], f[1])
        if kf == k:
            return None
        if kf < k:
            pos += 1
        else:
            break
    return (-1 if pos % 2 else 1), mono[:pos] + ((p, g),) + mono[pos:]


def annihilate(g: int, n, mono: Monomial) -> List[Tuple[int, Monomial]]:
    """g(n), n > 0: contract against factors at level n."""
    out = []
    for k, (p, h) in enumerate(mono):
        if p == n:
            f = form(g, h)
            if f:
                c = n * f
                out.append((-c if k % 2 else c, mono[:k] + mono[k + 1 :]))
    return out


def mode_on_monomial(g: int, n, mono: Monomial, sector: Sector) -> List[Tuple[mpq, Monomial]]:
    if n > 0:
        return annihilate(g, n, mono)
    if n == 0 and sector is not Sector.EXTENDED:
        return []
    r = create(g, -n, mono)
    return [] if r is None else [r]


def apply_mode(g: int, n, v: State) -> State:
    """Action of the mode g(n) on a state, n on the sector's full level lattice."""
    n = norm_level(v.sector, n)
    out: Dict[Monomial, mpq] = {}
    for m, c in v.terms.items():
        for s, m2 in mode_on_monomial(g, n, m, v.sector):
            add_into(out, m2, s * c)
    return State._raw(out, v.sector)


def apply_hmode(psi: Dict[int, mpq], n, v: State) -> State:
    """Mode psi(n) for a general h-vector psi."""
    acc = State.zero(v.sector)
    for g, c in psi.items():
        acc = acc + c * apply_mode(g, n, v)
    return acc


def theta(v: State) -> State:
    return State._raw({m: (-c if len(m) % 2 else c) for m, c in v.terms.items()}, v.sector)


# ---- enumeration --------------------------------------------------------------


def sector_levels(sector: Sector, top) -> List:
    """Creation levels up to top, in descending order."""
    if sector is Sector.TWISTED:
        out = []
        p = HALF
        while p <= top:
            out.append(p)
            p += 1
        return out[::-1]
    start = 0 if sector is Sector.EXTENDED else 1
    return list(range(int(top), start - 1, -1)) if top >= start else []


@lru_cache(maxsize=None)
def _enumerate(sector: Sector, w, d: int) -> Tuple[Monomial, ...]:
    modes = [(p, g) for p in sector_levels(sector, w) for g in range(2 * d)]
    out: List[Monomial] = []

    def rec(start: int, remaining, acc: List[Factor]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            # zero modes still extend the monomial without changing weight
        for i in range(start, len(modes)):
            p, g = modes[i]
            if p > remaining:
                continue
            if p == 0 and remaining != 0:
                break
            acc.append((p, g))
            rec(i + 1, remaining - p, acc)
            acc.pop()

    rec(0, w, [])
    return tuple(sorted(set(out), key=monomial_sort_key))


def enumerate_basis(sector: Sector, w, d: int) -> List[Monomial]:
    """All canonical monomials of raw weight w, in a deterministic lexicographic order."""
    if sector is Sector.TWISTED:
        if mpq(w) < 0 or (mpq(w) * 2).denominator != 1:
            raise LatticeError("twisted weights are in (1/2)Z>=0")
        w = mpq(w)
        w = int(w) if w.denominator == 1 else w
    else:
        if mpq(w).denominator != 1 or w < 0:
            raise LatticeError("weights are nonnegative integers")
        w = int(w)
    return list(_enumerate(sector, w, d))


@lru_cache(maxsize=None)
def _slot_counts(sector: Sector, w, d: int) -> Tuple[int, int]:
    # subsets of creation slots (level, generator) with level sum w, split by parity
    dp: Dict[Tuple[object, int], int] = {(ZERO, 0): 1}
    for p in sector_levels(sector, w):
        for _ in range(2 * d):
            nxt = dict(dp)
            for (s, par), c in dp.items():
                if s + p <= w:
                    k = (s + p, 1 - par)
                    nxt[k] = nxt.get(k, 0) + c
            dp = nxt
    w = mpq(w)
    return dp.get((w, 0), 0), dp.get((w, 1), 0)


def graded_dimension(sector: Sector, par: Optional[int], w, d: int) -> int:
    """Number of basis monomials of raw weight w; par is 0 (even), 1 (odd) or None (both).

    Counted by a subset-sum over creation slots rather than by enumeration.
    """
    if not level_ok(sector, w) and not (sector is Sector.TWISTED and mpq(w).denominator == 1):
        return 0
    even, odd = _slot_counts(sector, mpq(w), d)
    return even + odd if par is None else (even, odd)[par]


def parity_basis(par: int, w, d: int, sector: Sector = Sector.UNTWISTED) -> List[Monomial]:
    return [m for m in enumerate_basis(sector, w, d) if len(m) % 2 == par]


# ---- serialization ------------------------------------------------------------


def format_monomial(m: Monomial, sector: Sector = Sector.UNTWISTED) -> str:
    parts = [f"{gen_label(g)}({fmt(-p)})" for p, g in m]
    parts.append(sector.vacuum_label)
    return " ".join(parts)


def format_state(v: State) -> str:
    if not v:
        return "0"
    return " + ".join(f"({fmt(c)}) {format_monomial(m, v.sector)}" for m, c in v)


_VACUA = {s.vacuum_label: s for s in Sector}


def parse_monomial(text: str) -> Tuple[int, Monomial, Sector]:
    """Inverse of format_monomial, returning (sign, canonical monomial, sector)."""
    toks = text.split()
    if not toks or toks[-1] not in _VACUA:
        raise ValueError(f"missing vacuum in {text!r}")
    sector = _VACUA[toks[-1]]
    facs = []
    for t in toks[:-1]:
        label, rest = t.split("(")
        lvl = mpq(rest.rstrip(")"))
        facs.append((-lvl, parse_gen(label)))
    r = canonicalize(facs, sector)
    if r is None:
        return 0, (), sector
    return r[0], r[1], sector


def state_to_json(v: State) -> List[List[str]]:
    return [[fmt(c), format_monomial(m, v.sector)] for m, c in v]
