"""Zhu algebra and C2 machinery for the even part SF+.

O(V) is spanned by a o b = sum_i C(k,i) a_(i-2) b and C2(V) by a_(-2) b.  Both
are handled over a finite graded basis cut by total weight, with membership
certificates obtained from an exact echelon form.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .fock import Monomial, Sector, State, enumerate_basis, format_monomial, weight
from .linalg import Echelon, Vec
from .scalar import ONE, ZERO, fmt, mpq
from .vertex import field_mode, virasoro


class CutError(ValueError):
    pass


# ---- products -----------------------------------------------------------------


def _homogeneous(a: State) -> int:
    if not a:
        return 0
    return int(a.homogeneous_weight())


def circ_product(a: State, b: State) -> State:
    k = _homogeneous(a)
    acc = State.zero()
    for i in range(k + 1):
        acc = acc + comb(k, i) * field_mode(a, i - 2, b)
    return acc


def star_product(a: State, b: State) -> State:
    """Representative of [a]*[b]; a may be inhomogeneous (split by weight)."""
    acc = State.zero()
    for _, comp in a.homogeneous_components():
        k = int(comp.homogeneous_weight())
        for i in range(k + 1):
            acc = acc + comb(k, i) * field_mode(comp, i - 1, b)
    return acc


def star(*xs: State) -> State:
    """Left-nested star product [x1]*([x2]*(...))."""
    acc = xs[-1]
    for x in reversed(xs[:-1]):
        acc = star_product(x, acc)
    return acc


def phi_involution(a: State, d: int) -> State:
    """e^{L1} (-1)^{L0} a, applied per weight component."""
    out = State.zero()
    for w, comp in a.homogeneous_components():
        cur = comp * (-1 if int(w) % 2 else 1)
        j = 0
        while cur:
            out = out + cur * mpq(1, factorial(j))
            cur = virasoro(1, cur, d)
            j += 1
    return out


def c2_product(a: State, b: State) -> State:
    """Representative of the commutative product abar . bbar, i.e. a_(-1) b."""
    return field_mode(a, -1, b)


# ---- graded bases ---------------------------------------------------------------


class GradedBasis:
    """Monomials of SF+ of weight <= cut, indexed by (weight, lexicographic) order."""

    def __init__(self, d: int, cut: int, support: Optional[FrozenSet[int]] = None):
        self.d = d
        self.cut = cut
        self.support = support
        self.by_weight: Dict[int, List[Monomial]] = {}
        self.monos: List[Monomial] = []
        self.index: Dict[Monomial, int] = {}
        for w in range(cut + 1):
            ms = [
                m
                for m in enumerate_basis(Sector.UNTWISTED, w, d)
                if len(m) % 2 == 0 and (support is None or all(g in support for _, g in m))
            ]
            self.by_weight[w] = ms
            for m in ms:
                self.index[m] = len(self.monos)
                self.monos.append(m)

    def dims(self) -> List[int]:
        return [len(self.by_weight[w]) for w in range(self.cut + 1)]

    def vec(self, v: State) -> Vec:
        out: Vec = {}
        for m, c in v.terms.items():
            j = self.index.get(m)
            if j is None:
                raise CutError(f"monomial {format_monomial(m)} outside the graded basis (cut {self.cut})")
            out[j] = c
        return out

    def state(self, vec: Vec) -> State:
        return State({self.monos[j]: c for j, c in vec.items()})


# ---- C2 quotient ------------------------------------------------------------------


class C2Quotient:
    """C2(V)_n for n <= cut, with a fixed complement basis of non-pivot monomials."""

    def __init__(self, d: int, cut: int, max_a_weight: Optional[int] = None):
        self.d = d
        self.cut = cut
        self.basis = GradedBasis(d, cut)
        self.ech: Dict[int, Echelon] = {}
        B = self.basis.by_weight
        for n in range(cut + 1):
            ech = Echelon()
            for k in range(2, n):
                l = n - 1 - k
                if l < 0 or (max_a_weight is not None and k > max_a_weight):
                    continue
                for am in B[k]:
                    a = State({am: ONE})
                    for bm in B[l]:
                        ech.add(self.basis.vec(field_mode(a, -2, State({bm: ONE}))))
            self.ech[n] = ech

    def dims(self) -> Dict[int, int]:
        return {n: len(self.basis.by_weight[n]) - self.ech[n].rank for n in range(self.cut + 1)}

    def total(self) -> int:
        return sum(self.dims().values())

    def complement(self, n: int) -> List[Monomial]:
        piv = self.ech[n].pivots
        return [m for m in self.basis.by_weight[n] if self.basis.index[m] not in piv]

    def reduce(self, v: State) -> State:
        """Canonical representative of vbar supported on the complement monomials."""
        if v and max(v.weights()) > self.cut:
            raise CutError(f"weight exceeds cut {self.cut}")
        out = State.zero()
        for w, comp in v.homogeneous_components():
            out = out + self.basis.state(self.ech[int(w)].reduce(self.basis.vec(comp)))
        return out

    def coordinates(self, v: State) -> Dict[int, Tuple[mpq, ...]]:
        r = self.reduce(v)
        return {
            n: tuple(r.coefficient(m) for m in self.complement(n))
            for n in range(self.cut + 1)
            if self.complement(n)
        }

    def is_zero(self, v: State) -> bool:
        return not self.reduce(v)


@lru_cache(maxsize=8)
def c2_quotient(d: int, cut: int) -> C2Quotient:
    return C2Quotient(d, cut)


def c2_quotient_dims(d: int, cut: int) -> Tuple[Dict[int, int], int]:
    q = c2_quotient(d, cut)
    dims = q.dims()
    return dims, sum(dims.values())


def c2_reduce(v: State, cut: int, d: int = 1) -> Dict[int, Tuple[mpq, ...]]:
    return c2_quotient(d, cut).coordinates(v)


# ---- O(V) membership ----------------------------------------------------------------


@dataclass
class MembershipCertificate:
    terms: List[Tuple[Monomial, Monomial, mpq]]
    cut: int

    found = True

    def evaluate(self) -> State:
        acc = State.zero()
        for am, bm, c in self.terms:
            acc = acc + c * circ_product(State({am: ONE}), State({bm: ONE}))
        return acc

    def to_json(self) -> dict:
        return {
            "cut": self.cut,
            "size": len(self.terms),
            "terms": [[format_monomial(a), format_monomial(b), fmt(c)] for a, b, c in self.terms],
        }


@dataclass
class NotFoundWithinCut:
    cut: int
    residual: State

    found = False

    def to_json(self) -> dict:
        return {"cut": self.cut, "not_found": True, "residual_terms": len(self.residual)}


class OPool:
    """Echelon form of {a o b : a, b basis monomials of SF+, wt a + wt b + 1 <= cut}."""

    def __init__(self, d: int, cut: int, support: Optional[FrozenSet[int]] = None):
        t0 = time.perf_counter()
        self.d = d
        self.cut = cut
        self.basis = GradedBasis(d, cut, support)
        self.ech = Echelon()
        self.pairs = 0
        B = self.basis.by_weight
        for total in range(3, cut + 1):
            for k in range(2, total):
                l = total - 1 - k
                for am in B[k]:
                    a = State({am: ONE})
                    for bm in B[l]:
                        self.pairs += 1
                        v = circ_product(a, State({bm: ONE}))
                        self.ech.add(self.basis.vec(v), (am, bm))
        self.build_time = time.perf_counter() - t0

    def dimension_within_cut(self) -> int:
        return len(self.basis.monos) - self.ech.rank

    def reduce(self, v: State) -> State:
        return self.basis.state(self.ech.reduce(self.basis.vec(v)))

    def certify(self, v: State):
        if v and max(v.weights()) > self.cut:
            return NotFoundWithinCut(self.cut, v)
        rem, cert = self.ech.express(self.basis.vec(v))
        if rem:
            return NotFoundWithinCut(self.cut, self.basis.state(rem))
        terms = sorted(
            ((a, b, c) for (a, b), c in cert.items()),
            key=lambda t: (weight(t[0]) + weight(t[1]), t[0], t[1]),
        )
        return MembershipCertificate(terms, self.cut)


_POOLS: Dict[Tuple[int, int, Optional[FrozenSet[int]]], OPool] = {}


def o_pool(d: int, cut: int, support: Optional[FrozenSet[int]] = None) -> OPool:
    key = (d, cut, support)
    if key not in _POOLS:
        _POOLS[key] = OPool(d, cut, support)
    return _POOLS[key]


def o_membership(v: State, cut: int, d: int = 1, support: Optional[FrozenSet[int]] = None):
    return o_pool(d, cut, support).certify(v)
