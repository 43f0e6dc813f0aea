"""Finitely presented associative algebras by word rewriting, and the
11-dimensional algebra on generators W, E, H, F.

Rules are oriented by weighted degree-lexicographic order, so every rule
strictly decreases a word.  The normal words are a basis exactly when all
overlap and inclusion ambiguities resolve, which is checked explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import Echelon
from .scalar import ONE, ZERO, fmt, mpq

Word = Tuple[str, ...]
Terms = Dict[Word, mpq]


class InconsistentRelations(ValueError):
    pass


class PresentedAlgebra:
    def __init__(self, letters: Sequence[str], weights: Dict[str, int], rules: Dict[Word, Terms]):
        self.letters = tuple(letters)
        self.weights = weights
        self._rank = {a: i for i, a in enumerate(self.letters)}
        self.rules: Dict[Word, Terms] = {}
        for lhs, rhs in rules.items():
            for w in rhs:
                if not self._less(w, lhs):
                    raise ValueError(f"rule {lhs} -> {w} does not decrease the word order")
            self.rules[tuple(lhs)] = {tuple(w): mpq(c) for w, c in rhs.items() if c}
        if () in self.rules:
            raise InconsistentRelations("a relation reduces the identity to a lower word, i.e. 1 = 0")
        self._maxlen = max(len(l) for l in self.rules)
        self._cache: Dict[Word, Terms] = {}
        self.basis: List[Word] = self._normal_words()
        self.index = {w: i for i, w in enumerate(self.basis)}

    # -- ordering and reduction ------------------------------------------------------

    def _key(self, w: Word):
        return (sum(self.weights[a] for a in w), len(w), tuple(self._rank[a] for a in w))

    def _less(self, a: Word, b: Word) -> bool:
        return self._key(tuple(a)) < self._key(tuple(b))

    def _find(self, w: Word) -> Optional[Tuple[int, Word]]:
        for i in range(len(w)):
            for L in range(1, min(self._maxlen, len(w) - i) + 1):
                sub = w[i : i + L]
                if sub in self.rules:
                    return i, sub
        return None

    def reduce_word(self, w: Word) -> Terms:
        if w in self._cache:
            return self._cache[w]
        hit = self._find(w)
        if hit is None:
            res = {w: ONE}
        else:
            i, lhs = hit
            res = {}
            for rw, c in self.rules[lhs].items():
                for nw, nc in self.reduce_word(w[:i] + rw + w[i + len(lhs) :]).items():
                    v = res.get(nw, ZERO) + c * nc
                    if v:
                        res[nw] = v
                    else:
                        res.pop(nw, None)
        self._cache[w] = res
        return res

    def reduce(self, terms: Terms) -> Terms:
        out: Terms = {}
        for w, c in terms.items():
            for nw, nc in self.reduce_word(w).items():
                v = out.get(nw, ZERO) + c * nc
                if v:
                    out[nw] = v
                else:
                    out.pop(nw, None)
        return out

    def is_normal(self, w: Word) -> bool:
        return self._find(w) is None

    def _normal_words(self, max_len: int = 64) -> List[Word]:
        words = [()]
        frontier = [()]
        while frontier:
            nxt = []
            for w in frontier:
                for a in self.letters:
                    nw = w + (a,)
                    if self.is_normal(nw):
                        nxt.append(nw)
            if nxt and len(nxt[0]) > max_len:
                raise ValueError("normal words do not terminate; algebra looks infinite dimensional")
            words.extend(nxt)
            frontier = nxt
        return sorted(words, key=self._key)

    # -- confluence ------------------------------------------------------------------

    def ambiguities(self) -> List[Tuple[Word, Word, Word]]:
        """(word, lhs1, lhs2) for every overlap or inclusion of rule left-hand sides."""
        out = []
        lhss = list(self.rules)
        for l1, l2 in product(lhss, lhss):
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    out.append((l1 + l2[k:], l1, l2))
            if l1 != l2 and len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i : i + len(l2)] == l2:
                        out.append((l1, l1, l2))
        return out

    def unresolved_ambiguities(self) -> List[Tuple[Word, Terms]]:
        """Ambiguities whose two one-step reductions reduce to different normal forms."""
        bad = []
        for w, l1, l2 in self.ambiguities():
            r1 = self._one_step(w, l1, 0 if w[: len(l1)] == l1 else None)
            pos2 = next(i for i in range(len(w) - len(l2) + 1) if w[i : i + len(l2)] == l2 and (i > 0 or l1 == w))
            r2 = self._one_step(w, l2, pos2)
            diff = self.reduce(_sub(r1, r2))
            if diff:
                bad.append((w, diff))
        return bad

    def _one_step(self, w: Word, lhs: Word, pos: Optional[int]) -> Terms:
        if pos is None:
            pos = next(i for i in range(len(w) - len(lhs) + 1) if w[i : i + len(lhs)] == lhs)
        return {w[:pos] + rw + w[pos + len(lhs) :]: c for rw, c in self.rules[lhs].items()}

    def is_confluent(self) -> bool:
        return not self.unresolved_ambiguities()

    # -- elements ------------------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def element(self, terms: Dict) -> "AlgebraElement":
        return AlgebraElement(self, self.reduce({tuple(w): mpq(c) for w, c in terms.items() if c}))

    def one(self) -> "AlgebraElement":
        return self.element({(): 1})

    def gen(self, a: str) -> "AlgebraElement":
        return self.element({(a,): 1})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def mul_terms(self, x: Terms, y: Terms) -> Terms:
        out: Terms = {}
        for a, c in x.items():
            for b, d in y.items():
                for w, e in self.reduce_word(a + b).items():
                    v = out.get(w, ZERO) + c * d * e
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
        return out

    def associativity_defects(self) -> int:
        """Number of basis triples (a,b,c) with (ab)c != a(bc)."""
        bad = 0
        B = [{w: ONE} for w in self.basis]
        prods = {(i, j): self.mul_terms(B[i], B[j]) for i in range(len(B)) for j in range(len(B))}
        for i, j, k in product(range(len(B)), repeat=3):
            left = self.mul_terms(prods[(i, j)], B[k])
            right = self.mul_terms(B[i], prods[(j, k)])
            if _sub(left, right):
                bad += 1
        return bad

    def coords(self, x: "AlgebraElement") -> Dict[int, mpq]:
        return {self.index[w]: c for w, c in x.terms.items()}


def _sub(a: Terms, b: Terms) -> Terms:
    out = dict(a)
    for w, c in b.items():
        v = out.get(w, ZERO) - c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


class AlgebraElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: PresentedAlgebra, terms: Terms):
        self.alg = alg
        self.terms = terms

    def _lift(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return other
        return self.alg.one() * mpq(other)

    def __add__(self, other) -> "AlgebraElement":
        o = self._lift(other)
        return AlgebraElement(self.alg, _sub(self.terms, {w: -c for w, c in o.terms.items()}))

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "AlgebraElement":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "AlgebraElement":
        return self._lift(other) - self

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.alg, self.alg.mul_terms(self.terms, other.terms))
        c = mpq(other)
        return AlgebraElement(self.alg, {w: c * v for w, v in self.terms.items()} if c else {})

    def __rmul__(self, other) -> "AlgebraElement":
        return self * other

    def __pow__(self, k: int) -> "AlgebraElement":
        acc = self.alg.one()
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, (int,)) and other == 0:
            return not self.terms
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=self.alg._key):
            parts.append(f"({fmt(self.terms[w])}){''.join(w) or '1'}")
        return " + ".join(parts)


# ---- the algebra on W, E, H, F ---------------------------------------------------------------


def _poly(coeffs: Sequence, tail: Word = ()) -> Terms:
    """sum_k coeffs[k] W^k tail."""
    return {("W",) * k + tail: mpq(c) for k, c in enumerate(coeffs) if c}


def _add(*ts: Terms) -> Terms:
    out: Terms = {}
    for t in ts:
        for w, c in t.items():
            v = out.get(w, ZERO) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def _scale(t: Terms, c) -> Terms:
    return {w: mpq(c) * v for w, v in t.items()}


def triplet_rules() -> Dict[Word, Terms]:
    q = mpq
    lin = [q(-1, 5), q(6, 5)]  # (6W-1)/5
    h2 = [0, 0, q(1, 9), q(8, 9)]  # W^2 (8W+1)/9
    rules: Dict[Word, Terms] = {}
    for x in "EHF":
        rules[(x, "W")] = {("W", x): ONE}
        # (W-1)(8W-3) x = 0  ->  W^2 x = (11 W x - 3 x)/8
        rules[("W", "W", x)] = _poly([q(-3, 8), q(11, 8)], (x,))
    # W^2 (8W+1)(W-1)(8W-3) = 64W^5 - 80W^4 + 13W^3 + 3W^2 = 0
    rules[("W",) * 5] = _poly([0, 0, q(-3, 64), q(-13, 64), q(80, 64)])
    rules[("E", "E")] = {}
    rules[("F", "F")] = {}
    rules[("H", "H")] = _poly(h2)
    rules[("H", "E")] = _poly(lin, ("E",))
    rules[("E", "H")] = _scale(_poly(lin, ("E",)), -1)
    rules[("H", "F")] = _scale(_poly(lin, ("F",)), -1)
    rules[("F", "H")] = _poly(lin, ("F",))
    rules[("E", "F")] = _add(_scale(_poly(lin, ("H",)), -2), _scale(_poly(h2), -2))
    rules[("F", "E")] = _add(_scale(_poly(lin, ("H",)), 2), _scale(_poly(h2), -2))
    return rules


def presented_algebra_build() -> PresentedAlgebra:
    alg = PresentedAlgebra("WEHF", {"W": 1, "E": 3, "H": 3, "F": 3}, triplet_rules())
    return alg


@dataclass
class Idempotents:
    v0: AlgebraElement
    w0: AlgebraElement
    v_m18: AlgebraElement


def idempotents(alg: PresentedAlgebra) -> Idempotents:
    W = alg.gen("W")
    one = alg.one()
    v0 = mpq(-1, 9) * (13 * W - 3) * (W - 1) * (8 * W + 1) * (8 * W - 3)
    w0 = W * (W - 1) * (8 * W + 1) * (8 * W - 3)
    vm = mpq(128, 9) * W * W * (W - 1) * (8 * W - 3)
    return Idempotents(v0, w0, vm)


def abcd(alg: PresentedAlgebra, lam) -> Dict[str, AlgebraElement]:
    W, E, H, F = (alg.gen(a) for a in "WEHF")
    lam = mpq(lam)
    if lam == 1:
        return {
            "A": mpq(1, 90) * W * W * (8 * W + 1) * (8 * W - 3),
            "B": mpq(1, 10) * (8 * W - 3) * H,
            "C": mpq(1, 10) * (8 * W - 3) * E,
            "D": mpq(1, 10) * (8 * W - 3) * F,
        }
    if lam == mpq(3, 8):
        return {
            "A": mpq(-64, 45) * W * W * (8 * W + 1) * (W - 1),
            "B": mpq(-16, 5) * (W - 1) * H,
            "C": mpq(-16, 5) * (W - 1) * E,
            "D": mpq(-16, 5) * (W - 1) * F,
        }
    raise ValueError("lambda must be 1 or 3/8")


# expected products x*y, rows x and columns y, as coefficient maps over {A,B,C,D}
PRODUCT_TABLE: Dict[Tuple[str, str], Dict[str, mpq]] = {}
_h = mpq(1, 2)
for _y, _v in zip("ABCD", ({"A": _h}, {"B": _h}, {"C": _h}, {"D": _h})):
    PRODUCT_TABLE[("A", _y)] = _v
for _y, _v in zip("ABCD", ({"B": _h}, {"A": _h}, {"C": _h}, {"D": -_h})):
    PRODUCT_TABLE[("B", _y)] = _v
for _y, _v in zip("ABCD", ({"C": _h}, {"C": -_h}, {}, {"A": mpq(-1), "B": mpq(-1)})):
    PRODUCT_TABLE[("C", _y)] = _v
for _y, _v in zip("ABCD", ({"D": _h}, {"D": _h}, {"A": mpq(-1), "B": ONE}, {})):
    PRODUCT_TABLE[("D", _y)] = _v


def product_table_check(alg: PresentedAlgebra) -> Dict[str, Dict[Tuple[str, str], bool]]:
    out = {}
    for lam in ("1", "3/8"):
        els = abcd(alg, mpq(lam))
        res = {}
        for (x, y), exp in PRODUCT_TABLE.items():
            target = alg.zero()
            for k, c in exp.items():
                target = target + c * els[k]
            res[(x, y)] = els[x] * els[y] == target
        out[lam] = res
    return out


def matrix_units(alg: PresentedAlgebra, lam, variant: str = "consistent") -> Dict[Tuple[int, int], AlgebraElement]:
    """2x2 matrix units of A_lam built from A, B, C, D.

    With the multiplication table above, 2A is the unit of A_lam, so the diagonal
    units are A +- B.  variant="negated" gives the assignment -A-B, C, D, -A+B,
    whose diagonal entries square to their negatives.
    """
    s = abcd(alg, lam)
    if variant == "consistent":
        return {(1, 1): s["A"] + s["B"], (1, 2): s["C"], (2, 1): -s["D"], (2, 2): s["A"] - s["B"]}
    if variant == "negated":
        return {(1, 1): -s["A"] - s["B"], (1, 2): s["C"], (2, 1): s["D"], (2, 2): -s["A"] + s["B"]}
    raise ValueError(f"unknown variant {variant!r}")


def matrix_unit_check(alg: PresentedAlgebra, lam, variant: str = "consistent") -> bool:
    v = matrix_units(alg, lam, variant)
    for (i, j), (k, l) in product(v, v):
        exp = v[(i, l)] if j == k else alg.zero()
        if v[(i, j)] * v[(k, l)] != exp:
            return False
    return all(v[u] for u in v)


def ideal_spans(alg: PresentedAlgebra) -> Dict[str, List[AlgebraElement]]:
    W, E, H, F = (alg.gen(a) for a in "WEHF")
    idm = idempotents(alg)
    p1 = W * W * (8 * W + 1) * (8 * W - 3)
    p38 = W * W * (8 * W + 1) * (W - 1)
    return {
        "0": [idm.v0, idm.w0],
        "1": [p1] + [(8 * W - 3) * x for x in (E, H, F)],
        "-1/8": [idm.v_m18],
        "3/8": [p38] + [(W - 1) * x for x in (E, H, F)],
    }


def _rank(alg: PresentedAlgebra, els: Iterable[AlgebraElement]) -> int:
    ech = Echelon()
    for x in els:
        ech.add(alg.coords(x))
    return ech.rank


def _in_span(alg: PresentedAlgebra, span: List[AlgebraElement], x: AlgebraElement) -> bool:
    ech = Echelon()
    for s in span:
        ech.add(alg.coords(s))
    return ech.contains(alg.coords(x))


def ideal_decomposition(alg: PresentedAlgebra) -> dict:
    spans = ideal_spans(alg)
    dims = {k: _rank(alg, v) for k, v in spans.items()}
    total = _rank(alg, [x for v in spans.values() for x in v])
    gens = [alg.gen(a) for a in "WEHF"]
    two_sided = {
        k: all(_in_span(alg, v, g * x) and _in_span(alg, v, x * g) for x in v for g in gens)
        for k, v in spans.items()
    }
    orth = all(
        not (x * y)
        for a, va in spans.items()
        for b, vb in spans.items()
        if a != b
        for x in va
        for y in vb
    )
    W = alg.gen("W")
    eig = {}
    for k in ("1", "-1/8", "3/8"):
        lam = mpq(k)
        eig[k] = all(W * x == lam * x for x in spans[k])
    idm = idempotents(alg)
    a0 = {
        "v0_idempotent": idm.v0 * idm.v0 == idm.v0,
        "w0_square_zero": not (idm.w0 * idm.w0),
        "v0_w0": idm.v0 * idm.w0 == idm.w0 and idm.w0 * idm.v0 == idm.w0,
        "w0_nonzero": bool(idm.w0),
    }
    units = {k: matrix_unit_check(alg, mpq(k)) for k in ("1", "3/8")}
    return {
        "dims": dims,
        "direct_sum_rank": total,
        "two_sided": two_sided,
        "pairwise_zero": orth,
        "omega_eigen": eig,
        "A0": a0,
        "matrix_units": units,
        "ok": (
            dims == {"0": 2, "1": 4, "-1/8": 1, "3/8": 4}
            and total == alg.dimension
            and all(two_sided.values())
            and orth
            and all(eig.values())
            and all(a0.values())
            and all(units.values())
        ),
    }
