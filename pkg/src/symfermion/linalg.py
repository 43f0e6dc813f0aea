"""Exact sparse linear algebra over Q with provenance tracking.

Vectors are dicts from integer column indices to mpq.  Rows are pivoted on
their largest column, so reduction proceeds from high to low columns and the
expansion of any reduced vector back into the generating vectors is available.
"""

from __future__ import annotations

import heapq
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .scalar import ONE, ZERO, mpq

Vec = Dict[int, mpq]


class Echelon:
    """Incremental row echelon form.

    Each stored row r satisfies  row_r = scale_r * (gen_r - sum_j c_j row_j),
    where gen_r is the vector passed to add() under tag_r.
    """

    def __init__(self) -> None:
        self.rows: List[Vec] = []
        self.pivots: Dict[int, int] = {}
        self._prov: List[Tuple[Hashable, mpq, List[Tuple[int, mpq]]]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Vec, steps: Optional[List[Tuple[int, mpq]]] = None) -> Vec:
        vec = {c: v for c, v in vec.items() if v}
        pivots = self.pivots
        heap = [-c for c in vec if c in pivots]
        heapq.heapify(heap)
        last = None
        while heap:
            c = -heapq.heappop(heap)
            if c == last:
                continue
            last = c
            coef = vec.get(c)
            if not coef:
                continue
            r = pivots[c]
            for col, val in self.rows[r].items():
                nv = vec.get(col, ZERO) - coef * val
                if nv:
                    if col not in vec and col in pivots:
                        heapq.heappush(heap, -col)
                    vec[col] = nv
                else:
                    vec.pop(col, None)
            if steps is not None:
                steps.append((r, coef))
        return vec

    def reduce(self, vec: Vec) -> Vec:
        return self._reduce(vec)

    def add(self, vec: Vec, tag: Hashable = None) -> bool:
        """Insert vec; returns False when it is already in the span."""
        steps: List[Tuple[int, mpq]] = []
        rem = self._reduce(vec, steps)
        if not rem:
            return False
        c = max(rem)
        s = ONE / rem[c]
        self.pivots[c] = len(self.rows)
        self.rows.append({k: v * s for k, v in rem.items()})
        self._prov.append((tag, s, steps))
        return True

    def contains(self, vec: Vec) -> bool:
        return not self._reduce(vec)

    def express(self, vec: Vec) -> Tuple[Vec, Dict[Hashable, mpq]]:
        """Return (remainder, {tag: coefficient}); the combination is exact when remainder is empty."""
        steps: List[Tuple[int, mpq]] = []
        rem = self._reduce(vec, steps)
        if rem:
            return rem, {}
        acc: Dict[int, mpq] = {}
        for r, c in steps:
            acc[r] = acc.get(r, ZERO) + c
        heap = [-r for r in acc]
        heapq.heapify(heap)
        cert: Dict[Hashable, mpq] = {}
        last = None
        while heap:
            r = -heapq.heappop(heap)
            if r == last:
                continue
            last = r
            x = acc.pop(r, ZERO)
            if not x:
                continue
            tag, s, st = self._prov[r]
            xs = x * s
            cert[tag] = cert.get(tag, ZERO) + xs
            for j, cj in st:
                if j not in acc:
                    heapq.heappush(heap, -j)
                acc[j] = acc.get(j, ZERO) - xs * cj
        return {}, {t: c for t, c in cert.items() if c}


def rank(vectors: Iterable[Vec]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def nullspace(images: Sequence[Vec]) -> List[Vec]:
    """Basis of {x : sum_j x_j images[j] = 0}, as sparse vectors over the domain index."""
    ech = Echelon()
    out: List[Vec] = []
    for j, img in enumerate(images):
        rem, cert = ech.express(img)
        if not rem:
            kv: Vec = {j: ONE}
            for t, c in cert.items():
                kv[t] = kv.get(t, ZERO) - c
            out.append({k: v for k, v in kv.items() if v})
        else:
            ech.add(img, j)
    return out


def mat_vec(cols: Sequence[Vec], x: Vec) -> Vec:
    out: Vec = {}
    for j, c in x.items():
        for i, v in cols[j].items():
            nv = out.get(i, ZERO) + c * v
            if nv:
                out[i] = nv
            else:
                out.pop(i, None)
    return out


def dense_rank(mat: Sequence[Sequence]) -> int:
    return rank({j: mpq(v) for j, v in enumerate(row) if v} for row in mat)


def mat_mul(a: Sequence[Sequence[mpq]], b: Sequence[Sequence[mpq]]) -> List[List[mpq]]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), ZERO) for j in range(m)] for i in range(n)]


def is_zero_matrix(a: Sequence[Sequence[mpq]]) -> bool:
    return all(not x for row in a for x in row)
