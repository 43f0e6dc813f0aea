"""The symplectic space h with canonical basis e^1..e^d, f^1..f^d.

Generators are indexed 0..2d-1 with e^i -> 2(i-1) and f^i -> 2(i-1)+1, so the
index order is e^1 < f^1 < e^2 < f^2 < ...
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Sequence, Tuple

from .scalar import ONE, ZERO, mpq

HVector = Mapping[int, "mpq"]


def gen_index(kind: str, i: int) -> int:
    if kind not in ("e", "f") or i < 1:
        raise ValueError(f"bad generator {kind}{i}")
    return 2 * (i - 1) + (kind == "f")


def gen_label(g: int) -> str:
    return ("e" if g % 2 == 0 else "f") + str(g // 2 + 1)


def parse_gen(label: str) -> int:
    return gen_index(label[0], int(label[1:]))


def form(g: int, h: int) -> int:
    """Skew form on generator indices."""
    if g // 2 != h // 2 or g == h:
        return 0
    return -1 if g % 2 == 0 else 1


@dataclass(frozen=True)
class SymplecticSpace:
    d: int
    matrix: Tuple[Tuple[mpq, ...], ...]

    @property
    def dim(self) -> int:
        return 2 * self.d

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(gen_label(g) for g in range(self.dim))

    def pair(self, psi: HVector, phi: HVector) -> mpq:
        return skew_form(psi, phi, self.d)


def make_space(d: int) -> SymplecticSpace:
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive integer")
    n = 2 * d
    mat = tuple(tuple(mpq(form(g, h)) for h in range(n)) for g in range(n))
    return SymplecticSpace(d, mat)


def hvec(**coords) -> Dict[int, mpq]:
    """hvec(e1=1, f1=-2) -> {0: 1, 1: -2}."""
    out: Dict[int, mpq] = {}
    for label, c in coords.items():
        c = mpq(c)
        if c:
            out[parse_gen(label)] = c
    return out


def basis_vector(g: int) -> Dict[int, mpq]:
    return {g: ONE}


def skew_form(psi: HVector, phi: HVector, d: int | None = None) -> mpq:
    if d is not None:
        top = 2 * d
        if any(g >= top or g < 0 for g in list(psi) + list(phi)):
            raise ValueError("vector outside the space of dimension 2d")
    acc = ZERO
    for g, a in psi.items():
        for h, b in phi.items():
            f = form(g, h)
            if f:
                acc += f * a * b
    return acc


@dataclass(frozen=True)
class LinearMap:
    """Matrix acting on generator coordinates; column h is the image of generator h."""

    matrix: Tuple[Tuple[mpq, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "LinearMap":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        return cls(tuple(tuple(mpq(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def image(self, g: int) -> Dict[int, mpq]:
        return {i: self.matrix[i][g] for i in range(self.dim) if self.matrix[i][g]}

    def apply(self, psi: HVector) -> Dict[int, mpq]:
        out: Dict[int, mpq] = {}
        for g, c in psi.items():
            for i, m in self.image(g).items():
                out[i] = out.get(i, ZERO) + c * m
        return {i: c for i, c in out.items() if c}


def is_symplectic(g: LinearMap) -> bool:
    n = g.dim
    if n % 2:
        return False
    imgs = [g.image(h) for h in range(n)]
    return all(
        skew_form(imgs[a], imgs[b]) == form(a, b) for a in range(n) for b in range(n)
    )


def swap_map(d: int) -> LinearMap:
    """(e^i, f^i) -> (f^i, -e^i)."""
    n = 2 * d
    rows = [[0] * n for _ in range(n)]
    for i in range(d):
        e, f = 2 * i, 2 * i + 1
        rows[f][e] = 1
        rows[e][f] = -1
    return LinearMap.from_rows(rows)


def rotation_map(d: int) -> LinearMap:
    """(e^i, f^i) -> (e^i + f^i, (f^i - e^i)/2), a rational stand-in for the 45 degree rotation.

    The image of f must be (f - e)/2, not (e - f)/2: the latter pairs to +1 with e + f.
    """
    n = 2 * d
    rows = [[mpq(0)] * n for _ in range(n)]
    for i in range(d):
        e, f = 2 * i, 2 * i + 1
        rows[e][e] = mpq(1)
        rows[f][e] = mpq(1)
        rows[e][f] = mpq(-1, 2)
        rows[f][f] = mpq(1, 2)
    return LinearMap.from_rows(rows)


def random_symplectic(d: int, rng, steps: int = 6) -> LinearMap:
    """Product of random rational symplectic transvections and block shears."""
    n = 2 * d
    cur = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        v = {g: mpq(rng.randint(-2, 2), rng.randint(1, 3)) for g in range(n)}
        v = {g: c for g, c in v.items() if c}
        if not v:
            continue
        t = mpq(rng.choice([-2, -1, 1, 2]), rng.randint(1, 2))
        # transvection x -> x + t <x, v> v
        step = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
        for h in range(n):
            coef = t * skew_form({h: ONE}, v)
            if coef:
                for i, c in v.items():
                    step[i][h] += coef * c
        cur = [[sum((step[i][k] * cur[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]
    return LinearMap(tuple(tuple(r) for r in cur))
