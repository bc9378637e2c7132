"""Cartan data, Weyl orbits and weight-lattice arithmetic.

Weights are tuples of Dynkin labels (coordinates in the fundamental-weight
basis).  Cartan matrices follow Bourbaki numbering with the convention
``cartan[i][j] = <alpha_i, alpha_j^vee>``, so row ``i`` is the simple root
``alpha_i`` written in Dynkin labels and the simple reflection is
``s_i(w) = w - w[i] * alpha_i``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import InvariantViolation, UnsupportedTypeError

Weight = tuple[int, ...]


def cartan_matrix(series: str, rank: int) -> list[list[int]]:
    if rank < 1:
        raise UnsupportedTypeError(f"rank must be positive, got {rank}")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if series == "A":
        for i in range(rank - 1):
            link(i, i + 1)
    elif series == "B" and rank >= 2:
        for i in range(rank - 2):
            link(i, i + 1)
        # alpha_l short
        link(rank - 2, rank - 1, aij=-2, aji=-1)
    elif series == "C" and rank >= 2:
        for i in range(rank - 2):
            link(i, i + 1)
        # alpha_l long
        link(rank - 2, rank - 1, aij=-1, aji=-2)
    elif series == "D" and rank >= 4:
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif series == "E" and rank == 6:
        # 1-3-4-5-6 with 2 attached to 4
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]:
            link(i, j)
    elif series == "F" and rank == 4:
        link(0, 1)
        link(1, 2, aij=-2, aji=-1)
        link(2, 3)
    else:
        raise UnsupportedTypeError(f"unsupported root system type {series}{rank}")
    return a


def _symmetrizer(a: list[list[int]]) -> list[Fraction]:
    """Half squared root lengths ``d_i`` (shortest root has ``d = 1``)."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if a[i][j] and d[j] is None:
                    # (a_i, a_j) = a[i][j] * d_j = a[j][i] * d_i
                    d[j] = d[i] * a[j][i] / a[i][j]
                    queue.append(j)
    m = min(d)
    return [x / m for x in d]


def _inverse(a: list[list[int]]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


@dataclass(frozen=True, eq=False)
class RootSystem:
    series: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    simple_roots: tuple[Weight, ...]
    fundamental_weights: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    positive_roots_simple: tuple[tuple[int, ...], ...]
    weyl_vector: Weight
    half_lengths: tuple[Fraction, ...]
    # integer Gram matrix of the fundamental weights, scaled by gram_scale
    gram: tuple[tuple[int, ...], ...] = field(repr=False)
    gram_scale: int = field(repr=False)
    # integer matrix whose product with a weight gives simple-root coords * coord_scale
    to_simple: tuple[tuple[int, ...], ...] = field(repr=False)
    coord_scale: int = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    def __repr__(self):
        return f"RootSystem({self.name})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.series, self.rank) == (other.series, other.rank)

    def __hash__(self):
        return hash((self.series, self.rank))

    def reflect(self, w: Weight, i: int) -> Weight:
        c = w[i]
        if c == 0:
            return w
        root = self.simple_roots[i]
        return tuple(x - c * r for x, r in zip(w, root))

    def inner(self, u: Weight, v: Weight) -> int:
        """Scaled Killing-type form: ``(u, v) * gram_scale`` as an integer."""
        g = self.gram
        return sum(ui * g[i][j] * vj for i, ui in enumerate(u) if ui
                   for j, vj in enumerate(v) if vj)

    def height(self, w: Weight) -> int:
        """Sum of simple-root coordinates of ``w``, scaled by ``coord_scale``."""
        t = self.to_simple
        return sum(sum(wi * t[i][j] for i, wi in enumerate(w)) for j in range(self.rank))

    def simple_coords(self, w: Weight) -> tuple[Fraction, ...]:
        t = self.to_simple
        return tuple(Fraction(sum(wi * t[i][j] for i, wi in enumerate(w)), self.coord_scale)
                     for j in range(self.rank))

    def is_dominant(self, w: Weight) -> bool:
        return all(x >= 0 for x in w)

    def zero(self) -> Weight:
        return (0,) * self.rank


@lru_cache(maxsize=None)
def build_root_system(series: str, rank: int) -> RootSystem:
    """Fully populated root system of type ``series`` and ``rank``.

    Supported: A_l (l >= 1), B_l, C_l (l >= 2), D_l (l >= 4), E6, F4.
    """
    series = series.upper()
    a = cartan_matrix(series, rank)
    simple = tuple(tuple(row) for row in a)

    # roots in simple-root coordinates: orbit closure of the simple roots
    def pair(c, i):  # <beta, alpha_i^vee> for beta with simple coords c
        return sum(cj * a[j][i] for j, cj in enumerate(c))

    basis = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    seen = set(basis)
    queue = deque(basis)
    while queue:
        c = queue.popleft()
        for i in range(rank):
            k = pair(c, i)
            if k:
                nc = tuple(x - k * (j == i) for j, x in enumerate(c))
                if nc not in seen:
                    seen.add(nc)
                    queue.append(nc)
    pos_simple = sorted((c for c in seen if all(x >= 0 for x in c)),
                        key=lambda c: (sum(c), c))
    pos = tuple(tuple(sum(cj * a[j][i] for j, cj in enumerate(c)) for i in range(rank))
                for c in pos_simple)

    d = _symmetrizer(a)
    inv = _inverse(a)
    # (omega_i, omega_j) = inv[j][i] * d_i  (since (omega_i, alpha_k) = d_k delta_ik)
    gram_q = [[inv[j][i] * d[i] for j in range(rank)] for i in range(rank)]
    scale = lcm(*(x.denominator for row in gram_q for x in row))
    gram = tuple(tuple(int(x * scale) for x in row) for row in gram_q)
    cscale = lcm(*(x.denominator for row in inv for x in row))
    to_simple = tuple(tuple(int(x * cscale) for x in row) for row in inv)

    rs = RootSystem(
        series=series,
        rank=rank,
        cartan_matrix=tuple(tuple(r) for r in a),
        simple_roots=simple,
        fundamental_weights=tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)),
        positive_roots=pos,
        positive_roots_simple=tuple(pos_simple),
        weyl_vector=(1,) * rank,
        half_lengths=tuple(d),
        gram=gram,
        gram_scale=scale,
        to_simple=to_simple,
        coord_scale=cscale,
    )
    return rs


def dominant_representative(rs: RootSystem, w: Weight) -> tuple[Weight, int]:
    """Dominant weight in the Weyl orbit of ``w`` and the sign ``(-1)^len``
    of the reflection word used to reach it."""
    w = tuple(w)
    sign = 1
    while True:
        i = next((k for k, x in enumerate(w) if x < 0), None)
        if i is None:
            return w, sign
        w = rs.reflect(w, i)
        sign = -sign


@lru_cache(maxsize=4096)
def _orbit(rs: RootSystem, dominant: Weight) -> tuple[Weight, ...]:
    seen = {dominant}
    queue = deque([dominant])
    while queue:
        w = queue.popleft()
        for i in range(rs.rank):
            if w[i]:
                v = rs.reflect(w, i)
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return tuple(sorted(seen, reverse=True))


def weyl_orbit(rs: RootSystem, dominant: Weight) -> tuple[Weight, ...]:
    """All weights in the Weyl orbit of a dominant weight (sorted descending)."""
    dominant = tuple(dominant)
    if len(dominant) != rs.rank:
        raise ValueError(f"weight {dominant} has wrong length for {rs.name}")
    if not rs.is_dominant(dominant):
        raise InvariantViolation(f"weyl_orbit needs a dominant weight, got {dominant}")
    return _orbit(rs, dominant)


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise InvariantViolation(f"weyl_dimension needs a dominant weight, got {lam}")
    shifted = tuple(x + 1 for x in lam)
    num = Fraction(1)
    for root in rs.positive_roots:
        num *= Fraction(rs.inner(shifted, root), rs.inner(rs.weyl_vector, root))
    assert num.denominator == 1
    return int(num)


def weyl_group_order(rs: RootSystem) -> int:
    # product over positive roots of (ht + 1) / ht
    out = Fraction(1)
    for c in rs.positive_roots_simple:
        h = sum(c)
        out *= Fraction(h + 1, h)
    return int(out)
