"""Restriction of characters along Sp(2n) in SL(2n) and F4 in E6.

Both subgroups are fixed points of a diagram involution of the big group.
The weight projection is derived by folding: a weight of the big torus is
restricted to the involution-fixed Cartan subalgebra and paired against the
coroots of the folded root system, which for an orbit of mutually
orthogonal nodes is the sum of the coroots in that orbit.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .charcalc import Character
from .errors import UnsupportedTypeError, VerificationError
from .rootdata import RootSystem, Weight, build_root_system


@dataclass(frozen=True, eq=False)
class EmbeddingPair:
    name: str            # "SL4/Sp4", ..., "E6/F4"
    kind: str            # "sl-sp" or "e6-f4"
    n: int | None
    big: RootSystem
    small: RootSystem
    # small_weight[t] = sum_i big_weight[i] * weight_projection[i][t]
    weight_projection: tuple[tuple[int, ...], ...]
    involution: tuple[int, ...]
    m: int

    def __repr__(self):
        return f"EmbeddingPair({self.name})"

    def project(self, w: Weight) -> Weight:
        p = self.weight_projection
        return tuple(sum(w[i] * p[i][t] for i in range(len(w)) if w[i])
                     for t in range(self.small.rank))


def _fold(big: RootSystem, sigma: tuple[int, ...], small: RootSystem) -> tuple[tuple[int, ...], ...]:
    a = big.cartan_matrix
    orbits = []
    for i in range(big.rank):
        orb = tuple(sorted({i, sigma[i]}))
        if orb not in orbits:
            orbits.append(orb)
    for orb in orbits:
        if any(a[i][j] for i in orb for j in orb if i != j):
            raise UnsupportedTypeError("folding along an orbit of adjacent nodes is not supported")
    if len(orbits) != small.rank:
        raise VerificationError("orbit count does not match the rank of the subgroup")

    def folded(o, p):  # <beta_o, beta_p^vee>, coroot of p = sum of coroots in p
        i = o[0]
        return sum(a[i][j] for j in p)

    target = small.cartan_matrix
    for perm in permutations(range(len(orbits))):
        ordered = [orbits[k] for k in perm]
        if all(folded(ordered[s], ordered[t]) == target[s][t]
               for s in range(small.rank) for t in range(small.rank)):
            proj = [[0] * small.rank for _ in range(big.rank)]
            for t, orb in enumerate(ordered):
                for i in orb:
                    proj[i][t] = 1
            return tuple(tuple(row) for row in proj)
    raise VerificationError(f"folded Cartan matrix of {big.name} does not match {small.name}")


@lru_cache(maxsize=None)
def restriction_matrix(kind: str, n: int | None = None) -> EmbeddingPair:
    """The embedding pair ``kind`` ("sl-sp" with ``n >= 2``, or "e6-f4")."""
    kind = kind.lower()
    if kind == "sl-sp":
        if n is None or n < 2:
            raise UnsupportedTypeError(f"sl-sp needs n >= 2, got {n}")
        big = build_root_system("A", 2 * n - 1)
        small = build_root_system("C", n)
        sigma = tuple(2 * n - 2 - i for i in range(2 * n - 1))
        name = f"SL{2 * n}/Sp{2 * n}"
    elif kind == "e6-f4":
        n = None
        big = build_root_system("E", 6)
        small = build_root_system("F", 4)
        # Bourbaki nodes 1<->6, 3<->5; 2, 4 fixed
        sigma = (5, 1, 4, 3, 2, 0)
        name = "E6/F4"
    else:
        raise UnsupportedTypeError(f"unknown embedding pair {kind!r}")
    proj = _fold(big, sigma, small)
    pair = EmbeddingPair(name, kind, n, big, small, proj, sigma, big.rank - small.rank)
    # roots of the big group must land on roots of the subgroup
    small_roots = set(small.positive_roots) | {tuple(-x for x in r) for r in small.positive_roots}
    for r in big.positive_roots:
        if pair.project(r) not in small_roots:
            raise VerificationError(f"root {r} of {big.name} does not restrict to a root")
    return pair


def restrict_character(pair: EmbeddingPair, c: Character) -> Character:
    """Weightwise projection of a character of ``pair.big`` to ``pair.small``."""
    if c.rs != pair.big:
        raise ValueError(f"character lives on {c.rs.name}, expected {pair.big.name}")
    acc: dict[Weight, int] = defaultdict(int)
    for w, m in c.weights.items():
        acc[pair.project(w)] += m
    return Character.from_weights(pair.small, acc)
