"""Formal characters: Freudenthal multiplicities, tensor products,
Adams operations, exterior powers and highest-weight decomposition.

A :class:`Character` is stored by its dominant-orbit representatives; the
full weight support is expanded on demand.  Multiplicities are Python ints
and may be negative (virtual characters).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Mapping

import numpy as np

from .errors import InvariantViolation
from .rootdata import RootSystem, Weight, dominant_representative, weyl_dimension, weyl_orbit


@dataclass(frozen=True)
class Character:
    rs: RootSystem
    # dominant weight -> nonzero multiplicity, sorted descending
    items: tuple[tuple[Weight, int], ...]

    @classmethod
    def from_dominant(cls, rs: RootSystem, dom: Mapping[Weight, int]) -> "Character":
        clean = {}
        for w, m in dom.items():
            w = tuple(w)
            if m == 0:
                continue
            if len(w) != rs.rank:
                raise ValueError(f"weight {w} has wrong length for {rs.name}")
            if not rs.is_dominant(w):
                raise InvariantViolation(f"non-dominant key {w} in dominant form")
            clean[w] = int(m)
        return cls(rs, tuple(sorted(clean.items(), reverse=True)))

    @classmethod
    def from_weights(cls, rs: RootSystem, weights: Mapping[Weight, int]) -> "Character":
        """Compress a full weight multiset; raises unless it is Weyl-invariant."""
        full = {tuple(w): int(m) for w, m in weights.items() if m}
        dom = {w: m for w, m in full.items() if rs.is_dominant(w)}
        covered = 0
        for w, m in dom.items():
            orbit = weyl_orbit(rs, w)
            for v in orbit:
                if full.get(v) != m:
                    raise InvariantViolation(
                        f"multiplicity of {v} is {full.get(v, 0)}, expected {m} "
                        f"(orbit of {w}); character is not Weyl-invariant")
            covered += len(orbit)
        if covered != len(full):
            raise InvariantViolation("weights outside the orbits of the dominant support; "
                                     "character is not Weyl-invariant")
        return cls.from_dominant(rs, dom)

    @classmethod
    def trivial(cls, rs: RootSystem, n: int = 1) -> "Character":
        return cls.from_dominant(rs, {rs.zero(): n})

    @property
    def dominant(self) -> dict[Weight, int]:
        return dict(self.items)

    @cached_property
    def weights(self) -> dict[Weight, int]:
        out = {}
        for w, m in self.items:
            for v in weyl_orbit(self.rs, w):
                out[v] = m
        return out

    @property
    def dim(self) -> int:
        return sum(m * len(weyl_orbit(self.rs, w)) for w, m in self.items)

    def multiplicity(self, w: Weight) -> int:
        d, _ = dominant_representative(self.rs, w)
        return self.dominant.get(d, 0)

    def is_zero(self) -> bool:
        return not self.items

    def _check(self, other: "Character"):
        if not isinstance(other, Character):
            return NotImplemented
        if other.rs != self.rs:
            raise ValueError(f"root system mismatch: {self.rs.name} vs {other.rs.name}")

    def __add__(self, other):
        if isinstance(other, int):
            other = Character.trivial(self.rs, other)
        self._check(other)
        acc = defaultdict(int, self.items)
        for w, m in other.items:
            acc[w] += m
        return Character.from_dominant(self.rs, acc)

    __radd__ = __add__

    def __neg__(self):
        return Character(self.rs, tuple((w, -m) for w, m in self.items))

    def __sub__(self, other):
        if isinstance(other, int):
            other = Character.trivial(self.rs, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Character.from_dominant(self.rs, {w: other * m for w, m in self.items})
        return tensor_product(self.rs, self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Character.trivial(self.rs)
        for _ in range(k):
            out = out * self
        return out

    def to_text(self) -> str:
        """One line per dominant orbit, ``<coords> <multiplicity>``, lexicographic."""
        return "\n".join(f"{','.join(map(str, w))} {m}" for w, m in sorted(self.items))

    @classmethod
    def from_text(cls, rs: RootSystem, text: str) -> "Character":
        dom = {}
        for line in text.splitlines():
            if line.strip():
                coords, mult = line.split()
                dom[tuple(int(x) for x in coords.split(","))] = int(mult)
        return cls.from_dominant(rs, dom)


@dataclass(frozen=True)
class IrrDecomposition:
    rs: RootSystem
    terms: dict[Weight, int] = field(hash=False)

    def character(self) -> Character:
        out = Character(self.rs, ())
        for w, c in self.terms.items():
            out = out + c * irreducible_character(self.rs, w)
        return out

    def dims(self) -> dict[Weight, int]:
        return {w: weyl_dimension(self.rs, w) for w in self.terms}


# --- Freudenthal -----------------------------------------------------------

def _dominant_weights_below(rs: RootSystem, lam: Weight) -> list[Weight]:
    """Dominant weights mu <= lam, ordered by increasing depth below lam."""
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for root in rs.positive_roots:
                nu = tuple(a - b for a, b in zip(mu, root))
                if nu not in seen and all(x >= 0 for x in nu):
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    top = rs.height(lam)
    return sorted(seen, key=lambda w: (top - rs.height(w), tuple(-x for x in w)))


@lru_cache(maxsize=512)
def _freudenthal(rs: RootSystem, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    rho = rs.weyl_vector
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_top = rs.inner(lr, lr)
    mult: dict[Weight, int] = {}
    roots = [(root, rs.inner(root, root)) for root in rs.positive_roots]
    for mu in _dominant_weights_below(rs, lam):
        if mu == lam:
            mult[mu] = 1
            continue
        num = 0
        for root, _ in roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, root))
                d, _ = dominant_representative(rs, nu)
                m = mult.get(d, 0)
                if not m:
                    break
                num += m * rs.inner(nu, root)
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        den = norm_top - rs.inner(mr, mr)
        q, r = divmod(2 * num, den)
        if r:
            raise ArithmeticError(f"non-integral Freudenthal multiplicity at {mu}")
        mult[mu] = q
    return tuple(sorted(((w, m) for w, m in mult.items() if m), reverse=True))


def irreducible_character(rs: RootSystem, lam: Weight) -> Character:
    lam = tuple(lam)
    if len(lam) != rs.rank:
        raise ValueError(f"weight {lam} has wrong length for {rs.name}")
    if not rs.is_dominant(lam):
        raise InvariantViolation(f"highest weight must be dominant, got {lam}")
    return Character(rs, _freudenthal(rs, lam))


def decompose_character(rs: RootSystem, c: Character | Mapping[Weight, int]) -> IrrDecomposition:
    """Peel off highest weights until nothing remains.

    ``c`` may be a :class:`Character` or a raw full weight multiset, which is
    validated for Weyl invariance first.
    """
    if not isinstance(c, Character):
        c = Character.from_weights(rs, c)
    elif c.rs != rs:
        raise ValueError(f"root system mismatch: {rs.name} vs {c.rs.name}")
    remaining = defaultdict(int, c.items)
    terms: dict[Weight, int] = {}
    while remaining:
        top = max(remaining, key=lambda w: (rs.height(w), w))
        coeff = remaining[top]
        terms[top] = coeff
        for w, m in irreducible_character(rs, top).items:
            remaining[w] -= coeff * m
            if remaining[w] == 0:
                del remaining[w]
    return IrrDecomposition(rs, dict(sorted(terms.items(), reverse=True)))


# --- ring operations -------------------------------------------------------

def tensor_product(rs: RootSystem, c1: Character, c2: Character) -> Character:
    """Full weight convolution, keeping only dominant sums."""
    if c1.rs != rs or c2.rs != rs:
        raise ValueError("tensor_product: mismatched root systems")
    if c1.is_zero() or c2.is_zero():
        return Character(rs, ())
    w1, w2 = c1.weights, c2.weights
    if len(w1) > len(w2):
        w1, w2 = w2, w1
    keys2 = list(w2)
    arr2 = np.array(keys2, dtype=np.int64)
    mult2 = [w2[k] for k in keys2]
    acc: dict[Weight, int] = defaultdict(int)
    for a, ma in w1.items():
        s = arr2 + np.array(a, dtype=np.int64)
        hits = np.nonzero((s >= 0).all(axis=1))[0]
        for idx in hits.tolist():
            acc[tuple(s[idx].tolist())] += ma * mult2[idx]
    return Character.from_dominant(rs, acc)


def adams_operation(rs: RootSystem, c: Character, j: int) -> Character:
    if j < 1:
        raise ValueError(f"Adams operation index must be positive, got {j}")
    if c.rs != rs:
        raise ValueError("adams_operation: mismatched root system")
    # scaling by j > 0 preserves dominance and stabilizers
    return Character.from_dominant(rs, {tuple(j * x for x in w): m for w, m in c.items})


def exterior_power(rs: RootSystem, c: Character, k: int) -> Character:
    """``lambda^k(c)`` via the Newton identity
    ``k lambda^k = sum_{j=1..k} (-1)^(j-1) lambda^(k-j) psi^j``."""
    if k < 0:
        raise ValueError("exterior power degree must be nonnegative")
    lam = [Character.trivial(rs)]
    for n in range(1, k + 1):
        acc = Character(rs, ())
        for j in range(1, n + 1):
            term = lam[n - j] * adams_operation(rs, c, j)
            acc = acc + term if j % 2 else acc - term
        dom = {}
        for w, m in acc.items:
            q, r = divmod(m, n)
            if r:
                raise ArithmeticError("Newton recursion produced a non-integral multiplicity")
            dom[w] = q
        lam.append(Character.from_dominant(rs, dom))
    return lam[k]
