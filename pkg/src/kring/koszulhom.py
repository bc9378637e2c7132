"""The Koszul complex on the kernel generators and its homology.

``K_p = Lambda^p(R(G)^m)`` has basis ``e_I`` for ``I`` a p-subset of
``{0..m-1}``, and ``d(e_I) = sum_k (-1)^k rhohat_{I[k]} e_{I - I[k]}``.
Exactness is certified on homogeneous slices (``e_i`` and every ring
generator in degree 1) with Smith normal forms, so torsion is detected too.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb

from . import lattice
from .branchrules import EmbeddingPair
from .errors import VerificationError, check_capacity
from .repring import RingElement, kernel_generators, kernel_lattice_degreewise

Subset = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class KoszulComplex:
    pair: EmbeddingPair
    m: int
    sequence: tuple[RingElement, ...]
    modules: tuple[tuple[Subset, ...], ...]   # modules[p] = basis subsets of size p

    def differential(self, p: int, subset: Subset) -> list[tuple[RingElement, Subset]]:
        """``d_p(e_I)`` as a list of (coefficient, basis subset of size p - 1)."""
        if p < 1 or p > self.m:
            return []
        out = []
        for k, i in enumerate(subset):
            coef = self.sequence[i] if k % 2 == 0 else -self.sequence[i]
            out.append((coef, subset[:k] + subset[k + 1:]))
        return out

    def apply(self, p: int, vec: dict[Subset, RingElement]) -> dict[Subset, RingElement]:
        out: dict[Subset, RingElement] = {}
        for subset, c in vec.items():
            for coef, target in self.differential(p, subset):
                out[target] = out[target] + c * coef if target in out else c * coef
        return {s: c for s, c in out.items() if not c.is_zero()}

    def ranks(self) -> list[int]:
        return [len(b) for b in self.modules]

    def d_squared_is_zero(self) -> bool:
        ring = self.sequence[0].ring if self.sequence else None
        for p in range(2, self.m + 1):
            for subset in self.modules[p]:
                if self.apply(p - 1, self.apply(p, {subset: ring.const(1)})):
                    return False
        return True


def build_koszul(pair: EmbeddingPair) -> KoszulComplex:
    seq = tuple(kernel_generators(pair))
    m = len(seq)
    modules = tuple(tuple(combinations(range(m), p)) for p in range(m + 1))
    cx = KoszulComplex(pair, m, seq, modules)
    if not cx.d_squared_is_zero():
        raise VerificationError("Koszul differential does not square to zero")
    return cx


# --- homogeneous slices -------------------------------------------------------

def _homogeneous_monomials(nvars: int, deg: int) -> list[tuple[int, ...]]:
    if deg < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), deg):
        v = [0] * nvars
        for i in combo:
            v[i] += 1
        out.append(tuple(v))
    return sorted(out, reverse=True)


def slice_matrices(cx: KoszulComplex, e: int) -> tuple[list[list], list[list[list[int]]]]:
    """Bases of the degree-``e`` slice of each ``K_p`` and the integer matrices
    of ``d_p`` restricted to it (row convention: row = image of a basis element)."""
    ring = cx.sequence[0].ring
    for r in cx.sequence:
        degs = {sum(x) for x in r.terms}
        if degs != {1}:
            raise VerificationError(f"kernel generator {r} is not homogeneous of degree 1")
    bases = []
    for p in range(cx.m + 1):
        monos = _homogeneous_monomials(ring.ngens, e - p)
        bases.append([(s, q) for s in cx.modules[p] for q in monos])
        check_capacity(f"Koszul slice K_{p} in degree {e}", len(bases[-1]))
    mats = [[]]
    for p in range(1, cx.m + 1):
        index = {b: i for i, b in enumerate(bases[p - 1])}
        rows = []
        for subset, q in bases[p]:
            row = [0] * len(bases[p - 1])
            qe = RingElement(ring, {q: 1})
            for coef, target in cx.differential(p, subset):
                for mono, c in (qe * coef).terms.items():
                    row[index[(target, mono)]] += c
            rows.append(row)
        mats.append(rows)
    return bases, mats


def slice_homology(cx: KoszulComplex, e: int) -> list[dict]:
    """Free rank and torsion of ``H_p`` for the degree-``e`` slice, p = 0..m."""
    bases, mats = slice_matrices(cx, e)
    out = []
    for p in range(cx.m + 1):
        dim_p = len(bases[p])
        rank_out = lattice.rank(mats[p], len(bases[p - 1])) if p >= 1 and dim_p else 0
        if p + 1 <= cx.m and bases[p + 1]:
            incoming = mats[p + 1]
            inv = lattice.smith_invariants(incoming, dim_p)
        else:
            inv = []
        free = dim_p - rank_out - len(inv)
        out.append({"rank": free, "torsion": [x for x in inv if x > 1]})
    return out


def truncated_exactness(pair: EmbeddingPair, d: int) -> dict:
    """Koszul homology on every slice of degree <= ``d``.

    Exact means ``H_p = 0`` for p >= 1 in each slice and ``H_0`` has the
    graded rank of R(H) read off from the image of i*.
    """
    if d < 1:
        raise ValueError("degree bound must be at least 1")
    cx = build_koszul(pair)
    kernels = kernel_lattice_degreewise(pair, d)
    image_rank = [len(k.monomials) - k.rank for k in kernels]
    slices = []
    exact = True
    for e in range(d + 1):
        hom = slice_homology(cx, e)
        expected_h0 = image_rank[e] - (image_rank[e - 1] if e else 0)
        ok = (all(h["rank"] == 0 and not h["torsion"] for h in hom[1:])
              and hom[0]["rank"] == expected_h0 and not hom[0]["torsion"])
        exact &= ok
        slices.append({
            "e": e,
            "h_ranks": [h["rank"] for h in hom],
            "torsion": [h["torsion"] for h in hom],
            "rh_graded_rank": expected_h0,
            "exact": ok,
        })
    return {
        "pair": pair.name,
        "d": d,
        "slices": slices,
        "tor_ranks": tor_ranks(pair),
        "pass": exact,
    }


# --- tensoring with Z via the dimension map -----------------------------------------

@dataclass(frozen=True)
class IntegerComplex:
    ranks: tuple[int, ...]
    # differentials[p]: ranks[p] x ranks[p-1] integer matrix, p >= 1
    differentials: tuple[tuple[tuple[int, ...], ...], ...]

    def homology_ranks(self) -> list[int]:
        out = []
        for p, r in enumerate(self.ranks):
            rk_out = lattice.rank(self.differentials[p], self.ranks[p - 1]) if p >= 1 and r else 0
            rk_in = (lattice.rank(self.differentials[p + 1], r)
                     if p + 1 < len(self.ranks) and self.ranks[p + 1] else 0)
            out.append(r - rk_out - rk_in)
        return out

    def is_zero(self) -> bool:
        return all(x == 0 for mat in self.differentials for row in mat for x in row)


def tensor_with_dimension(cx: KoszulComplex) -> IntegerComplex:
    """``K ⊗_{R(G)} Z`` through the dimension homomorphism; every entry is the
    dimension of a kernel generator, so every differential must vanish."""
    mats = [()]
    for p in range(1, cx.m + 1):
        index = {s: i for i, s in enumerate(cx.modules[p - 1])}
        rows = []
        for subset in cx.modules[p]:
            row = [0] * len(cx.modules[p - 1])
            for coef, target in cx.differential(p, subset):
                row[index[target]] += coef.dimension()
            rows.append(tuple(row))
        mats.append(tuple(rows))
    out = IntegerComplex(tuple(len(b) for b in cx.modules), tuple(mats))
    if not out.is_zero():
        raise VerificationError("a differential survives the dimension map; dim(rhohat) != 0")
    return out


def tor_ranks(pair: EmbeddingPair) -> list[int]:
    """Ranks of Tor_p^{R(G)}(Z, R(H)) for p = 0..m."""
    ranks = tensor_with_dimension(build_koszul(pair)).homology_ranks()
    m = pair.m
    if ranks != [comb(m, p) for p in range(m + 1)]:
        raise VerificationError(f"Tor ranks {ranks} are not binomial")
    return ranks


def koszul_ranks(pair: EmbeddingPair) -> list[int]:
    return build_koszul(pair).ranks()

