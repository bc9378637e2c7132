"""Representation rings as integer polynomial rings in fundamental generators,
the restriction homomorphism between them, and degree-truncated checks that
its kernel is generated by differences of paired generators.

Every generator has polynomial degree 1.  Polynomials are displayed and
enumerated in graded lexicographic order; peel-off from characters follows
the weight order (height, then coordinates).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from . import lattice
from .branchrules import EmbeddingPair, restrict_character, restriction_matrix
from .charcalc import Character, exterior_power, irreducible_character
from .errors import UnsupportedTypeError, VerificationError, check_capacity
from .rootdata import RootSystem, Weight, build_root_system

Exps = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Ring:
    """Z[g_1, ..., g_r] with each generator realised as a character."""
    name: str
    rs: RootSystem
    gen_names: tuple[str, ...]
    gen_chars: tuple[Character, ...]
    # fundamental-weight index of each generator's highest weight
    gen_fundamental: tuple[int, ...]

    def __repr__(self):
        return f"Ring({self.name})"

    @property
    def ngens(self) -> int:
        return len(self.gen_names)

    def gen(self, i: int) -> "RingElement":
        return RingElement(self, {tuple(int(j == i) for j in range(self.ngens)): 1})

    def gens(self) -> list["RingElement"]:
        return [self.gen(i) for i in range(self.ngens)]

    def const(self, c: int) -> "RingElement":
        return RingElement(self, {(0,) * self.ngens: c})

    def index(self, name: str) -> int:
        return self.gen_names.index(name)

    def monomial_weight(self, e: Exps) -> Weight:
        w = [0] * self.rs.rank
        for g, a in enumerate(e):
            w[self.gen_fundamental[g]] += a
        return tuple(w)

    def exps_for_weight(self, w: Weight) -> Exps:
        e = [0] * self.ngens
        for g, f in enumerate(self.gen_fundamental):
            e[g] = w[f]
        return tuple(e)


def _grlex_key(e: Exps):
    return (sum(e), e)


class RingElement:
    """Sparse integer polynomial over a :class:`Ring`; treat as immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[Exps, int]):
        self.ring = ring
        self.terms = {tuple(e): int(c) for e, c in terms.items() if c}
        for e in self.terms:
            if len(e) != ring.ngens:
                raise ValueError("exponent length does not match the number of generators")

    def _coerce(self, other):
        if isinstance(other, int):
            return self.ring.const(other)
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise ValueError(f"ring mismatch: {self.ring.name} vs {other.ring.name}")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = defaultdict(int, self.terms)
        for e, c in other.terms.items():
            acc[e] += c
        return RingElement(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                acc[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return RingElement(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, RingElement) and other.ring is self.ring and other.terms == self.terms

    def __hash__(self):
        return hash((self.ring.name, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exps, int]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Exps:
        """Leading exponent in graded lexicographic order."""
        return max(self.terms, key=_grlex_key)

    def leading_by_weight(self) -> Exps:
        """Monomial whose weight is highest (height, then coordinates)."""
        rs = self.ring.rs
        return max(self.terms, key=lambda e: (rs.height(self.ring.monomial_weight(e)),
                                              self.ring.monomial_weight(e), e))

    def compose(self, images: list["RingElement"], target: Ring) -> "RingElement":
        """Substitute ``images[i]`` for generator ``i``."""
        out = target.const(0)
        powers: dict[tuple[int, int], RingElement] = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(e):
                if a:
                    if (i, a) not in powers:
                        powers[(i, a)] = images[i] ** a
                    term = term * powers[(i, a)]
            out = out + term
        return out

    def evaluate(self, values: list[int]) -> int:
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, a in zip(values, e):
                t *= v ** a
            total += t
        return total

    def dimension(self) -> int:
        return self.evaluate([g.dim for g in self.ring.gen_chars])

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{n}^{a}" if a > 1 else n
                            for n, a in zip(self.ring.gen_names, e) if a)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self):
        return f"<{self.ring.name}: {self}>"


# --- the four rings ---------------------------------------------------------

def _check_generators(rs: RootSystem, chars: list[Character]) -> tuple[int, ...]:
    fund = []
    for c in chars:
        top = max(c.dominant, key=lambda w: (rs.height(w), w))
        if sum(top) != 1 or c.dominant[top] != 1:
            raise VerificationError(f"generator with top weight {top} is not fundamental "
                                    f"with multiplicity one")
        fund.append(top.index(1))
    if sorted(fund) != list(range(rs.rank)):
        raise VerificationError("generators do not cover every fundamental weight once")
    return tuple(fund)


@lru_cache(maxsize=None)
def group_ring(series: str, rank: int) -> Ring:
    rs = build_root_system(series, rank)
    unit = lambda i: tuple(int(j == i) for j in range(rank))  # noqa: E731
    if rs.series == "A":
        v = irreducible_character(rs, unit(0))
        chars = [exterior_power(rs, v, k) for k in range(1, rank + 1)]
        names = [f"x_{k}" for k in range(1, rank + 1)]
        name = f"R(SL{rank + 1})"
    elif rs.series == "C":
        v = irreducible_character(rs, unit(0))
        chars = [exterior_power(rs, v, k) for k in range(1, rank + 1)]
        names = [f"y_{k}" for k in range(1, rank + 1)]
        name = f"R(Sp{2 * rank})"
    elif rs.name == "E6":
        rho = irreducible_character(rs, unit(0))
        rhov = irreducible_character(rs, unit(5))
        chars = [rho, rhov, exterior_power(rs, rho, 2), exterior_power(rs, rhov, 2),
                 exterior_power(rs, rho, 3), irreducible_character(rs, unit(1))]
        names = ["x_rho", "x_rhov", "x_L2rho", "x_L2rhov", "x_L3rho", "x_Ad"]
        name = "R(E6)"
    elif rs.name == "F4":
        rho = irreducible_character(rs, unit(3))
        chars = [rho, exterior_power(rs, rho, 2), exterior_power(rs, rho, 3),
                 irreducible_character(rs, unit(0))]
        names = ["y_rho'", "y_L2rho'", "y_L3rho'", "y_Ad"]
        name = "R(F4)"
    else:
        raise UnsupportedTypeError(f"no representation ring presentation for {rs.name}")
    fund = _check_generators(rs, chars)
    return Ring(name, rs, tuple(names), tuple(chars), fund)


def ring_of(rs: RootSystem) -> Ring:
    return group_ring(rs.series, rs.rank)


@lru_cache(maxsize=None)
def _monomial_char(ring: Ring, e: Exps) -> Character:
    j = next((i for i, a in enumerate(e) if a), None)
    if j is None:
        return Character.trivial(ring.rs)
    rest = tuple(a - (i == j) for i, a in enumerate(e))
    return _monomial_char(ring, rest) * ring.gen_chars[j]


def poly_to_char(ring: Ring, p: RingElement) -> Character:
    out = Character(ring.rs, ())
    for e, c in p.terms.items():
        out = out + c * _monomial_char(ring, e)
    return out


def char_to_poly(ring: Ring, c: Character) -> RingElement:
    """Express a virtual character as a polynomial in the ring generators."""
    rs = ring.rs
    if c.rs != rs:
        raise ValueError(f"character lives on {c.rs.name}, ring is over {rs.name}")
    remaining = defaultdict(int, c.items)
    terms: dict[Exps, int] = {}
    bound = None
    while remaining:
        top = max(remaining, key=lambda w: (rs.height(w), w))
        key = (rs.height(top), top)
        if bound is not None and key >= bound:
            raise VerificationError("peel-off did not decrease; character not expressible")
        bound = key
        coeff = remaining[top]
        e = ring.exps_for_weight(top)
        terms[e] = terms.get(e, 0) + coeff
        for w, m in _monomial_char(ring, e).items:
            remaining[w] -= coeff * m
            if remaining[w] == 0:
                del remaining[w]
        if remaining.get(top):
            raise VerificationError("monomial character does not have multiplicity one at its top")
    return RingElement(ring, terms)


# --- restriction homomorphism -------------------------------------------------

@dataclass(frozen=True, eq=False)
class RestrictionHom:
    pair: EmbeddingPair
    source: Ring
    target: Ring
    images: tuple[RingElement, ...]

    def __call__(self, p: RingElement) -> RingElement:
        if p.ring is not self.source:
            raise ValueError("element is not in the source ring")
        return p.compose(list(self.images), self.target)

    def surjectivity_witness(self) -> dict[str, str]:
        """Target generator name -> source generator whose image leads with it."""
        witness = {}
        for g, img in zip(self.source.gen_names, self.images):
            lead = img.leading_by_weight()
            if sum(lead) == 1 and img.terms[lead] == 1:
                name = self.target.gen_names[lead.index(1)]
                witness.setdefault(name, g)
        return witness

    def linear_lattice_certificate(self) -> bool:
        """True if the linear parts of degree-1 images span Z^r (unimodular)."""
        r = self.target.ngens
        rows = []
        for img in self.images:
            if img.degree > 1:
                return False
            rows.append([img.terms.get(tuple(int(j == t) for j in range(r)), 0) for t in range(r)])
        return lattice.hnf(rows, r) == [[int(i == j) for j in range(r)] for i in range(r)]


def pair_rings(pair: EmbeddingPair) -> tuple[Ring, Ring]:
    return ring_of(pair.big), ring_of(pair.small)


@lru_cache(maxsize=None)
def _restriction_hom(pair: EmbeddingPair) -> RestrictionHom:
    big, small = pair_rings(pair)
    images = tuple(char_to_poly(small, restrict_character(pair, ch)) for ch in big.gen_chars)
    hom = RestrictionHom(pair, big, small, images)
    witness = hom.surjectivity_witness()
    if set(witness) != set(small.gen_names):
        missing = sorted(set(small.gen_names) - set(witness))
        raise VerificationError(f"i* surjectivity witness failed; no image leads with {missing}")
    return hom


def restriction_hom(pair: EmbeddingPair | str, n: int | None = None) -> RestrictionHom:
    if isinstance(pair, str):
        pair = restriction_matrix(pair, n)
    return _restriction_hom(pair)


def kernel_generators(pair: EmbeddingPair) -> list[RingElement]:
    """The m differences of paired generators that generate Ker i*."""
    big, _ = pair_rings(pair)
    if pair.kind == "sl-sp":
        n = pair.n
        gens = [big.gen(k - 1) - big.gen(2 * n - k - 1) for k in range(1, n)]
    else:
        gens = [big.gen(big.index("x_rho")) - big.gen(big.index("x_rhov")),
                big.gen(big.index("x_L2rho")) - big.gen(big.index("x_L2rhov"))]
    if len(gens) != pair.m:
        raise VerificationError("number of kernel generators differs from m")
    hom = restriction_hom(pair)
    for g in gens:
        if not hom(g).is_zero():
            raise VerificationError(f"kernel generator {g} has nonzero image {hom(g)}")
    return gens


# --- degree-truncated kernel lattices --------------------------------------------

def monomials_upto(nvars: int, e: int) -> list[Exps]:
    """Exponent vectors of total degree <= e, in increasing graded-lex order."""
    out = []
    for deg in range(e + 1):
        for combo in combinations_with_replacement(range(nvars), deg):
            v = [0] * nvars
            for i in combo:
                v[i] += 1
            out.append(tuple(v))
    return sorted(out, key=_grlex_key)


def _coeff_rows(polys: Iterable[RingElement], monos: list[Exps]) -> list[list[int]]:
    index = {e: i for i, e in enumerate(monos)}
    rows = []
    for p in polys:
        row = [0] * len(monos)
        for e, c in p.terms.items():
            row[index[e]] = c
        rows.append(row)
    return rows


@dataclass
class KernelSlice:
    e: int
    monomials: list[Exps]
    basis: list[list[int]]   # HNF rows over ``monomials``

    @property
    def rank(self) -> int:
        return len(self.basis)

    def elements(self, ring: Ring) -> list[RingElement]:
        return [RingElement(ring, {m: c for m, c in zip(self.monomials, row) if c})
                for row in self.basis]


def kernel_lattice_degreewise(pair: EmbeddingPair, d: int) -> list[KernelSlice]:
    """For e = 0..d, an integer basis of ``{p in R(G)_{<=e} : i*(p) = 0}``."""
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    hom = restriction_hom(pair)
    big, small = hom.source, hom.target
    slices = []
    for e in range(d + 1):
        monos = monomials_upto(big.ngens, e)
        check_capacity(f"monomials of degree <= {e} in {big.name}", len(monos))
        images = [hom(RingElement(big, {m: 1})) for m in monos]
        targets = sorted({t for img in images for t in img.terms}, key=_grlex_key)
        check_capacity(f"image monomials of degree <= {e} in {small.name}", len(targets))
        rows = _coeff_rows(images, targets)
        slices.append(KernelSlice(e, monos, lattice.left_kernel(rows, len(targets))))
    return slices


def ideal_lattice(pair: EmbeddingPair, e: int) -> list[list[int]]:
    """HNF of ``{sum_i q_i * rhohat_i : deg <= e}`` over monomials of degree <= e."""
    big, _ = pair_rings(pair)
    monos = monomials_upto(big.ngens, e)
    lower = monomials_upto(big.ngens, e - 1) if e >= 1 else []
    gens = kernel_generators(pair)
    products = [RingElement(big, {q: 1}) * g for g in gens for q in lower]
    return lattice.hnf(_coeff_rows(products, monos), len(monos))


def verify_kernel_generation(pair: EmbeddingPair, d: int) -> dict:
    """Compare kernel and ideal lattices degree by degree up to ``d``."""
    if d < 1:
        raise ValueError("degree bound must be at least 1")
    per_degree = []
    for sl in kernel_lattice_degreewise(pair, d):
        ideal = ideal_lattice(pair, sl.e)
        per_degree.append({
            "e": sl.e,
            "kernel_rank": sl.rank,
            "ideal_rank": len(ideal),
            "match": ideal == sl.basis,
        })
    return {
        "pair": pair.name,
        "degree": d,
        "per_degree": per_degree,
        "pass": all(row["match"] for row in per_degree),
    }
