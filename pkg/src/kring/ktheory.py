"""Graded K-theory of G/H as a free K_*(F)-module, split and twisted.

K-groups of the base field and of division algebras stay symbolic: a basis
element records its subset ``I``, its degree shift ``|I|`` and the Brauer
class of its coefficient algebra ``B_I``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .branchrules import EmbeddingPair
from .charcalc import Character
from .errors import InvariantViolation, UnsupportedTypeError
from .koszulhom import tor_ranks
from .rational import det
from .repring import pair_rings
from .rootdata import RootSystem

TRIVIAL = "F"
A_GAMMA = "A_gamma"
COCYCLE_LABELS = ("gamma", "trivial")


@dataclass(frozen=True)
class E2Entry:
    p: int
    q: int
    rank: int

    @property
    def label(self) -> str:
        return f"Lambda^{self.p}(Z^m) (x) K_{self.q}(F)"


@dataclass(frozen=True)
class E2Page:
    pair: EmbeddingPair
    m: int
    qmax: int
    entries: tuple[E2Entry, ...]
    # degeneration at E2 is a theorem, recorded rather than computed
    degenerate: bool = True
    degeneration_source: str = "multiplicativity of the edge map; all d^r vanish"

    def rank(self, p: int, q: int) -> int:
        if p < 0 or p > self.m or q < 0 or q > self.qmax:
            return 0
        return next(e.rank for e in self.entries if e.p == p and e.q == q)

    def column_ranks(self) -> list[int]:
        return [self.rank(p, 0) for p in range(self.m + 1)]


def e2_page(pair: EmbeddingPair, qmax: int = 2) -> E2Page:
    tor = tor_ranks(pair)
    entries = tuple(E2Entry(p, q, tor[p]) for q in range(qmax + 1) for p in range(len(tor)))
    return E2Page(pair, pair.m, qmax, entries)


@dataclass(frozen=True)
class BrauerClass:
    """Class in the 2-torsion of Br(F) spanned by ``A_gamma``; ``exponent`` is mod 2."""
    exponent: int = 0

    @property
    def label(self) -> str:
        return A_GAMMA if self.exponent % 2 else TRIVIAL

    def __mul__(self, other: "BrauerClass") -> "BrauerClass":
        return BrauerClass((self.exponent + other.exponent) % 2)

    @classmethod
    def trivial(cls):
        return cls(0)

    @classmethod
    def a_gamma(cls):
        return cls(1)


@dataclass(frozen=True)
class BasisElement:
    subset: tuple[int, ...]          # 1-based indices
    shift: int
    coefficient: BrauerClass
    label: str
    tensor_word: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "I": list(self.subset),
            "shift": self.shift,
            "coefficient": self.coefficient.label,
            "tensor_word": list(self.tensor_word),
            "label": self.label,
        }


@dataclass(frozen=True)
class GradedKModule:
    pair: EmbeddingPair
    m: int
    basis: tuple[BasisElement, ...]
    twisted: bool = False

    def shift_histogram(self) -> list[int]:
        hist = [0] * (self.m + 1)
        for b in self.basis:
            hist[b.shift] += 1
        return hist

    def reduced_k1_rank(self) -> int:
        return sum(1 for b in self.basis if b.shift == 1)

    def as_dict(self) -> dict:
        return {
            "pair": self.pair.name,
            "m": self.m,
            "twisted": self.twisted,
            "basis": [b.as_dict() for b in self.basis],
            "poincare": poincare_series(self),
        }


def _subsets(m: int) -> list[tuple[int, ...]]:
    return [s for p in range(m + 1) for s in combinations(range(1, m + 1), p)]


def _generator_symbol(pair: EmbeddingPair) -> str:
    return "t" if pair.kind == "sl-sp" else "s"


def _label(pair: EmbeddingPair, subset, twisted: bool) -> str:
    if not subset:
        return "1"
    sym = _generator_symbol(pair)
    if twisted:
        return "∪".join(f"[{sym}~_{i}]" for i in subset)
    return "∪".join(f"{sym}_{i}" for i in subset)


def _check_shape(module: GradedKModule) -> None:
    m = module.m
    if len(module.basis) != 2 ** m:
        raise InvariantViolation(f"basis has {len(module.basis)} elements, expected 2^{m}")
    if module.shift_histogram() != [comb(m, p) for p in range(m + 1)]:
        raise InvariantViolation("shift histogram is not binomial")


def k_theory_split(pair: EmbeddingPair) -> GradedKModule:
    """K_*(G/H) = K_*(F) ⊗ Lambda(Z^m) with basis the cup products of the
    K_1 generators over all subsets."""
    m = pair.m
    tor = tor_ranks(pair)
    basis = tuple(BasisElement(s, len(s), BrauerClass.trivial(), _label(pair, s, False),
                               tuple(TRIVIAL for _ in s))
                  for s in _subsets(m))
    module = GradedKModule(pair, m, basis)
    _check_shape(module)
    if module.shift_histogram() != tor:
        raise InvariantViolation("basis shifts disagree with the E2 column ranks")
    return module


def poincare_series(module: GradedKModule) -> list[int]:
    """Coefficients of ``sum_I x^{|I|}``, constant term first."""
    return module.shift_histogram()


def format_poly(coeffs: list[int], var: str = "x") -> str:
    parts = []
    for p, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if p == 0 else var if p == 1 else f"{var}^{p}"
        if not mono:
            parts.append(str(c))
        else:
            parts.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(parts) if parts else "0"


# --- center characters and Brauer classes -----------------------------------------

def _coset(rs: RootSystem, w) -> tuple[Fraction, ...]:
    """Class of ``w`` in P/Q: fractional parts of its simple-root coordinates."""
    return tuple(x - (x.numerator // x.denominator) for x in rs.simple_coords(w))


def center_group(rs: RootSystem) -> tuple[int, tuple[int, ...] | None]:
    """Order of Ch(H) = P/Q and a fundamental weight generating it (cyclic case)."""
    order = abs(int(det(rs.cartan_matrix)))
    if order == 1:
        return 1, None
    for w in rs.fundamental_weights:
        cls = _coset(rs, w)
        k = 1
        while any(k * x % 1 for x in cls):
            k += 1
        if k == order:
            return order, w
    raise UnsupportedTypeError(f"weight lattice modulo root lattice of {rs.name} is not cyclic")


def center_character(rs: RootSystem, c: Character) -> tuple[int, int]:
    """Class ``(value, order)`` in Ch(H) by which the center acts on ``c``.

    Raises unless every weight of ``c`` lies in one coset of the root lattice.
    """
    classes = {_coset(rs, w) for w in c.weights}
    if len(classes) != 1:
        raise InvariantViolation(f"character is not Ch-homogeneous: {len(classes)} central classes")
    cls = classes.pop()
    order, gen = center_group(rs)
    if gen is None:
        return 0, 1
    g = _coset(rs, gen)
    for k in range(order):
        if all((k * x - y) % 1 == 0 for x, y in zip(g, cls)):
            return k, order
    raise InvariantViolation("central class is not a multiple of the generator")


def center_character_of_generator(pair: EmbeddingPair, i: int) -> tuple[int, int]:
    """Central character of the i-th (1-based) generator of the subgroup's ring."""
    _, small = pair_rings(pair)
    if not 1 <= i <= small.ngens:
        raise IndexError(f"generator index {i} out of range 1..{small.ngens}")
    return center_character(small.rs, small.gen_chars[i - 1])


def _paired_restriction(pair: EmbeddingPair, i: int) -> Character:
    from .branchrules import restrict_character
    big, _ = pair_rings(pair)
    if pair.kind == "sl-sp":
        return restrict_character(pair, big.gen_chars[i - 1])
    name = ["x_rho", "x_L2rho"][i - 1]
    return restrict_character(pair, big.gen_chars[big.index(name)])


def brauer_class(pair: EmbeddingPair, i: int, cocycle_label: str = "gamma") -> BrauerClass:
    """Brauer class of ``End(V_i)`` twisted by the cocycle, where ``V_i`` carries
    the first representation of the i-th kernel pair restricted to H."""
    if not 1 <= i <= pair.m:
        raise IndexError(f"pair index {i} out of range 1..{pair.m}")
    if cocycle_label not in COCYCLE_LABELS:
        raise ValueError(f"unknown cocycle label {cocycle_label!r}")
    value, _ = center_character(pair.small, _paired_restriction(pair, i))
    if cocycle_label == "trivial" or value == 0:
        return BrauerClass.trivial()
    return BrauerClass.a_gamma()


def k_theory_twisted(pair: EmbeddingPair, cocycle_label: str = "gamma") -> GradedKModule:
    split = k_theory_split(pair)
    classes = {i: brauer_class(pair, i, cocycle_label) for i in range(1, pair.m + 1)}
    basis = []
    for b in split.basis:
        coef = BrauerClass.trivial()
        for i in b.subset:
            coef = coef * classes[i]
        basis.append(BasisElement(b.subset, b.shift, coef, _label(pair, b.subset, True),
                                  tuple(classes[i].label for i in b.subset)))
    module = GradedKModule(pair, pair.m, tuple(basis), twisted=True)
    _check_shape(module)
    return module
