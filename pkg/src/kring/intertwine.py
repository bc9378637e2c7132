"""Explicit matrices behind the K_1 generators of SL(2n)/Sp(2n).

The symplectic form pairs ``e_i`` with ``e_{n+i}``: ``omega(e_i, e_{n+i}) = 1``
for ``i = 1..n`` (0-based in code: ``i`` with ``n + i``).  ``phi = Lambda^k``
and ``psi = Lambda^{2n-k}`` are compared through the wedge map
``alpha(x) = x ∧ omega^{(n-k)}`` (divided power), which satisfies
``alpha phi(h) = psi(h) alpha`` for every ``h`` in Sp(2n).  All arithmetic
is exact over the rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from . import rational as Q
from .branchrules import restrict_character, restriction_matrix
from .charcalc import decompose_character
from .errors import VerificationError, check_capacity
from .repring import group_ring
from .rational import QMatrix

Subset = tuple[int, ...]


def _unit(size: int, i: int, j: int, c=1) -> QMatrix:
    m = Q.zeros(size, size)
    m[i][j] = Fraction(c)
    return m


def chevalley_generators(n: int) -> tuple[list[QMatrix], list[QMatrix], list[QMatrix]]:
    """(e, f, h) for sp(2n) on F^{2n}, Bourbaki order (alpha_n long)."""
    size = 2 * n
    es, fs = [], []
    for i in range(n - 1):
        e = Q.sub(_unit(size, i, i + 1), _unit(size, n + i + 1, n + i))
        es.append(e)
    es.append(_unit(size, n - 1, 2 * n - 1))
    for e in es:
        fs.append([list(col) for col in zip(*e)])
    hs = [Q.bracket(e, f) for e, f in zip(es, fs)]
    return es, fs, hs


def symplectic_form(n: int) -> QMatrix:
    j = Q.zeros(2 * n, 2 * n)
    for i in range(n):
        j[i][n + i] = Fraction(1)
        j[n + i][i] = Fraction(-1)
    return j


def wedge_basis(size: int, k: int) -> list[Subset]:
    return list(combinations(range(size), k))


def _sort_sign(seq: list[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``seq`` (0 if it has repeats)."""
    if len(set(seq)) != len(seq):
        return 0, ()
    sign = 1
    arr = list(seq)
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign, tuple(arr)


def derivation_matrix(x: QMatrix, k: int) -> QMatrix:
    """Action of a Lie algebra element on Lambda^k by derivations."""
    size = len(x)
    basis = wedge_basis(size, k)
    index = {s: i for i, s in enumerate(basis)}
    out = Q.zeros(len(basis), len(basis))
    for col, s in enumerate(basis):
        for pos, src in enumerate(s):
            for tgt in range(size):
                c = x[tgt][src]
                if not c:
                    continue
                seq = list(s)
                seq[pos] = tgt
                sign, srt = _sort_sign(seq)
                if sign:
                    out[index[srt]][col] += sign * c
    return out


def compound_matrix(g: QMatrix, k: int) -> QMatrix:
    """``Lambda^k(g)``: the matrix of k x k minors."""
    size = len(g)
    basis = wedge_basis(size, k)
    return [[Q.det([[g[r][c] for c in cols] for r in rows]) for cols in basis] for rows in basis]


@dataclass(frozen=True, eq=False)
class RepMatrices:
    n: int
    k: int
    dimension: int
    basis: tuple[Subset, ...]     # sorted k-subsets of {0..2n-1}
    e: tuple[QMatrix, ...]
    f: tuple[QMatrix, ...]
    h: tuple[QMatrix, ...]

    def generators(self) -> list[QMatrix]:
        return list(self.e) + list(self.f) + list(self.h)

    def check_relations(self) -> bool:
        """Chevalley-Serre relations for the Cartan matrix of C_n."""
        a = restriction_matrix("sl-sp", self.n).small.cartan_matrix
        n = self.n
        for i in range(n):
            if not Q.is_zero(Q.sub(Q.bracket(self.e[i], self.f[i]), self.h[i])):
                return False
            for j in range(n):
                if not Q.is_zero(Q.sub(Q.bracket(self.h[i], self.e[j]), Q.scale(a[j][i], self.e[j]))):
                    return False
                if not Q.is_zero(Q.add(Q.bracket(self.h[i], self.f[j]), Q.scale(a[j][i], self.f[j]))):
                    return False
                if i != j:
                    if not Q.is_zero(Q.bracket(self.e[i], self.f[j])):
                        return False
                    for xs in (self.e, self.f):
                        y = xs[j]
                        for _ in range(1 - a[j][i]):
                            y = Q.bracket(xs[i], y)
                        if not Q.is_zero(y):
                            return False
        return True


def _check_n(n: int):
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")


def rep_matrices(n: int, k: int) -> RepMatrices:
    _check_n(n)
    if not 1 <= k <= 2 * n - 1:
        raise ValueError(f"k must lie in 1..{2 * n - 1}, got {k}")
    # checked on every call, not only on a cache miss
    check_capacity(f"Lambda^{k} of F^{2 * n}", comb(2 * n, k))
    return _rep_matrices(n, k)


@lru_cache(maxsize=64)
def _rep_matrices(n: int, k: int) -> RepMatrices:
    dim = comb(2 * n, k)
    es, fs, hs = chevalley_generators(n)
    return RepMatrices(
        n, k, dim, tuple(wedge_basis(2 * n, k)),
        tuple(derivation_matrix(x, k) for x in es),
        tuple(derivation_matrix(x, k) for x in fs),
        tuple(derivation_matrix(x, k) for x in hs),
    )


def wedge_omega_map(n: int, k: int) -> QMatrix:
    """Matrix of ``x -> x ∧ omega^{(n-k)}`` from Lambda^k to Lambda^{2n-k}."""
    src = wedge_basis(2 * n, k)
    tgt = wedge_basis(2 * n, 2 * n - k)
    index = {s: i for i, s in enumerate(tgt)}
    out = Q.zeros(len(tgt), len(src))
    for col, s in enumerate(src):
        for pairs in combinations(range(n), n - k):
            seq = list(s)
            for i in pairs:
                seq += [i, n + i]
            sign, srt = _sort_sign(seq)
            if sign:
                out[index[srt]][col] += sign
    return out


@dataclass(frozen=True, eq=False)
class Intertwiner:
    n: int
    k: int
    alpha: QMatrix
    hom_space_dim: int
    hom_space: tuple[QMatrix, ...]


def intertwiner_space(n: int, k: int) -> list[QMatrix]:
    """Basis of ``{a : a phi(X) = psi(X) a for all Chevalley generators X}``."""
    phi = rep_matrices(n, k)
    psi = rep_matrices(n, 2 * n - k)
    c = phi.dimension

    def var(t, s):
        return t * c + s

    equations = []
    for a_m, b_m in zip(phi.generators(), psi.generators()):
        a_nz = [[(u, x) for u, x in enumerate(col) if x] for col in zip(*a_m)]
        b_nz = [[(u, x) for u, x in enumerate(row) if x] for row in b_m]
        for t in range(c):
            for s in range(c):
                eq: dict[int, Fraction] = {}
                for u, x in a_nz[s]:
                    eq[var(t, u)] = eq.get(var(t, u), 0) + x
                for u, x in b_nz[t]:
                    eq[var(u, s)] = eq.get(var(u, s), 0) - x
                eq = {key: v for key, v in eq.items() if v}
                if eq:
                    equations.append(eq)
    sols = Q.sparse_nullspace(equations, c * c)
    out = []
    for vec in sols:
        m = Q.zeros(c, c)
        for key, v in vec.items():
            m[key // c][key % c] = v
        out.append(m)
    return out


def intertwines(alpha: QMatrix, phi: list[QMatrix], psi: list[QMatrix]) -> bool:
    return all(Q.matmul(alpha, a) == Q.matmul(b, alpha) for a, b in zip(phi, psi))


def solve_intertwiner(n: int, k: int) -> Intertwiner:
    _check_n(n)
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}, got {k}")
    space = intertwiner_space(n, k)
    if not space:
        raise VerificationError(f"no intertwiner between Lambda^{k} and Lambda^{2 * n - k}")
    alpha = wedge_omega_map(n, k)
    phi, psi = rep_matrices(n, k), rep_matrices(n, 2 * n - k)
    if not intertwines(alpha, phi.generators(), psi.generators()):
        raise VerificationError("wedge map with omega does not intertwine")
    if Q.det(alpha) == 0:
        raise VerificationError("wedge map with omega is not invertible")
    return Intertwiner(n, k, alpha, len(space), tuple(space))


def hom_dim_from_characters(n: int, k: int) -> int:
    """``dim Hom_H(Lambda^k, Lambda^{2n-k})`` from shared irreducible constituents."""
    pair = restriction_matrix("sl-sp", n)
    ring = group_ring("A", 2 * n - 1)
    da = decompose_character(pair.small, restrict_character(pair, ring.gen_chars[k - 1])).terms
    db = decompose_character(pair.small, restrict_character(pair, ring.gen_chars[2 * n - k - 1])).terms
    return sum(c * db.get(w, 0) for w, c in da.items())


@dataclass(frozen=True, eq=False)
class LoopMatrix:
    n: int
    k: int
    g: QMatrix
    value: QMatrix


def loop_matrix(n: int, k: int, g, alpha: QMatrix | None = None) -> LoopMatrix:
    """``chi([g]) = Lambda^k(g) alpha^{-1} Lambda^{2n-k}(g)^{-1} alpha``."""
    g = Q.to_q(g)
    if len(g) != 2 * n or any(len(row) != 2 * n for row in g):
        raise ValueError(f"g must be a {2 * n}x{2 * n} matrix")
    d = Q.det(g)
    if d == 0:
        raise ValueError("g is not invertible")
    if d != 1:
        raise ValueError(f"g must lie in SL_{2 * n}; det = {d}")
    if alpha is None:
        alpha = solve_intertwiner(n, k).alpha
    phi_g = compound_matrix(g, k)
    psi_g = compound_matrix(g, 2 * n - k)
    value = Q.matmul_chain(phi_g, Q.inverse(alpha), Q.inverse(psi_g), alpha)
    return LoopMatrix(n, k, g, value)


# --- exact test elements -----------------------------------------------------------

def _exp_nilpotent(x: QMatrix, t) -> QMatrix:
    """``exp(t x)`` for nilpotent ``x`` as a finite sum."""
    size = len(x)
    out = Q.identity(size)
    term = Q.identity(size)
    j = 0
    while True:
        j += 1
        term = Q.scale(Fraction(t, j), Q.matmul(term, x))
        if Q.is_zero(term):
            return out
        out = Q.add(out, term)
        if j > size:
            raise ValueError("matrix is not nilpotent")


def random_symplectic(n: int, rng: random.Random, length: int = 6) -> QMatrix:
    es, fs, _ = chevalley_generators(n)
    nilp = es + fs
    g = Q.identity(2 * n)
    for _ in range(length):
        x = rng.choice(nilp)
        t = rng.choice([-2, -1, 1, 2, Fraction(1, 2), Fraction(-1, 3)])
        g = Q.matmul(g, _exp_nilpotent(x, t))
    return g


def random_special_linear(n: int, rng: random.Random, length: int = 6) -> QMatrix:
    size = 2 * n
    g = Q.identity(size)
    for _ in range(length):
        i, j = rng.sample(range(size), 2)
        t = rng.choice([-2, -1, 1, 2, Fraction(1, 2), Fraction(3, 2)])
        g = Q.matmul(g, Q.add(Q.identity(size), _unit(size, i, j, t)))
    i, j = rng.sample(range(size), 2)
    diag = Q.identity(size)
    diag[i][i] = Fraction(2)
    diag[j][j] = Fraction(1, 2)
    return Q.matmul(g, diag)


def is_symplectic(g: QMatrix) -> bool:
    n = len(g) // 2
    j = symplectic_form(n)
    gt = [list(col) for col in zip(*g)]
    return Q.matmul_chain(gt, j, g) == j
