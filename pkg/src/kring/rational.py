"""Dense and sparse exact rational matrices over ``fractions.Fraction``."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

QMatrix = list[list[Fraction]]


def to_q(m: Sequence[Sequence]) -> QMatrix:
    return [[Fraction(x) for x in row] for row in m]


def identity(n: int) -> QMatrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> QMatrix:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> QMatrix:
    bt = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([Fraction(sum(x * col[k] for k, x in nz)) for col in bt])
    return out


def matmul_chain(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = matmul(out, m)
    return out


def add(a, b) -> QMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b) -> QMatrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def bracket(a, b) -> QMatrix:
    return sub(matmul(a, b), matmul(b, a))


def scale(c, a) -> QMatrix:
    return [[c * x for x in row] for row in a]


def is_zero(a) -> bool:
    return all(x == 0 for row in a for x in row)


def is_identity(a) -> bool:
    return all(x == (i == j) for i, row in enumerate(a) for j, x in enumerate(row))


def det(a: Sequence[Sequence]) -> Fraction:
    m = [list(map(Fraction, row)) for row in a]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        piv = m[c][c]
        d *= piv
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f /= piv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def inverse(a: Sequence[Sequence]) -> QMatrix:
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def sparse_nullspace(equations: Iterable[dict[int, Fraction]], nvars: int) -> list[dict[int, Fraction]]:
    """Basis of the solution space of a homogeneous sparse linear system.

    Each equation maps variable index -> coefficient. Returns one sparse
    vector per free variable (reduced-echelon parametrisation).
    """
    pivots: dict[int, dict[int, Fraction]] = {}  # kept in reduced echelon form
    for eq in equations:
        row = {k: Fraction(v) for k, v in eq.items() if v}
        # pivot rows carry no other pivot variable, so one pass suffices
        for k in [k for k in row if k in pivots]:
            f = row.pop(k)
            for j, v in pivots[k].items():
                if j == k:
                    continue
                nv = row.get(j, 0) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        if not row:
            continue
        p = min(row)
        piv = row[p]
        row = {k: v / piv for k, v in row.items()}
        # back-substitute into existing pivot rows
        for q, prow in pivots.items():
            f = prow.get(p)
            if f:
                for j, v in row.items():
                    nv = prow.get(j, 0) - f * v
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        pivots[p] = row
    free = [v for v in range(nvars) if v not in pivots]
    basis = []
    for f in free:
        vec = {f: Fraction(1)}
        for p, prow in pivots.items():
            c = prow.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def format_matrix(a: Sequence[Sequence]) -> str:
    """Row-major dump, one row per line, entries as ``p/q`` (integers bare)."""
    def fmt(x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return "\n".join(" ".join(fmt(x) for x in row) for row in a)


def parse_matrix(text: str) -> QMatrix:
    """Inverse of :func:`format_matrix`; also accepts ``;`` row and ``,`` entry separators."""
    rows = [r for r in text.replace(";", "\n").splitlines() if r.strip()]
    out = []
    for r in rows:
        try:
            out.append([Fraction(tok) for tok in r.replace(",", " ").split()])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed matrix entry in row {r!r}: {exc}") from None
    if not out or any(len(row) != len(out[0]) for row in out):
        raise ValueError("malformed matrix: empty or ragged rows")
    return out
