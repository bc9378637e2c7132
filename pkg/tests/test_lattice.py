from fractions import Fraction
from math import lcm, gcd

from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from kring import lattice
from kring import rational as Q

int_matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def in_lattice(v, basis):
    """Integrality of the coordinates of ``v`` in a row-echelon ``basis``."""
    v = list(v)
    for row in basis:
        piv = next(j for j, x in enumerate(row) if x)
        if v[piv] % row[piv]:
            return False
        q = v[piv] // row[piv]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


@settings(max_examples=150, deadline=None)
@given(int_matrices)
def test_hnf_is_canonical_basis_of_same_lattice(rows):
    ncols = len(rows[0])
    h = lattice.hnf(rows, ncols)
    assert len(h) == Matrix(rows).rank()
    pivots = [next(j for j, x in enumerate(row) if x) for row in h]
    assert pivots == sorted(set(pivots))
    for i, (row, p) in enumerate(zip(h, pivots)):
        assert row[p] > 0
        assert all(0 <= h[k][p] < row[p] for k in range(i))
    assert all(in_lattice(r, h) for r in rows)
    # each HNF row is an integer combination of the input: HNF of (rows + h) is h
    assert lattice.hnf(list(rows) + h, ncols) == h


@settings(max_examples=150, deadline=None)
@given(int_matrices)
def test_smith_against_sympy(rows):
    ncols = len(rows[0])
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    expected = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert lattice.smith_invariants(rows, ncols) == expected


@settings(max_examples=100, deadline=None)
@given(int_matrices)
def test_left_kernel(rows):
    ncols = len(rows[0])
    ker = lattice.left_kernel(rows, ncols)
    m = len(rows)
    assert len(ker) == m - Matrix(rows).rank()
    for v in ker:
        assert all(sum(v[i] * rows[i][j] for i in range(m)) == 0 for j in range(ncols))
    # saturation: the rational kernel meets Z^m exactly in the returned lattice
    for v in Matrix(rows).T.nullspace():
        den = lcm(*(Fraction(str(x)).denominator for x in v))
        w = [int(x * den) for x in v]
        g = gcd(*w)
        assert in_lattice([x // g for x in w], ker)


def test_same_lattice():
    assert lattice.same_lattice([[2, 0], [0, 3]], [[2, 3], [0, 3]], 2)
    assert not lattice.same_lattice([[2, 0], [0, 3]], [[1, 0], [0, 3]], 2)


def test_sparse_nullspace_and_inverse():
    eqs = [{0: Fraction(1), 1: Fraction(-1)}, {1: Fraction(2), 2: Fraction(-1)}]
    basis = Q.sparse_nullspace(eqs, 3)
    assert len(basis) == 1
    v = basis[0]
    assert all(sum(c * v.get(i, 0) for i, c in e.items()) == 0 for e in eqs)
    a = Q.to_q([[2, 1], [1, 1]])
    assert Q.is_identity(Q.matmul(a, Q.inverse(a)))
    assert Q.det([[0, 1], [1, 0]]) == -1


def test_matrix_text_roundtrip():
    a = Q.to_q([[1, Fraction(-1, 2)], [0, Fraction(3, 7)]])
    assert Q.format_matrix(a) == "1 -1/2\n0 3/7"
    assert Q.parse_matrix(Q.format_matrix(a)) == a
    assert Q.parse_matrix("1,-1/2; 0,3/7") == a
    for bad in ["", "1 2\n3", "1 x", "1/0"]:
        try:
            Q.parse_matrix(bad)
        except ValueError:
            continue
        raise AssertionError(f"accepted {bad!r}")
