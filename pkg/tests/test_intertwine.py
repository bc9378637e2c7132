import random
from math import comb

import pytest

from kring import rational as Q
from kring.errors import CapacityError, _max_dim, set_max_dim
from kring.intertwine import (compound_matrix, hom_dim_from_characters, is_symplectic, loop_matrix,
                              random_special_linear, random_symplectic, rep_matrices, solve_intertwiner)

CASES = [(2, 1), (3, 1), (3, 2)]


def test_rep_matrices_2_1():
    rm = rep_matrices(2, 1)
    assert rm.dimension == 4
    # natural basis e1, e2, e3, e4 with omega(e_i, e_{n+i}) = 1
    assert rm.h[0] == Q.to_q([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]])
    assert rm.check_relations()


def test_rep_matrices_2_2():
    rm = rep_matrices(2, 2)
    assert rm.dimension == 6
    assert all(sum(e[i][i] for i in range(6)) == 0 for e in rm.e)


@pytest.mark.parametrize("n,k", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_relations(n, k):
    rm = rep_matrices(n, k)
    assert rm.dimension == comb(2 * n, k)
    assert rm.check_relations()


def test_rep_matrices_capacity():
    token = set_max_dim(10)
    try:
        with pytest.raises(CapacityError):
            rep_matrices(3, 3)
    finally:
        _max_dim.reset(token)
    with pytest.raises(ValueError):
        rep_matrices(2, 4)


@pytest.mark.parametrize("n,k", CASES + [(4, 1), (4, 2)])
def test_solve_intertwiner(n, k):
    it = solve_intertwiner(n, k)
    assert it.hom_space_dim == k // 2 + 1 == hom_dim_from_characters(n, k)
    assert Q.det(it.alpha) != 0
    a, b = rep_matrices(n, k), rep_matrices(n, 2 * n - k)
    for x, y in zip(a.generators(), b.generators()):
        assert Q.matmul(it.alpha, x) == Q.matmul(y, it.alpha)


def test_intertwiner_range():
    with pytest.raises(ValueError):
        solve_intertwiner(2, 2)


@pytest.mark.parametrize("n,k", CASES)
def test_group_level_identities(n, k):
    rng = random.Random(1000 * n + k)
    alpha = solve_intertwiner(n, k).alpha
    for _ in range(30):
        h = random_symplectic(n, rng)
        assert is_symplectic(h)
        assert Q.matmul(compound_matrix(h, k), Q.inverse(alpha)) == \
            Q.matmul(Q.inverse(alpha), compound_matrix(h, 2 * n - k))
        g = random_special_linear(n, rng)
        chi_g = loop_matrix(n, k, g, alpha).value
        assert Q.is_identity(loop_matrix(n, k, h, alpha).value)
        assert loop_matrix(n, k, Q.matmul(g, h), alpha).value == chi_g
        assert Q.det(chi_g) == 1


def test_loop_examples():
    assert Q.is_identity(loop_matrix(2, 1, Q.identity(4)).value)
    g = Q.to_q([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, Q.Fraction(1, 2)]])
    assert not is_symplectic(g)
    chi = loop_matrix(2, 1, g).value
    assert not Q.is_identity(chi)
    assert Q.det(chi) == 1


def test_loop_rejects_bad_input():
    with pytest.raises(ValueError):
        loop_matrix(2, 1, Q.zeros(4, 4))
    with pytest.raises(ValueError):
        loop_matrix(2, 1, Q.scale(2, Q.identity(4)))
    with pytest.raises(ValueError):
        loop_matrix(2, 1, Q.identity(3))
