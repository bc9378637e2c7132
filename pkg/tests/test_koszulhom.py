from math import comb

import pytest

from kring.koszulhom import (build_koszul, koszul_ranks, slice_homology, tensor_with_dimension,
                             tor_ranks, truncated_exactness)


def test_ranks(sl4, sl6, sl8, e6f4):
    assert koszul_ranks(sl4) == [1, 1]
    assert koszul_ranks(sl6) == [1, 2, 1]
    assert koszul_ranks(sl8) == [1, 3, 3, 1]
    assert koszul_ranks(e6f4) == [1, 2, 1]


@pytest.mark.parametrize("name", ["sl4", "sl6", "sl8", "e6f4"])
def test_d_squared_zero(name, request):
    cx = build_koszul(request.getfixturevalue(name))
    assert cx.d_squared_is_zero()


def test_d2_formula(sl6):
    cx = build_koszul(sl6)
    r = cx.sequence
    ring = r[0].ring
    img = cx.apply(2, {(0, 1): ring.const(1)})
    assert img == {(1,): r[0], (0,): -r[1]}


def test_degree_zero_slice(e6f4):
    hom = slice_homology(build_koszul(e6f4), 0)
    assert hom[0] == {"rank": 1, "torsion": []}
    assert all(h["rank"] == 0 for h in hom[1:])


def test_exactness_sl4():
    from kring.branchrules import restriction_matrix
    rep = truncated_exactness(restriction_matrix("sl-sp", 2), 3)
    assert rep["pass"]
    assert [s["h_ranks"][1] for s in rep["slices"]] == [0, 0, 0, 0]
    # H_0 graded ranks = monomials of degree e in the 2 generators of R(Sp4)
    assert [s["rh_graded_rank"] for s in rep["slices"]] == [1, 2, 3, 4]


def test_exactness_e6(e6f4):
    rep = truncated_exactness(e6f4, 2)
    assert rep["pass"]
    assert all(s["h_ranks"][1:] == [0, 0] for s in rep["slices"])
    assert [s["rh_graded_rank"] for s in rep["slices"]] == [1, 4, 10]


@pytest.mark.parametrize("name", ["sl4", "sl6", "sl8", "e6f4"])
def test_tensor_with_dimension_is_zero(name, request):
    pair = request.getfixturevalue(name)
    cx = tensor_with_dimension(build_koszul(pair))
    assert cx.is_zero()
    assert cx.homology_ranks() == list(cx.ranks)
    tor = tor_ranks(pair)
    assert tor == [comb(pair.m, p) for p in range(pair.m + 1)]
    assert sum((-1) ** p * t for p, t in enumerate(tor)) == 0
