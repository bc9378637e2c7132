import pytest
from hypothesis import given, settings, strategies as st

from kring.branchrules import restrict_character, restriction_matrix
from kring.charcalc import Character, irreducible_character, tensor_product
from kring.errors import CapacityError, _max_dim, set_max_dim
from kring.lattice import same_lattice
from kring.repring import (RingElement, char_to_poly, group_ring, kernel_generators,
                           kernel_lattice_degreewise, poly_to_char, restriction_hom,
                           verify_kernel_generation)
from kring.rootdata import build_root_system

A3 = group_ring("A", 3)
C2 = group_ring("C", 2)


def test_generators_are_fundamental():
    for ring in (A3, C2, group_ring("E", 6), group_ring("F", 4)):
        for c, f in zip(ring.gen_chars, ring.gen_fundamental):
            top = ring.rs.fundamental_weights[f]
            assert c.multiplicity(top) == 1
        assert sorted(ring.gen_fundamental) == list(range(ring.rs.rank))


def test_char_to_poly_examples():
    x1, x2, x3 = A3.gens()
    assert char_to_poly(A3, irreducible_character(A3.rs, (2, 0, 0))) == x1 ** 2 - x2
    assert str(char_to_poly(A3, irreducible_character(A3.rs, (2, 0, 0)))) == "x_1^2 - x_2"
    assert char_to_poly(A3, Character.trivial(A3.rs)) == 1
    for i, c in enumerate(A3.gen_chars):
        assert char_to_poly(A3, c) == A3.gen(i)


def test_poly_to_char_examples():
    assert poly_to_char(A3, A3.const(5)) == Character.trivial(A3.rs, 5)
    x1, x2, _ = A3.gens()
    c = poly_to_char(A3, x1 * x2)
    assert c.dim == 24
    assert c == tensor_product(A3.rs, A3.gen_chars[0], A3.gen_chars[1])


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([("A", 3), ("C", 2), ("C", 3)]),
       st.dictionaries(st.lists(st.integers(0, 2), min_size=3, max_size=3).map(tuple),
                       st.integers(-3, 3), max_size=3))
def test_roundtrip_random_virtual_characters(t, dom):
    rs = build_root_system(*t)
    ring = group_ring(*t)
    c = Character.trivial(rs, 0)
    for w, m in dom.items():
        c = c + m * irreducible_character(rs, w[:rs.rank])
    p = char_to_poly(ring, c)
    assert poly_to_char(ring, p) == c


def test_restriction_images(sl4, e6f4):
    hom = restriction_hom(sl4)
    y1, y2 = hom.target.gens()
    assert list(hom.images) == [y1, y2, y1]
    hom = restriction_hom(e6f4)
    small = hom.target
    y = {nm: small.gen(small.index(nm)) for nm in small.gen_names}
    big = hom.source
    assert hom(big.gen(big.index("x_rho"))) == y["y_rho'"] + 1
    assert hom(big.gen(big.index("x_rhov"))) == y["y_rho'"] + 1
    assert hom(big.gen(big.index("x_Ad"))) == y["y_rho'"] + y["y_Ad"]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_leading_term_triangularity(n):
    hom = restriction_hom("sl-sp", n)
    for k in range(1, n + 1):
        lead = hom.images[k - 1].leading_by_weight()
        assert lead == tuple(int(j == k - 1) for j in range(n))
    assert hom.linear_lattice_certificate()
    assert set(hom.surjectivity_witness()) == set(hom.target.gen_names)


def test_e6_surjectivity(e6f4):
    hom = restriction_hom(e6f4)
    assert set(hom.surjectivity_witness()) == set(hom.target.gen_names)
    assert hom.linear_lattice_certificate()


@pytest.mark.parametrize("kind,n", [("sl-sp", 2), ("sl-sp", 3), ("e6-f4", None)])
def test_ring_homomorphism_via_characters(kind, n):
    hom = restriction_hom(kind, n)
    pair = hom.pair
    gens = hom.source.gens()
    small_gens = sorted(range(len(gens)), key=lambda i: hom.source.gen_chars[i].dim)[:3]
    for i in small_gens:
        for j in small_gens:
            p = gens[i] * gens[j]
            lhs = poly_to_char(hom.target, hom(p))
            rhs = restrict_character(pair, poly_to_char(hom.source, p))
            assert lhs == rhs
            assert hom(p) == hom(gens[i]) * hom(gens[j])


def test_kernel_generators(sl4, sl6, e6f4):
    r6 = group_ring("A", 5)
    assert kernel_generators(sl6) == [r6.gen(0) - r6.gen(4), r6.gen(1) - r6.gen(3)]
    r4 = group_ring("A", 3)
    assert kernel_generators(sl4) == [r4.gen(0) - r4.gen(2)]
    e6 = group_ring("E", 6)
    assert kernel_generators(e6f4) == [e6.gen(e6.index("x_rho")) - e6.gen(e6.index("x_rhov")),
                                       e6.gen(e6.index("x_L2rho")) - e6.gen(e6.index("x_L2rhov"))]
    for pair in (sl4, sl6, e6f4):
        assert all(g.dimension() == 0 for g in kernel_generators(pair))


def test_kernel_lattice_degree_one(sl4, e6f4):
    sl = kernel_lattice_degreewise(sl4, 1)
    assert sl[0].rank == 0
    r4 = group_ring("A", 3)
    assert sl[1].elements(r4) in ([r4.gen(0) - r4.gen(2)], [r4.gen(2) - r4.gen(0)])
    e6 = group_ring("E", 6)
    ker = kernel_lattice_degreewise(e6f4, 1)[1]
    assert ker.rank == 2
    gens = kernel_generators(e6f4)
    rows = [[g.terms.get(m, 0) for m in ker.monomials] for g in gens]
    assert same_lattice(rows, ker.basis, len(ker.monomials))
    assert e6.ngens == 6


def test_verify_kernel_generation_sl4():
    report = verify_kernel_generation(restriction_matrix("sl-sp", 2), 3)
    assert report["pass"]
    # ranks = monomials of degree <= e-1 in 3 variables
    assert [r["kernel_rank"] for r in report["per_degree"]] == [0, 1, 4, 10]


def test_capacity_bound(e6f4):
    token = set_max_dim(10)
    try:
        with pytest.raises(CapacityError):
            kernel_lattice_degreewise(e6f4, 2)
    finally:
        _max_dim.reset(token)


def test_ring_element_arithmetic():
    x1, x2, x3 = A3.gens()
    p = (x1 + 2) * (x1 - 2)
    assert p == x1 ** 2 - 4
    assert (x1 - x1).is_zero()
    assert p.degree == 2
    assert p.evaluate([1, 0, 0]) == -3
    assert RingElement(A3, {(0, 0, 0): 3}) == 3
    assert (x1 * x3).dimension() == 16
