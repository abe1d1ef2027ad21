from fractions import Fraction

import pytest

from k3curves.exact import det, radical, signature
from k3curves.forms import discriminant_form, p_part
from k3curves.graphs import (
    Component,
    ConfigGraph,
    GraphError,
    auxiliary_lattice,
    component_degree,
    fano_lattice,
    graph_lattice,
    hbar_square,
    parse_config,
    strip,
)


# -- parsing -----------------------------------------------------------------


def test_parse_twelve_affine_a1():
    g = parse_config("12tA1")
    assert g.entries == ((Component(True, 1), 12),)
    assert g.vertex_count == 24


def test_parse_mixed():
    g = parse_config("4tA4+2A1")
    assert g.entries == ((Component(True, 4), 4), (Component(False, 1), 2))


def test_parse_whitespace_and_default_count():
    g = parse_config("5tA3 + A2")
    assert g.entries == ((Component(True, 3), 5), (Component(False, 2), 1))


def test_parse_star_count():
    assert parse_config("3*tA2") == parse_config("3tA2")


def test_parse_rejects_de_types():
    with pytest.raises(GraphError, match="unsupported component type"):
        parse_config("2tD4")
    with pytest.raises(GraphError, match="unsupported component type"):
        parse_config("E8")


def test_parse_syntax_error_position():
    with pytest.raises(GraphError, match="position"):
        parse_config("8tA2+oops")


def test_canonical_merge():
    assert parse_config("tA1+2tA1+tA1") == parse_config("4tA1")


# -- structure ---------------------------------------------------------------


def test_component_degrees():
    assert component_degree(Component(True, 1)) == 2
    assert component_degree(Component(True, 3)) == 4
    with pytest.raises(GraphError):
        component_degree(Component(False, 2))


def test_strip():
    assert strip(parse_config("8tA2")).name == "8A2"
    assert strip(parse_config("5tA3+2A1")).name == "5A3+2A1"
    assert strip(parse_config("12tA1")).name == "12A1"


def test_graph_lattice_affine_a1():
    latt = graph_lattice(parse_config("tA1"))
    assert latt.gram == ((-2, 2), (2, -2))


def test_graph_lattice_affine_a2_cycle():
    latt = graph_lattice(parse_config("tA2"))
    assert latt.gram == ((-2, 1, 1), (1, -2, 1), (1, 1, -2))


def test_graph_lattice_radical_rank():
    latt = graph_lattice(parse_config("12tA1"))
    assert len(radical(latt)) == 12


def test_degree_consistency():
    assert parse_config("12tA1").degree == 2
    with pytest.raises(GraphError, match="unequal degree"):
        fano_lattice(parse_config("tA1+tA2"), 11, 3)


# -- Fano lattices -------------------------------------------------------------


def test_fano_12a1_rank_and_det():
    fano = fano_lattice(parse_config("12tA1"), 11, 3)
    assert fano.rank == 14
    assert det(fano.lattice) == -(2**14) * 9
    assert signature(fano.lattice) == (1, 13, 0)


def test_fano_8a2_rank():
    fano = fano_lattice(parse_config("8tA2"), 300, 3)
    assert fano.rank == 18


def test_fano_invariants():
    fano = fano_lattice(parse_config("5tA3+2A1"), 101, 3)
    latt = fano.lattice
    d, f = fano.d, fano.f
    k = [Fraction(0)] * fano.rank
    k[1] = Fraction(1)
    h = [Fraction(0)] * fano.rank
    h[0] = Fraction(1)
    assert latt.norm(k) == 0
    assert latt.pairing(k, h) == d * f
    assert latt.pairing(list(fano.kappa), h) == d
    for v in fano.vertex_vectors():
        assert latt.norm([Fraction(x) for x in v]) == -2
        assert latt.pairing([Fraction(x) for x in v], h) == d
    assert len(fano.vertex_vectors()) == fano.graph.vertex_count


def test_fano_rejects_small_polarization():
    with pytest.raises(GraphError):
        fano_lattice(parse_config("12tA1"), 2, 3)


def test_fano_rejects_no_parabolic():
    with pytest.raises(GraphError):
        fano_lattice(parse_config("3A1"), 11, 3)


# -- hbar -----------------------------------------------------------------------


def test_hbar_square_8a2():
    g = parse_config("8tA2")
    for n, d in ((301, 3), (500, 5)):
        assert hbar_square(g, n, d) == 2 * n + 16 * d * d


def test_hbar_square_4a4_2a1():
    g = parse_config("4tA4+2A1")
    assert hbar_square(g, 1000, 3) == 2000 + 41 * 9


def test_hbar_square_m_s_formula():
    g = parse_config("6tA2+3A1")
    assert hbar_square(g, 77, 3) == 2 * 77 + (12 + Fraction(3, 2)) * 9


def test_hbar_vector_matches_formula():
    for name, n, d in (("8tA2", 201, 3), ("7tA2+1A1", 300, 4), ("4tA4+2A1", 999, 3)):
        g = parse_config(name)
        fano = fano_lattice(g, n, d)
        assert fano.hbar is not None
        assert fano.lattice.norm(list(fano.hbar)) == hbar_square(g, n, d)
        # hbar is orthogonal to all kept vertices and pairs with k by deg * d
        k = [Fraction(0)] * fano.rank
        k[1] = Fraction(1)
        assert fano.lattice.pairing(list(fano.hbar), k) == g.degree * d
        for _comp, positions in fano.component_map:
            for p in positions:
                e = [Fraction(int(i == p)) for i in range(fano.rank)]
                assert fano.lattice.pairing(list(fano.hbar), e) == 0


def test_hbar_unsupported_shape():
    with pytest.raises(GraphError):
        hbar_square(parse_config("6tA3"), 100, 3)
    fano = fano_lattice(parse_config("6tA3"), 1300, 3)
    assert fano.hbar is None


def test_auxiliary_lattice_discr_orders():
    # |discr F| = |discr Fbar| = p^(2+m) 2^s d^2 and equal odd-prime parts
    g = parse_config("7tA2+1A1")
    n, d = 301, 4  # d even keeps the auxiliary lattice integral
    fano = fano_lattice(g, n, d)
    aux = auxiliary_lattice(g, n, d)
    assert abs(det(aux)) == abs(det(fano.lattice)) == 3**9 * 2 * d * d
    f1 = discriminant_form(fano.lattice)
    f2 = discriminant_form(aux)
    for p in (3, 7):
        a, b = p_part(f1, p), p_part(f2, p)
        assert sorted(a.orders) == sorted(b.orders)


def test_discr_order_formula_m_a2_s_a1():
    for name, m, s in (("8tA2", 8, 0), ("7tA2+1A1", 7, 1), ("6tA2+3A1", 6, 3)):
        for d in (3, 5):
            fano = fano_lattice(parse_config(name), 977, d)
            assert abs(det(fano.lattice)) == 3 ** (2 + m) * 2**s * d * d
