import math
import random
from fractions import Fraction

import pytest

from k3curves.exact import (
    EnumerationCap,
    GramLattice,
    LatticeError,
    det,
    direct_sum,
    dual_gram,
    enumerate_by_gram,
    enumerate_vectors,
    hermite_normal_form,
    hyperbolic_u,
    k3_lattice,
    make_lattice,
    quotient_by_radical,
    radical,
    root_lattice,
    scale,
    signature,
    smith_normal_form,
    unimodular_inverse,
)


def naive_box_scan(latt, norm):
    """Independent oracle: full coefficient-box scan for vectors of given norm."""
    n = latt.rank
    qinv = dual_gram(latt)
    bound = [math.isqrt(int(abs(norm) * abs(qinv[i][i])) + 1) + 1 for i in range(n)]
    out = []

    def rec(i, partial):
        if i == n:
            v = tuple(partial)
            if latt.norm([Fraction(x) for x in v]) == norm:
                out.append(v)
            return
        for c in range(-bound[i], bound[i] + 1):
            rec(i + 1, partial + [c])

    rec(0, [])
    return sorted(out)


def random_even_lattice(rng, rank, definite=True):
    while True:
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = -2 * rng.randint(1, 3)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randint(-1, 1)
        latt = make_lattice([f"v{i}" for i in range(rank)], g)
        if not definite:
            return latt
        if signature(latt) == (0, rank, 0):
            return latt


def random_unimodular(rng, n):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for k in range(n):
            m[i][k] += c * m[j][k]
    return m


# -- construction and basic invariants --------------------------------------


def test_root_lattice_a1():
    assert root_lattice("A", 1).gram == ((-2,),)


def test_root_lattice_a2():
    assert root_lattice("A", 2).gram == ((-2, 1), (1, -2))


def test_root_lattice_dets():
    assert det(root_lattice("E", 8)) == 1
    assert abs(det(root_lattice("E", 7))) == 2
    assert abs(det(root_lattice("E", 6))) == 3
    assert abs(det(root_lattice("A", 4))) == 5
    assert abs(det(root_lattice("D", 4))) == 4


def test_root_lattice_rejects_bad_input():
    with pytest.raises(LatticeError):
        root_lattice("E", 5)
    with pytest.raises(LatticeError):
        root_lattice("D", 3)
    with pytest.raises(LatticeError):
        root_lattice("B", 2)


def test_even_diagonal_enforced():
    with pytest.raises(LatticeError):
        make_lattice(["x"], [[-1]])


def test_hyperbolic_u():
    u = hyperbolic_u()
    assert u.gram == ((0, 1), (1, 0))
    assert signature(u) == (1, 1, 0)
    assert det(u) == -1


def test_k3_lattice():
    k3 = k3_lattice()
    assert k3.rank == 22
    assert signature(k3) == (3, 19, 0)
    # sign fixed by the inertia indices: (-1)^19 times the unimodular 1
    assert det(k3) == -1


def test_scale_and_direct_sum():
    assert scale(root_lattice("A", 1), 2).gram == ((-4,),)
    a, b = root_lattice("A", 2), root_lattice("D", 4)
    assert direct_sum(a, b).rank == a.rank + b.rank
    assert det(scale(hyperbolic_u(), 3)) == -9
    with pytest.raises(LatticeError):
        scale(a, 0)


def test_signature_examples():
    assert signature(root_lattice("A", 5)) == (0, 5, 0)


def test_signature_unimodular_invariance():
    rng = random.Random(7)
    for _ in range(10):
        latt = random_even_lattice(rng, 4, definite=False)
        sig = signature(latt)
        u = random_unimodular(rng, 4)
        g2 = [[sum(u[i][k] * latt.gram[k][l] * u[j][l] for k in range(4) for l in range(4))
               for j in range(4)] for i in range(4)]
        assert signature(make_lattice(latt.labels, g2)) == sig


# -- radical -----------------------------------------------------------------


def test_radical_u_empty():
    assert radical(hyperbolic_u()) == ()


def test_radical_affine_a1():
    latt = make_lattice(["a", "a'"], [[-2, 2], [2, -2]])
    rad = radical(latt)
    assert rad == ((1, 1),)


def test_radical_twelve_affine_a1_plus_h():
    # 24 fiber components (double edges in pairs) plus a degree vector h
    d, n = 3, 11
    size = 25
    g = [[0] * size for _ in range(size)]
    g[0][0] = 2 * n
    for c in range(12):
        i, j = 1 + 2 * c, 2 + 2 * c
        g[i][i] = g[j][j] = -2
        g[i][j] = g[j][i] = 2
        g[0][i] = g[i][0] = d
        g[0][j] = g[j][0] = d
    latt = make_lattice([f"v{i}" for i in range(size)], g)
    assert len(radical(latt)) == 11
    q = quotient_by_radical(latt)
    assert q.rank == 14
    assert signature(q) == (1, 13, 0)
    assert det(q) == -(2**14) * d * d


def test_quotient_by_radical_nondegenerate():
    latt = make_lattice(["a", "a'"], [[-2, 2], [2, -2]])
    q = quotient_by_radical(latt)
    assert q.rank == 1
    assert det(q) != 0


# -- Smith and Hermite normal form -------------------------------------------


def test_snf_single_entry():
    d, u, v = smith_normal_form([[-2]])
    assert d == ((2,),)


def test_snf_divisibility():
    d, _u, _v = smith_normal_form([[2, 0], [0, 4]])
    assert (d[0][0], d[1][1]) == (2, 4)


def test_snf_reconstruction_random():
    rng = random.Random(11)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        d, u, v = smith_normal_form(m)
        # U m V == D
        um = [[sum(u[i][k] * m[k][j] for k in range(rows)) for j in range(cols)] for i in range(rows)]
        umv = [[sum(um[i][k] * v[k][j] for k in range(cols)) for j in range(cols)] for i in range(rows)]
        assert [list(r) for r in umv] == [list(r) for r in d]
        assert _det(u) in (1, -1)
        assert _det(v) in (1, -1)
        diag = [d[i][i] for i in range(min(rows, cols)) if d[i][i]]
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0


def _det(m):
    from k3curves.exact import _det_int

    return _det_int(tuple(tuple(r) for r in m))


def test_hnf_reconstruction():
    rng = random.Random(5)
    for _ in range(15):
        rows, cols = rng.randint(1, 4), rng.randint(1, 5)
        m = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        h, u = hermite_normal_form(m)
        um = [[sum(u[i][k] * m[k][j] for k in range(rows)) for j in range(cols)] for i in range(rows)]
        assert [list(r) for r in um] == [list(r) for r in h]
        assert _det(u) in (1, -1)


def test_unimodular_inverse():
    rng = random.Random(3)
    m = random_unimodular(rng, 5)
    inv = unimodular_inverse(m)
    prod = [[sum(m[i][k] * inv[k][j] for k in range(5)) for j in range(5)] for i in range(5)]
    assert prod == [[int(i == j) for j in range(5)] for i in range(5)]


# -- vector enumeration --------------------------------------------------------


def test_roots_of_a1():
    assert enumerate_vectors(root_lattice("A", 1), -2) == [(-1,), (1,)]


def test_roots_of_a2():
    assert len(enumerate_vectors(root_lattice("A", 2), -2)) == 6


def test_roots_of_e8():
    assert len(enumerate_vectors(root_lattice("E", 8), -2)) == 240


def test_enumerate_rejects_indefinite():
    with pytest.raises(LatticeError):
        enumerate_vectors(hyperbolic_u(), -2)


def test_enumerate_cap():
    with pytest.raises(EnumerationCap):
        enumerate_vectors(root_lattice("E", 8), -2, cap=10)


def test_enumerate_matches_box_scan():
    rng = random.Random(17)
    for _ in range(8):
        rank = rng.randint(1, 4)
        latt = random_even_lattice(rng, rank)
        for norm in (-2, -4, -6):
            got = enumerate_vectors(latt, norm)
            assert got == naive_box_scan(latt, norm)


def test_enumerate_with_constraint():
    a2 = root_lattice("A", 2)
    # roots pairing to 0 with the first simple root
    roots = enumerate_vectors(a2, -2, [( (1, 0), Fraction(0) )])
    assert all(a2.pairing([Fraction(1), Fraction(0)], [Fraction(x) for x in r]) == 0 for r in roots)
    assert len(roots) == 0  # A2 has no root orthogonal to a root


def test_enumerate_dual_shift():
    # vectors of square -2/3 in the nontrivial coset of A2-dual: three of them
    a2 = root_lattice("A", 2)
    shift = [Fraction(2, 3), Fraction(1, 3)]
    sols = enumerate_by_gram(a2.gram, Fraction(-2, 3), shift=shift)
    assert len(sols) == 3
