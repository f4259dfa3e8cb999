import itertools

import pytest
from hypothesis import given, settings, strategies as st

from mam.config import Configuration, check_weak_hyperbolicity, derive
from mam.cyclic import cyclic_partition
from mam.errors import TooLarge, Unsupported
from mam.expressions import (connected_sum, disk, exterior, parse_expression,
                             product, punctured_product, sphere)
from mam.fixtures import load_fixture
from mam.homology import (GradedGroup, brute_force_homology, expression_homology,
                          homology_Z, oracle_simplex_count, relative_homology)
from mam.polytope import build_face_lattice

from conftest import PLANAR

SMALL = ["point_triangle", "table1_row1", "table1_row2_n5", "table1_row3",
         "pentagon", "table1_row5", "heptagon_minus_one", "simplex_k3"]


def G(*ranks):
    return GradedGroup(tuple(ranks))


# -------------------------------------------------------- graded groups

def test_equality_ignores_trailing_zeros():
    assert G(1, 5, 0) == G(1, 5)
    assert G(1, 5, 0).max_degree == 2
    assert G(1, 0, 1) != G(1, 1)


def test_direct_sum_and_torsion_order():
    a = GradedGroup((1, 0), ((), (4,)))
    b = GradedGroup((0, 1, 1), ((), (2,), ()))
    s = a.direct_sum(b)
    assert s.ranks == (1, 1, 1) and s.torsion == ((), (2, 4), ())
    assert a.direct_sum(b, times=2).torsion[1] == (2, 2, 4)


def test_json_shape():
    assert G(1, 10, 1).as_json() == {"ranks": [1, 10, 1],
                                     "torsion": [[], [], []]}


# --------------------------------------------------- relative homology

def test_relative_examples(pentagon):
    lat = build_face_lattice(pentagon)
    part = cyclic_partition(pentagon)
    assert relative_homology(lat, set()) == G(1, 0, 0)
    for i in range(1, 6):
        assert relative_homology(lat, part.D(i)) == G(0, 1, 0)
    assert relative_homology(lat, range(1, 6)) == G(0, 0, 1)


@pytest.mark.parametrize("name", SMALL)
def test_order_complex_and_nerve_agree_for_every_J(name):
    lat = build_face_lattice(load_fixture(name))
    n = lat.n
    for r in range(n + 1):
        for J in itertools.combinations(range(1, n + 1), r):
            a = relative_homology(lat, J, method="order")
            b = relative_homology(lat, J, method="nerve")
            assert a == b, J


def test_order_and_nerve_agree_on_complexified_triangle():
    lat = build_face_lattice(derive(load_fixture("point_triangle"), "complexify"))
    for r in range(7):
        for J in itertools.combinations(range(1, 7), r):
            assert (relative_homology(lat, J, method="order")
                    == relative_homology(lat, J, method="nerve"))


# ------------------------------------------------------- total spaces

def test_pentagon_homology(pentagon):
    lat = build_face_lattice(pentagon)
    assert homology_Z(lat) == G(1, 10, 1)
    assert homology_Z(lat, exclude=1) == G(1, 5, 0)


def test_complexified_row1_is_T2_times_S3(row1):
    lat = build_face_lattice(derive(row1, "complexify"))
    h = homology_Z(lat)
    assert h == G(1, 2, 1, 1, 2, 1)
    assert h == expression_homology(parse_expression("T^2 x S^3"))


def test_oracle_small_examples(row1):
    tri = build_face_lattice(load_fixture("point_triangle"))
    assert brute_force_homology(tri) == G(8) == homology_Z(tri)
    lat = build_face_lattice(row1)
    assert brute_force_homology(lat) == G(4, 4) == homology_Z(lat)


def test_oracle_pentagon(pentagon):
    lat = build_face_lattice(pentagon)
    h = brute_force_homology(lat)
    assert h == G(1, 10, 1) and h.is_torsion_free()
    assert h.euler_characteristic() == -8
    assert brute_force_homology(lat, exclude=1) == G(1, 5, 0)


def test_oracle_cap():
    lat = build_face_lattice(load_fixture("pentagon"))
    with pytest.raises(TooLarge):
        brute_force_homology(lat, cap=100)


@pytest.mark.parametrize("name", ["table1_row1", "pentagon", "table1_row5",
                                  "heptagon_minus_one", "simplex_k3"])
def test_order_method_total_agrees(name):
    lat = build_face_lattice(load_fixture(name))
    for ex in (None, 1):
        assert homology_Z(lat, ex, method="order") == homology_Z(lat, ex)


@pytest.mark.parametrize("name", PLANAR)
def test_planar_duality_torsion_and_euler(name):
    lat = build_face_lattice(load_fixture(name))
    h = homology_Z(lat)
    dim = lat.n - 3
    assert h.is_torsion_free()
    assert all(h.rank(q) == h.rank(dim - q) for q in range(dim + 1))
    cells = sum((-1) ** d * 2 ** (lat.n - len(L)) for L, d in lat.dims.items())
    assert h.euler_characteristic() == cells
    half = homology_Z(lat, exclude=1)
    assert all(half.rank(q) <= h.rank(q) for q in range(dim + 1))


@pytest.mark.parametrize("name", ["pentagon", "table1_row5", "heptagon"])
def test_low_degree_truncation(name):
    cfg = derive(load_fixture(name), "complexify")
    full = homology_Z(build_face_lattice(cfg))
    small = build_face_lattice(cfg, max_size=2)
    h1 = homology_Z(small, max_degree=1)
    assert h1.ranks == full.ranks[:2]
    with pytest.raises(ValueError):
        homology_Z(small)


def count_chains_directly(lat, exclude=None):
    n = lat.n
    cells = []
    for L in lat.faces:
        free = [i for i in range(1, n + 1) if i not in L and i != exclude]
        for r in range(len(free) + 1):
            for J in itertools.combinations(free, r):
                cells.append((frozenset(J), L))

    def less(a, b):
        (J1, L1), (J2, L2) = a, b
        return L2 < L1 and J1 == J2 - L1

    def chains_above(c):
        return 1 + sum(chains_above(d) for d in cells if less(c, d))

    return len(cells), sum(chains_above(c) for c in cells)


@pytest.mark.parametrize("ex", [None, 1])
def test_oracle_simplex_count_matches_direct_count(pentagon, ex):
    lat = build_face_lattice(pentagon)
    cells, chains = count_chains_directly(lat, ex)
    assert cells == (152 if ex is None else 92)
    assert oracle_simplex_count(lat, ex) == chains


planar = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
                  min_size=3, max_size=6)


@settings(max_examples=40, deadline=None)
@given(planar, st.integers(1, 6))
def test_formula_equals_oracle_on_random_configurations(vectors, ex):
    cfg = Configuration(2, tuple(vectors))
    if not check_weak_hyperbolicity(cfg).ok:
        return
    lat = build_face_lattice(cfg)
    if lat.empty_manifold:
        return
    ex = (ex - 1) % cfg.n + 1
    assert homology_Z(lat) == brute_force_homology(lat)
    assert homology_Z(lat, exclude=ex) == brute_force_homology(lat, exclude=ex)


# ------------------------------------------------------------ symbolic

def test_expression_sphere_product():
    assert expression_homology(product(sphere(3), sphere(4))).ranks == (
        1, 0, 0, 1, 1, 0, 0, 1)


def test_expression_connected_sum():
    e = connected_sum(*[product(sphere(3), sphere(4))] * 5)
    assert expression_homology(e).ranks == (1, 0, 0, 5, 5, 0, 0, 1)


def test_expression_exterior_by_alexander_duality():
    h = expression_homology(exterior(1, 1, 6))
    assert h.ranks == (1, 0, 0, 1, 2, 0, 0)


def test_expression_punctured_and_disks():
    assert expression_homology(punctured_product(3, 3, 6)) == G(1, 0, 0, 2)
    assert expression_homology(product(sphere(1), disk(4))) == G(1, 1)
    assert expression_homology(sphere(0)) == G(2)
    assert expression_homology(product(sphere(0), sphere(0), sphere(1))) == G(4, 4)


def test_expression_unsupported():
    with pytest.raises(Unsupported):
        expression_homology(exterior(3, 3, 6))
