from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from mam.lp import convex_combination_of_zero, find_feasible_point, origin_in_hull


def scipy_origin_in_hull(vectors):
    A = np.array(vectors, dtype=float).T
    A_eq = np.vstack([A, np.ones(len(vectors))])
    b_eq = np.zeros(A_eq.shape[0])
    b_eq[-1] = 1
    res = linprog(np.zeros(len(vectors)), A_eq=A_eq, b_eq=b_eq,
                  bounds=[(0, None)] * len(vectors), method="highs")
    return res.status == 0


def test_triangle_contains_origin():
    t = convex_combination_of_zero([(1, 0), (0, 1), (-1, -1)])
    assert t == [Fraction(1, 3)] * 3


def test_two_rays_do_not():
    assert not origin_in_hull([(1, 0), (0, 1)])


def test_antipodal_segment_boundary_case():
    # the origin sits exactly on the segment: floats could go either way
    t = convex_combination_of_zero([(1, 0), (-2, 0)])
    assert t == [Fraction(2, 3), Fraction(1, 3)]


def test_zero_vector():
    assert origin_in_hull([(0, 0)])


def test_empty_inputs():
    assert not origin_in_hull([])
    assert find_feasible_point([], []) == []


def test_infeasible_equality():
    assert find_feasible_point([[1, 1]], [-1]) is None


def test_degenerate_system_terminates():
    # a classic cycling-prone shape: many ties in the ratio test
    A = [[1, -1, 0, 0, 1], [0, 1, -1, 0, 0], [0, 0, 1, -1, 0], [1, 1, 1, 1, 1]]
    b = [0, 0, 0, 1]
    x = find_feasible_point(A, b)
    assert x is not None
    assert all(sum(a * v for a, v in zip(row, x)) == rhs for row, rhs in zip(A, b))


vec = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@settings(max_examples=150, deadline=None)
@given(st.lists(vec, min_size=1, max_size=6))
def test_agrees_with_float_solver(vectors):
    exact = convex_combination_of_zero(vectors)
    if exact is not None:
        assert all(t >= 0 for t in exact) and sum(exact) == 1
        for c in range(2):
            assert sum(t * v[c] for t, v in zip(exact, vectors)) == 0
    assert (exact is not None) == scipy_origin_in_hull(vectors)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3),
                          st.integers(-3, 3)), min_size=1, max_size=6))
def test_agrees_with_float_solver_3d(vectors):
    assert origin_in_hull(vectors) == scipy_origin_in_hull(vectors)
