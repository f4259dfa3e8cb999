"""Exact linear feasibility over the rationals.

Phase one of the tableau simplex method, pivoting with Bland's rule so the
iteration cannot cycle. Everything is :class:`fractions.Fraction`; no
tolerance is involved anywhere.
"""
from fractions import Fraction


def find_feasible_point(A, b):
    """Return ``x >= 0`` with ``A x = b`` as a list of Fractions, or ``None``.

    ``A`` is a list of rows. An empty system (no rows) is feasible with the
    zero vector; a system with no columns is feasible iff ``b == 0``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return [] if all(Fraction(v) == 0 for v in b) else None

    # rows of the tableau: [A | I | b], with rows flipped so that b >= 0
    rows = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [Fraction(sign * A[i][j]) for j in range(n)]
        row += [Fraction(1 if t == i else 0) for t in range(m)]
        row.append(Fraction(sign * b[i]))
        rows.append(row)
    width = n + m
    basis = [n + i for i in range(m)]

    # reduced costs of the phase-one objective (sum of artificials)
    obj = [Fraction(0)] * (width + 1)
    for j in list(range(n)) + [width]:
        obj[j] = -sum(r[j] for r in rows)

    while True:
        entering = next((j for j in range(width) if obj[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i, r in enumerate(rows):
            if r[entering] > 0:
                ratio = r[width] / r[entering]
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leaving])):
                    best, leaving = ratio, i
        if leaving is None:
            # phase one is bounded below by zero, so this cannot happen
            raise ArithmeticError("unbounded phase-one problem")
        _pivot(rows, obj, leaving, entering)
        basis[leaving] = entering

    if obj[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = rows[i][width]
    return x


def _pivot(rows, obj, i, j):
    pivot_row = rows[i]
    p = pivot_row[j]
    if p != 1:
        rows[i] = pivot_row = [v / p for v in pivot_row]
    for t, r in enumerate(rows):
        if t != i and r[j] != 0:
            f = r[j]
            rows[t] = [a - f * c for a, c in zip(r, pivot_row)]
    if obj[j] != 0:
        f = obj[j]
        obj[:] = [a - f * c for a, c in zip(obj, pivot_row)]


def convex_combination_of_zero(vectors):
    """Weights ``t >= 0`` summing to one with ``sum t_i v_i = 0``, or ``None``.

    ``None`` means the origin is not in the convex hull of ``vectors``.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return None
    k = len(vectors[0])
    A = [[v[c] for v in vectors] for c in range(k)]
    A.append([1] * len(vectors))
    b = [0] * k + [1]
    return find_feasible_point(A, b)


def origin_in_hull(vectors):
    return convex_combination_of_zero(vectors) is not None
