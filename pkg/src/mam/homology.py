"""Integer homology of Z, of its half Z_+, and of symbolic manifolds.

``H_*(Z)`` splits as the direct sum over index sets ``J`` of the relative
groups ``H_*(P, P_J)``, where ``P_J`` is the union of the facets ``F_i`` with
``i`` in ``J``. For the half ``Z_+`` (coordinate ``i`` kept non-negative) only
the ``J`` avoiding ``i`` contribute.

The relative groups can be computed two ways:

* ``"order"``: simplicial homology of the order complex of the face poset of
  ``P`` relative to the chains lying in ``P_J``;
* ``"nerve"``: ``H_q(P, P_J) = H~_{q-1}(P_J)``, and ``P_J`` is covered by the
  contractible facets ``F_i`` whose intersections are faces, so it has the
  homotopy type of the nerve ``{L subset J : F_L nonempty}``.

The nerve is much smaller, so ``homology_Z`` uses it by default. The
brute-force oracle ignores the splitting altogether and triangulates the whole
manifold from reflected copies of ``P``.
"""
import itertools
from dataclasses import dataclass
from math import comb, prod

from .errors import TooLarge, Unsupported
from .expressions import (BoundaryConnectedSum, ConnectedSum, Disk, Empty,
                          Exterior, Point, Product, PuncturedProduct, Sphere)
from .snf import sparse_rank_torsion

DEFAULT_CAP = 2_000_000


@dataclass(frozen=True)
class GradedGroup:
    """Free ranks and torsion coefficients in degrees ``0..max_degree``."""
    ranks: tuple
    torsion: tuple = ()

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        if any(r < 0 for r in ranks):
            raise ValueError("ranks must be non-negative")
        torsion = [tuple(sorted(int(t) for t in ts)) for ts in self.torsion]
        torsion += [()] * (len(ranks) - len(torsion))
        if len(torsion) > len(ranks):
            ranks += (0,) * (len(torsion) - len(ranks))
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "torsion", tuple(torsion))

    @property
    def max_degree(self):
        return len(self.ranks) - 1

    def _trimmed(self):
        top = len(self.ranks)
        while top and not self.ranks[top - 1] and not self.torsion[top - 1]:
            top -= 1
        return self.ranks[:top], self.torsion[:top]

    def __eq__(self, other):
        if not isinstance(other, GradedGroup):
            return NotImplemented
        return self._trimmed() == other._trimmed()

    def __hash__(self):
        return hash(self._trimmed())

    def rank(self, q):
        return self.ranks[q] if 0 <= q < len(self.ranks) else 0

    def is_torsion_free(self):
        return not any(self.torsion)

    def euler_characteristic(self):
        return sum((-1) ** q * r for q, r in enumerate(self.ranks))

    def direct_sum(self, other, times=1):
        size = max(len(self.ranks), len(other.ranks))
        ranks = [self.rank(q) + times * other.rank(q) for q in range(size)]
        torsion = []
        for q in range(size):
            ts = list(self.torsion[q]) if q < len(self.torsion) else []
            if q < len(other.torsion):
                ts += list(other.torsion[q]) * times
            torsion.append(tuple(sorted(ts)))
        return GradedGroup(tuple(ranks), tuple(torsion))

    def padded(self, max_degree):
        """Same group, listed up to ``max_degree`` (never truncates data)."""
        extra = max_degree + 1 - len(self.ranks)
        if extra <= 0:
            return self
        return GradedGroup(self.ranks + (0,) * extra, self.torsion)

    def as_json(self):
        return {"ranks": list(self.ranks),
                "torsion": [list(t) for t in self.torsion]}

    def __str__(self):
        parts = []
        for q, (r, ts) in enumerate(zip(self.ranks, self.torsion)):
            terms = ([f"Z^{r}" if r > 1 else "Z"] if r else []) + [
                f"Z/{t}" for t in ts]
            if terms:
                parts.append(f"H{q}=" + "+".join(terms))
        return ", ".join(parts) or "0"


def zero_group(max_degree=0):
    return GradedGroup((0,) * (max_degree + 1))


def _unit(q, max_degree=None):
    size = max(q, max_degree if max_degree is not None else q) + 1
    ranks = [0] * size
    ranks[q] = 1
    return GradedGroup(tuple(ranks))


# --------------------------------------------------------- chain complexes

def chain_homology(sizes, boundaries, max_degree=None):
    """Homology of a chain complex given by sparse boundary columns.

    ``sizes[q]`` is the number of ``q``-chains and ``boundaries[q]`` (for
    ``q >= 1``) the list of columns ``{row: coeff}`` of ``d_q : C_q -> C_{q-1}``.
    Degrees above ``max_degree`` are not reported (and their boundaries are
    only needed one step up).
    """
    top = len(sizes) - 1
    if max_degree is None:
        max_degree = top
    ranks, torsion = [], []
    rk = {}
    tor = {}
    for q in range(1, min(top, max_degree + 1) + 1):
        rk[q], tor[q] = sparse_rank_torsion(boundaries[q])
    for q in range(0, max_degree + 1):
        if q > top:
            ranks.append(0)
            torsion.append(())
            continue
        r = sizes[q] - rk.get(q, 0) - rk.get(q + 1, 0)
        ranks.append(r)
        torsion.append(tuple(tor.get(q + 1, [])))
    return GradedGroup(tuple(ranks), tuple(torsion))


def _simplicial_complex(simplices_by_degree):
    """Sizes and boundary columns for simplices given as sorted tuples.

    Each simplex's faces (drop one vertex) must be present one degree down;
    a face missing from the lower level is treated as zero, which is how
    relative complexes are encoded.
    """
    index = [{s: j for j, s in enumerate(level)} for level in simplices_by_degree]
    sizes = [len(level) for level in simplices_by_degree]
    boundaries = [None]
    for q in range(1, len(simplices_by_degree)):
        lower = index[q - 1]
        cols = []
        for s in simplices_by_degree[q]:
            col = {}
            for t in range(len(s)):
                j = lower.get(s[:t] + s[t + 1:])
                if j is not None:
                    col[j] = -1 if t % 2 else 1
            cols.append(col)
        boundaries.append(cols)
    return sizes, boundaries


def _chains(order, below):
    """All chains of a finite poset, as tuples from top element down.

    ``order`` lists the elements so that everything strictly below an element
    comes earlier; ``below[e]`` is the set of elements strictly below ``e``.
    Returns ``{top: [chains with that top]}``.
    """
    ending = {}
    for e in order:
        lst = [(e,)]
        for f in below[e]:
            lst.extend((e,) + c for c in ending[f])
        ending[e] = lst
    return ending


def _order_complex_homology(order, below, keep_top, dim_hint=None):
    """Homology of the order complex relative to chains with top not kept."""
    ending = _chains(order, below)
    levels = []
    for e in order:
        if not keep_top(e):
            continue
        for c in ending[e]:
            q = len(c) - 1
            while len(levels) <= q:
                levels.append([])
            levels[q].append(c)
    if not levels:
        return zero_group(dim_hint or 0)
    sizes, boundaries = _simplicial_complex(levels)
    group = chain_homology(sizes, boundaries)
    return group.padded(dim_hint) if dim_hint is not None else group


# ------------------------------------------------------ relative homology

def _strict_superfaces(lat):
    faces = list(lat.faces)
    return {L: [M for M in faces if L < M] for L in faces}


def relative_homology(lat, J, method="order", max_degree=None):
    """``H_*(P, P_J)`` for the polytope of a nonempty face lattice."""
    if lat.empty_manifold:
        raise ValueError("the polytope is empty")
    J = frozenset(J)
    _check_truncation(lat, max_degree, method)
    if method == "order":
        sup = getattr(lat, "_sup_cache", None)
        if sup is None:
            sup = _strict_superfaces(lat)
            object.__setattr__(lat, "_sup_cache", sup)
        order = sorted(lat.faces, key=len, reverse=True)
        group = _order_complex_homology(
            order, sup, keep_top=lambda L: not (L & J), dim_hint=lat.dim_P)
    elif method == "nerve":
        group = _nerve_relative(lat, J, max_degree)
    else:
        raise ValueError(f"unknown method {method!r}")
    if max_degree is not None:
        return GradedGroup(group.ranks[:max_degree + 1],
                           group.torsion[:max_degree + 1])
    return group


def _check_truncation(lat, max_degree, method="nerve"):
    if lat.max_size is None:
        return
    if method != "nerve" or max_degree is None or max_degree >= lat.max_size:
        raise ValueError(f"lattice truncated at |J| <= {lat.max_size} only "
                         f"supports nerve homology below degree {lat.max_size}")


def _is_cone(faces_in_J, J):
    for v in J:
        if frozenset((v,)) not in faces_in_J:
            continue
        if all(L | {v} in faces_in_J for L in faces_in_J):
            return True
    return False


def _nerve_relative(lat, J, max_degree=None):
    dim = lat.dim_P
    faces_in_J = {L for L in lat.faces if L <= J}
    if len(faces_in_J) == 1:
        # P_J is empty: H_*(P) of a contractible polytope
        return _unit(0, dim)
    if lat.max_size is None and _is_cone(faces_in_J, J):
        return zero_group(dim)
    top = dim if max_degree is None else min(dim, max_degree + 1)
    levels = [[] for _ in range(top + 1)]
    for L in faces_in_J:
        if len(L) <= top:
            levels[len(L)].append(tuple(sorted(L)))
    for level in levels:
        level.sort()
    sizes, boundaries = _simplicial_complex(levels)
    group = chain_homology(sizes, boundaries,
                           max_degree=dim if max_degree is None else max_degree)
    return group.padded(dim)


# ------------------------------------------------------------ total spaces

def _class_representatives(lat, exclude):
    """Direction classes of the configuration, minus the excluded index."""
    classes = []
    for cls in lat.cfg.direction_classes():
        members = [i for i in cls if i != exclude]
        if members:
            classes.append(members)
    return classes


def homology_Z(lat, exclude=None, method="nerve", max_degree=None):
    """``H_*(Z)``, or ``H_*(Z_+)`` for the half with coordinate ``exclude >= 0``.

    Coordinates pointing in the same direction are interchangeable, so the
    relative group only depends on how many indices of each direction class
    ``J`` takes; each such count vector is computed once and weighted by the
    number of ``J`` realising it.
    """
    if lat.empty_manifold:
        raise ValueError("the manifold is empty")
    n = lat.n
    if exclude is not None and not 1 <= exclude <= n:
        raise IndexError(f"index {exclude} out of range 1..{n}")
    dim = lat.dim_P if max_degree is None else min(lat.dim_P, max_degree)
    total = zero_group(dim)
    classes = _class_representatives(lat, exclude)
    for counts in itertools.product(*(range(len(c) + 1) for c in classes)):
        J = frozenset(i for c, m in zip(classes, counts) for i in c[:m])
        weight = prod(comb(len(c), m) for c, m in zip(classes, counts))
        term = relative_homology(lat, J, method=method, max_degree=max_degree)
        total = total.direct_sum(term, times=weight)
    return total


# ------------------------------------------------------------------ oracle

def _cell_poset(lat, exclude):
    """Cells ``(J, L)`` of the reflected decomposition, as integer ids."""
    n = lat.n
    faces = sorted(lat.faces, key=len, reverse=True)
    sup = _strict_superfaces(lat)
    allowed = [i for i in range(1, n + 1) if i != exclude]
    cells = []
    ident = {}
    for L in faces:
        free = [i for i in allowed if i not in L]
        for r in range(len(free) + 1):
            for J in itertools.combinations(free, r):
                ident[(frozenset(J), L)] = len(cells)
                cells.append((frozenset(J), L))
    below = [[ident[(J - M, M)] for M in sup[L]] for J, L in cells]
    return cells, below


def oracle_simplex_count(lat, exclude=None):
    """Number of simplices in the oracle's barycentric subdivision."""
    n = lat.n
    chains_from = {}
    for L in sorted(lat.faces, key=len, reverse=True):
        chains_from[L] = 1 + sum(chains_from[M] for M in lat.faces if L < M)
    total = 0
    for L, c in chains_from.items():
        free = n - len(L)
        if exclude is not None and exclude not in L:
            free -= 1
        total += c * 2 ** free
    return total


def brute_force_homology(lat, exclude=None, cap=DEFAULT_CAP):
    """Homology of the barycentric subdivision of the reflected cell complex.

    A cell ``(J, L)`` is the copy of the face ``F_L`` reflected in the
    coordinates of ``J``; ``(J', L') <= (J, L)`` iff ``L`` is contained in
    ``L'`` and ``J' = J - L'``. Raises ``TooLarge`` when the subdivision would
    have more than ``cap`` simplices.
    """
    if lat.empty_manifold:
        raise ValueError("the manifold is empty")
    _check_truncation(lat, None, "order")
    count = oracle_simplex_count(lat, exclude)
    if cap is not None and count > cap:
        raise TooLarge(f"{count} simplices exceed the cap of {cap}",
                       simplices=count, cap=cap)
    cells, below = _cell_poset(lat, exclude)
    order = range(len(cells))
    return _order_complex_homology(order, below, keep_top=lambda e: True,
                                   dim_hint=lat.dim_P)


# ------------------------------------------------------------- expressions

def _sphere_group(d):
    if d == 0:
        return GradedGroup((2,))
    return GradedGroup((1,) + (0,) * (d - 1) + (1,))


def _kunneth(a, b):
    # every group reaching here is torsion free
    size = len(a.ranks) + len(b.ranks) - 1
    ranks = [0] * size
    for p, x in enumerate(a.ranks):
        for q, y in enumerate(b.ranks):
            ranks[p + q] += x * y
    return GradedGroup(tuple(ranks))


def _require_connected(groups, what):
    for g in groups:
        if g.rank(0) != 1:
            raise Unsupported(f"{what} of a disconnected manifold")


def expression_homology(expr):
    """Homology of a symbolic manifold, assembled from its pieces."""
    if isinstance(expr, Empty):
        return GradedGroup(())
    if isinstance(expr, Point):
        return GradedGroup((1,))
    if isinstance(expr, Sphere):
        return _sphere_group(expr.d)
    if isinstance(expr, Disk):
        return GradedGroup((1,)).padded(expr.d)
    if isinstance(expr, Product):
        out = GradedGroup((1,))
        for f in expr.factors:
            out = _kunneth(out, expression_homology(f))
        return out
    if isinstance(expr, (ConnectedSum, BoundaryConnectedSum)):
        m = expr.dim
        parts = [expression_homology(s).padded(m) for s in expr.summands]
        _require_connected(parts, "connected sum")
        ranks = [sum(p.rank(q) for p in parts) for q in range(m + 1)]
        ranks[0] = 1
        if isinstance(expr, ConnectedSum):
            if any(p.rank(m) != 1 for p in parts):
                raise Unsupported("closed summand without a fundamental class")
            ranks[m] = 1
        return GradedGroup(tuple(ranks))
    if isinstance(expr, PuncturedProduct):
        g = _kunneth(_sphere_group(expr.a), _sphere_group(expr.b))
        if expr.a + expr.b != expr.m or g.rank(expr.m) < 1:
            raise Unsupported("puncture dimension must be a + b")
        ranks = list(g.ranks)
        ranks[expr.m] -= 1
        return GradedGroup(tuple(ranks))
    if isinstance(expr, Exterior):
        g = _kunneth(_sphere_group(expr.p), _sphere_group(expr.q))
        m = expr.m
        if expr.p + expr.q >= m:
            raise Unsupported("S^p x S^q does not embed with positive codimension")
        ranks = [0] * (m + 1)
        ranks[0] = 1
        # Alexander duality: H~_i(exterior) = H~^{m-i-1}(S^p x S^q)
        reduced = (g.ranks[0] - 1,) + g.ranks[1:]
        for i in range(m + 1):
            j = m - i - 1
            if 0 <= j < len(reduced):
                ranks[i] += reduced[j]
        return GradedGroup(tuple(ranks))
    raise TypeError(f"not a manifold expression: {expr!r}")
