"""Combinatorics of the polytope ``{sum lambda_i r_i = 0, sum r_i = 1, r >= 0}``.

A face ``F_J`` is the part of the polytope where ``r_i = 0`` for ``i in J``.
Faces are stored by their index sets ``J`` (frozensets of 1-based indices);
a larger ``J`` is a smaller face.
"""
from dataclasses import dataclass, field

from .config import check_weak_hyperbolicity
from .errors import NotWeaklyHyperbolic
from .lp import origin_in_hull


def face_nonempty(cfg, J, _memo=None):
    """True iff ``F_J`` is nonempty, i.e. 0 lies in ``conv{lambda_i : i not in J}``."""
    rest = [i for i in range(1, cfg.n + 1) if i not in J]
    if not rest:
        return False
    key = frozenset(cfg.direction(i) for i in rest)
    if _memo is not None and key in _memo:
        return _memo[key]
    # feasibility only depends on which rays survive
    reps = {}
    for i in rest:
        reps.setdefault(cfg.direction(i), cfg.vector(i))
    result = origin_in_hull(list(reps.values()))
    if _memo is not None:
        _memo[key] = result
    return result


@dataclass(frozen=True)
class FaceLattice:
    cfg: object
    dims: dict = field(repr=False)
    covers: dict = field(repr=False)
    empty_manifold: bool = False
    max_size: object = None

    @property
    def faces(self):
        return self.dims.keys()

    @property
    def dim_P(self):
        return self.cfg.n - self.cfg.k - 1

    @property
    def n(self):
        return self.cfg.n

    def __len__(self):
        return len(self.dims)

    def __contains__(self, J):
        return frozenset(J) in self.dims

    def vertices(self):
        return [J for J, d in self.dims.items() if d == 0]

    def facet_indices(self):
        """Indices ``i`` whose facet ``F_i`` is nonempty."""
        return sorted(next(iter(J)) for J in self.dims if len(J) == 1)

    def euler_characteristic(self):
        return sum((-1) ** d for d in self.dims.values())

    def as_json(self):
        faces = sorted(self.dims, key=lambda J: (len(J), sorted(J)))
        return {"empty_manifold": self.empty_manifold, "dim_P": self.dim_P,
                "faces": [{"J": sorted(J), "dim": self.dims[J]}
                          for J in faces]}


def build_face_lattice(cfg, max_size=None):
    """Enumerate all nonempty faces, breadth first by ``|J|``.

    A candidate ``J`` is only tested when every ``J`` minus one element is
    already known to be a face; emptiness is inherited by supersets.
    With ``max_size`` only faces with ``|J| <= max_size`` are listed, which is
    enough for homology in degrees below ``max_size``.
    """
    if not check_weak_hyperbolicity(cfg).ok:
        raise NotWeaklyHyperbolic(
            "configuration is not weakly hyperbolic")
    memo = {}
    n, k = cfg.n, cfg.k
    empty = frozenset()
    if not face_nonempty(cfg, empty, memo):
        return FaceLattice(cfg, {}, {}, empty_manifold=True)

    dims = {empty: n - k - 1}
    level = [empty]
    while level and (max_size is None or len(level[0]) < max_size):
        known = set(level)
        nxt = []
        for J in level:
            top = max(J, default=0)
            for i in range(top + 1, n + 1):
                cand = J | {i}
                if any(cand - {j} not in known for j in J):
                    continue
                if face_nonempty(cfg, cand, memo):
                    nxt.append(cand)
        for J in nxt:
            dims[J] = n - len(J) - k - 1
        level = nxt

    covers = {J: [] for J in dims}
    for J in dims:
        for i in range(1, n + 1):
            if i not in J:
                bigger = J | {i}
                if bigger in dims:
                    covers[J].append(bigger)
    return FaceLattice(cfg, dims, covers, max_size=max_size)


def combinatorial_dims(lat):
    """Face dimensions read off the poset alone (height above the vertices)."""
    height = {}
    for J in sorted(lat.dims, key=len, reverse=True):
        below = lat.covers[J]
        height[J] = 1 + max((height[B] for B in below), default=-1)
    return height


def verify_simple(lat):
    """Check the polytope is simple with the expected face dimensions."""
    if lat.empty_manifold:
        raise ValueError("empty lattice")
    if lat.max_size is not None:
        raise ValueError("truncated lattice")
    heights = combinatorial_dims(lat)
    if any(heights[J] != d for J, d in lat.dims.items()):
        return False
    facets = set(lat.facet_indices())
    for J in lat.vertices():
        if len(J & facets) != lat.dim_P:
            return False
    return True
