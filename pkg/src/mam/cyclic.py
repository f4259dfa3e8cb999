"""Normal form of a planar (k = 2) configuration as an odd cyclic partition.

Directions that can be pushed together without the origin ever landing on a
segment between two of them are merged; what is left is an odd number
``2l+1`` of classes ``J_1 .. J_{2l+1}`` in circular order, with sizes
``n_i`` and spans ``d_i = n_i + ... + n_{i+l-1}`` (indices mod ``2l+1``).
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from .config import Configuration, check_weak_hyperbolicity
from .errors import PartitionError, ValidationError
from .polytope import face_nonempty


@dataclass(frozen=True)
class CyclicPartition:
    classes: tuple

    @property
    def sizes(self):
        return tuple(len(c) for c in self.classes)

    @property
    def ell(self):
        return (len(self.classes) - 1) // 2

    @property
    def n(self):
        return sum(self.sizes)

    @property
    def d(self):
        m, ell, sizes = len(self.classes), self.ell, self.sizes
        return tuple(sum(sizes[(i + t) % m] for t in range(ell))
                     for i in range(m))

    def size(self, i):
        """``n_i`` with 1-based cyclic index."""
        return self.sizes[(i - 1) % len(self.sizes)]

    def span(self, i):
        """``d_i`` with 1-based cyclic index."""
        return self.d[(i - 1) % len(self.sizes)]

    def D(self, i):
        """The index set ``D_i = J_i u ... u J_{i+l-1}``."""
        m = len(self.classes)
        return frozenset(j for t in range(self.ell)
                         for j in self.classes[(i - 1 + t) % m])

    def class_of(self, index):
        for pos, cls in enumerate(self.classes):
            if index in cls:
                return pos + 1
        raise ValidationError(f"index {index} is not in the partition")

    def as_json(self):
        return {"sizes": list(self.sizes), "ell": self.ell, "d": list(self.d),
                "classes": [list(c) for c in self.classes]}

    @classmethod
    def from_sizes(cls, sizes):
        """Standard labelling: ``J_1 = {1..n_1}``, ``J_2`` the next block, ..."""
        classes, start = [], 1
        for size in sizes:
            classes.append(tuple(range(start, start + size)))
            start += size
        return cls(tuple(classes))


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _half(v):
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _ccw_sorted(dirs):
    """Sort nonzero plane vectors by angle in [0, 2pi) with exact arithmetic."""
    import functools

    def cmp(u, v):
        hu, hv = _half(u), _half(v)
        if hu != hv:
            return hu - hv
        c = _cross(u, v)
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(dirs, key=functools.cmp_to_key(cmp))


def _in_closed_arc(x, a, b):
    """Is direction ``x`` on the counter-clockwise arc from ``a`` to ``b``?

    Only used for arcs shorter than a half turn.
    """
    return _cross(a, x) >= 0 and _cross(x, b) >= 0


def _mergeable(first, last, dirs):
    """Can the run of directions from ``first`` to ``last`` (ccw) collapse?

    The run must turn by less than a half turn, and no direction may sit on
    the antipodal arc from ``-first`` to ``-last``.
    """
    if _cross(first, last) <= 0:
        return False
    a = (-first[0], -first[1])
    b = (-last[0], -last[1])
    return not any(_in_closed_arc(x, a, b) for x in dirs)


def cyclic_partition(cfg):
    """The cyclic partition of a planar weakly hyperbolic configuration."""
    if cfg.k != 2:
        raise PartitionError("not_k2", "cyclic partitions need k = 2")
    if not check_weak_hyperbolicity(cfg).ok:
        raise PartitionError("empty_or_degenerate",
                             "configuration is not weakly hyperbolic")
    if not face_nonempty(cfg, frozenset()):
        raise PartitionError("empty_or_degenerate",
                             "the origin is not inside the hull; Z is empty")

    by_dir = {}
    for i in range(1, cfg.n + 1):
        by_dir.setdefault(cfg.direction(i), []).append(i)
    dirs = _ccw_sorted(list(by_dir))
    # runs of consecutive directions: (first, last, [directions])
    runs = [[d] for d in dirs]
    changed = True
    while changed and len(runs) > 1:
        changed = False
        m = len(runs)
        for t in range(m):
            u, v = runs[t], runs[(t + 1) % m]
            if _mergeable(u[0], v[-1], dirs):
                merged = u + v
                if t + 1 < m:
                    runs[t:t + 2] = [merged]
                else:
                    runs = [merged] + runs[1:-1]
                changed = True
                break
    if len(runs) % 2 == 0 or len(runs) < 3:
        raise PartitionError(
            "even_classes" if len(runs) % 2 == 0 else "empty_or_degenerate",
            f"merging stopped at {len(runs)} classes")

    classes = [tuple(sorted(i for d in run for i in by_dir[d])) for run in runs]
    start = next(t for t, c in enumerate(classes) if 1 in c)
    m = len(classes)
    ccw = [classes[(start + t) % m] for t in range(m)]
    cw = [classes[(start - t) % m] for t in range(m)]
    best = min(ccw, cw, key=lambda seq: [min(c) for c in seq])
    return CyclicPartition(tuple(best))


def rotate_to_index(part, i):
    """Rotate the classes so that ``J_1`` contains coordinate ``i``."""
    if not 1 <= i <= part.n:
        raise ValidationError(f"index {i} out of range 1..{part.n}")
    pos = part.class_of(i) - 1
    cls = part.classes
    return CyclicPartition(cls[pos:] + cls[:pos])


def realize_partition(sizes, denominator=1000):
    """A rational configuration whose cyclic partition has the given sizes.

    The ``i``-th class sits near the ``i``-th root of unity of order
    ``len(sizes)`` (rounded to the given denominator), repeated ``n_i`` times.
    """
    m = len(sizes)
    if m < 3 or m % 2 == 0 or any(s < 1 for s in sizes):
        raise ValidationError("need an odd number of positive sizes")
    vectors = []
    for t, size in enumerate(sizes):
        angle = 2 * math.pi * t / m
        v = (Fraction(round(math.cos(angle) * denominator), denominator),
             Fraction(round(math.sin(angle) * denominator), denominator))
        vectors += [v] * size
    return Configuration(2, tuple(vectors))
