"""Diffeomorphism types of Z, Z_+ and open books, read off a cyclic partition.

Real manifolds are built directly from the partition. The complex manifold
``Z^C`` of a partition is the real manifold of the partition with every size
doubled; its page at a coordinate of class ``J_1`` is the real half manifold
of ``(2 n_1 - 1, 2 n_2, ..., 2 n_{2l+1})`` (one real coordinate of the
binding variable is cut, the other stays as the half-space coordinate).
"""
import functools
from dataclasses import dataclass, field

from .config import check_weak_hyperbolicity, derive
from .cyclic import CyclicPartition, cyclic_partition, realize_partition, rotate_to_index
from .errors import PartitionError, RepeatRequired, ValidationError
from .expressions import (Empty, boundary_sum, connected_sum, disk, exterior,
                          product, punctured_product, sphere)
from .homology import homology_Z
from .polytope import build_face_lattice

REAL, COMPLEX = "real", "complex"


@dataclass(frozen=True)
class HypothesisStatus:
    dim_ok: bool
    h1_zero: bool
    verdict: str
    notes: str = ""

    def as_json(self):
        return {"dim_ok": self.dim_ok, "h1_zero": self.h1_zero,
                "verdict": self.verdict, "notes": self.notes}


def _check_flavor(flavor):
    if flavor not in (REAL, COMPLEX):
        raise ValueError(f"flavor must be 'real' or 'complex', not {flavor!r}")


def _cyc(seq, i):
    return seq[(i - 1) % len(seq)]


def _cyclic_range(start, stop, m):
    """1-based indices ``start, start+1, ..., stop`` taken mod ``m``."""
    out = [start]
    while (out[-1] - stop) % m:
        out.append(out[-1] % m + 1)
    return [(i - 1) % m + 1 for i in out]


# ---------------------------------------------------------- raw formulas

def _real_Z(sizes):
    m = len(sizes)
    ell = (m - 1) // 2
    n = sum(sizes)
    if ell == 1:
        return product(*(sphere(s - 1) for s in sizes))
    d = [sum(_cyc(sizes, i + t) for t in range(ell)) for i in range(1, m + 1)]
    return connected_sum(*(product(sphere(di - 1), sphere(n - di - 2))
                           for di in d))


def _real_Z_plus(sizes):
    """Half manifold ``x_1 >= 0`` for the partition ``sizes`` (class 1 first)."""
    m = len(sizes)
    ell = (m - 1) // 2
    n = sum(sizes)
    if ell == 1:
        return product(sphere(sizes[1] - 1), sphere(sizes[2] - 1),
                       disk(sizes[0] - 1))
    d = [None] + [sum(_cyc(sizes, i + t) for t in range(ell))
                  for i in range(1, m + 1)]

    def s_piece(i):
        return product(sphere(d[i] - 1), disk(n - d[i] - 2))

    def d_piece(i):
        return product(disk(d[i] - 1), sphere(n - d[i] - 2))

    tail = [d_piece(i) for i in _cyclic_range(ell + 3, 1, m)]
    if sizes[0] > 1:
        head = [s_piece(i) for i in range(2, ell + 3)]
        return boundary_sum(*head, *tail)
    handle = punctured_product(d[2] - 1, d[ell + 2] - 1, n - 3)
    if ell > 2:
        head = [s_piece(i) for i in range(3, ell + 2)]
        return boundary_sum(*head, *tail, handle)
    return boundary_sum(handle, exterior(sizes[1] - 1, sizes[4] - 1, n - 3))


def _case(part):
    if part.ell == 1:
        return "a"
    if part.sizes[0] > 1:
        return "b"
    return "c" if part.ell > 2 else "d"


# ------------------------------------------------------------- statuses

@functools.lru_cache(maxsize=256)
def _h1_zero(sizes, drop_first=False, complexify=False):
    cfg = realize_partition(sizes)
    if drop_first:
        cfg = derive(cfg, "remove", 1)
        if not _nonempty(cfg):
            return True
    if complexify:
        # Z^C is simply connected unless a facet is empty; each empty facet
        # splits off a circle factor. Doubling keeps every facet's emptiness.
        lat = build_face_lattice(cfg, max_size=1)
        return lat.empty_manifold or len(lat.facet_indices()) == cfg.n
    lat = build_face_lattice(cfg, max_size=2)
    if lat.empty_manifold:
        return True
    h = homology_Z(lat, max_degree=1)
    return h.rank(1) == 0 and (len(h.torsion) < 2 or not h.torsion[1])


def _nonempty(cfg):
    try:
        return not build_face_lattice(cfg, max_size=0).empty_manifold
    except ValidationError:
        return False


def _status_Z(part, flavor):
    ell = part.ell
    h1 = _h1_zero(part.sizes, complexify=flavor == COMPLEX)
    if ell == 1:
        return HypothesisStatus(True, h1, "unconditional",
                                "product of three spheres; no hypotheses")
    if flavor == COMPLEX:
        return HypothesisStatus(True, h1, "unconditional",
                                "moment-angle manifold with l > 1")
    dim = part.n - 3
    dim_ok = dim >= 5
    notes = ("needs Z simply connected of dimension >= 5; "
             "H1 checked, fundamental group not computed")
    return HypothesisStatus(dim_ok, h1, "conditional", notes)


def _status_Z_plus(part, flavor):
    case = _case(part)
    if flavor == COMPLEX:
        h1 = _h1_zero(part.sizes, complexify=True)
        notes = f"case ({case})"
        if case == "d":
            notes += "; the embedding of the removed product is not known to be standard"
        return HypothesisStatus(True, h1, "unconditional", notes)
    h1 = _h1_zero(part.sizes) and _h1_zero(part.sizes, drop_first=True)
    if case == "a":
        return HypothesisStatus(True, h1, "unconditional",
                                "case (a); no hypotheses")
    dim_ok = part.n - 3 >= 6
    notes = (f"case ({case}); needs Z and Z_0 simply connected and dim Z >= 6; "
             "H1 checked, fundamental group not computed")
    return HypothesisStatus(dim_ok, h1, "conditional", notes)


# ------------------------------------------------------------ public API

def _flavored_sizes(sizes, flavor):
    return tuple(2 * s for s in sizes) if flavor == COMPLEX else tuple(sizes)


def classify_Z(part, flavor=REAL):
    """Diffeomorphism type of ``Z`` (``flavor="real"``) or ``Z^C``."""
    _check_flavor(flavor)
    expr = _real_Z(_flavored_sizes(part.sizes, flavor))
    return expr, _status_Z(part, flavor)


def classify_Z_plus(part, flavor=REAL):
    """Half manifold at class ``J_1`` (rotate first with ``rotate_to_index``).

    For the complex flavor this is the page of the open book of ``Z^C`` with
    binding at a coordinate of ``J_1``.
    """
    _check_flavor(flavor)
    sizes = list(part.sizes)
    if flavor == COMPLEX:
        sizes = [2 * sizes[0] - 1] + [2 * s for s in sizes[1:]]
    return _real_Z_plus(sizes), _status_Z_plus(part, flavor)


def classify_Z_s(part, s):
    """Type of the manifold cut out by ``sum w_r^2 + sum lambda_j |z_j|^2 = 0``
    on the unit sphere of ``C^{s+n}``."""
    if s < 1:
        raise ValidationError("s must be a positive integer")
    n = part.n
    return connected_sum(*(product(sphere(2 * dj + s - 1),
                                   sphere(2 * n - 2 * dj + s - 2))
                           for dj in part.d))


@dataclass(frozen=True)
class OpenBookReport:
    total: object
    binding_cfg: object
    binding: object
    page: object
    status: HypothesisStatus
    monodromy: str = "trivial"
    notes: tuple = field(default=())

    def as_json(self):
        return {"total": str(self.total), "binding": str(self.binding),
                "page": str(self.page), "monodromy": self.monodromy,
                "binding_cfg": self.binding_cfg.as_json(),
                "status": self.status.as_json(), "notes": list(self.notes)}


def _classify_or_empty(cfg, flavor, notes):
    try:
        part = cyclic_partition(cfg)
    except PartitionError as err:
        if err.code != "empty_or_degenerate":
            raise
        notes.append(f"binding configuration gives an empty manifold ({err})")
        return Empty()
    return classify_Z(part, flavor)[0]


def open_book_report(cfg, i, flavor=COMPLEX):
    """Open book with binding at coordinate ``i`` and trivial monodromy.

    Complex flavor: binding ``Z^C`` of the configuration without ``lambda_i``,
    page the complex half manifold at ``i``.
    Real flavor: ``cfg`` must be some ``Lambda'`` in which ``lambda_i`` is
    repeated; the open book lives on ``Z(Lambda')`` with page ``Z_+(Lambda)``
    and binding ``Z_0(Lambda)``, where ``Lambda`` drops the copy ``i``.
    """
    _check_flavor(flavor)
    if not 1 <= i <= cfg.n:
        raise ValidationError(f"index {i} out of range 1..{cfg.n}")
    if not check_weak_hyperbolicity(cfg).ok:
        raise ValidationError("configuration is not weakly hyperbolic")
    part = cyclic_partition(cfg)
    total, _ = classify_Z(part, flavor)
    notes = []
    if flavor == COMPLEX:
        binding_cfg = derive(cfg, "remove", i)
        binding = _classify_or_empty(binding_cfg, flavor, notes)
        page, status = classify_Z_plus(rotate_to_index(part, i), flavor)
    else:
        twins = [j for j in range(1, cfg.n + 1)
                 if j != i and cfg.direction(j) == cfg.direction(i)]
        if not twins:
            raise RepeatRequired(
                f"lambda_{i} is not repeated; the real open book needs a twin")
        base = derive(cfg, "remove", i)
        j = twins[0] - (1 if twins[0] > i else 0)
        binding_cfg = derive(base, "remove", j)
        binding = _classify_or_empty(binding_cfg, flavor, notes)
        page, status = classify_Z_plus(
            rotate_to_index(cyclic_partition(base), j), flavor)
    return OpenBookReport(total, binding_cfg, binding, page, status,
                          notes=tuple(notes))
