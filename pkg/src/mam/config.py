"""Configurations of vectors, their text format, and the checks on them.

A configuration is an ordered list of exact rational vectors
``lambda_1 .. lambda_n`` in Q^k. Coordinates are addressed by 1-based index
everywhere in the public API, matching how the manifolds are usually written.
"""
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import ParseError, ValidationError
from .lp import origin_in_hull
from .snf import elementary_divisors, hermite_normal_form, smith_normal_form


def _frac(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass int, str or Fraction")
    return Fraction(value)


@dataclass(frozen=True)
class Configuration:
    k: int
    vectors: tuple
    labels: tuple = ()

    def __post_init__(self):
        vectors = tuple(tuple(_frac(c) for c in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vectors)
        if self.k < 1:
            raise ValidationError("k must be positive")
        if not vectors:
            raise ValidationError("a configuration needs at least one vector")
        for i, v in enumerate(vectors, 1):
            if len(v) != self.k:
                raise ValidationError(
                    f"vector {i} has {len(v)} coordinates, expected {self.k}")
        labels = tuple(self.labels) or tuple(
            f"x{i}" for i in range(1, len(vectors) + 1))
        if len(labels) != len(vectors):
            raise ValidationError("one label per vector is required")
        if len(set(labels)) != len(labels):
            raise ValidationError("labels must be distinct")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_dirs",
                           tuple(direction_key(v) for v in vectors))

    @property
    def n(self):
        return len(self.vectors)

    def vector(self, i):
        return self.vectors[i - 1]

    def direction(self, i):
        """Key identifying the open ray through ``lambda_i`` (``None`` for 0)."""
        return self._dirs[i - 1]

    def direction_classes(self):
        """Coordinates grouped by ray, in order of first appearance."""
        groups = {}
        for i in range(1, self.n + 1):
            groups.setdefault(self.direction(i), []).append(i)
        return list(groups.values())

    def to_text(self):
        lines = [f"{self.k} {self.n}"]
        for label, v in zip(self.labels, self.vectors):
            lines.append(f"{label}=" + " ".join(str(c) for c in v))
        return "\n".join(lines) + "\n"

    def as_json(self):
        return {"k": self.k, "n": self.n, "labels": list(self.labels),
                "vectors": [[str(c) for c in v] for v in self.vectors]}


def direction_key(v):
    nz = next((c for c in v if c != 0), None)
    if nz is None:
        return None
    s = abs(nz)
    return tuple(c / s for c in v)


# ---------------------------------------------------------------- parsing

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_GAUSSIAN = re.compile(
    rf"^(?P<re>{_RATIONAL})?(?:(?P<im>[+-](?:\d+(?:/\d+)?)?)i)?$")
_PURE_IMAG = re.compile(rf"^(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i$")


def _parse_rational(token, line):
    if not re.fullmatch(_RATIONAL, token):
        raise ParseError(f"malformed rational {token!r}", line)
    value = Fraction(token)
    return value


def _imag_coeff(text):
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    return Fraction(text)


def _parse_gaussian(token, line):
    m = _PURE_IMAG.fullmatch(token)
    if m:
        return (Fraction(0), _imag_coeff(m["im"]))
    m = _GAUSSIAN.fullmatch(token)
    if not m or (m["re"] is None and m["im"] is None):
        raise ParseError(f"malformed Gaussian rational {token!r}", line)
    re_part = Fraction(m["re"]) if m["re"] is not None else Fraction(0)
    im_part = _imag_coeff(m["im"]) if m["im"] is not None else Fraction(0)
    return (re_part, im_part)


def parse_configuration(text):
    """Parse the configuration file format.

    Line 1 is ``k n``; then ``n`` vector lines, each optionally prefixed by
    ``label=``. For ``k == 2`` a line may be a Gaussian rational such as
    ``-1-1i`` or ``3/2+i``. Lines starting with ``#`` and blank lines are
    ignored. Parsing does not validate weak hyperbolicity.
    """
    header = None
    vectors, labels = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError("header must be 'k n'", lineno)
            header = (int(parts[0]), int(parts[1]))
            if header[0] < 1 or header[1] < 1:
                raise ParseError("k and n must be positive", lineno)
            continue
        k, n = header
        label = None
        if "=" in line:
            label, line = (s.strip() for s in line.split("=", 1))
            if not label or any(ch.isspace() for ch in label):
                raise ParseError(f"bad label {label!r}", lineno)
        tokens = line.split()
        if k == 2 and len(tokens) == 1:
            vec = _parse_gaussian(tokens[0].replace(" ", ""), lineno)
        else:
            if len(tokens) != k:
                raise ParseError(
                    f"expected {k} fields, found {len(tokens)}", lineno)
            vec = tuple(_parse_rational(t, lineno) for t in tokens)
        if len(vectors) >= n:
            raise ParseError(f"more than n={n} vector lines", lineno)
        if label is not None and label in labels:
            raise ParseError(f"duplicate label {label!r}", lineno)
        vectors.append(vec)
        labels.append(label)
    if header is None:
        raise ParseError("empty configuration file")
    k, n = header
    if len(vectors) != n:
        raise ParseError(f"expected {n} vector lines, found {len(vectors)}")
    used = {lab for lab in labels if lab is not None}
    final = []
    for i, lab in enumerate(labels, 1):
        if lab is None:
            lab = f"x{i}"
            while lab in used:
                lab += "'"
            used.add(lab)
        final.append(lab)
    return Configuration(k, tuple(vectors), tuple(final))


def read_configuration(path):
    with open(path, encoding="utf-8") as fh:
        return parse_configuration(fh.read())


# ------------------------------------------------------ weak hyperbolicity

@dataclass(frozen=True)
class WHReport:
    status: str
    witness: tuple = None

    @property
    def ok(self):
        return self.status == "ok"

    def as_json(self):
        return {"status": self.status,
                "witness": list(self.witness) if self.witness else None}


def check_weak_hyperbolicity(cfg):
    """Check that the origin avoids the hull of every ``<= k`` of the vectors.

    On failure the witness is the smallest violating index set, ties broken
    lexicographically.
    """
    seen = {}
    for size in range(1, min(cfg.k, cfg.n) + 1):
        for J in itertools.combinations(range(1, cfg.n + 1), size):
            key = frozenset(cfg.direction(i) for i in J)
            if key not in seen:
                seen[key] = (None in key
                             or origin_in_hull([cfg.vector(i) for i in J]))
            if seen[key]:
                return WHReport("violated", J)
    return WHReport("ok")


# ------------------------------------------------------------ condition K

@dataclass(frozen=True)
class ConditionKReport:
    holds: bool
    basis: tuple
    solution_dim: int

    def as_json(self):
        return {"holds": self.holds, "solution_dim": self.solution_dim,
                "basis": [list(v) for v in self.basis]}


def _rational_nullspace(rows, n):
    A = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [v / piv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -A[i][f]
        basis.append(v)
    return basis


def _clear_denominators(v):
    m = lcm(*(x.denominator for x in v))
    ints = [int(x * m) for x in v]
    g = gcd(*ints)
    return [x // g for x in ints]


def condition_K_system(cfg):
    """The ``(k+1) x n`` matrix of ``sum s_i lambda_i = 0, sum s_i = 0``."""
    rows = [[cfg.vectors[j][c] for j in range(cfg.n)] for c in range(cfg.k)]
    rows.append([Fraction(1)] * cfg.n)
    return rows


def saturate(basis):
    """Basis of ``span_Q(basis) ∩ Z^n``, in Hermite normal form."""
    if not basis:
        return []
    n = len(basis[0])
    # columns of basis^T span the lattice; saturation = first r columns of U^-1
    sf = smith_normal_form([[basis[j][i] for j in range(len(basis))]
                            for i in range(n)])
    r = len(sf.diagonal)
    sat = [[sf.U_inv[i][j] for i in range(n)] for j in range(r)]
    return hermite_normal_form(sat)


def check_condition_K(cfg):
    """Integer basis of the solutions of ``sum s_i lambda_i = 0 = sum s_i``.

    The rational nullspace is computed exactly, denominators are cleared, and
    the resulting lattice is saturated so the basis generates every integer
    solution. For rational input a basis always exists, so ``holds`` is True.
    """
    rational = _rational_nullspace(condition_K_system(cfg), cfg.n)
    basis = saturate([_clear_denominators(v) for v in rational])
    holds = all(d == 1 for d in elementary_divisors(basis)) if basis else True
    return ConditionKReport(holds, tuple(tuple(v) for v in basis),
                            len(rational))


# ------------------------------------------------------------- derivation

def _fresh_label(base, used):
    label = base + "'"
    while label in used:
        label += "'"
    return label


def derive(cfg, action, i=None):
    """Derived configuration: ``remove``, ``duplicate`` or ``complexify``.

    ``duplicate`` inserts the copy of ``lambda_i`` right after position ``i``;
    ``complexify`` doubles every coordinate in place, giving the real model of
    the complex manifold.
    """
    if action == "complexify":
        vectors, labels = [], []
        for lab, v in zip(cfg.labels, cfg.vectors):
            vectors += [v, v]
            labels += [f"{lab}.re", f"{lab}.im"]
        return Configuration(cfg.k, tuple(vectors), tuple(labels))
    if i is None or not 1 <= i <= cfg.n:
        raise ValidationError(f"index {i} out of range 1..{cfg.n}")
    vectors, labels = list(cfg.vectors), list(cfg.labels)
    if action == "remove":
        if cfg.n == 1:
            raise ValidationError("cannot remove the only vector")
        del vectors[i - 1]
        del labels[i - 1]
    elif action == "duplicate":
        vectors.insert(i, vectors[i - 1])
        labels.insert(i, _fresh_label(labels[i - 1], set(labels)))
    else:
        raise ValueError(f"unknown action {action!r}")
    return Configuration(cfg.k, tuple(vectors), tuple(labels))
