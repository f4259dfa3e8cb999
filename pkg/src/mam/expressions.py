"""Symbolic manifolds: sphere products, connected sums and their relatives.

Nodes are immutable and hashable. Build them through :func:`product`,
:func:`connected_sum` and :func:`boundary_sum`, which flatten and sort so that
equal manifolds written in different orders compare (and print) equal.

Text grammar::

    S^d   D^d   T^k (shorthand for a product of k circles)   pt   empty
    A x B                       product
    #_k (A) # B                 closed connected sum
    [+]_k (A) [+] B             connected sum along the boundary
    (S^a x S^b) \\ D^m           punctured sphere product
    Ext(S^p x S^q in S^m)       exterior of S^p x S^q embedded in S^m
"""
import re
from dataclasses import dataclass

from .errors import ParseError, Unsupported


class Node:
    kind = ""
    rank = 0

    def sort_key(self):
        return (self.rank, self._payload_key())

    def _payload_key(self):
        return ()

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return format_expression(self)


@dataclass(frozen=True, eq=True)
class Empty(Node):
    kind = "empty"
    rank = 0

    @property
    def dim(self):
        return -1

    closed = True


@dataclass(frozen=True, eq=True)
class Point(Node):
    kind = "point"
    rank = 1

    @property
    def dim(self):
        return 0

    closed = True


@dataclass(frozen=True, eq=True)
class Sphere(Node):
    d: int
    kind = "sphere"
    rank = 2

    def _payload_key(self):
        return (self.d,)

    @property
    def dim(self):
        return self.d

    closed = True


@dataclass(frozen=True, eq=True)
class Disk(Node):
    d: int
    kind = "disk"
    rank = 3

    def _payload_key(self):
        return (self.d,)

    @property
    def dim(self):
        return self.d

    @property
    def closed(self):
        return self.d == 0


@dataclass(frozen=True, eq=True)
class Product(Node):
    factors: tuple
    kind = "product"
    rank = 4

    def _payload_key(self):
        return tuple(f.sort_key() for f in self.factors)

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)

    @property
    def closed(self):
        return all(f.closed for f in self.factors)


@dataclass(frozen=True, eq=True)
class PuncturedProduct(Node):
    """``S^a x S^b`` with an open ``m``-disk removed (``m = a + b``)."""
    a: int
    b: int
    m: int
    kind = "punctured_product"
    rank = 5

    def _payload_key(self):
        return (self.m, self.a, self.b)

    @property
    def dim(self):
        return self.m

    closed = False


@dataclass(frozen=True, eq=True)
class Exterior(Node):
    """Complement of an open tubular neighbourhood of ``S^p x S^q`` in ``S^m``."""
    p: int
    q: int
    m: int
    kind = "exterior"
    rank = 6

    def _payload_key(self):
        return (self.m, self.p, self.q)

    @property
    def dim(self):
        return self.m

    closed = False


@dataclass(frozen=True, eq=True)
class ConnectedSum(Node):
    summands: tuple
    kind = "connected_sum"
    rank = 7

    def _payload_key(self):
        return tuple(s.sort_key() for s in self.summands)

    @property
    def dim(self):
        return self.summands[0].dim

    closed = True


@dataclass(frozen=True, eq=True)
class BoundaryConnectedSum(Node):
    summands: tuple
    kind = "boundary_connected_sum"
    rank = 8

    def _payload_key(self):
        return tuple(s.sort_key() for s in self.summands)

    @property
    def dim(self):
        return self.summands[0].dim

    closed = False


# ------------------------------------------------------------ constructors

def sphere(d):
    return Sphere(int(d))


def disk(d):
    return Point() if d == 0 else Disk(int(d))


def torus(k):
    return product(*[Sphere(1)] * k)


def product(*factors):
    flat = []
    for f in factors:
        if isinstance(f, Product):
            flat.extend(f.factors)
        elif isinstance(f, Disk) and f.d == 0:
            continue
        elif isinstance(f, Point):
            continue
        else:
            flat.append(f)
    if any(isinstance(f, Empty) for f in flat):
        return Empty()
    if not flat:
        return Point()
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(sorted(flat)))


def punctured_product(a, b, m=None):
    a, b = sorted((int(a), int(b)))
    return PuncturedProduct(a, b, a + b if m is None else int(m))


def exterior(p, q, m):
    p, q = sorted((int(p), int(q)))
    return Exterior(p, q, int(m))


def _summands(cls, items):
    flat = []
    for s in items:
        if isinstance(s, cls):
            flat.extend(s.summands)
        else:
            flat.append(s)
    dims = {s.dim for s in flat}
    if len(dims) > 1:
        raise Unsupported(f"summands of different dimensions {sorted(dims)}")
    return flat


def connected_sum(*summands):
    flat = _summands(ConnectedSum, summands)
    if any(not s.closed for s in flat):
        raise Unsupported("closed connected sum of a manifold with boundary")
    if len(flat) == 1:
        return flat[0]
    return ConnectedSum(tuple(sorted(flat)))


def boundary_sum(*summands):
    flat = _summands(BoundaryConnectedSum, summands)
    if any(s.closed for s in flat):
        raise Unsupported("boundary connected sum of a closed manifold")
    if len(flat) == 1:
        return flat[0]
    return BoundaryConnectedSum(tuple(sorted(flat)))


def canonical(node):
    """Rebuild ``node`` bottom-up through the canonicalising constructors."""
    if isinstance(node, Product):
        return product(*(canonical(f) for f in node.factors))
    if isinstance(node, ConnectedSum):
        return connected_sum(*(canonical(s) for s in node.summands))
    if isinstance(node, BoundaryConnectedSum):
        return boundary_sum(*(canonical(s) for s in node.summands))
    if isinstance(node, PuncturedProduct):
        return punctured_product(node.a, node.b, node.m)
    if isinstance(node, Exterior):
        return exterior(node.p, node.q, node.m)
    if isinstance(node, Disk):
        return disk(node.d)
    return node


# -------------------------------------------------------------- formatting

def _format_term(node):
    text = format_expression(node)
    if isinstance(node, (Product, PuncturedProduct,
                         ConnectedSum, BoundaryConnectedSum)):
        return f"({text})"
    return text


def _format_sum(summands, op):
    groups = []
    for s in summands:
        if groups and groups[-1][0] == s:
            groups[-1][1] += 1
        else:
            groups.append([s, 1])
    parts = []
    for s, count in groups:
        term = _format_term(s)
        parts.append(f"{op}_{count} {term}" if count > 1 else term)
    return f" {op} ".join(parts)


def format_expression(node):
    if isinstance(node, Empty):
        return "empty"
    if isinstance(node, Point):
        return "pt"
    if isinstance(node, Sphere):
        return f"S^{node.d}"
    if isinstance(node, Disk):
        return f"D^{node.d}"
    if isinstance(node, Product):
        return " x ".join(_format_term(f) for f in node.factors)
    if isinstance(node, PuncturedProduct):
        return f"(S^{node.a} x S^{node.b}) \\ D^{node.m}"
    if isinstance(node, Exterior):
        return f"Ext(S^{node.p} x S^{node.q} in S^{node.m})"
    if isinstance(node, ConnectedSum):
        return _format_sum(node.summands, "#")
    if isinstance(node, BoundaryConnectedSum):
        return _format_sum(node.summands, "[+]")
    raise TypeError(node)


def expression_json(node):
    out = {"kind": node.kind}
    if isinstance(node, (Sphere, Disk)):
        out["dim"] = node.d
    elif isinstance(node, Product):
        out["factors"] = [expression_json(f) for f in node.factors]
    elif isinstance(node, (ConnectedSum, BoundaryConnectedSum)):
        out["summands"] = [expression_json(s) for s in node.summands]
    elif isinstance(node, PuncturedProduct):
        out.update(a=node.a, b=node.b, m=node.m)
    elif isinstance(node, Exterior):
        out.update(p=node.p, q=node.q, m=node.m)
    return out


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(#_\d+|\[\+\]_\d+|\[\+\]|#|[SDT]\^\d+|Ext\(|pt|empty"
                    r"|x|in|\\|\(|\))")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected text at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        terms = [self.term()]
        op = None
        while self.peek() in ("#", "[+]"):
            tok = self.take()
            if op not in (None, tok):
                raise ParseError("mixed '#' and '[+]' need parentheses")
            op = tok
            terms.append(self.term())
        flat = []
        for t in terms:
            flat.extend(t)
        if op is None and len(flat) == 1 and not getattr(self, "_forced", None):
            return flat[0]
        kind = op or self._forced
        self._forced = None
        return connected_sum(*flat) if kind == "#" else boundary_sum(*flat)

    def term(self):
        tok = self.peek()
        if tok and (tok.startswith("#_") or tok.startswith("[+]_")):
            self.take()
            op, count = tok.rsplit("_", 1)
            self._forced = op
            return [self.prod()] * int(count)
        return [self.prod()]

    def prod(self):
        factors = [self.factor()]
        while self.peek() == "x":
            self.take()
            factors.append(self.factor())
        return product(*factors)

    def factor(self):
        tok = self.take()
        if tok.startswith("S^"):
            return sphere(int(tok[2:]))
        if tok.startswith("D^"):
            return disk(int(tok[2:]))
        if tok.startswith("T^"):
            return torus(int(tok[2:]))
        if tok == "pt":
            return Point()
        if tok == "empty":
            return Empty()
        if tok == "Ext(":
            a = self.take()
            self.take("x")
            b = self.take()
            self.take("in")
            m = self.take()
            self.take(")")
            return exterior(int(a[2:]), int(b[2:]), int(m[2:]))
        if tok == "(":
            saved = getattr(self, "_forced", None)
            self._forced = None
            inner = self.expr()
            self._forced = saved
            self.take(")")
            if self.peek() == "\\":
                self.take()
                m = int(self.take()[2:])
                if not (isinstance(inner, Product) and len(inner.factors) == 2
                        and all(isinstance(f, Sphere) for f in inner.factors)):
                    raise ParseError("only S^a x S^b can be punctured")
                a, b = (f.d for f in inner.factors)
                return punctured_product(a, b, m)
            return inner
        raise ParseError(f"unexpected token {tok!r}")


def parse_expression(text):
    """Parse the text grammar back into a canonical expression."""
    p = _Parser(text)
    p._forced = None
    node = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing tokens from {p.peek()!r}")
    return node
