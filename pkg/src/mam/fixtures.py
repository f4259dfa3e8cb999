"""The canonical corpus of configuration files.

Irrational roots of unity are replaced by rational points with the same
circular order and the same merging behaviour; the tests check that each
realisation has the intended cyclic partition.
"""
from dataclasses import dataclass
from pathlib import Path

PENTAGON = ["1+0i", "31/100+95/100i", "-81/100+59/100i", "-81/100-59/100i",
            "31/100-95/100i"]
HEPTAGON = ["1 0", "62/100 78/100", "-22/100 97/100", "-90/100 43/100",
            "-90/100 -43/100", "-22/100 -97/100", "62/100 -78/100"]


@dataclass(frozen=True)
class Fixture:
    name: str
    lines: tuple
    source: str
    negative: str = ""
    k: int = 2

    @property
    def text(self):
        body = "\n".join(self.lines)
        return f"# {self.source}\n{self.k} {len(self.lines)}\n{body}\n"


def _row2(n):
    return Fixture(f"table1_row2_n{n}", tuple(["1+0i"] * (n - 2) + ["0+1i", "-1-1i"]),
                   f"Table 1 row 2 with n = {n}: (1^(n-2), i, -1-i)")


def _with_multiplicity(position, times):
    lines = []
    for t, v in enumerate(PENTAGON):
        lines += [v] * (times if t == position else 1)
    return tuple(lines)


FIXTURES = (
    Fixture("table1_row1", ("1+0i", "1+0i", "0+1i", "-1-1i"),
            "Table 1 row 1: (1, 1, i, -1-i)"),
    _row2(5), _row2(6), _row2(7),
    Fixture("table1_row3", ("0+1i", "0+1i", "1+0i", "-1-1i", "-1-1i"),
            "Table 1 row 3: (i, i, 1, -1-i, -1-i)"),
    Fixture("pentagon", tuple(PENTAGON),
            "Table 1 row 4: fifth roots of unity, rounded to hundredths"),
    Fixture("table1_row5", _with_multiplicity(0, 2),
            "Table 1 row 5: fifth roots of unity with lambda_1 doubled"),
    Fixture("heptagon", tuple(HEPTAGON),
            "Table 1 row 6: seventh roots of unity, rounded to hundredths"),
    Fixture("example1", _with_multiplicity(0, 3),
            "open book example 1: fifth roots, lambda_1 with multiplicity 3"),
    Fixture("example2", _with_multiplicity(1, 3),
            "open book example 2: fifth roots, lambda_2 with multiplicity 3"),
    Fixture("example3", _with_multiplicity(2, 3),
            "open book example 3: fifth roots, lambda_3 with multiplicity 3"),
    Fixture("heptagon_minus_one", tuple(HEPTAGON[1:]),
            "binding of Table 1 row 6: heptagon without its first direction"),
    Fixture("point_triangle", ("1+0i", "0+1i", "-1-1i"),
            "three vectors around the origin; the polytope is a point"),
    Fixture("simplex_k3", ("1 0 0", "0 1 0", "0 0 1", "-1 -1 -1"),
            "k = 3 analogue of the point triangle", k=3),
    Fixture("antipodal", ("1+0i", "-2+0i", "0+1i", "-1-1i"),
            "negative: lambda_1 and lambda_2 point in opposite directions",
            negative="not weakly hyperbolic, witness {1, 2}"),
    Fixture("zero_vector", ("0+0i", "1+0i", "0+1i", "-1-1i"),
            "negative: lambda_1 is zero",
            negative="not weakly hyperbolic, witness {1}"),
    Fixture("outside_hull", ("1+0i", "0+1i", "1+1i"),
            "negative: the origin is outside the hull, so Z is empty",
            negative="empty manifold"),
)


def fixture(name):
    for fx in FIXTURES:
        if fx.name == name:
            return fx
    raise KeyError(name)


def load_fixture(name):
    from .config import parse_configuration
    return parse_configuration(fixture(name).text)


def _readme():
    lines = ["# Fixture corpus", "",
             "Generated by `mam fixtures`. Each file is a configuration in the",
             "`k n` text format. Roots of unity are rounded to hundredths; the",
             "rounding keeps the circular order and the cyclic partition.", ""]
    for fx in FIXTURES:
        tag = f" Expected: {fx.negative}." if fx.negative else ""
        lines.append(f"- `{fx.name}.cfg`: {fx.source}.{tag}")
    return "\n".join(lines) + "\n"


def emit_fixture_suite(directory):
    """Write every fixture plus a README; returns the written paths."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for fx in FIXTURES:
        path = out / f"{fx.name}.cfg"
        path.write_text(fx.text, encoding="utf-8")
        written.append(path)
    readme = out / "README.md"
    readme.write_text(_readme(), encoding="utf-8")
    written.append(readme)
    return written
