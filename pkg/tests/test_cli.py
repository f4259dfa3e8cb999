import io
import json
import subprocess
import sys

import pytest

from mam.cli import run
from mam.fixtures import FIXTURES


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    assert run(["fixtures", str(d)], io.StringIO()) == 0
    return d


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text)


def test_classify_pentagon_complex(corpus):
    code, rep = call_json("classify", corpus / "pentagon.cfg", "--complex")
    assert code == 0 and rep["schema"] == 1
    assert rep["result"]["expression"] == "#_5 (S^3 x S^4)"
    assert rep["result"]["status"]["verdict"] == "unconditional"
    assert len(rep["input_sha256"]) == 64


def test_classify_extras(corpus):
    code, rep = call_json("classify", corpus / "pentagon.cfg", "--complex",
                          "--index", 1, "--s", 1)
    assert code == 0
    assert rep["result"]["half"]["expression"].startswith("((S^3 x S^3) \\ D^6)")
    assert rep["result"]["Z_s"]["expression"] == "#_5 (S^4 x S^5)"


def test_check_antipodal(corpus):
    code, text = call("check", corpus / "antipodal.cfg")
    assert code == 3 and "{1, 2}" in text
    code, rep = call_json("check", corpus / "antipodal.cfg")
    assert rep["result"]["weak_hyperbolicity"]["witness"] == [1, 2]


def test_check_zero_vector(corpus):
    code, rep = call_json("check", corpus / "zero_vector.cfg")
    assert code == 3
    assert rep["result"]["weak_hyperbolicity"]["witness"] == [1]


def test_outside_hull(corpus):
    code, rep = call_json("check", corpus / "outside_hull.cfg")
    assert code == 0 and rep["result"]["empty_manifold"] is True
    code, rep = call_json("homology", corpus / "outside_hull.cfg")
    assert code == 3
    code, rep = call_json("partition", corpus / "outside_hull.cfg")
    assert code == 3 and rep["error"]["code"] == "empty_or_degenerate"


def test_homology_oracle(corpus):
    code, text = call("homology", corpus / "pentagon.cfg", "--oracle")
    assert code == 0
    assert "formula == oracle: true" in text and "ranks: [1, 10, 1]" in text


def test_homology_cap(corpus):
    code, rep = call_json("homology", corpus / "pentagon.cfg", "--oracle",
                          "--cap", 10)
    assert code == 4 and rep["error"]["code"] == "too_large"


def test_homology_complex_exclude(corpus):
    code, rep = call_json("homology", corpus / "point_triangle.cfg", "--complex",
                          "--index", 1, "--oracle")
    assert code == 0 and rep["result"]["agree"] is True


def test_partition_and_lattice(corpus):
    code, rep = call_json("partition", corpus / "table1_row3.cfg", "--index", 1)
    assert code == 0 and rep["result"]["sizes"] == [2, 1, 2]
    code, rep = call_json("lattice", corpus / "pentagon.cfg")
    assert code == 0 and rep["result"]["simple"] is True
    code, rep = call_json("partition", corpus / "simplex_k3.cfg")
    assert code == 3 and rep["error"]["code"] == "not_k2"


def test_openbook(corpus):
    code, rep = call_json("openbook", corpus / "example2.cfg", "--complex")
    assert code == 0
    assert rep["result"]["binding"] == "S^1 x S^3 x S^5"
    code, rep = call_json("openbook", corpus / "pentagon.cfg")
    assert code == 3 and rep["error"]["code"] == "repeat_required"
    code, rep = call_json("openbook", corpus / "table1_row1.cfg", "--index", 1)
    assert code == 0 and rep["result"]["binding"] == "empty"


def test_contact(corpus):
    code, rep = call_json("contact", corpus / "pentagon.cfg", "--samples", 5,
                          "--seed", 3, "--s", 2)
    assert code == 0
    summary = rep["result"]["summary"]
    assert summary["s"] == 2 and summary["min_value_off_W"] > 0
    assert len(rep["result"]["generic"]) == 5


@pytest.mark.parametrize("argv", [
    ("classify", "pentagon.cfg", "--complex", "--index", "2"),
    ("contact", "pentagon.cfg", "--samples", "4", "--seed", "9"),
    ("homology", "heptagon_minus_one.cfg"),
])
def test_result_is_deterministic(corpus, argv):
    argv = [argv[0], corpus / argv[1], *argv[2:]]
    a = call_json(*argv)[1]
    b = call_json(*argv)[1]
    assert json.dumps(a["result"], sort_keys=True) == json.dumps(b["result"], sort_keys=True)
    assert a["input_sha256"] == b["input_sha256"]


def test_usage_errors(corpus):
    assert run(["bogus"], io.StringIO()) == 2
    assert run(["classify"], io.StringIO()) == 2
    assert run(["classify", str(corpus / "missing.cfg")], io.StringIO()) == 2


def test_parse_error(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("2 2\n1+0i\nfoo\n")
    code, rep = call_json("check", bad)
    assert code == 3 and "3" in rep["error"]["message"]


def test_bad_index(corpus):
    code, _ = call("openbook", corpus / "pentagon.cfg", "--index", 9, "--complex")
    assert code == 3


def test_fixture_corpus_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(["fixtures", str(a)], io.StringIO())
    run(["fixtures", str(b)], io.StringIO())
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    assert len([n for n in names if n.endswith(".cfg")]) >= 12
    assert "antipodal" in (a / "README.md").read_text()


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_every_fixture_checks(corpus, fx):
    code, rep = call_json("check", corpus / f"{fx.name}.cfg")
    if fx.negative.startswith("not weakly"):
        assert code == 3
    else:
        assert code == 0
        assert rep["result"]["empty_manifold"] is (fx.name == "outside_hull")


def test_console_script(corpus):
    proc = subprocess.run([sys.executable, "-m", "mam.cli", "partition",
                           str(corpus / "pentagon.cfg")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "sizes [1, 1, 1, 1, 1]" in proc.stdout
