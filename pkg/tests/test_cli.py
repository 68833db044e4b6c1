import json
import os
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from scrollacm.cli import main

GOLDEN = Path(__file__).parent / "golden"
REGOLD = os.environ.get("SCROLL_ACM_REGOLD") == "1"


@pytest.fixture
def pencil_file(tmp_path):
    def write(data, name="pencil.json"):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)

    return write


XY = {"rows": 1, "cols": 2, "M1": [[1, 0]], "M2": [[0, 1]]}
MIXED = {"rows": 3, "cols": 3, "M1": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]],
         "M2": [["1/2", "0", "0"], ["0", "0", "1"], ["0", "0", "0"]]}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def schema(name):
    text = resources.files("scrollacm").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


# (golden name, schema, argv); pencil arguments are filled in by the test
CASES = [
    ("cohom_s13_dual_L", "cohom", ["cohom", "--scroll", "1,3", "--div", "H=1,F=-3"]),
    ("cohom_s13_trivial", "cohom", ["cohom", "--scroll", "1,3", "--div", "H=0,F=0"]),
    ("cohom_s13_acyclic", "cohom", ["cohom", "--scroll", "1,3", "--div", "H=-1,F=7"]),
    ("euler_s23_base", "euler", ["euler", "--scroll", "2,3", "--e", "H=-1,F=4,shift=1", "--f", "H=0,F=-1"]),
    ("decompose_xy", "decomposition", ["pencil", "decompose", "@XY", "--verify"]),
    ("decompose_mixed", "decomposition", ["pencil", "decompose", "@MIXED", "--verify"]),
    ("ulrich_s22_xy", "descriptors", ["ulrich", "--scroll", "2,2", "@XY"]),
    ("catalog_s13", "descriptors", ["catalog", "--scroll", "1,3"]),
    ("catalog_s22", "descriptors", ["catalog", "--scroll", "2,2"]),
    ("kfrak_member", "kfrak", ["kfrak", "--scroll", "2,3", "--word", "-3,2,-2"]),
    ("kfrak_nonmember", "kfrak", ["kfrak", "--scroll", "2,3", "--word", "1,2"]),
    ("enumerate_s23_len1", "enumeration", ["enumerate", "--scroll", "2,3", "--max-len", "1"]),
    ("enumerate_s23_len3", "enumeration", ["enumerate", "--scroll", "2,3", "--max-len", "3", "--max-rank", "250"]),
    ("enumerate_s22", "enumeration", ["enumerate", "--scroll", "2,2"]),
    ("rigid_s23", "descriptors", ["rigid", "--scroll", "2,3", "--word", "-3,2,-2"]),
    ("rigid_h_s23", "descriptors", ["rigid", "--scroll", "2,3", "--word", "3,-2,2", "--h"]),
    ("fib_3_4", "fib", ["fib", "3", "4"]),
    ("psi_3_8_3", "psi", ["psi", "3", "8", "3"]),
]


def expand(argv, pencil_file):
    files = {"@XY": XY, "@MIXED": MIXED}
    return [pencil_file(files[a], a[1:] + ".json") if a in files else a for a in argv]


@pytest.mark.parametrize("name,schema_name,argv", CASES, ids=[c[0] for c in CASES])
@pytest.mark.parametrize("fmt", ["table", "json"])
def test_golden(capsys, pencil_file, name, schema_name, argv, fmt):
    code, out, err = run(capsys, *expand(argv, pencil_file), "--format", fmt)
    assert code == 0, err
    path = GOLDEN / f"{name}.{'json' if fmt == 'json' else 'txt'}"
    if fmt == "json":
        payload = json.loads(out)
        jsonschema.validate(payload, schema(schema_name))
    if REGOLD:
        path.write_text(out)
    assert out == path.read_text()


def test_paper_examples_in_table_form(capsys, pencil_file):
    assert run(capsys, "cohom", "--scroll", "1,3", "--div", "H=0,F=0")[1].splitlines()[0] == "1 0 0"
    assert run(capsys, "cohom", "--scroll", "1,3", "--div", "H=-1,F=7")[1].splitlines()[0] == "0 0 0"
    # h^1(L^*) = 1 on S(1,3); L^* = H - 3F also has a section (it is the negative section)
    assert run(capsys, "cohom", "--scroll", "1,3", "--div", "H=1,F=-3")[1].splitlines()[0] == "1 1 0"
    assert run(capsys, "kfrak", "--scroll", "2,3", "--word", "-3,2,-2")[1].strip() == "member"
    assert run(capsys, "kfrak", "--scroll", "2,3", "--word", "1,2")[1].strip() == "non-member at t=2"
    out = run(capsys, "catalog", "--scroll", "1,3")[1]
    names = {line.split()[0] for line in out.splitlines()[2:] if line and not line.split()[0].endswith(":")}
    assert {"V", "V(-F)", "W"} <= names
    code, out, _ = run(capsys, "pencil", "decompose", pencil_file(XY), "--format", "json")
    assert json.loads(out)["blocks"] == [{"kind": "B", "v": 1, "multiplicity": 1}]
    code, out, _ = run(capsys, "enumerate", "--scroll", "2,2")
    assert code == 0 and "tame surface" in out and "`ulrich`" in out
    out = run(capsys, "enumerate", "--scroll", "2,3", "--max-len", "3", "--format", "json")[1]
    assert "-37/216" in {d["slope"] for d in json.loads(out)["descriptors"]}


def test_zero_pencil(capsys, pencil_file):
    path = pencil_file({"rows": 2, "cols": 1, "M1": [[0], [0]], "M2": [[0], [0]]})
    code, out, _ = run(capsys, "pencil", "decompose", path, "--format", "json", "--no-witness")
    data = json.loads(out)
    assert code == 0 and data["zero_part"] == [2, 1] and "P" not in data
    assert {b["kind"] for b in data["blocks"]} == {"Zero"}


def test_stdin_pencil(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(XY)))
    code, out, _ = run(capsys, "pencil", "decompose", "-")
    assert code == 0 and "B(1)" in out


@pytest.mark.parametrize("argv", [
    ["cohom", "--scroll", "0,3", "--div", "H=1"],
    ["cohom", "--scroll", "abc", "--div", "H=1"],
    ["cohom", "--scroll", "2,3", "--div", "G=1"],
    ["euler", "--scroll", "2,3", "--e", "rank=1,ch2x2=1", "--f", "rank=1"],
    ["pencil", "decompose", "/nonexistent/pencil.json"],
    ["ulrich", "--scroll", "2,3", "/nonexistent/pencil.json"],
    ["rigid", "--scroll", "2,3", "--word", "1,2"],
    ["rigid", "--scroll", "2,2", "--word", "-1"],
    ["kfrak", "--scroll", "2,3", "--word", "a,b"],
    ["fib", "1", "3"],
    [],
])
def test_user_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_bad_pencil_file(capsys, pencil_file):
    assert run(capsys, "pencil", "decompose", pencil_file({"rows": 1, "cols": 2, "M1": [[1]], "M2": [[0, 1]]}))[0] == 2
    assert run(capsys, "pencil", "decompose", pencil_file({"rows": 1, "cols": 1, "M1": [[0.5]], "M2": [[1]]}))[0] == 2
    assert run(capsys, "ulrich", "--scroll", "2,3", pencil_file(XY))[0] == 2


def test_internal_errors_exit_3(capsys, pencil_file, monkeypatch):
    monkeypatch.setattr("scrollacm.cli.verify_equivalence", lambda dec, m: False)
    code, _, err = run(capsys, "pencil", "decompose", pencil_file(XY), "--verify")
    assert code == 3


def test_inconsistent_state_exit_3(capsys, monkeypatch):
    from scrollacm.errors import InconsistentState

    def boom(*a, **k):
        raise InconsistentState("tracked vector drifted")

    monkeypatch.setattr("scrollacm.cli.enumerate_rigid", boom)
    code, _, err = run(capsys, "enumerate", "--scroll", "2,3")
    assert code == 3 and err.startswith("internal error:")


def test_no_floats_in_output(capsys, pencil_file):
    def floats(obj):
        if isinstance(obj, float):
            return 1
        if isinstance(obj, dict):
            return sum(floats(v) for v in obj.values())
        if isinstance(obj, list):
            return sum(floats(v) for v in obj)
        return 0

    for name, _, argv in CASES:
        out = run(capsys, *expand(argv, pencil_file), "--format", "json")[1]
        assert floats(json.loads(out)) == 0, name
