import csv
import io

import pytest

from fatpoints.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_alpha(capsys):
    code, out, _ = run(capsys, "alpha", "xyxmyz", "--m", "3")
    assert code == EXIT_OK
    assert rows(out)[1] == ["sing(xyxmyz)", "3", "7", "7", "True"]


def test_hilbert(capsys):
    code, out, _ = run(capsys, "hilbert", "xyxmyz", "--upto", "4")
    assert code == EXIT_OK
    assert [r[1] for r in rows(out)[1:]] == ["1", "3", "6", "6", "6"]


def test_contain_pencil(capsys):
    code, out, _ = run(capsys, "contain", "src/fatpoints/fixtures/pencil4.arr", "--m", "4",
                       "--r", "2")
    assert code == EXIT_OK
    assert rows(out)[1][4] == "holds"


def test_contain_expect_mismatch(capsys, tmp_path):
    code, out, _ = run(capsys, "contain", "triangle", "--m", "2", "--r", "2", "--expect", "holds")
    assert code == EXIT_FAIL
    assert rows(out)[1][4] == "fails"


def test_singular_markdown(capsys):
    code, out, _ = run(capsys, "singular", "dual_hesse", "--format", "md")
    assert code == EXIT_OK
    body = out.splitlines()[2:]
    assert len(body) == 12 and all(line.endswith("| 3 | 2 |") for line in body)


def test_subproducts(capsys):
    code, out, _ = run(capsys, "subproducts", "xyxmyz", "--k", "3")
    assert code == EXIT_OK
    assert rows(out)[1] == ["xyxmyz", "4", "3", "4", "3", "True", "3"]
    assert run(capsys, "subproducts", "xyxmyz", "--k", "9")[0] == EXIT_USAGE
    assert run(capsys, "subproducts", "triangle", "--k", "1")[0] == EXIT_USAGE


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "triangle", "--mmax", "2")
    assert code == EXIT_OK
    assert rows(out)[1:] == [["triangle", "1", "2/1"], ["triangle", "2", "3/2"],
                             ["triangle", "chudnovsky_lower", "3/2"],
                             ["triangle", "resurgence_lower", "4/3"],
                             ["triangle", "resurgence_upper", "2/1"]]


def test_field_override(capsys):
    code, out, _ = run(capsys, "alpha", "generic4", "--m", "2", "--field", "Fp:101")
    assert code == EXIT_OK
    assert rows(out)[1][2:] == ["4", "4", "True"]


def test_verify_example33_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["verify", "example33", "--out", str(a)]) == EXIT_OK
    assert main(["verify", "example33", "--out", str(b), "--jobs", "2"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert rows(a.read_text())[1] == ["xyxmyz", "3", "7", "7", "7", "True"]


@pytest.mark.parametrize("argv", [
    ["alpha", "no_such_file.arr"],
    ["frobnicate"],
    ["contain", "triangle", "--m", "2"],
    ["verify", "nope"],
    ["alpha", "triangle", "--jobs", "0"],
    ["alpha", "triangle", "--m", "0"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_malformed_file_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.arr"
    bad.write_text("field: Q\nline: 1 0 0\nline: 0 1\n")
    code, _, err = run(capsys, "singular", str(bad))
    assert code == EXIT_USAGE and "line 3" in err


@pytest.mark.slow
def test_verify_dual_hesse(capsys):
    code, out, _ = run(capsys, "verify", "dual-hesse")
    assert code == EXIT_OK
    assert rows(out)[1:] == [["F in J^(3)", "True", "True", "True"],
                             ["F in J^2", "False", "False", "True"],
                             ["I_8 = J^(2)", "True", "True", "True"],
                             ["J^(6) in (J^(2))^2", "True", "True", "True"]]
