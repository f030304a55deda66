from pathlib import Path

from monorect.cli import main

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
DEMO = str(PROBLEMS / "demo.sexp")

GOLDEN_TABLE = """\
000 y !y !y !y
001 y !y !y !y
010 !y T T !y
011 !y T T !y
100 !y F T !y
101 y !y !y !y
110 !y y y y
111 y T T y
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_is_byte_exact(capsys):
    code, out, err = run(capsys, "table", "--problem", DEMO)
    assert code == 0
    assert out == GOLDEN_TABLE
    assert err == ""


def test_table_is_stable_across_runs(capsys):
    first = run(capsys, "table", "--problem", DEMO)
    second = run(capsys, "table", "--problem", DEMO)
    assert first == second


def test_classify_highlighted_instance(capsys):
    code, out, _ = run(capsys, "classify", "--problem", DEMO, "--instance", "110")
    assert code == 0
    assert out == "sigma: neg, rectified: pos\n"


def test_classify_unchanged_instance(capsys):
    code, out, _ = run(capsys, "classify", "--problem", DEMO, "--instance", "111")
    assert code == 0
    assert out == "sigma: pos, rectified: pos\n"


def test_rectify_dtree_output(capsys):
    code, out, _ = run(capsys, "rectify", "--problem", DEMO, "--out", "dtree")
    assert code == 0
    assert out == (
        "positive: (x1 0 (x2 0 1))\n"
        "rectified: (x1 (y 1 0) (x2 (y 1 0) (y 0 1)))\n"
    )


def test_rectify_circuit_output_parses_back(capsys):
    from monorect import equivalent, parse_circuit, parse_problem

    code, out, _ = run(capsys, "rectify", "--problem", DEMO)
    assert code == 0
    lines = dict(line.split(": ", 1) for line in out.splitlines())
    pf = parse_problem(Path(DEMO).read_text())
    accepted = parse_circuit(lines["positive"], pf.pool)
    assert equivalent(accepted, pf.pool.build(["and", "x1", "x2"]))
    full = parse_circuit(lines["rectified"], pf.pool)
    assert equivalent(full, pf.pool.build(["iff", ["and", "x1", "x2"], "y"]))


def test_rectify_simplified_circuit_output(capsys):
    code, out, _ = run(capsys, "rectify", "--problem", DEMO, "--simplify")
    assert code == 0
    assert out.splitlines()[0] == "positive: (dec x1 false (dec x2 false true))"


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "--problem", DEMO)
    assert code == 0
    assert "all postulates hold" in out
    for name in ("RE1", "RE2", "RE3", "RE4", "RE5", "RE6"):
        assert name in out


def test_dt_rectify(capsys):
    code, out, _ = run(
        capsys,
        "dt-rectify",
        "--sigma",
        str(PROBLEMS / "demo_sigma.tree"),
        "--theory",
        str(PROBLEMS / "demo_theory.tree"),
    )
    assert code == 0
    assert out == "(x1 (y 1 0) (x2 (y 1 0) (y 0 1)))\n"


def test_dt_rectify_mismatched_files(tmp_path, capsys):
    other = tmp_path / "other.tree"
    other.write_text("(features a b)\n(labels y)\n(tree 1)\n")
    code, _, err = run(
        capsys,
        "dt-rectify",
        "--sigma",
        str(PROBLEMS / "demo_sigma.tree"),
        "--theory",
        str(other),
    )
    assert code == 2
    assert "different variables" in err


def test_fuzz_clean_run(capsys):
    code, out, _ = run(capsys, "fuzz", "--vars", "4", "--iters", "25", "--seed", "3")
    assert code == 0
    assert "no mismatches" in out


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "table", "--problem", "no-such-file.sexp")
    assert code == 2
    assert "error:" in err


def test_parse_error_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.sexp"
    bad.write_text("(features x1\n")
    code, _, err = run(capsys, "table", "--problem", str(bad))
    assert code == 2
    assert "error:" in err


def test_bad_instance_word_is_input_error(capsys):
    code, _, err = run(capsys, "classify", "--problem", DEMO, "--instance", "11")
    assert code == 2
    assert "error:" in err


def test_uncertified_sigma_is_input_error(tmp_path, capsys):
    bad = tmp_path / "loose.sexp"
    bad.write_text("(features x1)\n(labels y)\n(sigma true)\n(theory true)\n")
    code, _, err = run(capsys, "table", "--problem", str(bad))
    assert code == 2
    assert "classification circuit" in err


def test_cap_exceeded_exit_code(tmp_path, capsys):
    names = " ".join(f"v{i}" for i in range(21))
    big = tmp_path / "big.sexp"
    big.write_text(f"(features {names})\n(labels y)\n(sigma (iff v0 y))\n(theory true)\n")
    code, _, err = run(capsys, "table", "--problem", str(big))
    assert code == 3
    assert "cap" in err


def test_cap_can_be_raised(tmp_path, capsys):
    names = " ".join(f"v{i}" for i in range(21))
    big = tmp_path / "big.sexp"
    big.write_text(f"(features {names})\n(labels y)\n(sigma (iff v0 y))\n(theory true)\n")
    word = "1" + "0" * 20
    code, out, _ = run(
        capsys, "classify", "--problem", str(big), "--instance", word, "--max-vars", "22"
    )
    assert code == 0
    assert out == "sigma: pos, rectified: pos\n"


def test_multilabel_table_rejected(capsys):
    code, _, err = run(capsys, "table", "--problem", str(PROBLEMS / "twolabel.sexp"))
    assert code == 2
    assert "single-label" in err
