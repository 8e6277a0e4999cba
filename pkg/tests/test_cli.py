"""Command-line interface: outputs, artifacts, exit codes."""

import json
import os

import pytest

from qcsd.cli import BAD_INPUT, BUDGET_EXCEEDED, MISMATCH, OK, main
from qcsd.formats import load_ring_code, parse_field_code, parse_ring_code


DATA = os.path.join(os.path.dirname(__file__), "..", "src", "qcsd", "corpus_data")


def data_file(name):
    return os.path.join(DATA, name)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_seed_lists_codes(capsys):
    code, out, err = run(capsys, "seed", "--q", "2", "--m", "3")
    assert code == OK
    assert out.startswith("# seed 0\n2 3 2 1\n1,0,0 | 0,0,1\n")


def test_seed_writes_files(capsys, tmp_path):
    out_dir = str(tmp_path / "seeds")
    code, out, err = run(capsys, "seed", "--q", "4", "--m", "5", "--out", out_dir)
    assert code == OK
    paths = out.strip().splitlines()
    assert len(paths) == 2
    for p in paths:
        rc = load_ring_code(p)
        assert rc.is_self_dual()


def test_extend_and_expand_pipeline(capsys, tmp_path):
    witness = tmp_path / "wit.txt"
    witness.write_text("branch i\nc 1,0,0\nx 1,0,0 | 0,0,0\n")
    base = tmp_path / "base.rc"
    base.write_text("2 3 2 1\n1,0,0 | 0,0,1\n")
    out_dir = str(tmp_path / "out")
    code, out, err = run(
        capsys, "extend", str(base), str(witness), "--out", out_dir
    )
    assert code == OK
    ext_path = out.strip()
    assert ext_path.endswith("base_ext4.rc")
    ext = load_ring_code(ext_path)
    assert ext.ell == 4 and ext.is_self_dual()

    code, out, err = run(capsys, "expand", ext_path, "--out", out_dir)
    assert code == OK
    fc_path = out.strip()
    assert fc_path.endswith("base_ext4.fc")
    fc = parse_field_code(open(fc_path).read())
    assert fc.n == 12 and fc.k == 6


def test_extend_rejects_invalid_witness(capsys, tmp_path):
    witness = tmp_path / "wit.txt"
    witness.write_text("branch i\nc 1,0,0\nx 1,0,0 | 1,0,0\n")
    base = tmp_path / "base.rc"
    base.write_text("2 3 2 1\n1,0,0 | 0,0,1\n")
    code, out, err = run(capsys, "extend", str(base), str(witness))
    assert code == BAD_INPUT
    assert "error: witness violates <x, x> = -1" in err


def test_analyze_poly_output(capsys):
    code, out, err = run(capsys, "analyze", data_file("G_16.rc"))
    assert code == OK
    assert "[48,24]" in out or "n = 48" in out
    assert "d = 10" in out
    assert "768y^10" in out
    assert "divisib" in out.lower()


def test_analyze_json_and_csv(capsys):
    code, out, err = run(
        capsys, "analyze", data_file("G_14.rc"), "--format", "json"
    )
    assert code == OK
    info = json.loads(out)
    assert info["n"] == 42 and info["k"] == 21 and info["d"] == 8
    assert info["self_dual"] is True
    assert info["divisibility_ok"] is True

    code, out, err = run(
        capsys, "analyze", data_file("G_14.rc"), "--format", "csv"
    )
    assert code == OK
    lines = out.strip().splitlines()
    assert lines[0] == "weight,count"
    assert "8," in lines[9] or any(line.startswith("8,") for line in lines)


def test_analyze_empty_file_is_bad_input(capsys, tmp_path):
    empty = tmp_path / "empty.rc"
    empty.write_text("")
    code, out, err = run(capsys, "analyze", str(empty))
    assert code == BAD_INPUT
    assert "error:" in err and "empty" in err


def test_analyze_missing_file_is_bad_input(capsys, tmp_path):
    code, out, err = run(capsys, "analyze", str(tmp_path / "missing.rc"))
    assert code == BAD_INPUT


def test_verify_corpus_single_name(capsys):
    code, out, err = run(capsys, "verify-corpus", "--name", "G_16")
    assert code == OK
    assert out == "PASS: [48,24,10], A_10=768, A_12=8592\n"


def test_verify_corpus_unknown_name(capsys):
    code, out, err = run(capsys, "verify-corpus", "--name", "NOPE")
    assert code == BAD_INPUT
    assert "no corpus entry named 'NOPE'" in err


def test_verify_corpus_json(capsys):
    code, out, err = run(
        capsys, "verify-corpus", "--name", "K_2", "--format", "json"
    )
    assert code == OK
    data = json.loads(out)
    assert data[0]["name"] == "K_2"
    assert data[0]["passed"] is True


def test_classify_text_output_and_artifacts(capsys, tmp_path):
    out_dir = str(tmp_path / "cls")
    code, out, err = run(
        capsys,
        "classify", "--q", "2", "--m", "3", "--ell", "4", "--out", out_dir,
    )
    assert code == OK
    assert out.splitlines()[0] == "2 classes"
    run_manifest = json.load(open(os.path.join(out_dir, "run.json")))
    assert run_manifest["q"] == 2 and run_manifest["ell"] == 4
    assert run_manifest["class_count"] == 2
    assert run_manifest["complete"] is True
    csv_lines = open(os.path.join(out_dir, "summary.csv")).read().splitlines()
    assert csv_lines[0] == "index,n,k,d,weight_family,beta,divisibility_ok,aut_order,file"
    assert len(csv_lines) == 3
    assert os.path.exists(os.path.join(out_dir, "checkpoint.jsonl"))
    for entry in run_manifest["classes"]:
        rc = parse_ring_code(open(os.path.join(out_dir, entry["file"])).read())
        assert rc.is_self_dual()


def test_classify_resume_flag(capsys, tmp_path):
    out_dir = str(tmp_path / "cls")
    code, out, err = run(
        capsys, "classify", "--q", "2", "--m", "3", "--ell", "4", "--out", out_dir
    )
    assert code == OK
    ck = os.path.join(out_dir, "checkpoint.jsonl")
    code, out, err = run(
        capsys,
        "classify", "--q", "2", "--m", "3", "--ell", "6", "--resume", ck,
    )
    assert code == OK
    assert out.splitlines()[0] == "3 classes"


def test_classify_rejects_3_mod_4(capsys):
    code, out, err = run(capsys, "classify", "--q", "3", "--m", "5", "--ell", "4")
    assert code == BAD_INPUT
    assert "3 mod 4" in err


def test_classify_budget_exceeded(capsys):
    code, out, err = run(
        capsys,
        "classify", "--q", "2", "--m", "3", "--ell", "6", "--budget", "5",
    )
    assert code == BUDGET_EXCEEDED


def test_equiv_exit_codes(capsys, tmp_path):
    a = tmp_path / "a.rc"
    a.write_text("2 3 2 1\n1,0,0 | 0,0,1\n")
    code, out, err = run(capsys, "equiv", str(a), str(a))
    assert code == OK
    assert out.strip() == "equivalent"

    b = tmp_path / "b.fc"
    b.write_text("2 6 1\n1 1 1 1 1 1\n")
    c = tmp_path / "c.fc"
    c.write_text("2 6 1\n1 1 0 0 0 0\n")
    code, out, err = run(capsys, "equiv", str(b), str(c))
    assert code == MISMATCH
    assert out.strip() == "not equivalent"

    d = tmp_path / "d.fc"
    d.write_text("3 2 1\n1 2\n")
    code, out, err = run(capsys, "equiv", str(a), str(d))
    assert code == BAD_INPUT


def test_usage_errors(capsys):
    with pytest.raises(SystemExit):
        main(["classify", "--q", "2", "--m", "3"])  # missing --ell
    capsys.readouterr()
    with pytest.raises(SystemExit):
        main(["no-such-command"])
