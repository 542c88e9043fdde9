import io
import subprocess
import sys

import pytest

from ruled_equiv.cli import (EXIT_BUDGET, EXIT_INPUT, EXIT_NONE, EXIT_OK, corpus_dir, main,
                             parse_jobs)
from ruled_equiv.surface_file import FileFormatError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_text_and_structured():
    code, out, _ = run("classify", "cone_x5")
    assert code == EXIT_OK and "Conical, vertex (0, 0, 0)" in out
    code, out, _ = run("--format", "structured", "classify", "example1_S1")
    assert out.splitlines() == ["CLASS tag=general rank=3 n=5", "END"]


def test_symmetries_structured_schema():
    code, out, _ = run("symmetries", "example1_S1", "--format", "structured", "--no-identity")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "RESULT kind=finite count=1"
    assert lines[1] == "MEMBER index=1"
    assert lines[2:5] == ["A row=1 -1 0 0", "A row=2 0 -1 0", "A row=3 0 0 1"]
    assert "B 0 0 0" in lines
    assert "PSI -1 0 0 1" in lines
    assert any(l.startswith("KIND AxialSymmetry") for l in lines)
    assert lines[-2] == "TALLY AxialSymmetry=1" and lines[-1] == "END"


def test_isometry_field_output():
    code, out, _ = run("isometries", "example2_S1", "example2_S2", "--format", "structured")
    assert code == EXIT_OK
    assert "B -1/2 2 -1/2*sqrt(3)" in out


def test_affine_equiv_none_exit_code():
    code, out, _ = run("affine-equiv", "table1_x9", "table1_y9")
    assert code == EXIT_NONE


def test_not_supported_is_success():
    code, out, _ = run("affine-equiv", "cylinder", "cylinder_image", "--format", "structured")
    assert code == EXIT_OK
    assert "RESULT kind=not_supported count=0" in out
    assert "REDUCTION index=1" in out


def test_infinite_family_output():
    code, out, _ = run("affine-equiv", "cone_x5", "cone_x5", "--format", "structured")
    assert code == EXIT_OK
    assert out.startswith("RESULT kind=infinite")
    assert "FAMILY index=1" in out


def test_bad_input_exit_codes(tmp_path):
    code, _, err = run("classify", str(tmp_path / "nope.surf"))
    assert code == EXIT_INPUT and "error" in err
    bad = tmp_path / "bad.surf"
    bad.write_text("p1 = 0 x\n")
    assert run("classify", str(bad))[0] == EXIT_INPUT
    assert run("no-such-command")[0] == EXIT_INPUT


def test_budget_exit_code():
    code, _, err = run("--budget", "1", "affine-equiv", "example1_S1", "example1_S2")
    assert code == EXIT_BUDGET and "budget" in err


def test_budget_env_invalid(monkeypatch):
    monkeypatch.setenv("RULED_EQUIV_BUDGET", "lots")
    assert run("classify", "cone_x5")[0] == EXIT_INPUT


def test_save_maps_then_verify(tmp_path):
    code, _, _ = run("affine-equiv", "example1_S1", "example1_S2", "--save-maps", str(tmp_path))
    assert code == EXIT_OK
    maps = sorted(tmp_path.glob("*.map"))
    assert len(maps) == 2
    for m in maps:
        code, out, _ = run("verify", "example1_S1", "example1_S2", str(m), "--format", "structured")
        assert code == EXIT_OK and "VERIFY ok=true" in out
    # the same maps do not carry S2 onto S1
    code, out, _ = run("verify", "example1_S2", "example1_S1", str(maps[0]))
    assert code == EXIT_NONE


def test_verify_needs_psi(tmp_path):
    m = tmp_path / "plain.map"
    m.write_text("A = 1 0 0 0 1 0 0 0 1\nb = 0 0 0\n")
    code, _, err = run("verify", "example1_S1", "example1_S1", str(m))
    assert code == EXIT_INPUT and "psi" in err


def test_surface_paths(tmp_path):
    src = corpus_dir() / "example1_S1.surf"
    (tmp_path / "mine.surf").write_text(src.read_text())
    code, out, _ = run("classify", str(tmp_path / "mine.surf"))
    assert code == EXIT_OK and "General" in out


def test_parse_jobs():
    jobs = parse_jobs("# c\nsymmetries x expect=2 tally=Reflection:1\naffine-equiv a b expect=inf\n")
    assert jobs[0]["tally"] == {"Reflection": 1}
    assert jobs[1]["surfaces"] == ["a", "b"]
    with pytest.raises(FileFormatError):
        parse_jobs("affine-equiv a expect=1\n")
    with pytest.raises(FileFormatError):
        parse_jobs("frobnicate a b expect=1\n")


def test_custom_corpus(tmp_path):
    for name in ("example1_S1", "example1_S2"):
        (tmp_path / f"{name}.surf").write_text((corpus_dir() / f"{name}.surf").read_text())
    (tmp_path / "mini.jobs").write_text(
        "affine-equiv example1_S1 example1_S2 expect=2\nsymmetries example1_S1 expect=3\n")
    code, out, _ = run("corpus", str(tmp_path), "--format", "structured")
    assert code == EXIT_NONE
    assert "JOB status=PASS" in out and "JOB status=FAIL" in out
    assert "SUMMARY jobs=2 failed=1" in out


@pytest.mark.slow
def test_bundled_corpus_deterministic():
    first = run("corpus", "--format", "structured")
    second = run("corpus", "--format", "structured")
    assert first[0] == EXIT_OK
    assert first[1] == second[1]
    assert "failed=0" in first[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ruled_equiv", "classify", "cylinder"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "Cylindrical" in proc.stdout
