"""Command-line behavior: reports, RESULT lines, exit codes, determinism."""

import importlib.resources

import pytest

from coxvol.cli import main


@pytest.fixture(scope="session")
def data_dir():
    return importlib.resources.files("coxvol.data")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def result_line(out):
    lines = [ln for ln in out.strip().splitlines() if ln]
    assert lines[-1].startswith("RESULT ")
    return lines[-1]


def test_validate_ok(capsys, data_dir):
    code, out = run(capsys, "validate", str(data_dir / "lambert_cube.apoly"))
    assert code == 0
    assert result_line(out) == "RESULT validate ok violations=0"


def test_check_lambert(capsys, data_dir):
    code, out = run(capsys, "check", str(data_dir / "lambert_cube.apoly"))
    assert code == 0
    assert "conditions=1:pass,2:pass,3:vacuous,4:pass,5:informational" in result_line(out)
    assert "verdict: realizable-compact" in out


def test_check_tetrahedron_rejected(capsys, data_dir):
    code, out = run(capsys, "check", str(data_dir / "tetrahedron.apoly"))
    assert code == 1
    assert "reason=FaceCountTooSmall" in result_line(out)


def test_check_pyramid_regimes(capsys, data_dir):
    path = str(data_dir / "pyramid.apoly")
    code, _ = run(capsys, "check", path)
    assert code == 1
    code, out = run(capsys, "check", path, "--regime", "ideal")
    assert code == 0
    assert "realizable-with-ideal-vertices" in result_line(out)


def test_circuits_output(capsys, data_dir):
    code, out = run(capsys, "circuits", str(data_dir / "cube_all2.apoly"), "--k", "4")
    assert code == 0
    lines = out.strip().splitlines()
    circuit_lines = [ln for ln in lines if ln.startswith("circuit ")]
    assert len(circuit_lines) == 15
    assert sum("prismatic=True" in ln for ln in circuit_lines) == 3
    assert "count=15 prismatic=3" in result_line(out)


def test_classify_exit_codes(capsys, data_dir):
    code, out = run(capsys, "classify", str(data_dir / "cube_all2.apoly"))
    assert code == 0
    assert "RESULT classify Large" in result_line(out)
    code, out = run(capsys, "classify", str(data_dir / "triangular_prism.apoly"))
    assert code == 3
    assert "witness_kind=separating-triangle" in result_line(out)


def test_realize_report(capsys, data_dir):
    code, out = run(capsys, "realize", str(data_dir / "lambert_cube.apoly"))
    assert code == 0
    assert sum(ln.startswith("normal ") for ln in out.splitlines()) == 6
    assert sum(ln.startswith("vertex ") for ln in out.splitlines()) == 8
    assert "dof audit: unknowns=24 constraints=18 gauge=6 dof=0" in out
    assert "dof=0" in result_line(out)


def test_realize_rejected(capsys, data_dir):
    code, out = run(capsys, "realize", str(data_dir / "cube_all2.apoly"))
    assert code == 1
    assert "RESULT realize rejected" in result_line(out)


def test_volume_lambert_doubled(capsys, data_dir):
    code, out = run(capsys, "volume", str(data_dir / "lambert_cube.apoly"),
                    "--doubled", "--tol", "1e-7")
    assert code == 0
    line = result_line(out)
    assert "doubled=true" in line
    vol = float(line.split("volume=")[1].split()[0])
    assert abs(vol - 0.648847) < 2e-3


def test_volume_rejected_labeling(capsys, data_dir):
    code, out = run(capsys, "volume", str(data_dir / "cube_all2.apoly"))
    assert code == 1
    assert "RESULT volume rejected" in result_line(out)


def test_census_tsv(capsys, data_dir):
    code, out = run(capsys, "census", str(data_dir / "cube_all2.apoly"),
                    "--max-label", "3", "--format", "tsv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "labels\toutcome\tvertex_summary\thaken\tvolume"
    assert "rows=34" in result_line(out)


def test_pyramid_table(capsys):
    code, out = run(capsys, "pyramid-table", "--convention", "listed",
                    "--regime", "ideal")
    assert code == 0
    assert "matched=17 rows=17" in result_line(out)


def test_lob_and_idealtet(capsys):
    code, out = run(capsys, "lob", "pi/6")
    assert code == 0
    assert out.splitlines()[0] == "0.507470803204827"
    code, out = run(capsys, "idealtet", "pi/3", "pi/3", "pi/3")
    assert code == 0
    assert out.splitlines()[0] == "1.01494160640965"


def test_missing_file_is_input_error(capsys):
    code, out = run(capsys, "check", "no_such_file.apoly")
    assert code == 2


def test_byte_identical_reruns(capsys, data_dir):
    outputs = []
    for _ in range(2):
        _, out = run(capsys, "check", str(data_dir / "lambert_cube.apoly"))
        outputs.append(out)
    assert outputs[0] == outputs[1]
    for _ in range(2):
        _, out = run(capsys, "census", str(data_dir / "cube_all2.apoly"),
                     "--max-label", "3", "--format", "tsv")
        outputs.append(out)
    assert outputs[2] == outputs[3]


def test_corpus_name_fallback(capsys):
    code, out = run(capsys, "check", "lambert_cube")
    assert code == 0
    assert "realizable-compact" in result_line(out)
