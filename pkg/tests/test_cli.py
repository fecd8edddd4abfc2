import json
import subprocess
import sys

import numpy as np
import pytest

from lie2herm import catalog, fileformat
from lie2herm.cli import classification_record, main
from lie2herm.lie2 import MetricLieAlgebra


@pytest.fixture
def exported(tmp_path, capsys):
    assert main(["catalog", "--export", str(tmp_path)]) == 0
    capsys.readouterr()
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and len(out.strip().splitlines()) == 6


def test_catalog_show_and_unknown(capsys):
    code, out, _ = run(capsys, "catalog", "ex12-rr-typeII")
    assert code == 0 and fileformat.loads(out).name == "ex12-rr-typeII"
    code, _, err = run(capsys, "catalog", "nope")
    assert code == 1 and "UnknownName" in err


def test_export_writes_all(exported):
    assert sorted(p.stem for p in exported.glob("*.yaml")) == sorted(catalog.list())


def test_validate(capsys, exported, tmp_path):
    code, out, _ = run(capsys, "validate", str(exported / "ex8-A412-typeI.yaml"))
    assert code == 0 and out.startswith("valid")
    bad = MetricLieAlgebra.from_brackets(4, {(1, 3): {1: 1.0}, (2, 3): {2: 1.0}, (1, 4): {2: -1.0}, (2, 4): {3: 1.0}})
    path = tmp_path / "bad.yaml"
    fileformat.dump(fileformat.AlgebraFile(bad), path)
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1 and "jacobi_residual" in out
    path.write_text("dim: [")
    code, _, _ = run(capsys, "validate", str(path))
    assert code == 2


def test_classify_human(capsys, exported):
    code, out, _ = run(capsys, "classify", str(exported / "ex12-rr-typeII.yaml"))
    assert code == 0 and out.splitlines()[0] == "Type II, Kähler, dc_top = 0"


def test_classify_missing_j(capsys, tmp_path):
    doc = fileformat.from_catalog(catalog.get("ex8-A412-typeI"))
    doc.J = None
    path = tmp_path / "noJ.yaml"
    fileformat.dump(doc, path)
    code, _, err = run(capsys, "classify", str(path))
    assert code == 1 and "MissingJ" in err


def test_json_and_human_report_same_values(capsys, exported):
    path = str(exported / "ex8-A412-typeI.yaml")
    _, human, _ = run(capsys, "classify", path)
    _, js, _ = run(capsys, "classify", path, "--json")
    record = json.loads(js)
    lines = dict(line.split(": ", 1) for line in human.splitlines()[1:])
    assert set(lines) == set(record)
    for key, value in record.items():
        assert lines[key] == repr(value)


def test_json_flag_before_subcommand(capsys, exported):
    code, out, _ = run(capsys, "--json", "classify", str(exported / "ex9-h3R-typeI.yaml"))
    assert code == 0 and json.loads(out)["verdict"] == "SKT"


def test_connection_tables(capsys, exported):
    code, out, _ = run(capsys, "connection", "bismut", str(exported / "ex13-A64-typeI.yaml"))
    assert code == 0
    assert "nabla_b1 b5 = -1.0 b6" in out.splitlines()
    assert "nabla_b2 b3 = 1.0 b5" in out.splitlines()
    code, out, _ = run(capsys, "connection", "bismut", str(exported / "sec2-mixed.yaml"))
    assert code == 1


def test_connection_abelian_empty(capsys, tmp_path):
    path = tmp_path / "ab.yaml"
    fileformat.dump(fileformat.AlgebraFile(MetricLieAlgebra(np.zeros((4, 4, 4)))), path)
    code, out, _ = run(capsys, "connection", "levi-civita", str(path))
    assert code == 0 and out.strip() == "(all coefficients zero)"


def test_curvature(capsys, exported):
    code, out, _ = run(capsys, "--json", "curvature", str(exported / "ex8-A412-typeI.yaml"))
    assert code == 0 and json.loads(out)["sectional"]["K(b1,b2)"] == -1.0


def test_decompose(capsys, exported):
    code, out, _ = run(capsys, "decompose", "--json", str(exported / "ex9-h3R-typeI.yaml"))
    rec = json.loads(out)
    assert code == 0 and rec["padded"] and rec["f1"] == [[0.0, -1.0], [1.0, 0.0]]


def test_search(capsys, exported):
    code, out, _ = run(capsys, "search-type2", str(exported / "ex9-h3R-typeI.yaml"))
    assert code == 0 and out.strip() == "none found"
    code, out, _ = run(capsys, "search-type2", str(exported / "ex8-A412-typeI.yaml"), "--json")
    frames = json.loads(out)["frames"]
    assert any(np.allclose(f["Je1"], [0, 0, 0, 1]) and np.allclose(f["Je2"], [0, 0, 1, 0]) for f in frames)
    code, _, err = run(capsys, "search-type2", str(exported / "ex13-A64-typeI.yaml"))
    assert code == 1 and "WrongDimension" in err


def test_search_grid_zero_is_usage_error(exported):
    with pytest.raises(SystemExit) as exc:
        main(["search-type2", str(exported / "ex9-h3R-typeI.yaml"), "--grid", "0"])
    assert exc.value.code == 2


def test_tol_flag_and_env(capsys, exported, monkeypatch):
    path = str(exported / "ex8-A412-typeI.yaml")
    code, out, _ = run(capsys, "--tol", "1e-6", "classify", path, "--json")
    assert code == 0 and json.loads(out)["verdict"] == "WeakKT"
    with pytest.raises(SystemExit):
        main(["--tol", "-1", "classify", path])
    monkeypatch.setenv("LIE2_TOL", "1e-12")
    assert main(["classify", path]) == 0


def test_record_matches_library(exported):
    doc = fileformat.load(exported / "ex10-A412-typeII.yaml")
    rec = classification_record(doc)
    assert rec["dc_top"] == -4.0 and rec["dc_adapted"] == 4.0


def test_module_entry_point(exported):
    proc = subprocess.run([sys.executable, "-m", "lie2herm", "classify", str(exported / "ex12-rr-typeII.yaml")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("Type II, Kähler")
