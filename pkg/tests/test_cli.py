import json

import numpy as np
import pytest

from toeplitz_unitary.cli import main
from toeplitz_unitary.colligation import Colligation, bcl_colligation
from toeplitz_unitary.linalg import haar_unitary
from toeplitz_unitary.serialize import (
    colligation_to_json,
    symbol_to_json,
    write_json_atomic,
)
from toeplitz_unitary.symbols import MatrixSymbol, bcl_symbol


@pytest.fixture
def symbol_file(tmp_path):
    sym = bcl_symbol(np.eye(2), np.diag([1.0, 0.0]))
    path = tmp_path / "symbol.json"
    write_json_atomic(str(path), symbol_to_json(sym))
    return path


@pytest.fixture
def colligation_file(tmp_path):
    w = bcl_colligation(haar_unitary(3, np.random.default_rng(0)),
                        np.diag([1.0, 1.0, 0.0]))
    path = tmp_path / "colligation.json"
    write_json_atomic(str(path), colligation_to_json(w))
    return path


class TestDecompose:
    def test_model_symbol(self, symbol_file, tmp_path):
        out = tmp_path / "report.json"
        rc = main(["decompose", "--input", str(symbol_file), "--out", str(out)])
        assert rc == 0
        report = json.loads(out.read_text())
        assert report["classification"] == "constant_type"
        assert report["subspace"]["dim"] == 8
        assert report["config"]["window"] == 8

    def test_goor_symbol_trivial(self, tmp_path):
        sym = MatrixSymbol(1, 1, {0: [[0.25]], 1: [[0.5]]})
        path = tmp_path / "goor.json"
        write_json_atomic(str(path), symbol_to_json(sym))
        out = tmp_path / "report.json"
        rc = main(["decompose", "--input", str(path), "--out", str(out)])
        assert rc == 0
        assert json.loads(out.read_text())["classification"] == "trivial"

    def test_malformed_json_is_io_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        rc = main(["decompose", "--input", str(bad), "--out", str(tmp_path / "x.json")])
        assert rc == 1

    def test_missing_file_is_io_error(self, tmp_path):
        rc = main(["decompose", "--input", str(tmp_path / "nope.json"),
                   "--out", str(tmp_path / "x.json")])
        assert rc == 1

    def test_non_contractive_is_domain_error(self, tmp_path):
        path = tmp_path / "big.json"
        write_json_atomic(str(path), symbol_to_json(
            MatrixSymbol.constant(2.0 * np.eye(2))))
        rc = main(["decompose", "--input", str(path), "--out", str(tmp_path / "x.json")])
        assert rc == 2

    def test_grid_below_band_is_domain_error(self, symbol_file, tmp_path):
        rc = main(["decompose", "--input", str(symbol_file),
                   "--out", str(tmp_path / "x.json"), "--grid", "2"])
        assert rc == 2

    def test_byte_identical_reruns(self, symbol_file, tmp_path):
        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        assert main(["decompose", "--input", str(symbol_file), "--out", str(out1)]) == 0
        assert main(["decompose", "--input", str(symbol_file), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestTransfer:
    def test_valid_colligation(self, colligation_file, tmp_path):
        out = tmp_path / "transfer.json"
        rc = main(["transfer", "--input", str(colligation_file), "--out", str(out)])
        assert rc == 0
        report = json.loads(out.read_text())
        assert report["max_defect1"] <= 1e-10
        assert report["max_defect2"] <= 1e-10
        assert report["max_norm"] <= 1.0 + 1e-9

    def test_perturbed_colligation_is_domain_error(self, tmp_path):
        rng = np.random.default_rng(1)
        w = bcl_colligation(haar_unitary(2, rng), np.diag([1.0, 0.0]))
        bad = Colligation(2, 1, w.A + 1e-3, w.B, w.C, w.D)
        path = tmp_path / "bad.json"
        write_json_atomic(str(path), colligation_to_json(bad))
        rc = main(["transfer", "--input", str(path), "--out", str(tmp_path / "x.json")])
        assert rc == 2

    def test_byte_identical_reruns(self, colligation_file, tmp_path):
        out1 = tmp_path / "t1.json"
        out2 = tmp_path / "t2.json"
        assert main(["transfer", "--input", str(colligation_file), "--out", str(out1)]) == 0
        assert main(["transfer", "--input", str(colligation_file), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestScenario:
    def test_single_scenario(self, tmp_path):
        rc = main(["scenario", "--scenario", "goor", "--out", str(tmp_path / "res")])
        assert rc == 0
        index = json.loads((tmp_path / "res" / "index.json").read_text())
        assert index["all_pass"] is True
        assert index["results"] == {"goor": True}

    def test_all_scenarios(self, tmp_path):
        rc = main(["scenario", "--scenario", "all", "--out", str(tmp_path / "res")])
        assert rc == 0
        index = json.loads((tmp_path / "res" / "index.json").read_text())
        assert index["all_pass"] is True
        assert len(index["results"]) == 9

    def test_unknown_scenario(self, tmp_path):
        rc = main(["scenario", "--scenario", "nonexistent",
                   "--out", str(tmp_path / "res")])
        assert rc == 2

    def test_byte_identical_reruns(self, tmp_path):
        assert main(["scenario", "--scenario", "goor", "--seed", "3",
                     "--out", str(tmp_path / "a")]) == 0
        assert main(["scenario", "--scenario", "goor", "--seed", "3",
                     "--out", str(tmp_path / "b")]) == 0
        a = (tmp_path / "a" / "goor.json").read_bytes()
        b = (tmp_path / "b" / "goor.json").read_bytes()
        assert a == b

    def test_failing_scenario_is_assertion_exit(self, tmp_path, monkeypatch):
        from toeplitz_unitary import scenarios
        from toeplitz_unitary.scenarios import ScenarioCheck, ScenarioResult

        def always_fails():
            return ScenarioResult("always_fails", {}, (
                ScenarioCheck("impossible", 1.0, False),))

        monkeypatch.setitem(scenarios.SCENARIOS, "always_fails", always_fails)
        rc = main(["scenario", "--scenario", "always_fails",
                   "--out", str(tmp_path / "res")])
        assert rc == 3
        index = json.loads((tmp_path / "res" / "index.json").read_text())
        assert index["all_pass"] is False
