import json
from pathlib import Path

import pytest

from stabregion.app import (
    EXIT_DEGENERATE,
    EXIT_NOT_CERTIFIED,
    EXIT_OK,
    RegionReport,
    RunConfig,
    box_from_dict,
    instance_from_dict,
    main,
    parse_instance,
    run_analyze,
)
from stabregion.polynomials import InvalidInstanceError

from conftest import spoly

NN1_DOC = {
    "schema": "1",
    "type": "polynomials",
    "p0": ["0", "-13", "0", "1"],
    "p1": ["0", "-5", "1"],
    "p2": ["1", "1"],
    "box": {"k1": ["0", "3"], "k2": ["0", "60"]},
}


def write_nn1(tmp_path: Path, **overrides) -> Path:
    doc = dict(NN1_DOC)
    doc.update(overrides)
    path = tmp_path / "instance.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


class TestParseInstance:
    def test_polynomials(self, tmp_path, nn1):
        inst = parse_instance(write_nn1(tmp_path))
        assert inst == nn1

    def test_pi(self, tmp_path, francis):
        doc = {
            "schema": "1",
            "type": "pi",
            "a": ["1", "2", "2", "1"],  # (s+1)(s^2+s+1)
            "b": ["2", "-3", "1"],  # (s-1)(s-2)
            "form": "k1+k2/s",
        }
        path = tmp_path / "pi.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert parse_instance(path) == francis

    def test_sof(self, tmp_path):
        doc = {
            "schema": "1",
            "type": "sof",
            "A": [["0", "1"], ["0", "0"]],
            "B": [["0"], ["1"]],
            "C": [["1", "0"], ["0", "1"]],
        }
        path = tmp_path / "sof.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        inst = parse_instance(path)
        assert inst.p0 == spoly(0, 0, 1)
        assert inst.p1 == spoly(-1)
        assert inst.p2 == spoly(0, -1)

    def test_degenerate_rejected(self):
        with pytest.raises(InvalidInstanceError):
            instance_from_dict(
                {"schema": "1", "type": "polynomials", "p0": ["1"], "p1": ["1"], "p2": ["1"]}
            )

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(InvalidInstanceError, match="line 1"):
            parse_instance(path)

    def test_decimal_coefficient_rejected(self):
        with pytest.raises(ValueError):
            instance_from_dict(
                {
                    "schema": "1",
                    "type": "polynomials",
                    "p0": ["0.5", "1"],
                    "p1": ["1"],
                    "p2": ["0", "1"],
                }
            )

    def test_unknown_type(self):
        with pytest.raises(InvalidInstanceError):
            instance_from_dict({"schema": "1", "type": "mystery"})

    def test_box_parsing(self):
        box = box_from_dict({"k1": ["-5", "5"], "k2": ["-1/2", "3/2"]})
        assert str(box.k2_min) == "-1/2"


def _no_floats(obj, path="root"):
    assert not isinstance(obj, float), f"float at {path}"
    if isinstance(obj, dict):
        for key, value in obj.items():
            _no_floats(value, f"{path}.{key}")
    elif isinstance(obj, list):
        for idx, value in enumerate(obj):
            _no_floats(value, f"{path}[{idx}]")


class TestRunAnalyze:
    def test_nn1_pipeline(self, tmp_path):
        config = RunConfig(
            input=write_nn1(tmp_path),
            resolution=31,
            seed=("2", "47"),
            trials=50,
            out=tmp_path / "report.json",
            svg=tmp_path / "picture.svg",
            pgm=tmp_path / "picture.pgm",
        )
        report = run_analyze(config)
        assert report.certificate["status"] == "certified-lmi-subset"
        assert report.seed_source == "user"
        assert report.line == {"c0": "0", "c1": "0", "c2": "1"}
        assert report.parametrization["q0"] == ["-5", "1"]
        assert report.factorization["g_scale"] == "18"
        assert report.components[0]["certified"] is True
        assert (tmp_path / "picture.svg").exists()
        assert (tmp_path / "picture.pgm").exists()

    def test_report_round_trip_and_no_floats(self, tmp_path):
        config = RunConfig(input=write_nn1(tmp_path), resolution=21, seed=("2", "47"))
        report = run_analyze(config)
        text = report.dumps()
        again = RegionReport.loads(text)
        assert again == report
        _no_floats(json.loads(text))

    def test_auto_seed_recorded(self, tmp_path):
        config = RunConfig(input=write_nn1(tmp_path), resolution=21)
        report = run_analyze(config)
        assert report.seed_source == "auto"
        assert report.certificate is not None

    def test_deterministic_reports(self, tmp_path):
        config = RunConfig(input=write_nn1(tmp_path), resolution=21, seed=("2", "47"))
        assert run_analyze(config).dumps() == run_analyze(config).dumps()


class TestCli:
    def test_analyze_exit_zero(self, tmp_path, capsys):
        path = write_nn1(tmp_path)
        code = main(
            ["analyze", "--input", str(path), "--grid", "21", "--seed", "2,47",
             "--out", str(tmp_path / "r.json")]
        )
        assert code == EXIT_OK
        assert (tmp_path / "r.json").exists()

    def test_degenerate_exit_two(self, tmp_path, capsys):
        doc = {"schema": "1", "type": "polynomials", "p0": ["0", "0", "1"],
               "p1": ["0", "2"], "p2": ["0", "3"]}
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code = main(["analyze", "--input", str(path)])
        assert code == EXIT_DEGENERATE
        assert "degenerate" in capsys.readouterr().err

    def test_require_certificate_failure_exit_three(self, tmp_path, capsys):
        # window with no stable nodes: nothing to certify
        doc = dict(NN1_DOC)
        doc["box"] = {"k1": ["-3", "-2"], "k2": ["-3", "-2"]}
        path = tmp_path / "empty.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code = main(
            ["certify", "--input", str(path), "--grid", "11", "--require-certificate"]
        )
        assert code == EXIT_NOT_CERTIFIED

    def test_certify_prints_status(self, tmp_path, capsys):
        path = write_nn1(tmp_path)
        code = main(
            ["certify", "--input", str(path), "--grid", "21", "--seed", "2,47",
             "--require-certificate"]
        )
        assert code == EXIT_OK
        assert "certified-lmi-subset" in capsys.readouterr().out

    def test_plot_writes_pictures(self, tmp_path, capsys):
        path = write_nn1(tmp_path)
        svg = tmp_path / "out.svg"
        pgm = tmp_path / "out.pgm"
        code = main(
            ["plot", "--input", str(path), "--grid", "15",
             "--svg", str(svg), "--pgm", str(pgm)]
        )
        assert code == EXIT_OK
        assert svg.read_text(encoding="utf-8").startswith("<svg")
        assert pgm.read_bytes().startswith(b"P5\n")

    def test_box_flag_overrides_file(self, tmp_path, capsys):
        path = write_nn1(tmp_path)
        code = main(
            ["analyze", "--input", str(path), "--grid", "11",
             "--box", "0,1,0,1", "--out", str(tmp_path / "r.json")]
        )
        assert code == EXIT_OK
        report = json.loads((tmp_path / "r.json").read_text(encoding="utf-8"))
        assert report["grid"]["box"]["k1"] == ["0", "1"]
