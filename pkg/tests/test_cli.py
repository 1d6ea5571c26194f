import io
import json
from contextlib import redirect_stdout, redirect_stderr
from pathlib import Path

import jsonschema
import pytest

from dvfields.cli import main

ROOT = Path(__file__).parent.parent
SCHEMA = json.loads((ROOT / "docs" / "report-schema.json").read_text())
GOLDEN = json.loads((Path(__file__).parent / "golden" / "cli_golden.json").read_text())


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue()


@pytest.mark.parametrize("case", GOLDEN, ids=lambda c: " ".join(c["argv"][:2]))
def test_golden_byte_stable(case):
    code, out = run(case["argv"])
    assert code == case["exit"]
    assert out == case["stdout"]


@pytest.mark.parametrize("case", GOLDEN, ids=lambda c: " ".join(c["argv"][:2]))
def test_golden_schema_valid(case):
    report = json.loads(case["stdout"])
    jsonschema.validate(report, SCHEMA)


class TestExitCodes:
    def test_success(self):
        code, out = run(["val", "t^[0;1]"])
        assert code == 0

    def test_domain_error_is_2(self):
        code, out = run(["res", "t^[0;-1]"])
        assert code == 2
        report = json.loads(out)
        assert report["error"]["code"] == "domain"
        jsonschema.validate(report, SCHEMA)

    def test_precision_error_is_3(self):
        code, out = run(["val", "O(t^[0;2])"])
        assert code == 3
        assert json.loads(out)["error"]["code"] == "precision"

    def test_parse_error_is_4(self):
        code, out = run(["val", "1 + $"])
        assert code == 4
        report = json.loads(out)
        assert report["error"]["code"] == "parse"
        assert "byte" in report["error"]["message"]

    def test_check_failure_exit_1(self, monkeypatch):
        import dvfields.suites as suites_mod

        def bad_suite(rng, cases):
            return ["fabricated counterexample"]

        monkeypatch.setitem(suites_mod.SUITES, "doomed", (1, bad_suite))
        code, out = run(["check", "doomed"])
        assert code == 1
        report = json.loads(out)
        assert not report["ok"]
        assert report["suites"][0]["failures"] == ["fabricated counterexample"]


class TestModelFiles:
    def test_density_writes_sibling(self, tmp_path):
        src = (ROOT / "models" / "base.toml").read_text()
        p = tmp_path / "work.toml"
        p.write_text(src)
        code, out = run(
            ["density", "--model", str(p), "--a", "0", "--b", "t^[-1;0]", "--gamma", "[0;5]"]
        )
        assert code == 0
        report = json.loads(out)
        grown = Path(report["model_out"])
        assert grown.name == "work.grown.toml"
        assert "generators.th1" in grown.read_text()
        # the input model is untouched
        assert p.read_text() == src

    def test_grown_model_reloads(self, tmp_path):
        p = tmp_path / "work.toml"
        p.write_text((ROOT / "models" / "base.toml").read_text())
        run(["density", "--model", str(p), "--a", "0", "--b", "t^[-1;0]", "--gamma", "[0;5]"])
        grown = tmp_path / "work.grown.toml"
        code, out = run(["classify", "--model", str(grown), "th1*t^[0;6]"])
        assert code == 0
        assert json.loads(out)["ring"] == "InOnotR"

    def test_precision_flag(self):
        code, out = run(["val", "--model", str(ROOT / "models" / "base.toml"), "--precision", "[9;0]", "t^[0;2]"])
        assert code == 0


class TestDeterminism:
    def test_check_byte_stable_under_seed(self):
        a = run(["check", "game", "--seed", "11"])
        b = run(["check", "game", "--seed", "11"])
        assert a == b

    def test_suite_summary_schema(self):
        code, out = run(["check", "val-laws", "--seed", "3", "--cases", "10"])
        jsonschema.validate(json.loads(out), SCHEMA)
