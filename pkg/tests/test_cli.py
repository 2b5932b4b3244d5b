import json
import subprocess
import sys

import jsonschema
import pytest

from hypsum.cli import load_schema, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def schema():
    return load_schema()


class TestEval:
    @pytest.mark.parametrize("argv,expected", [
        (["t1-even", "n=1", "a=1", "j=0", "sign=+"], "1/3"),
        (["oracle", "upper=-2,1", "lower=2", "z=2"], "1/3"),
        (["t1-odd", "n=7", "a=9/2", "j=0", "sign=+"], "0"),
        (["t2-plus", "n=2", "a=1", "j=1"], "11/3"),
        (["t2-minus", "n=1", "a=1", "j=1"], "5/3"),
        (["alt-minus", "n=1", "a=1", "j=1"], "5/3"),
        (["alt-plus", "n=1", "a=2", "j=0"], "3"),
        (["k2gen", "alpha=1", "beta=-2", "j=1"], "-1/3"),
        (["k3gen", "alpha=-1", "gamma=3", "j=0"], "2/3"),
        (["transform", "n=1", "beta=1", "gamma=3"], "1/3"),
        (["samoletov", "n=2"], "1/4"),
        (["f21-2a", "n=2", "a=1"], "1/3"),
        (["confluent", "a=1", "j=1", "N=2"], "1,-1/6,1/24"),
        (["confluent", "a=1", "j=1", "N=2", "k=1"], "-1/6"),
        (["catalog:3.24", "n=1", "a=1"], "8/3"),
        (["catalog:3.26", "n=1", "a=1", "j=2"], "3/2"),
    ])
    def test_values(self, capsys, argv, expected):
        code, out, _ = run_cli(capsys, "eval", *argv)
        assert code == 0 and out.strip() == expected

    def test_pi_output(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "k2gen", "alpha=1", "beta=1", "j=0")
        assert code == 0 and out.strip() == "1/2*pi^1"
        code, out, _ = run_cli(capsys, "eval", "k2gen", "alpha=1/2", "beta=1/2", "j=0")
        assert code == 0 and out.strip() == "1*pi^(1/2)*Gamma(3/4)^-2"

    @pytest.mark.parametrize("argv,needle", [
        (["t2-plus", "n=2", "a=1", "j=3"], "EXCLUDED_DOMAIN"),
        (["t1-even", "n=2", "a=1", "j=3", "sign=-"], "(2a-j)"),
        (["oracle", "upper=-3,1", "lower=-1", "z=2"], "UNDEFINED_SERIES"),
        (["k3gen", "alpha=-1", "gamma=-1", "j=2"], "POLE"),
        (["catalog:3.26", "n=1", "a=1"], "RESTRICTED"),
    ])
    def test_poles_exit_2(self, capsys, argv, needle):
        code, _, err = run_cli(capsys, "eval", *argv)
        assert code == 2 and needle in err

    @pytest.mark.parametrize("argv", [
        ["nonsense", "n=1"],
        ["t1-even", "n=1"],
        ["t1-even", "n=1", "a=x", "j=0"],
        ["t1-even", "n=-1", "a=1", "j=0"],
        ["t1-even", "n=1", "a=1", "q=0"],
        ["t1-even", "n1", "a=1"],
        ["catalog:9.9", "n=1", "a=1"],
        ["oracle", "upper=1/2", "lower=2", "z=2"],
    ])
    def test_usage_exit_64(self, capsys, argv):
        code, _, err = run_cli(capsys, "eval", *argv)
        assert code == 64 and "error" in err

    def test_parser_errors_exit_64(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "nope"])
        assert exc.value.code == 64
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 64
        assert run_cli(capsys, "verify", "transform", "--skip-budget", "2")[0] == 64

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "t2-minus", "n=1", "a=1", "j=1", "--json")
        assert code == 0 and json.loads(out)["value"] == "5/3"


class TestExpand:
    def test_text(self, capsys):
        code, out, _ = run_cli(capsys, "expand", "a=3/2", "j=0", "--order", "4")
        assert code == 0
        assert out.splitlines() == ["x^0: 1", "x^1: 0", "x^2: 1/32", "x^3: 0", "x^4: 1/3072"]

    def test_pole(self, capsys):
        assert run_cli(capsys, "expand", "a=1", "j=2", "sign=-")[0] == 2


class TestVerify:
    def test_small_sweep_json_validates(self, capsys, schema):
        code, out, _ = run_cli(capsys, "verify", "all", "--n-max", "2", "--j-max", "2", "--a-count", "2",
                               "--points", "10", "--order", "6", "--json")
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, schema)
        assert report["summary"]["unequal"] == 0
        assert set(report["suites"]) == {"theorem1", "theorem2", "altforms", "kummer2", "kummer3",
                                         "transform", "confluent", "samoletov"}

    def test_degenerate(self, capsys):
        assert run_cli(capsys, "verify", "all", "--n-max", "0")[0] == 0

    def test_transform_example(self, capsys):
        assert run_cli(capsys, "verify", "transform", "--points", "500", "--seed", "1")[0] == 0

    def test_explicit_values_in_the_excluded_class_are_rejected(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "kummer3", "--n-max", "2", "--j-max", "1",
                               "--a", "-1", "--a", "5/2", "--json")
        report = json.loads(out)
        assert code == 0
        assert {r["parameter_point"]["gamma"] for r in report["results"]} <= {"5/2"}
        assert report["summary"]["rejected"] == 12

    def test_full_results(self, capsys, schema):
        code, out, _ = run_cli(capsys, "verify", "samoletov", "--n-max", "3", "--full", "--json")
        report = json.loads(out)
        jsonschema.validate(report, schema)
        assert code == 0 and len(report["results"]) == 9

    def test_subprocess_bytes_identical(self):
        argv = [sys.executable, "-m", "hypsum", "verify", "all", "--n-max", "1", "--points", "20",
                "--order", "8", "--seed", "11", "--json"]
        a = subprocess.run(argv, capture_output=True, check=True).stdout
        b = subprocess.run(argv, capture_output=True, check=True).stdout
        assert a == b and a


class TestCatalog:
    def test_minimal_grid(self, capsys, schema):
        code, out, _ = run_cli(capsys, "catalog", "--n-max", "2", "--a", "2", "--json")
        report = json.loads(out)
        jsonschema.validate(report, schema)
        assert len(report["entries"]) == 27
        assert code == (0 if report["matches_expected"] else 1)

    def test_usage(self, capsys):
        assert run_cli(capsys, "catalog", "--n-max", "0")[0] == 64
