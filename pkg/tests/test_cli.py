import io
import json
import pathlib

import pytest

from hkpell.cli import main, reproduce_table

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pell_min_envelope(capsys):
    code, out, _ = run_cli(["pell", "min", "--d", "13", "--t", "1"], capsys)
    assert code == 0
    env = json.loads(out)
    assert env["command"] == "pell min"
    assert env["result"] == {"a": 649, "b": 180}


def test_cone_csv_table(capsys):
    code, out, _ = run_cli(["--format", "csv", "cone", "s2",
                            "--e-from", "1", "--e-to", "13"], capsys)
    assert code == 0
    assert out == (GOLDEN / "s2-cones.csv").read_text()


def test_period_image_payload(capsys):
    code, out, _ = run_cli(["period-image", "--m", "4", "--n", "1", "--gamma", "2"],
                           capsys)
    assert code == 0
    env = json.loads(out)
    assert env["result"]["excluded_d"] == [2, 6, 8]
    assert env["provenance"] == ["table:period-image-m4"]


def test_determinism(capsys):
    code1, out1, _ = run_cli(["aut", "table", "--n", "3", "--emax", "11"], capsys)
    code2, out2, _ = run_cli(["aut", "table", "--n", "3", "--emax", "11"], capsys)
    assert code1 == code2 == 0 and out1 == out2


@pytest.mark.parametrize("table_id,ext", [
    ("s2-cones", "csv"),
    ("s2-walls", "csv"),
    ("aut-n3", "csv"),
    ("period-image-m4", "json"),
    ("period-image-m8", "json"),
    ("period-image-m12", "json"),
])
def test_reproduce_matches_golden(table_id, ext, capsys):
    code, out, _ = run_cli(["reproduce", table_id], capsys)
    assert code == 0
    assert out == (GOLDEN / f"{table_id}.{ext}").read_text()


def test_reproduce_function_matches_golden():
    for path in GOLDEN.iterdir():
        assert reproduce_table(path.stem) == path.read_text()


def test_unknown_table_is_domain_error(capsys):
    code, out, err = run_cli(["reproduce", "no-such-table"], capsys)
    assert code == 1
    assert "UnknownTable" in err


def test_domain_error_exit(capsys):
    code, _, err = run_cli(["pell", "fundamental", "--d", "4"], capsys)
    assert code == 1
    assert "PerfectSquareInput" in err
    code, _, err = run_cli(["cone", "fourfold", "--n", "2", "--e-prime", "5"], capsys)
    assert code == 1
    assert "BadCongruence" in err


def test_usage_error_exit():
    with pytest.raises(SystemExit) as exc:
        main(["pell", "min", "--d", "13"])  # missing --t
    assert exc.value.code == 2


def test_more_commands(capsys):
    code, out, _ = run_cli(["chi", "--m", "2", "--q", "6"], capsys)
    assert code == 0 and json.loads(out)["result"]["chi"] == 15

    code, out, _ = run_cli(["fujiki", "--series", "Kummer", "--m", "2"], capsys)
    assert code == 0 and json.loads(out)["result"]["constant"] == "9/1"

    code, out, _ = run_cli(["lattice", "disc", "--m", "2", "--n", "3",
                            "--gamma", "2"], capsys)
    assert code == 0 and json.loads(out)["result"]["orders"] == [3]

    code, out, _ = run_cli(["lattice", "dual", "--m", "2", "--n", "3",
                            "--gamma", "2"], capsys)
    assert code == 0 and json.loads(out)["result"] == {"m": 4, "n": 1, "gamma": 2}

    code, out, _ = run_cli(["lattice", "orbit", "--m", "2", "--n", "1",
                            "--gamma", "1", "--square", "-2", "--div", "2"], capsys)
    assert code == 0 and json.loads(out)["result"]["exists"] is True

    code, out, _ = run_cli(["heegner", "nonempty", "--n", "3", "--gamma", "2",
                            "--e", "1"], capsys)
    assert code == 0 and json.loads(out)["result"]["nonempty"] is True

    code, out, _ = run_cli(["heegner", "components", "--n", "1", "--gamma", "1",
                            "--e", "1"], capsys)
    assert code == 0 and json.loads(out)["result"]["count"] == 2

    code, out, _ = run_cli(["hilb-square", "--n", "3", "--e", "7"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["point"] == {"a": 5, "b": 2, "gamma": 2}

    code, out, _ = run_cli(["nl-family", "--n", "3", "--gamma", "2",
                            "--a-max", "3"], capsys)
    assert code == 0 and json.loads(out)["result"]["e"] == [1, 7, 13]

    code, out, _ = run_cli(["cone", "fourfold", "--n", "3", "--e-prime", "2",
                            "--prefix", "3"], capsys)
    env = json.loads(out)
    assert env["result"]["mov"] == "sqrt(3/2)"
    assert env["result"]["nef"] == "3/4"
    assert env["result"]["walls_infinite"] is True

    code, out, _ = run_cli(["aut", "search", "--emax", "30"], capsys)
    assert code == 0
    hits = json.loads(out)["result"]["e"]
    assert 29 in hits  # e = 29: both equations solvable, 5 does not divide e

    code, out, _ = run_cli(["oracle", "--m", "2", "--n", "3", "--gamma", "2",
                            "--bound", "3"], capsys)
    assert code == 0 and json.loads(out)["result"]
