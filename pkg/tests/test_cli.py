"""Command-line interface: schemas, determinism, exit codes, formats."""

import json
import math

from ringchain import SolverError
from ringchain.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_rows(text):
    lines = [l for l in text.strip().splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


def test_bands_schema(capsys):
    code, out, _ = run_cli(capsys, "bands", "--ell", "1", "--k-max", "10")
    assert code == 0
    header, rows = csv_rows(out)
    assert header == ["band_index", "e_lo", "e_hi", "edge_theta_lo", "edge_theta_hi"]
    assert len(rows) == 14
    assert out.startswith("# ringchain")
    assert "# config:" in out


def test_negative_band_count_dichotomy(capsys):
    code, out, _ = run_cli(capsys, "negative", "--ell-pi")
    assert code == 0
    _, rows = csv_rows(out)
    assert len(rows) == 1

    code, out, _ = run_cli(capsys, "negative", "--ell", "1")
    assert code == 0
    _, rows = csv_rows(out)
    assert len(rows) == 2

    # a decimal truncation of pi is indistinguishable from pi in floats and
    # must give the single merged band as well
    code, out, _ = run_cli(capsys, "negative", "--ell", "3.14159265358979")
    assert code == 0
    _, rows = csv_rows(out)
    assert len(rows) == 1


def test_flat_schema(capsys):
    code, out, _ = run_cli(capsys, "flat", "--ell", "1", "--e-max", "5")
    assert code == 0
    header, rows = csv_rows(out)
    assert header == ["energy", "embedded", "source"]
    assert [r[0] for r in rows] == ["0", "1", "4"]
    assert all(r[1] == "true" for r in rows)


def test_dispersion_schema(capsys):
    code, out, _ = run_cli(capsys, "dispersion", "--theta", "0",
                           "--k-max", "5")
    assert code == 0
    header, rows = csv_rows(out)
    assert header == ["theta", "k", "energy"]
    assert [r[1] for r in rows] == ["2", "4"]


def test_measure_schema(capsys):
    code, out, _ = run_cli(capsys, "measure", "--ell", "1",
                           "--e-max", "100", "1000")
    assert code == 0
    header, rows = csv_rows(out)
    assert header == ["K", "measure", "fraction", "band_count", "gap_count"]
    assert len(rows) == 2
    assert float(rows[0][2]) > float(rows[1][2])


def test_determinism_byte_identical(capsys):
    _, out1, _ = run_cli(capsys, "bands", "--ell", "1", "--k-max", "6")
    _, out2, _ = run_cli(capsys, "bands", "--ell", "1", "--k-max", "6")
    assert out1 == out2
    _, s1, _ = run_cli(capsys, "selfcheck", "--seed", "3")
    _, s2, _ = run_cli(capsys, "selfcheck", "--seed", "3")
    assert s1 == s2


def test_json_csv_numeric_equality(capsys):
    _, out_csv, _ = run_cli(capsys, "negative", "--ell", "1")
    _, out_json, _ = run_cli(capsys, "negative", "--ell", "1",
                             "--format", "json")
    header, rows = csv_rows(out_csv)
    obj = json.loads(out_json)
    assert obj["schema_version"] == 1
    assert len(obj["rows"]) == len(rows)
    for csv_row, json_row in zip(rows, obj["rows"]):
        for name, text in zip(header, csv_row):
            jv = json_row[name]
            if isinstance(jv, float):
                assert abs(jv - float(text)) <= 1e-12 * max(1.0, abs(jv))
            else:
                assert str(jv) == text or text == json.dumps(jv)


def test_csv_has_no_commas_inside_fields(capsys):
    _, out, _ = run_cli(capsys, "selfcheck", "--seed", "0")
    header, rows = csv_rows(out)
    assert all(len(r) == len(header) for r in rows)


def test_float_serialization_roundtrip(capsys):
    _, out, _ = run_cli(capsys, "negative", "--ell", "1")
    _, rows = csv_rows(out)
    for r in rows:
        v = float(r[1])
        assert format(v, ".17g") == r[1]


def test_exit_code_invalid_args(capsys):
    code, _, err = run_cli(capsys, "bands", "--k-max", "-5")
    assert code == 1 and "error" in err
    code, _, _ = run_cli(capsys, "bands")  # missing required --k-max
    assert code == 1
    code, _, _ = run_cli(capsys, "negative", "--ell", "1", "--ell-pi")
    assert code == 1


def test_exit_code_solver_failure(capsys, monkeypatch):
    import ringchain.cli as cli_mod

    def boom(spec):
        raise SolverError("forced failure")

    monkeypatch.setattr(cli_mod, "negative_bands", boom)
    code, _, err = run_cli(capsys, "negative", "--ell", "1")
    assert code == 2 and "solver error" in err


def test_selfcheck_passes(capsys):
    code, out, _ = run_cli(capsys, "selfcheck")
    assert code == 0
    header, rows = csv_rows(out)
    assert header == ["check", "status", "detail"]
    assert all(r[1] == "pass" for r in rows)


def test_output_file_and_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("RINGCHAIN_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run_cli(capsys, "flat", "--ell", "1", "--e-max", "5",
                           "--output", "flat.csv")
    assert code == 0 and out == ""
    text = (tmp_path / "flat.csv").read_text()
    assert text.startswith("# ringchain")


def test_ell_pi_flag_exact(capsys):
    _, out, _ = run_cli(capsys, "negative", "--ell-pi")
    assert f"ell={format(math.pi, '.17g')}" in out
