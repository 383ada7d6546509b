import csv
import io
import json
import math
from importlib.resources import files

import jsonschema
import pytest

from entcost import cli
from entcost.loccsim import Result2Report


def _schema(name):
    return json.loads((files("entcost") / "schemas" / name).read_text(encoding="utf-8"))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == cli.EXIT_OK
    return json.loads(out)


def run_csv(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == cli.EXIT_OK
    return list(csv.reader(io.StringIO(out)))


# -- vector ------------------------------------------------------------------

def test_vector_ghz4(capsys):
    data = run_json(capsys, "vector", "--state", "ghz(4)")
    assert data["per_degree"] == {"2": 0.0, "3": 0.0, "4": 1.0}
    assert data["measure"] == "EoF"
    assert data["n"] == 4
    assert data["method_summary"]["exact"] is True


def test_vector_zero3(capsys):
    data = run_json(capsys, "vector", "--state", "zero(3)")
    assert all(v == 0.0 for v in data["per_degree"].values())
    assert data["total"] == 0.0


def test_vector_w3_ghz3_carries_deviation_note(capsys):
    data = run_json(capsys, "vector", "--state", "w(3)*ghz(3)")
    assert data["per_degree"]["2"] == pytest.approx(1.100096, abs=1e-6)
    assert data["per_degree"]["3"] == pytest.approx(1.368248, abs=1e-6)
    assert any("row 6" in note for note in data["notes"])


def test_vector_padded_w3_carries_row5_note(capsys):
    data = run_json(capsys, "vector", "--state", "w(3)*zero(2)")
    assert any("row 5" in note for note in data["notes"])


def test_vector_without_deviation_has_no_note(capsys):
    data = run_json(capsys, "vector", "--state", "w(4)")
    assert not data.get("notes")


def test_vector_schema(capsys):
    schema = _schema("vector.schema.json")
    for spec in ("ghz(4)", "w(3)*ghz(3)", "mix(1/2:ghz(3), 1/2:zero(3))"):
        jsonschema.validate(run_json(capsys, "vector", "--state", spec), schema)


def test_vector_kmax(capsys):
    data = run_json(capsys, "vector", "--state", "ghz(4)", "--kmax", "3")
    assert sorted(data["per_degree"]) == ["2", "3"]


def test_vector_csv_header(capsys):
    rows = run_csv(capsys, "vector", "--state", "w(3)", "--format", "csv")
    assert rows[0] == ["k", "E_k", "E_2_to_k", "argmax_sequence"]
    assert [r[0] for r in rows[1:]] == ["2", "3"]
    assert rows[1][1] == "1.100096"


def test_six_digit_rounding_and_full_precision(capsys):
    short = run_json(capsys, "vector", "--state", "w(3)")
    full = run_json(capsys, "vector", "--state", "w(3)", "--full-precision")
    assert short["per_degree"]["3"] == 0.368248
    assert full["per_degree"]["3"] == pytest.approx(0.368248074471732, abs=1e-13)
    assert full["per_degree"]["3"] != short["per_degree"]["3"]


def test_vector_output_file_is_byte_stable(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert cli.main(["vector", "--state", "w(3)*bell", "--out", str(p)]) == cli.EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert capsys.readouterr().out == ""


# -- errors and exit codes -----------------------------------------------------

def test_parse_error_exits_1(capsys):
    code, out, err = run(capsys, "vector", "--state", "ghz(")
    assert code == cli.EXIT_USAGE
    assert out == ""
    assert "error" in err


def test_missing_state_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["vector"])
    assert exc.value.code == cli.EXIT_USAGE


def test_unknown_command_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["plot"])
    assert exc.value.code == cli.EXIT_USAGE


def test_size_cap_exits_1(capsys):
    code, _, err = run(capsys, "vector", "--state", "zero(13)")
    assert code == cli.EXIT_USAGE
    assert "cap" in err


def test_bad_kmax_exits_1(capsys):
    code, _, _ = run(capsys, "vector", "--state", "ghz(3)", "--kmax", "4")
    assert code == cli.EXIT_USAGE


def test_unwritable_output_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "vector", "--state", "ghz(3)", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == cli.EXIT_IO
    assert "io error" in err


def test_violation_exits_3(monkeypatch, capsys):
    def fake(n, g, trials, seed=0, tol=None):
        report = Result2Report(n, g, trials, seed, 1e-6, 1e-3)
        report.violations.append({"trial": 0, "prefix_gates": g, "degree": g + 2})
        return report

    monkeypatch.setattr(cli, "verify_result2", fake)
    code, out, _ = run(capsys, "circuit", "--n", "3", "--gates", "1", "--trials", "1")
    assert code == cli.EXIT_CHECK
    assert json.loads(out)["passed"] is False


# -- table1 ------------------------------------------------------------------

def test_table1_rows_and_flags(capsys):
    rows = run_csv(capsys, "table1")
    header, body = rows[0], rows[1:]
    assert header == ["row", "state", "spec", "n", "E2", "E3", "E4", "E5", "E6",
                      "total", "published", "delta", "status", "note"]
    status = {r[0]: r[header.index("status")] for r in body}
    assert status == {"1": "match", "2": "match", "3": "match", "4": "match",
                      "5": "rule-discrepancy", "6": "rule-discrepancy", "7": "match"}
    by_row = {r[0]: dict(zip(header, r)) for r in body}
    assert by_row["1"]["delta"] == "0.000000"
    assert by_row["4"]["E2"] == "3.000000"
    assert by_row["5"]["E3"] == "0.368248"
    assert by_row["6"]["E3"] == "1.368248"


def test_table1_other_n_and_json(capsys):
    data = run_json(capsys, "table1", "--n", "7", "--format", "json")
    assert len(data) == 7
    assert data[3]["note"] == "odd N padded with one |0>"
    assert data[0]["E7"] == "1.000000"


def test_table1_rejects_out_of_range_n(capsys):
    code, _, _ = run(capsys, "table1", "--n", "3")
    assert code == cli.EXIT_USAGE


# -- wscaling ----------------------------------------------------------------

def test_wscaling_properties(capsys):
    rows = run_csv(capsys, "wscaling", "--nmax", "100", "--full-precision")
    assert rows[0] == ["N", "k", "E_F^k", "total", "log2N"]
    body = [(int(n), int(k), float(e), float(t), float(l)) for n, k, e, t, l in rows[1:]]
    assert all(t <= l + 1e-12 for _, _, _, t, l in body)
    assert body[0][:3] == (2, 2, 1.0)
    e2 = [e for n, k, e, _, _ in body if k == 2 and n >= 3]
    assert all(a > b for a, b in zip(e2, e2[1:]))
    degrees = {n: {k for m, k, *_ in body if m == n} for n in (2, 5, 60, 100)}
    assert degrees == {2: {2}, 5: {2, 3, 5}, 60: {2, 3, 10, 50, 60}, 100: {2, 3, 10, 50, 100}}


def test_wscaling_log_column(capsys):
    rows = run_csv(capsys, "wscaling", "--nmax", "8")
    last = rows[-1]
    assert last[0] == "8" and last[4] == f"{math.log2(8):.6f}"


def test_wscaling_rejects_large_nmax(capsys):
    code, _, _ = run(capsys, "wscaling", "--nmax", "5000")
    assert code == cli.EXIT_USAGE


# -- circuit -----------------------------------------------------------------

def test_circuit_one_gate_passes(capsys):
    data = run_json(capsys, "circuit", "--n", "4", "--gates", "1", "--trials", "100")
    jsonschema.validate(data, _schema("circuit.schema.json"))
    assert data["passed"] is True


def test_circuit_no_gates_passes(capsys):
    data = run_json(capsys, "circuit", "--n", "3", "--gates", "0", "--trials", "10")
    assert data["passed"] is True
    assert data["degree_counts"] == {"1": 10}


def test_circuit_witness(capsys):
    data = run_json(capsys, "circuit", "--n", "3", "--witness")
    jsonschema.validate(data, _schema("circuit.schema.json"))
    assert data["degree"] == 3
    assert data["entangling_gates"] == 2
    assert data["passed"] is True


def test_circuit_is_byte_stable(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        cli.main(["circuit", "--n", "3", "--gates", "2", "--trials", "10", "--seed", "7", "--out", str(p)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_circuit_rejects_large_n(capsys):
    code, _, _ = run(capsys, "circuit", "--n", "6")
    assert code == cli.EXIT_USAGE
