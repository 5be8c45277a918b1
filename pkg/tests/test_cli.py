import csv
import io
import json
import math

import pytest

from cli.commands import EXIT_CONFIG, EXIT_OK, build_parser, main, overrides_from_args
from cli.output import format_cell, profile_path, render_rows


def _csv(text):
    return list(csv.reader(io.StringIO(text)))


def test_eval_fa_at_origin(capsys):
    assert main(["eval-fa", "--x", "0"]) == EXIT_OK
    rows = _csv(capsys.readouterr().out)
    assert rows[0] == ["x_1", "value", "method", "terms_used", "converged"]
    assert float(rows[1][1]) == 1.0
    assert rows[1][4] == "true"


def test_eval_fa_several_points(capsys):
    assert main(["eval-fa", "--a", "1", "--b", "1", "--c", "2", "--x", "-1", "--x", "0.5"]) == EXIT_OK
    rows = _csv(capsys.readouterr().out)
    assert len(rows) == 3
    # 2F1(1,1;2;x) = -ln(1-x)/x
    assert float(rows[1][1]) == pytest.approx(math.log(2.0), rel=1e-12)
    assert float(rows[2][1]) == pytest.approx(2.0 * math.log(2.0), rel=1e-12)


def test_eval_kernel_columns(capsys):
    assert main(["eval-kernel", "--format", "json"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)[0]
    assert list(record) == ["x_1", "x_2", "x_3", "xi_1", "xi_2", "xi_3", "q",
                            "dq_dxi_1", "dq_dxi_2", "dq_dxi_3"]
    assert record["q"] > 0.0


def test_solve_zero_data(capsys):
    assert main(["solve", "--points", "1,0,0", "--points", "0.5,2,-1"]) == EXIT_OK
    rows = _csv(capsys.readouterr().out)
    assert rows[0] == ["xi_1", "xi_2", "xi_3", "u", "err_est", "I_1"]
    assert [float(r[3]) for r in rows[1:]] == [0.0, 0.0]


def test_solve_writes_output_and_profile(tmp_path, capsys):
    out = tmp_path / "runs" / "field.csv"
    code = main(["solve", "--points", "1,0,0", "--output", str(out), "--profile"])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert _csv(out.read_text(encoding="utf-8"))[1][3] == "0.0"
    profile = json.loads((tmp_path / "runs" / "field.profile.json").read_text(encoding="utf-8"))
    assert profile[0]["index"] == 0


def test_lemma2_defaults(capsys):
    assert main(["lemma2"]) == EXIT_OK
    rows = _csv(capsys.readouterr().out)
    assert rows[0] == ["closed_form", "numeric", "rel_error", "method"]
    assert rows[1][0] == "1.5707963267948966"
    assert float(rows[1][2]) < 1e-6


def test_lemma1_sequence(capsys):
    assert main(["lemma1", "--eps", "1e-3,1e-6"]) == EXIT_OK
    rows = _csv(capsys.readouterr().out)
    assert rows[0] == ["eps", "value", "closed_form", "rel_error"]
    assert float(rows[2][3]) < float(rows[1][3])


def test_invalid_config_exits_one(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text('{"domain": {"m": 3, "nn": 1}}', encoding="utf-8")
    assert main(["solve", "--config", str(path), "--points", "1,0,0"]) == EXIT_CONFIG
    assert "domain.nn" in capsys.readouterr().err


def test_boundary_point_is_a_config_error(capsys):
    assert main(["solve", "--points", "0,1,1"]) == EXIT_CONFIG
    assert "points[0]" in capsys.readouterr().err


def test_overrides_use_dotted_keys():
    args = build_parser().parse_args(["flux", "--face", "1", "--levels", "2", "--alpha", "0.1",
                                      "--points", "0.1,0,0", "--jobs", "3"])
    assert overrides_from_args(args) == {
        "command": "flux",
        "flux.face": 1,
        "quadrature.refinement_levels": 2,
        "domain.alpha": [0.1],
        "flux.points": [[0.1, 0.0, 0.0]],
        "jobs": 3,
    }


def test_format_cell():
    assert format_cell(0.1) == "0.1"
    assert format_cell(True) == "true"
    assert format_cell(None) == ""
    assert format_cell(3) == "3"


def test_json_rows_map_nan_to_null():
    text = render_rows(["a", "b"], [[1.0, float("nan")]], "json")
    assert json.loads(text) == [{"a": 1.0, "b": None}]


def test_profile_path():
    assert profile_path("/tmp/out/field.csv", "/work", "solve") == "/tmp/out/field.profile.json"
    assert profile_path("", "/work", "flux") == "/work/flux.profile.json"


def test_missing_table_file_exits_one(tmp_path, capsys):
    data = json.dumps([{"face": 1, "kind": "tabulated", "path": str(tmp_path / "nope.txt"),
                        "bound_c": 1.0, "bound_eps": 0.5}])
    assert main(["solve", "--points", "1,0,0", "--data", data]) == EXIT_CONFIG
    assert "data[0].path" in capsys.readouterr().err


def test_csv_floats_read_back_exactly():
    values = [0.1 + 0.2, 1.0 / 3.0, math.pi * 1e-300, -2.0 ** 0.5 * 1e12]
    text = render_rows(["v"], [[v] for v in values], "csv")
    assert [float(r[0]) for r in _csv(text)[1:]] == values


def test_eval_fa_output_reads_back_exactly(capsys):
    from hyperfun.lauricella import lauricella_fa
    from hyperfun.params import FAParams

    assert main(["eval-fa", "--a", "0.75", "--b", "0.25", "--c", "0.5", "--x=-0.3"]) == EXIT_OK
    value = float(_csv(capsys.readouterr().out)[1][1])
    assert value == lauricella_fa(FAParams(0.75, (0.25,), (0.5,)), [-0.3]).value


def test_verify_reports_are_reproducible(tmp_path, capsys):
    first, second = tmp_path / "one.jsonl", tmp_path / "two.jsonl"
    assert main(["verify", "--suite", "quick", "--seed", "42", "--output", str(first)]) == EXIT_OK
    assert main(["verify", "--suite", "quick", "--seed", "42", "--jobs", "4",
                 "--output", str(second)]) == EXIT_OK
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()
    names = [json.loads(line)["name"] for line in first.read_text(encoding="utf-8").splitlines()]
    assert names == sorted(names)
