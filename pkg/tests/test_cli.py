import io
import json

import pytest
from hypothesis import given

from kawashima.cli import UsageError, parse_index, run
from kawashima.indices import render_index

from .conftest import nonempty_indices


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


class TestParseIndex:
    def test_examples(self):
        assert parse_index("1,1,2") == (1, 1, 2)
        assert parse_index("") == ()
        assert parse_index(" 3 , 1 ") == (3, 1)

    @pytest.mark.parametrize("text, pos", [("1, 0", 2), ("2,-1", 2), ("x", 1), ("1,,2", 2)])
    def test_errors_name_position(self, text, pos):
        with pytest.raises(UsageError, match=f"part {pos}"):
            parse_index(text)

    @given(nonempty_indices(12, max_depth=12))
    def test_round_trip(self, k):
        assert parse_index(render_index(k)) == k


def test_dual():
    assert call("dual", "1,1,2") == (0, "3,1\n")
    assert call("dual", "1,1,2", "--format", "json") == (0, "[3, 1]\n")


def test_rev():
    assert call("rev", "1,3") == (0, "3,1\n")


def test_bar_product_json():
    code, text = call("product", "--type", "bar", "1", "1")
    assert code == 0
    assert json.loads(text) == [{"coef": "2/1", "index": [1, 1]}, {"coef": "-1/1", "index": [2]}]


def test_circled_product():
    code, text = call("product", "--type", "circled", "1,1", "1")
    assert json.loads(text) == [{"coef": "1/1", "index": [1, 2]}]


def test_star():
    code, text = call("star", "1,1")
    assert json.loads(text) == [{"coef": "1/1", "index": [1, 1]}, {"coef": "1/1", "index": [2]}]


def test_sum_csv():
    code, text = call("sum", "1,2", "--N", "3")
    lines = text.splitlines()
    assert lines[0] == "n,s,s_star,S,S_star"
    assert lines[-1] == "3,1/6,11/54,5/12,341/216"
    assert len(lines) == 5


def test_mzv_near_pi2_over_6():
    code, text = call("mzv", "2", "--tol", "1e-8")
    assert code == 0
    assert abs(float(text.split()[0]) - 1.6449340668) < 1e-9


def test_mzv_json_schema():
    code, text = call("mzv", "1,2", "--star", "--format", "json")
    data = json.loads(text)
    assert set(data) == {"value", "error_estimate", "method", "terms_used"}
    assert data["value"].startswith("2.40411380631918")


def test_mzv_divergent_is_usage_error():
    assert call("mzv", "2,1")[0] == 2


def test_eval_and_exact():
    code, text = call("eval", "F", "--index", "1,1", "--z", "0.5", "--method", "newton")
    assert code == 0 and text.startswith("0.5433832387483951")
    assert call("eval", "F", "--index", "1,2", "--z", "4", "--exact") == (0, "2953/1728\n")


def test_eval_domain_error_exit_2(capsys):
    code, _ = call("eval", "F", "--index", "1", "--z", "-2")
    assert code == 2
    assert "rho = 1" in capsys.readouterr().err


def test_taylor_rows():
    code, text = call("taylor", "--index", "1", "--order", "3", "--method", "1", "--format", "json")
    rows = [json.loads(line) for line in text.splitlines()]
    assert [r["m"] for r in rows] == [1, 2, 3]
    assert json.loads(rows[0]["argument"]) == [{"coef": "1/1", "index": [2]}]
    assert rows[1]["value"].startswith("1.2020569031595942")


def test_taylor_method3_has_no_argument():
    code, text = call("taylor", "--index", "1,1", "--order", "2", "--method", "3", "--format", "json")
    rows = [json.loads(line) for line in text.splitlines()]
    assert all(r["argument"] is None for r in rows)


def test_verify_kawashima_exit_0():
    code, text = call("verify", "kawashima", "--k", "1", "--l", "1", "--m", "2")
    assert code == 0
    assert "kawashima_relation" in text


def test_verify_json_lines():
    code, text = call("verify", "hoffman", "--max-weight", "3", "--max-N", "4", "--format", "json")
    rows = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and len(rows) == 2 * 7 * 4
    assert {r["verdict"] for r in rows} == {"pass"}


def test_verify_failure_exit_1(monkeypatch):
    from fractions import Fraction

    from kawashima import cli
    from kawashima.relations import exact_report

    def broken(k, l, m, cfg):
        return exact_report("kawashima_relation", {"k": k, "l": l, "m": m}, Fraction(1), Fraction(2))

    monkeypatch.setattr(cli.rel, "check_kawashima_relation", broken)
    code, text = call("verify", "kawashima", "--k", "1", "--l", "1", "--m", "2")
    assert code == 1
    assert "FAIL" in text


def test_unknown_profile_is_usage_error():
    assert call("verify", "all", "--profile", "huge")[0] == 2


def test_usage_errors():
    assert call("dual", "1,0")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("mzv", "2", "--extrapolate", "a,b")[0] == 2


def test_config_file_and_override(tmp_path, monkeypatch):
    cfg = tmp_path / "k.cfg"
    cfg.write_text("# settings\nterms = 64\nformat = json\nextrapolate = none\ntol = 1\n")
    code, text = call("mzv", "2", "--config", str(cfg))
    assert json.loads(text)["terms_used"] == 64
    monkeypatch.setenv("KAWASHIMA_CONFIG", str(cfg))
    code, text = call("mzv", "2", "--terms", "128")
    assert json.loads(text)["terms_used"] == 128


def test_bad_config_key(tmp_path):
    cfg = tmp_path / "k.cfg"
    cfg.write_text("colour = blue\n")
    assert call("mzv", "2", "--config", str(cfg))[0] == 2


def test_deterministic_output():
    argv = ("eval", "F", "--index", "1,2", "--z", "0.25", "--format", "json")
    assert call(*argv) == call(*argv)
