import io
import json
import subprocess
import sys

import pytest

from sympres.cli import (EXIT_FAIL, EXIT_OK, EXIT_USAGE, SCHEMA, UsageError, first_difference,
                         parse_character, parse_generators, run)


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_parse_character():
    assert parse_character("2,2,2,2,2") == (2, 2, 2, 2, 2)
    with pytest.raises(UsageError):
        parse_character("1,2")
    with pytest.raises(UsageError):
        parse_character("a,b,c,d,e")


def test_parse_generators(tmp_path):
    assert parse_generators("") == []
    ident = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    f = tmp_path / "gens.json"
    f.write_text(json.dumps([ident]))
    assert len(parse_generators(f"@{f}")) == 1
    assert parse_generators(json.dumps([[[[0, 1]] * 4] * 4]))[0][0][0].im == 1
    with pytest.raises(UsageError):
        parse_generators("[[1, 2]]")
    with pytest.raises(UsageError):
        parse_generators("{not json")


def test_group_facts_json():
    code, text = call("group-facts", "--emit-json", "-")
    assert code == EXIT_OK
    report = json.loads(text)
    assert report["schema"] == SCHEMA and report["ok"]
    assert report["sections"]["group-facts"]["data"]["order"] == 32


def test_empty_generators_give_trivial_group():
    code, text = call("group-facts", "--generators", "", "--emit-json", "-")
    assert code == EXIT_OK
    assert json.loads(text)["sections"]["group-facts"]["data"]["order"] == 1


def test_text_output_lists_checks():
    code, text = call("eigen-table")
    assert code == EXIT_OK
    assert "[PASS] sign table matches" in text and text.rstrip().endswith("overall: PASS")


def test_usage_errors(tmp_path):
    assert call("nonsense")[0] == EXIT_USAGE
    assert call("kummer", "--character", "1,2,3")[0] == EXIT_USAGE
    assert call("kummer", "--trials", "-1")[0] == EXIT_USAGE
    assert call("smoothness", "--data-dir", str(tmp_path))[0] == EXIT_USAGE
    assert call("kummer", "--golden-dir", str(tmp_path))[0] == EXIT_USAGE


def test_golden_round_trip(tmp_path):
    out = tmp_path / "report.json"
    assert call("valuations", "--emit-json", str(out))[0] == EXIT_OK
    golden = tmp_path / "golden"
    golden.mkdir()
    (golden / "valuations.json").write_text(out.read_text())
    assert call("valuations", "--golden-dir", str(golden))[0] == EXIT_OK
    data = json.loads(out.read_text())
    data["sections"]["valuations"]["ok"] = False
    (golden / "valuations.json").write_text(json.dumps(data))
    assert call("valuations", "--golden-dir", str(golden))[0] == EXIT_FAIL


def test_first_difference():
    assert first_difference({"a": [1, 2]}, {"a": [1, 2]}) is None
    assert first_difference({"a": [1, 2]}, {"a": [1, 3]}) == "/a[1]"
    assert first_difference({"a": 1}, {"b": 1}) == "/a"


def test_smoothness_section():
    code, text = call("smoothness", "--emit-json", "-")
    assert code == EXIT_OK
    assert json.loads(text)["sections"]["smoothness"]["ok"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sympres", "kummer"], capture_output=True, text=True)
    assert proc.returncode == EXIT_OK
    assert "overall: PASS" in proc.stdout
