import hashlib
import json

import pytest

import cli
from fpres import load_presentation

Z9xZ9 = "< a, b | a^9, b^9, [a, b] >\n"


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _json(out):
    body = json.loads(out)
    digest = body.pop("digest")
    canonical = json.dumps(body, sort_keys=True, separators=(",", ":"))
    assert hashlib.sha256(canonical.encode("utf-8")).hexdigest() == digest
    return body


def test_abelianize_text(capsys):
    code, out, _ = _run(capsys, "abelianize", "--fixture", "gamma1")
    assert code == 0
    assert "mod-3 rank:   2" in out
    assert "betti:        0" in out


def test_abelianize_json_is_signed(capsys):
    code, out, _ = _run(capsys, "abelianize", "--fixture", "gamma1", "--format", "json")
    assert code == 0
    body = _json(out)
    assert body["schema"] == 1
    assert body["command"] == "abelianize"
    assert body["betti"] == 0
    assert body["elementary_abelian_rank"] == 2


def test_kernel_writes_presentation(capsys, tmp_path):
    target = tmp_path / "gamma2.fp"
    code, out, _ = _run(capsys, "kernel", "--fixture", "gamma1", "--kernel-out", str(target))
    assert code == 0
    assert "index_in_parent: 9" in out
    kernel = load_presentation(target)
    assert kernel.ngens < 28


def test_tower_from_file_to_out(capsys, tmp_path):
    src = tmp_path / "z9.fp"
    src.write_text(Z9xZ9, encoding="utf-8")
    dest = tmp_path / "report.json"
    code, out, _ = _run(capsys, "tower", "--input", str(src), "--depth", "2", "--format", "json", "--out", str(dest))
    assert code == 0
    assert out == ""
    body = _json(dest.read_text(encoding="utf-8"))
    assert [lvl["index_in_root"] for lvl in body["levels"]] == [9, 81]


def test_depth_beyond_cap_warns(capsys, tmp_path):
    src = tmp_path / "z9.fp"
    src.write_text(Z9xZ9, encoding="utf-8")
    code, out, err = _run(capsys, "tower", "--input", str(src), "--depth", "3", "--depth-cap", "1")
    assert code == 0
    assert "TRUNCATED" in out
    assert "warning" in err


def test_verify_cd_level_one(capsys):
    code, out, _ = _run(capsys, "verify-cd", "--depth", "1", "--format", "json")
    assert code == 0
    body = _json(out)
    assert body["verdict"] == "pass"
    assert body["oracle"]["outcome"] == "agree"
    assert body["oracle"]["generator_set"] == "exponent-p-abelian-quotient"
    assert body["oracle"]["index"] == 9
    names = {c["name"] for c in body["checks"]}
    assert {"level-1-index", "level-1-h1-rank", "level-1-exponent-3-quotient", "level-1-betti-zero"} <= names
    assert all(c["passed"] for c in body["checks"])


def test_verify_cd_other_prime_is_exploratory(capsys):
    code, out, _ = _run(capsys, "verify-cd", "--prime", "5", "--depth", "1", "--format", "json")
    assert code == 0
    body = _json(out)
    assert body["mode"] == "exploratory"
    assert body["claim"] is None


def test_verify_cd_rejects_other_inputs(capsys):
    code, _, err = _run(capsys, "verify-cd", "--fixture", "gamma2")
    assert code == 2
    assert "gamma1" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["abelianize", "--fixture", "nonexistent"],
        ["abelianize", "--input", "/no/such/file.fp"],
        ["tower", "--prime", "4"],
        ["tower", "--prime", "2"],
        ["tower", "--depth", "0"],
        ["tower", "--coset-cap", "0"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert "input error" in err


def test_malformed_file_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.fp"
    bad.write_text("< a, b |\n a*q >", encoding="utf-8")
    code, _, err = _run(capsys, "abelianize", "--input", str(bad))
    assert code == 2
    assert "line 2, column 4" in err
    assert str(bad) in err


def test_non_utf8_file_is_an_input_error(capsys, tmp_path):
    bad = tmp_path / "latin1.fp"
    bad.write_bytes(b"< a | a\xff >")
    code, _, err = _run(capsys, "abelianize", "--input", str(bad))
    assert code == 2
    assert "input error" in err
    assert "line 1, column 8" in err


def test_resource_cap_exit_3(capsys):
    code, _, err = _run(capsys, "kernel", "--fixture", "gamma1", "--coset-cap", "5")
    assert code == 3
    assert "resource cap" in err


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as err:
        cli.main([])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        cli.main(["abelianize", "--input", "x", "--fixture", "gamma1"])
    assert err.value.code == 2


@pytest.mark.slow
def test_verify_cd_default_depth(capsys):
    code, out, _ = _run(capsys, "verify-cd")
    assert code == 0
    assert "[PASS] level-2-betti-zero" in out
    assert "verified" in out
