import json

import pytest

from symfermion import report as rp
from symfermion.cli import main, parse_tau, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_c2_prints_profile(capsys):
    code, out, _ = run(capsys, "c2", "--d", "1", "--cut", "12")
    assert code == 0
    assert "total 11" in out and "weight 5: 3" in out


def test_c2_short_cut_fails(capsys):
    code, out, _ = run(capsys, "c2", "--d", "1", "--cut", "5")
    assert code == 1 and "FAIL" in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["c2", "--bogus"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_unknown_relation_is_usage_error(capsys):
    code, _, err = run(capsys, "zhu", "verify", "--rel", "no/such-rel")
    assert code == 2 and "zhu list" in err


def test_bad_tau_is_usage_error(capsys):
    code, _, _ = run(capsys, "modular", "--tau=-i")
    assert code == 2
    code, _, _ = run(capsys, "modular", "--tau", "abc")
    assert code == 2


@pytest.mark.parametrize(
    "text,value",
    [("i", 1j), ("2i", 2j), ("0.2+1.3i", 0.2 + 1.3j), ("1j", 1j), ("-0.5+0.8i", -0.5 + 0.8j)],
)
def test_parse_tau(text, value):
    assert parse_tau(text) == pytest.approx(value)


def test_parse_tau_rejects_lower_half_plane():
    with pytest.raises(UsageError):
        parse_tau("0.3")


def test_zhu_verify_single_relation(capsys):
    code, out, _ = run(capsys, "zhu", "verify", "--rel", "zhu-d1/theta-swap", "--d", "1")
    assert code == 0 and "PASS" in out


def test_zhu_algebra(capsys):
    code, out, _ = run(capsys, "zhu", "algebra")
    assert code == 0 and "11" in out


def test_modular_s(capsys):
    code, out, _ = run(capsys, "modular", "--transform", "S", "--tau", "i", "--order", "200")
    assert code == 0 and "PASS" in out


def test_characters_csv(capsys):
    code, out, err = run(capsys, "characters", "--module", "SF-", "--d", "1", "--order", "6", "--csv")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert len(rows) > 2
    assert "PASS" in err


def test_basis_and_logmod_and_twisted(capsys):
    code, out, _ = run(capsys, "basis", "--sector", "twisted", "--d", "1", "--weight", "1/2")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "logmod", "--d", "1")
    assert code == 0
    code, out, _ = run(capsys, "twisted", "--d", "2")
    assert code == 0


def test_config_defaults_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "sf.cfg"
    cfg.write_text("# defaults\ncut = 5\n")
    code, out, _ = run(capsys, "--config", str(cfg), "c2")
    assert code == 1 and "total 9" in out
    code, out, _ = run(capsys, "--config", str(cfg), "c2", "--cut", "12")
    assert code == 0 and "total 11" in out


def _small_checks(seed, include_relations=True):
    return [rp.central_charge_check, lambda: rp.borcherds_check(seed, samples=10, twisted_samples=5)]


def _strip_times(doc):
    for c in doc["checks"]:
        c.pop("wall_time")
    return doc


def test_report_is_deterministic(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(rp, "all_checks", _small_checks)
    docs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert main(["report", "--json", str(path), "--seed", "7"]) == 0
        docs.append(_strip_times(json.loads(path.read_text())))
    capsys.readouterr()
    assert docs[0] == docs[1]
    assert list(docs[0]) == ["version", "seed", "config", "checks"]
    assert docs[0]["seed"] == 7
    assert [c["id"] for c in docs[0]["checks"]] == ["vertex/central-charge", "vertex/borcherds"]


def test_empty_report_is_valid_json():
    doc = json.loads(rp.emit_report([], 0, {}))
    assert doc["checks"] == []


def test_failing_check_is_serialized(tmp_path, monkeypatch, capsys):
    def failing(seed, include_relations=True):
        return [lambda: rp.c2_check(1, 5)]

    monkeypatch.setattr(rp, "all_checks", failing)
    path = tmp_path / "fail.json"
    assert main(["report", "--json", str(path)]) == 1
    capsys.readouterr()
    doc = json.loads(path.read_text())
    (chk,) = doc["checks"]
    assert chk["status"] == "fail"
    assert chk["witness"]
