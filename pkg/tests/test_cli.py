import json

import pytest

from spectral_branes import cli


def run_main(capsys, argv):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_info(capsys):
    code, out, _ = run_main(capsys, ["info", "--genus", "2", "--ranks", "1,1,1"])
    rep = json.loads(out)
    assert code == 0
    assert rep["arithmetic_genus"] == 10 and rep["delta"] == 6
    assert (rep["dim_Mn"], rep["dim_base"]) == (20, 6)


def test_stability_semistable_exit_zero(capsys):
    code, out, _ = run_main(capsys, ["stability", "--genus", "2", "--ranks", "1,1,1", "--multidegree", "0,2,4"])
    assert code == 0
    assert json.loads(out)["verdict"]["status"] == "strictly_semistable"


def test_stability_needs_multidegree(capsys):
    code, _, err = run_main(capsys, ["stability", "--genus", "2", "--ranks", "1,1"])
    assert code == 2 and "multidegree" in err


def test_invalid_genus(capsys):
    code, _, err = run_main(capsys, ["info", "--genus", "1", "--ranks", "1,1"])
    assert code == 2 and "error" in json.loads(err)


def test_fm_check(capsys):
    code, out, _ = run_main(capsys, ["fm-check", "--genus", "2", "--ranks", "1,1"])
    assert code == 0 and json.loads(out)["match"] is True


def test_output_is_byte_stable(capsys):
    argv = ["brane", "--genus", "2", "--ranks", "1,1,1"]
    _, first, _ = run_main(capsys, argv)
    _, second, _ = run_main(capsys, argv)
    assert first == second


def test_text_format_and_env_default(capsys, monkeypatch):
    code, out, _ = run_main(capsys, ["info", "--genus", "2", "--ranks", "1,1", "--format", "text"])
    assert code == 0 and "arithmetic_genus: 5" in out
    monkeypatch.setenv(cli.FORMAT_ENV, "text")
    _, env_out, _ = run_main(capsys, ["info", "--genus", "2", "--ranks", "1,1"])
    assert env_out == out
    monkeypatch.setenv(cli.FORMAT_ENV, "yaml")
    code, _, _ = run_main(capsys, ["info", "--genus", "2", "--ranks", "1,1"])
    assert code == 2


def test_config_file(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"genus": 2, "ranks": [1, 2], "degrees": [-1, 1]}))
    code, out, _ = run_main(capsys, ["parabolic", "--config", str(path), "--box=-4,4"])
    rep = json.loads(out)
    assert code == 0
    assert {"e": [-1, 1], "ordering": [1, 2]} in rep["find_feasible"]["witnesses"]
    assert rep["uni_fiber"]["canonical"]["degrees"] == [3, 3]


def test_config_rejects_unknown_keys(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"genus": 2, "ranks": [1, 1], "colour": "red"}))
    code, _, _ = run_main(capsys, ["info", "--config", str(path)])
    assert code == 2
    code, _, _ = run_main(capsys, ["info", "--config", str(tmp_path / "missing.json")])
    assert code == 2


def test_explicit_strata_cap(capsys):
    code, out, _ = run_main(capsys, ["strata", "--genus", "2", "--ranks", "1,1", "--mode", "explicit", "--cap", "2"])
    assert code == 0 and json.loads(out)["count"] == 4
    code, _, err = run_main(capsys, ["strata", "--genus", "2", "--ranks", "1,1", "--mode", "explicit", "--cap", "1"])
    assert code == 2 and "explicit" in err


def test_brane_rejects_parabolic(capsys):
    code, _, _ = run_main(capsys, ["brane", "--genus", "2", "--ranks", "1,2"])
    assert code == 2


def test_audit_grid_small(capsys):
    code, out, _ = run_main(capsys, ["audit-grid", "--max-n", "3", "--max-g", "3", "--max-partition-n", "4"])
    assert code == 0 and json.loads(out)["ok"] is True


def test_audit_failure_exit_code(monkeypatch):
    monkeypatch.setitem(cli.HANDLERS, "audit-grid", lambda rc, args: {"ok": False, "failures": ["x"]})
    _, code = cli.run("audit-grid", cli.RunConfig())
    assert code == 3


def test_identity_violation_exit_code(monkeypatch):
    from spectral_branes.errors import IdentityViolation

    def boom(rc, args):
        raise IdentityViolation("genus", 1, 2, {})

    monkeypatch.setitem(cli.HANDLERS, "info", boom)
    report, code = cli.run("info", cli.RunConfig())
    assert code == 3 and report["identity"] == "genus"


@pytest.mark.parametrize("command", cli.COMMANDS)
def test_every_command_runs(command):
    rc = cli.RunConfig(genus=2, ranks=(1, 1), multidegree=(1, 1))
    _, code = cli.run(command, rc, cli.build_parser().parse_args([command, "--max-n", "2", "--max-g", "2",
                                                                  "--max-partition-n", "3"]))
    assert code == 0


def test_unknown_command():
    _, code = cli.run("nope", cli.RunConfig())
    assert code == 2
