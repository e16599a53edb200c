"""End-to-end behaviour of the command line front end."""

import json

import pytest

from oagkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_classify_exit_codes(capsys):
    assert run(capsys, "classify", "g1")[0] == 0
    assert run(capsys, "classify", "z")[0] == 0
    assert run(capsys, "classify", "g3")[0] == 1
    assert run(capsys, "classify", "g4")[0] == 2


def test_classify_payload_names_the_status(capsys):
    code, data = run_json(capsys, "--json", "classify", "g1")
    assert code == 0
    assert data["status"] == "StablyEmbedded"
    code, data = run_json(capsys, "--json", "classify", "z")
    assert data["status"] == "UniformlyStablyEmbedded"
    code, data = run_json(capsys, "--json", "classify", "sigma")
    assert data["status"] == "NotStablyEmbedded"


def test_trace_adds_reasons(capsys):
    _, plain = run_json(capsys, "--json", "classify", "g2")
    _, traced = run_json(capsys, "--json", "--trace", "classify", "g2")
    assert "reasons" not in plain
    assert traced["reasons"]


def test_output_is_deterministic(capsys):
    one = run(capsys, "--json", "classify", "h235")
    two = run(capsys, "--json", "classify", "h235")
    assert one == two


def test_unknown_group_is_a_usage_error(capsys):
    code, out, _ = run(capsys, "classify", "mystery")
    assert code == 64
    assert "mystery" in out


def test_unknown_subcommand_is_a_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 64


def test_skeleton_and_spine(capsys):
    code, data = run_json(capsys, "--json", "skeleton", "g2")
    assert code == 0
    assert data["mode"] == "hahn"
    code, data = run_json(capsys, "--json", "spine", "2", "g4")
    assert code == 0
    assert data["pieces"] == [["all"]]
    assert data["limit_seg"] == 0
    assert data["inf"] is True


def test_val_subcommand(capsys):
    code, data = run_json(capsys, "--json", "val", "2", "g4", "el(tail: 2)")
    assert code == 0
    assert data["value"] == "limit(0)"
    code, data = run_json(capsys, "--json", "val", "2", "z",
                          "el(pos(0, 0): 5)")
    assert data["value"] == "pos(0, 0)"


def test_check_commands(capsys):
    assert run(capsys, "check-m", "g1")[0] == 0
    assert run(capsys, "check-m", "g4")[0] == 2
    assert run(capsys, "check-ur", "z")[0] == 0
    assert run(capsys, "check-ur", "g3")[0] == 2
    code, data = run_json(capsys, "--json", "check-ur", "h235")
    assert code == 0
    assert data["modulus"] == 30


def test_classify_frr_table(capsys):
    code, data = run_json(capsys, "--json", "classify-frr", "z2r")
    assert code == 0
    assert data["status"] == "UniformlyStablyEmbedded"
    assert run(capsys, "classify-frr", "zq")[0] == 1


def test_pair_classify(capsys):
    assert run(capsys, "pair-classify", "z")[0] == 0
    assert run(capsys, "pair-classify", "mod2")[0] == 1
    assert run(capsys, "pair-classify", "sum_in_hahn")[0] == 1


def test_pseudo_subcommand(capsys):
    code, data = run_json(capsys, "--json", "pseudo", "g1",
                          "el(pos(0, 0): 1)",
                          "el(pos(0, 0): 1, pos(0, 1): 1)",
                          "el(pos(0, 0): 1, pos(0, 1): 1, pos(0, 2): 1)")
    assert code == 0
    assert data["pseudo_cauchy"] is True
    assert data["limit"] is None
    code, _, _ = run(capsys, "pseudo", "g1", "el(pos(0, 0): 1)",
                     "el(pos(0, 0): 2)")
    assert code == 2


def test_lift_subcommand(capsys):
    code, data = run_json(
        capsys, "--json", "lift", "g1",
        "el(pos(0, 0): 1)",
        "el(pos(0, 0): 3, pos(0, 1): 1)",
        "el(pos(0, 0): 3, pos(0, 1): 3, pos(0, 2): 1)",
        "el(pos(0, 0): 3, pos(0, 1): 3, pos(0, 2): 3, pos(0, 3): 1)")
    assert code == 0
    assert data["m"] == 2
    assert len(data["lifted"]["terms"]) == 4


def test_eval_subcommand(capsys):
    code, data = run_json(capsys, "--json", "eval", "z", "x > 0",
                          "--env", "x=el(pos(0, 0): 5)")
    assert code == 0
    assert data["value"] is True
    code, _, _ = run(capsys, "eval", "z", "x >")
    assert code == 64
    code, _, _ = run(capsys, "eval", "z", "x - y > 0",
                     "--env", "x=el(pos(0, 0): 5)")
    assert code == 64


def test_preds_subcommand(capsys):
    code, data = run_json(capsys, "--json", "preds", "z", "el(pos(0, 0): 5)")
    assert code == 0
    assert data


def test_best_approx_subcommand(capsys):
    code, data = run_json(capsys, "--json", "best-approx", "-n", "2", "z",
                          "el(pos(0, 0): 3)")
    assert code == 0
    assert data["exact"] is True


def test_scheme_subcommand_exact_case(capsys):
    code, data = run_json(capsys, "--json", "scheme", "cong", "-n", "1",
                          "-m", "2", "-k", "1", "z_window",
                          "el(pos(0, 0): 1)")
    assert code == 0
    assert data["complete"] is True
    assert data["target"] == "cong(1,2,1)"
    assert data["cases"] == [
        {"guard": "eq", "guard_formula": None,
         "payload": "-x + el(pos(0, 0): 1) ==={2} 1"}]


def test_scheme_subcommand_ladder_is_incomplete(capsys):
    code, data = run_json(capsys, "--json", "scheme", "sign", "sum_in_hahn",
                          "el(tail: 1)")
    assert code == 2
    assert data["complete"] is False
    assert data["cases"]


def test_corpus_runs_clean(capsys):
    code, out, err = run(capsys, "corpus")
    assert code == 0
    lines = [l for l in err.strip().splitlines() if l]
    assert len(lines) == 9
    assert all(l.startswith("PASS") for l in lines)
    assert json.loads(out)


def test_group_loading_from_file(tmp_path, capsys):
    code, out, _ = run(capsys, "--json", "skeleton", "z2")
    pres_path = tmp_path / "pet.json"
    from oagkit.codec import dumps, group_to_data
    from oagkit.catalogue import builtin_group
    pres_path.write_text(dumps(group_to_data(builtin_group("z2"))))
    code2, out2, _ = run(capsys, "--json", "skeleton", str(pres_path))
    assert code == code2 == 0
    assert json.loads(out)["segments"] == json.loads(out2)["segments"]


def test_bound_flag_and_env(capsys, monkeypatch):
    code, _ = run_json(capsys, "--json", "--bound", "8", "check-ur", "z")
    assert code == 0
    monkeypatch.setenv("OAGKIT_BOUND", "9")
    code, _ = run_json(capsys, "--json", "check-ur", "z")
    assert code == 0
    monkeypatch.setenv("OAGKIT_BOUND", "frog")
    code, out, _ = run(capsys, "check-ur", "z")
    assert code == 64
