import json

from weylchar.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip() else None
    return code, payload, captured.err


def test_char_example(capsys):
    code, payload, _ = run_cli(capsys, ["char", "--sig", "1,0,0,-1", "--u", "0.25,0,0,0"])
    assert code == 0
    assert payload["dim"] == 15
    assert payload["trace_exact"] == ["9", "0"]


def test_char_trivial(capsys):
    code, payload, _ = run_cli(capsys, ["char", "--sig", "0,0", "--u", "0,0"])
    assert code == 0
    assert payload["normalized"] == [1.0, 0.0]


def test_char_malformed_signature(capsys):
    code, _, err = run_cli(capsys, ["char", "--sig", "1,2", "--u", "0,0"])
    assert code == 2
    assert "error" in err


def test_usage_error_exit_code(capsys):
    assert main(["char"]) == 2
    capsys.readouterr()
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_branch_tensor(capsys):
    code, payload, _ = run_cli(
        capsys, ["branch", "--op", "tensor", "--sig1", "1,0", "--sig2", "1,0"]
    )
    assert code == 0
    sigs = [tuple(c["signature"]["entries"]) for c in payload["components"]]
    assert sigs == [(1, 1), (2, 0)]
    assert payload["inequalities_hold"] is True


def test_branch_restrict(capsys):
    code, payload, _ = run_cli(
        capsys, ["branch", "--op", "restrict", "--sig", "1,0,-1", "--d1", "1", "--d2", "2"]
    )
    assert code == 0
    assert payload["total_dim"] == 8
    assert len(payload["components"]) == 4


def test_branch_budget_exit_code(capsys):
    code, _, err = run_cli(
        capsys,
        ["branch", "--op", "tensor", "--sig1", "4,0,0,-4", "--sig2", "4,0,0,-4",
         "--dim-budget", "10"],
    )
    assert code == 3
    assert "budget" in err


def test_moments_example(capsys):
    code, payload, _ = run_cli(capsys, ["moments", "--sig", "1,0,0,0", "--r", "4"])
    assert code == 0
    assert payload["m2"] == "1/1" and payload["m4"] == "1/1"
    assert payload["equal"] is True and payload["estimate_holds"] is True


def test_moments_zero(capsys):
    code, payload, _ = run_cli(capsys, ["moments", "--sig", "0,0,0,0", "--r", "4"])
    assert code == 0
    assert payload["m2"] == "0/1" and payload["m4"] == "0/1"


def test_moments_sweep_small(capsys):
    code, payload, _ = run_cli(
        capsys, ["moments", "--sweep", "--dmax", "4", "--entry-bound", "1"]
    )
    assert code == 0
    assert payload["failures"] == 0 and payload["checked"] > 0


def test_hciz_power(capsys):
    code, payload, _ = run_cli(
        capsys, ["hciz", "--d", "3", "--n", "2", "--samples", "20000", "--seed", "7"]
    )
    assert code == 0
    assert payload["pass"] is True


def test_hciz_exp_mode(capsys):
    code, payload, _ = run_cli(
        capsys,
        ["hciz", "--d", "2", "--mode", "exp", "--samples", "20000", "--seed", "7",
         "--a", "1,-1", "--b", "1,-1"],
    )
    assert code == 0
    assert payload["pass"] is True


def test_hciz_deterministic_bytes(capsys):
    argv = ["hciz", "--d", "3", "--n", "2", "--samples", "5000", "--seed", "11"]
    main(argv)
    out1 = capsys.readouterr().out
    main(argv)
    out2 = capsys.readouterr().out
    assert out1 == out2


def test_seed_env_override(capsys, monkeypatch):
    argv = ["hciz", "--d", "3", "--n", "2", "--samples", "5000", "--seed", "1"]
    monkeypatch.setenv("WEYLCHAR_SEED", "11")
    main(argv)
    out_env = capsys.readouterr().out
    monkeypatch.delenv("WEYLCHAR_SEED")
    main(["hciz", "--d", "3", "--n", "2", "--samples", "5000", "--seed", "11"])
    out_direct = capsys.readouterr().out
    assert out_env == out_direct


def test_ergodic_example(capsys):
    code, payload, _ = run_cli(
        capsys,
        ["ergodic", "--diagram", "car", "--lam", "1", "--mu", "1", "--u", "0.25,0",
         "--nmax", "6"],
    )
    assert code == 0
    assert payload["limit"] == [0.5, 0.0]
    assert 1.8 <= payload["rate"] <= 2.2
    assert payload["dims"] == [2, 4, 8, 16, 32, 64]


def test_ergodic_trivial(capsys):
    code, payload, _ = run_cli(
        capsys, ["ergodic", "--diagram", "car", "--lam", "", "--mu", "", "--u", "0.25,0"]
    )
    assert code == 0
    assert all(v == [1.0, 0.0] for v in payload["values"])


def test_ergodic_unknown_diagram(capsys):
    code, _, err = run_cli(capsys, ["ergodic", "--diagram", "mystery", "--u", "0,0"])
    assert code == 2


def test_schur_weyl_example(capsys):
    code, payload, _ = run_cli(capsys, ["schur-weyl", "--n", "3", "--p", "1", "--q", "1"])
    assert code == 0
    assert payload["defect"] == "1/64"


def test_poisson_stirling(capsys):
    code, payload, _ = run_cli(capsys, ["poisson", "--stirling", "4"])
    assert code == 0
    assert payload["stirling"]["closed_form"] == "61/3"


def test_poisson_tv(capsys):
    code, payload, _ = run_cli(capsys, ["poisson", "--tv-a", "1", "--tv-k", "100"])
    assert code == 0
    assert payload["tv_bound"] < 0.09


def test_poisson_kstep(capsys):
    code, payload, _ = run_cli(
        capsys, ["poisson", "--kstep-k", "2", "--kernel-a", "1", "--truncation", "35"]
    )
    assert code == 0
    assert payload["kstep"]["passed"] is True


def test_poisson_series(capsys):
    code, payload, _ = run_cli(
        capsys,
        ["poisson", "--series-n", "2", "--kernel-a", "1", "--tau", "0.5,0.5"],
    )
    assert code == 0
    assert payload["series"]["passed"] is True


def test_validate_diagram_presets(capsys):
    code, payload, _ = run_cli(capsys, ["validate-diagram", "--diagram", "car"])
    assert code == 0 and payload["valid"] is True
    code2, payload2, _ = run_cli(
        capsys, ["validate-diagram", "--diagram", "gicar-excluded", "--depth", "5"]
    )
    assert code2 == 0 and payload2["primitive_within_depth"] is False


def test_validate_diagram_file(tmp_path, capsys):
    from weylchar.afalgebra import preset_diagram

    path = tmp_path / "diagram.json"
    path.write_text(json.dumps(preset_diagram("effros-shen").to_json()))
    code, payload, _ = run_cli(capsys, ["validate-diagram", "--file", str(path)])
    assert code == 0 and payload["valid"] is True


def test_output_file_option(tmp_path, capsys):
    out = tmp_path / "result.json"
    code = main(["schur-weyl", "--n", "2", "--p", "1", "--q", "1", "--output", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out == ""
    assert json.loads(out.read_text())["defect"] == "1/16"


def test_run_config_budget_validation():
    import pytest
    from weylchar.cli import RunConfig

    with pytest.raises(ValueError):
        RunConfig(mc_samples=0)
    cfg = RunConfig(seed=3)
    assert cfg.gt_dim_max > 0 and cfg.series_truncation > 0


def test_validate_diagram_invalid_file_exit_code(tmp_path, capsys):
    bad = {"name": "broken", "levels": [[1], [3]], "multiplicities": [[[2]]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, payload, _ = run_cli(capsys, ["validate-diagram", "--file", str(path)])
    assert code == 1
    assert payload["valid"] is False


def test_moments_reports_moment_ratio(capsys):
    code, payload, _ = run_cli(capsys, ["moments", "--sig", "1,0,0,-1", "--r", "4"])
    assert code == 0
    assert payload["m4_over_m2_sq"] == "15/8"
