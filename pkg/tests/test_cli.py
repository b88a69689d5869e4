import csv
import io

import pytest

from delayedchoice.cli import main, parse_report


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("pulses_open = 40000\npulses_closed_per_phase = 2000\nseed = 9\n")
    return path


def test_bounds_command():
    code, out = run_cli("bounds", "--v", "0.94", "--alpha", "0.12")
    assert code == 0
    keys = parse_report(out)
    assert keys["p_c_given_w_min"].startswith("0.886792")
    assert keys["p_o_given_p_min"].startswith("0.936170")
    assert keys["symmetric_guess_min"].startswith("0.936170")
    assert abs(float(keys["p_c_given_w_min"]) - 0.8867924528) <= 1e-9


def test_bounds_undefined(capsys):
    code, _ = run_cli("bounds", "--v", "0", "--alpha", "0")
    assert code == 4
    assert "undefined bound" in capsys.readouterr().err


def test_bounds_bad_input():
    assert run_cli("bounds", "--v", "1.5", "--alpha", "0.1")[0] == 2


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_simulate_then_analyze(tmp_path, small_config):
    log = tmp_path / "events.csv"
    code, out = run_cli("simulate", "--config", str(small_config), "--out", str(log))
    assert code == 0
    assert parse_report(out)["pulses"] == str(40000 + 24 * 2000)
    fringe, fig = tmp_path / "fringe.csv", tmp_path / "fringe.png"
    code, out = run_cli("analyze", "--in", str(log), "--qrng-predictability", "0.52",
                        "--fringe-out", str(fringe), "--figure", str(fig))
    assert code == 0
    keys = parse_report(out)
    assert keys["verdict"] == "RequiresWaveAndParticle_or_Leakage"
    for k in ("V", "V_err", "alpha", "alpha_err", "p_c_given_w_min", "p_o_given_p_min", "symmetric_guess_min"):
        float(keys[k])
    assert "QRNG predictability 0.520" in out
    assert fig.stat().st_size > 0
    rows = list(csv.reader(fringe.open()))
    assert rows[0] == ["phase_rad", "gates", "counts1", "rate1"] and len(rows) == 25


def test_analyze_minmax(tmp_path, small_config):
    log = tmp_path / "events.csv"
    run_cli("simulate", "--config", str(small_config), "--out", str(log))
    code, out = run_cli("analyze", "--in", str(log), "--method", "minmax")
    assert code == 0
    assert "MinMax" in out


def test_simulate_byte_identical(tmp_path, small_config):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli("simulate", "--config", str(small_config), "--out", str(a))
    run_cli("simulate", "--config", str(small_config), "--out", str(b), "--workers", "2")
    assert a.read_bytes() == b.read_bytes()


def test_simulate_seed_override(tmp_path, small_config):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli("simulate", "--config", str(small_config), "--out", str(a))
    code, out = run_cli("simulate", "--config", str(small_config), "--out", str(b), "--seed", "10")
    assert parse_report(out)["seed"] == "10"
    assert a.read_bytes() != b.read_bytes()


def test_config_error_exit_code(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("mode = pow\n")
    code, _ = run_cli("simulate", "--config", str(bad), "--out", str(tmp_path / "x.csv"))
    assert code == 2


def test_io_error_exit_codes(tmp_path):
    assert run_cli("analyze", "--in", str(tmp_path / "missing.csv"))[0] == 3
    junk = tmp_path / "junk.csv"
    junk.write_text("not,a,log\n")
    assert run_cli("analyze", "--in", str(junk))[0] == 3
    assert run_cli("predictability", "--in", str(junk))[0] == 3


def test_analyze_insufficient_counts(tmp_path):
    log = tmp_path / "empty.csv"
    log.write_text("pulse_id,config,phase_rad,behavior,d1,d2,t_entry_ns,t_choice_ns\n")
    assert run_cli("analyze", "--in", str(log))[0] == 4


def test_causality_command():
    code, out = run_cli("causality")
    assert code == 0
    assert "required influence speed = 4.00 c" in out
    keys = parse_report(out)
    assert 3.9 <= float(keys["required_speed_c"]) <= 4.1
    assert keys["spacelike"] == "1"


def test_causality_with_config(tmp_path):
    cfg = tmp_path / "g.cfg"
    cfg.write_text("geometry.switch_time_ns = 160\n")
    code, out = run_cli("causality", "--config", str(cfg))
    assert abs(float(parse_report(out)["required_speed_c"]) - 1.0006922856) <= 1e-9


def test_region_command(tmp_path):
    out_csv, fig = tmp_path / "region.csv", tmp_path / "region.png"
    code, out = run_cli("region", "--n", "101", "--out", str(out_csv), "--figure", str(fig))
    assert code == 0
    assert parse_report(out)["compatible_points"] == "5151"
    rows = list(csv.DictReader(out_csv.open()))
    grid = [r for r in rows if r["kind"] == "grid"]
    assert len(grid) == 10201
    assert sum(int(r["compatible"]) for r in grid) == 5151
    exp = [r for r in rows if r["kind"] == "experiment"]
    assert len(exp) == 1 and float(exp[0]["V"]) == 0.94 and exp[0]["compatible"] == "0"
    assert fig.read_bytes()[:4] == b"\x89PNG"


def test_predictability_command(tmp_path):
    cfg = tmp_path / "q.cfg"
    cfg.write_text("pulses_open = 100000\npulses_closed_per_phase = 0\nqrng.persistence = 0.52\nseed = 4\n")
    log = tmp_path / "q.csv"
    run_cli("simulate", "--config", str(cfg), "--out", str(log))
    code, out = run_cli("predictability", "--in", str(log))
    keys = parse_report(out)
    assert code == 0
    assert abs(float(keys["qrng_predictability"]) - 0.52) <= 0.01
    assert keys["best_predictor"] == "RepeatLast"
    assert "model-defined" in out


def test_report_keys_unique_and_parseable():
    code, out = run_cli("bounds", "--v", "0.5", "--alpha", "0.2")
    lines = [l for l in out.splitlines() if "=" in l and " " not in l]
    assert len(lines) == len(parse_report(out)) == 3
