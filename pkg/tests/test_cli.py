import json
import subprocess
import sys

from proxysim.cli import main


def _gen_args(out, objects=1, requests=5, alpha=0.5, session=2, seed=7):
    return ["gen", "--objects", str(objects), "--requests", str(requests),
            "--alpha", str(alpha), "--session", str(session),
            "--seed", str(seed), "--out", str(out)]


def test_gen_single_object_trace(tmp_path):
    out = tmp_path / "t.trace"
    assert main(_gen_args(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("#n_objects=1")
    assert lines[1:] == ["1"] * 5


def test_gen_subprocess_end_to_end(tmp_path):
    # one real process round-trip; everything else runs in-process
    out = tmp_path / "t.trace"
    proc = subprocess.run(
        [sys.executable, "-m", "proxysim"] + _gen_args(out),
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "wrote" in proc.stdout
    assert out.read_text().splitlines()[1:] == ["1"] * 5


def test_gen_missing_out_flag(tmp_path, capsys):
    args = _gen_args(tmp_path / "t.trace")
    del args[args.index("--out"):args.index("--out") + 2]
    assert main(args) == 2
    assert "--out is required" in capsys.readouterr().err


def test_gen_deterministic_reruns(tmp_path):
    a, b = tmp_path / "a.trace", tmp_path / "b.trace"
    assert main(_gen_args(a, objects=30, requests=400, alpha=0.9)) == 0
    assert main(_gen_args(b, objects=30, requests=400, alpha=0.9)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_run_trace_hit_ratio(tmp_path, capsys):
    trace = tmp_path / "t.trace"
    assert main(_gen_args(trace)) == 0
    out_dir = tmp_path / "run"
    assert main(["run", "--trace", str(trace), "--capacity", "1",
                 "--seed", "3", "--out-dir", str(out_dir)]) == 0
    captured = capsys.readouterr().out
    assert "hit_ratio=0.800000" in captured
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["totals"]["hit_ratio"] == 0.8
    assert summary["totals"]["total_misses"] == 1
    assert (out_dir / "report.csv").exists()


def test_run_generation_flags(tmp_path):
    out_dir = tmp_path / "run"
    assert main(["run", "--objects", "40", "--requests", "2000",
                 "--alpha", "0.75", "--capacity", "8", "--seed", "21",
                 "--out-dir", str(out_dir)]) == 0
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["totals"]["total_requests"] == 2000
    assert summary["config"]["policy"] == "session_lfu"


def test_run_unknown_policy(tmp_path, capsys):
    rc = main(["run", "--objects", "5", "--requests", "10", "--alpha", "0.5",
               "--capacity", "2", "--seed", "1", "--policy", "nosuch",
               "--out-dir", str(tmp_path / "x")])
    assert rc == 2
    assert "invalid choice" in capsys.readouterr().err


def test_run_zero_k_zeroes_bandwidth(tmp_path):
    out_dir = tmp_path / "run"
    assert main(["run", "--objects", "10", "--requests", "500",
                 "--alpha", "0.5", "--capacity", "3", "--seed", "5",
                 "--k", "0", "--out-dir", str(out_dir)]) == 0
    rows = (out_dir / "report.csv").read_text().splitlines()[1:]
    assert all(float(row.split(",")[5]) == 0.0 for row in rows)


def test_run_unreadable_trace_writes_nothing(tmp_path):
    out_dir = tmp_path / "run"
    rc = main(["run", "--trace", str(tmp_path / "missing.trace"),
               "--capacity", "1", "--seed", "3", "--out-dir", str(out_dir)])
    assert rc == 1
    assert not (out_dir / "report.csv").exists()
    assert not (out_dir / "summary.json").exists()


def test_run_compare_table(tmp_path):
    out_dir = tmp_path / "run"
    assert main(["run", "--objects", "50", "--requests", "2000",
                 "--alpha", "0.98", "--capacity", "50", "--seed", "2",
                 "--compare", "--out-dir", str(out_dir)]) == 0
    lines = (out_dir / "comparison.csv").read_text().splitlines()
    assert lines[0].startswith("capacity,simulated_hit_ratio,top_c_mass")
    assert len(lines) == 2


def test_sweep_explicit_alphas(tmp_path):
    out_dir = tmp_path / "swp"
    assert main(["sweep", "--objects", "60", "--requests", "600",
                 "--alphas", "0.98,0.64", "--capacities", "6",
                 "--session", "100", "--seed", "19",
                 "--out-dir", str(out_dir)]) == 0
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert len(manifest["outputs"]) == 2
    assert [o["alpha"] for o in manifest["outputs"]] == [0.98, 0.64]
    for entry in manifest["outputs"]:
        assert (out_dir / entry["report_csv"]).exists()
        assert (out_dir / entry["summary_json"]).exists()


def test_sweep_default_alphas_grid(tmp_path):
    out_dir = tmp_path / "swp"
    assert main(["sweep", "--objects", "60", "--requests", "300",
                 "--capacities", "6", "--session", "100", "--seed", "19",
                 "--out-dir", str(out_dir)]) == 0
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert [o["alpha"] for o in manifest["outputs"]] == [
        0.98, 0.75, 0.64, 0.51, 0.41, 0.31]
    assert len(list(out_dir.glob("report_*.csv"))) == 6


def test_sweep_reruns_byte_identical(tmp_path):
    dirs = [tmp_path / "s1", tmp_path / "s2"]
    for d in dirs:
        assert main(["sweep", "--objects", "40", "--requests", "400",
                     "--alphas", "0.9,0.4", "--capacities", "4,8",
                     "--session", "80", "--seed", "77",
                     "--out-dir", str(d)]) == 0
    names = sorted(p.name for p in dirs[0].iterdir())
    assert names == sorted(p.name for p in dirs[1].iterdir())
    for name in names:
        assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()


def test_estimate_exact_summary(tmp_path, capsys):
    out = tmp_path / "model.csv"
    assert main(["estimate", "--objects", "3", "--alpha", "1",
                 "--capacity", "2", "--mode", "exact", "--seed", "4",
                 "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "aggregate_bandwidth=" in printed
    summary = out.read_text().splitlines()[-1]
    mass = float(summary.split("top_c_mass=")[1].split()[0])
    assert abs(mass - 9.0 / 11.0) < 1e-10


def test_estimate_zero_k(tmp_path, capsys):
    out = tmp_path / "model.csv"
    assert main(["estimate", "--objects", "10", "--alpha", "0.5",
                 "--capacity", "4", "--k", "0", "--seed", "4",
                 "--out", str(out)]) == 0
    assert "aggregate_bandwidth=0.000000e+00" in capsys.readouterr().out


def test_estimate_paper_mode_singular_alpha(tmp_path, capsys):
    out = tmp_path / "model.csv"
    rc = main(["estimate", "--objects", "10", "--alpha", "1",
               "--capacity", "4", "--mode", "paper", "--seed", "4",
               "--out", str(out)])
    assert rc == 1
    assert "singular" in capsys.readouterr().err
    assert not out.exists()  # failed command leaves no partial file


def test_estimate_corrected_mode(tmp_path, capsys):
    out = tmp_path / "model.csv"
    assert main(["estimate", "--objects", "100", "--alpha", "0.7",
                 "--capacity", "10", "--mode", "corrected", "--seed", "4",
                 "--out", str(out)]) == 0
    assert "top_c_mass_corrected=" in capsys.readouterr().out


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "gen.cfg"
    cfg.write_text("objects=4\nrequests=6\nalpha=0.5\nseed=9\n"
                   f"out={tmp_path / 'c.trace'}\nsession=3\n")
    assert main(["gen", "--config", str(cfg)]) == 0
    header = (tmp_path / "c.trace").read_text().splitlines()[0]
    assert header == "#n_objects=4 session=3"


def test_config_file_flags_win(tmp_path):
    cfg = tmp_path / "gen.cfg"
    cfg.write_text("objects=4\nrequests=6\nalpha=0.5\nseed=9\n"
                   f"out={tmp_path / 'c.trace'}\n")
    override = tmp_path / "o.trace"
    assert main(["gen", "--config", str(cfg), "--objects", "2",
                 "--out", str(override)]) == 0
    assert override.read_text().splitlines()[0].startswith("#n_objects=2")


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "gen.cfg"
    cfg.write_text("bogus=1\n")
    rc = main(["gen", "--config", str(cfg), "--objects", "2",
               "--requests", "3", "--alpha", "0.5", "--seed", "1",
               "--out", str(tmp_path / "z.trace")])
    assert rc == 1
    assert "unknown config key" in capsys.readouterr().err


def test_usage_errors(tmp_path, capsys):
    assert main([]) == 2
    assert main(["bogus"]) == 2
    capsys.readouterr()
    assert main(["--help"]) == 0
    assert "gen" in capsys.readouterr().out
    assert main(["estimate", "--help"]) == 0
    helptext = capsys.readouterr().out
    assert "kb" in helptext and "ms" in helptext
