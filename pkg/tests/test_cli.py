import json

import pytest

from prolate.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_width_fig1_record(capsys):
    code, out, _ = run(capsys, "width", "--n", "1000", "--w", "0.125", "--eps", "1e-3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,W,eps,width,thm1,thm2,eq2,eq3,eq6"
    fields = lines[1].split(",")
    assert fields[3:] == ["12", "14", "23", "1806", "1000", "185"]


def test_eigs_order_one(capsys):
    code, out, _ = run(capsys, "eigs", "--n", "1", "--w", "0.1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,lambda,lower,upper,in_envelope"
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[0] == "0"
    assert float(fields[1]) == pytest.approx(0.2, abs=1e-15)


def test_eigs_fig1_plunge_row(capsys):
    code, out, _ = run(capsys, "eigs", "--n", "1000", "--w", "0.125")
    assert code == 0
    rows = {line.split(",")[0]: line.split(",") for line in out.strip().splitlines()[1:]}
    assert "243" in rows
    assert round(float(rows["243"][1]), 4) == 0.9997
    assert all(fields[4] == "true" for fields in rows.values())


def test_eigs_methods_agree(capsys):
    code, out_d, _ = run(
        capsys, "eigs", "--n", "256", "--w", "0.1", "--method", "dense", "--krange", "40:60"
    )
    assert code == 0
    code, out_t, _ = run(
        capsys, "eigs", "--n", "256", "--w", "0.1", "--method", "trid", "--krange", "40:60"
    )
    assert code == 0
    lam_d = [float(line.split(",")[1]) for line in out_d.strip().splitlines()[1:]]
    lam_t = [float(line.split(",")[1]) for line in out_t.strip().splitlines()[1:]]
    assert max(abs(a - b) for a, b in zip(lam_d, lam_t)) <= 1e-10


def test_bounds_no_spectrum(capsys):
    code, out, _ = run(
        capsys, "bounds", "--n", "2", "--w", "0.25", "--eps", "0.25", "--format", "json"
    )
    assert code == 0
    record = json.loads(out)[0]
    assert record["thm1_int"] == 2
    assert all(v is None or isinstance(v, (int, float, bool)) for v in record.values())


def test_sweep_empty_range(capsys, tmp_path):
    out_path = tmp_path / "empty.csv"
    code, _, _ = run(
        capsys, "sweep", "--mode", "figure2", "--n-min", "32", "--n-max", "16", "--out", str(out_path)
    )
    assert code == 0
    assert out_path.read_text() == "N,W,eps,width,bound_thm1,bound_thm2,gap,advisory\n"


def test_sweep_small_figure2(capsys):
    code, out, _ = run(
        capsys, "sweep", "--mode", "figure2", "--n-min", "16", "--n-max", "64",
        "--eps-list", "1e-3,1e-8",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,W,eps,width,bound_thm1,bound_thm2,gap,advisory"
    assert len(lines) == 1 + 3 * 2
    for line in lines[1:]:
        fields = line.split(",")
        width, b1 = int(fields[3]), int(fields[4])
        assert width <= b1
        assert int(fields[6]) == b1 - width


def test_sweep_jobs_deterministic(capsys):
    args = ["sweep", "--mode", "figure3", "--n", "256", "--w-points", "5", "--eps-list", "1e-3"]
    code, seq, _ = run(capsys, *args)
    assert code == 0
    code, par, _ = run(capsys, *args, "--jobs", "4")
    assert code == 0
    assert seq == par


def test_sweep_config_file(capsys, tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("mode = figure2\nn_min = 16\nn_max = 32\neps = 1e-2\n")
    code, out, _ = run(capsys, "sweep", "--config", str(cfg))
    assert code == 0
    assert len(out.strip().splitlines()) == 3


def test_pswf_matches_thm2(capsys):
    import math

    c = math.pi * 1000 * 0.125
    code, out, _ = run(capsys, "pswf", "--c", repr(c), "--eps", "1e-3")
    assert code == 0
    fields = out.strip().splitlines()[1].split(",")
    assert fields[3] == "23"


def test_pswf_proxy_widths(capsys):
    import math

    code, out, _ = run(
        capsys, "pswf", "--c", repr(math.pi * 50.0), "--eps", "1e-2", "--n", "2000",
        "--format", "json",
    )
    assert code == 0
    record = json.loads(out)[0]
    assert record["width_lo"] is not None
    assert record["width_lo"] <= record["thm3_int"]
    assert record["delta"] == pytest.approx(0.0013143955093473106, rel=1e-12)


def test_verify_displacement_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "displacement")
    assert code == 0
    summary = json.loads(out)
    assert summary["passed"] is True
    assert summary["failures"] == []


def test_verify_all_deterministic(capsys):
    code, first, _ = run(capsys, "verify", "--suite", "all", "--seed", "7")
    assert code == 0
    code, second, _ = run(capsys, "verify", "--suite", "all", "--seed", "7")
    assert code == 0
    assert first == second
    summary = json.loads(first)
    assert summary["passed"] is True
    assert summary["n_checks"] >= 25


def test_sweep_figure1_emits_eigs_table(capsys):
    code, out, _ = run(capsys, "sweep", "--mode", "figure1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,lambda,lower,upper,in_envelope"
    ks = [int(line.split(",")[0]) for line in lines[1:]]
    assert ks[0] <= 243 and ks[-1] >= 256  # covers the published plunge rows


def test_bad_parameters_exit_two(capsys):
    code, _, err = run(capsys, "width", "--n", "1000", "--w", "0.7", "--eps", "1e-3")
    assert code == 2
    assert "error" in err


def test_unknown_flag_exit_two(capsys):
    code, _, _ = run(capsys, "width", "--nope", "3")
    assert code == 2


def test_unwritable_output_exit_three(capsys, tmp_path):
    target = tmp_path / "missing" / "out.csv"
    code, _, err = run(
        capsys, "width", "--n", "64", "--w", "0.1", "--eps", "1e-2", "--out", str(target)
    )
    assert code == 3
    assert "i/o error" in err


def test_float_formatting_17_digits(capsys):
    code, out, _ = run(capsys, "eigs", "--n", "1", "--w", "0.1")
    assert code == 0
    assert out.strip().splitlines()[1].split(",")[1] == "0.20000000000000001"
