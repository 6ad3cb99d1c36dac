"""Command-line surface: flags, formats, exit codes, determinism."""

import pytest

from mandelpoly import IntPoly, cli_main, mt_poly, orbit_poly
from mandelpoly.cli import main


def test_count_exact_line(capsys):
    assert cli_main(["count", "--ell", "2", "--n", "4"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "hyp_count=6 phi=2 mis_count=12 budget=32"


def test_count_table_breakdown(capsys):
    assert cli_main(["count", "--ell", "2", "--n", "4", "--table"]) == 0
    out = capsys.readouterr().out
    assert "k=4 eta=2 hyp_count=6" in out
    assert "mis(2,4)=12" in out


def test_poly_round_trip(tmp_path, capsys):
    out = tmp_path / "p4.poly"
    assert cli_main(["poly", "--n", "4", "--out", str(out)]) == 0
    assert IntPoly.from_text(out.read_text()) == orbit_poly(4)

    assert cli_main(["poly", "--n", "1", "--ell", "2"]) == 0
    text = capsys.readouterr().out
    from mandelpoly import FamilyIndex

    assert IntPoly.from_text(text) == mt_poly(FamilyIndex(2, 1))


def test_factor_verify_and_files(tmp_path, capsys):
    code = cli_main(
        ["factor", "--ell", "2", "--n", "4", "--verify", "--out-dir", str(tmp_path)]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "h k=1 exp=3 deg=1" in out
    assert "h k=2 exp=2 deg=1" in out
    assert "h k=4 exp=2 deg=6" in out
    assert "m l=2 k=4 deg=12" in out
    assert "verify: ok" in out
    for name in ("h_1.poly", "h_2.poly", "h_4.poly", "m_2_1.poly", "m_2_2.poly", "m_2_4.poly"):
        assert (tmp_path / name).exists()
    written = IntPoly.from_text((tmp_path / "m_2_1.poly").read_text())
    assert written == IntPoly((2, 1))


def test_verify_sweep_exit_zero(capsys):
    assert cli_main(["verify", "--max-order", "6", "--jobs", "1"]) == 0
    out = capsys.readouterr().out
    assert "checked 21 indices, 0 failures" in out
    assert "l=2 n=4 ok" in out


def test_roots_csv_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli_main(["roots", "--max-order", "3", "--precision", "128", "--out", str(a)]) == 0
    assert cli_main(["roots", "--max-order", "3", "--precision", "128", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "re,im,kind,preperiod,period,residual_log2,precision_bits"
    assert len(lines) == 1 + 6  # 0, -1, three period-3 centers, -2
    assert any(",misiurewicz,2,1," in ln for ln in lines)
    assert all(ln.endswith(",128") for ln in lines[1:])


def test_plot_deterministic(tmp_path):
    args = [
        "plot", "--center=-0.75+0j", "--width", "3.0", "--pixels", "80x60",
        "--max-iter", "50", "--max-order", "2",
    ]
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    assert cli_main(args + ["--out", str(a)]) == 0
    assert cli_main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().startswith(b"P6\n80 60\n255\n")


def test_plot_png(tmp_path):
    out = tmp_path / "m.png"
    assert cli_main(["plot", "--pixels", "32", "--max-iter", "20", "--png", "--out", str(out)]) == 0
    assert out.read_bytes()[:4] == b"\x89PNG"


def test_usage_errors_exit_two(capsys):
    assert cli_main([]) == 2
    assert cli_main(["nonsense"]) == 2
    assert cli_main(["count", "--ell", "2"]) == 2  # missing --n
    assert cli_main(["plot", "--pixels", "axb", "--out", "x.ppm"]) == 2
    capsys.readouterr()


def test_bad_index_exits_two(capsys):
    assert cli_main(["count", "--ell", "-1", "--n", "4"]) == 2
    assert cli_main(["poly", "--n", "40"]) == 2  # beyond the degree cap
    err = capsys.readouterr().err
    assert "error" in err


def test_cap_override():
    assert cli_main(["poly", "--n", "8", "--cap", "8", "--out", "/dev/null"]) == 0
    assert cli_main(["poly", "--n", "9", "--cap", "8", "--out", "/dev/null"]) == 2


def test_help_exits_zero(capsys):
    assert cli_main(["--help"]) == 0
    assert cli_main(["roots", "--help"]) == 0
    capsys.readouterr()


def test_main_wrapper_raises_systemexit(monkeypatch, capsys):
    monkeypatch.setattr("sys.argv", ["mandelpoly", "count", "--ell", "0", "--n", "1"])
    with pytest.raises(SystemExit) as exc:
        main()
    assert exc.value.code == 0
    capsys.readouterr()
