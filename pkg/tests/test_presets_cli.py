"""Preset definitions, the JSON spec format, and the command-line interface."""

import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from quatstbc.cli import main, parse_symbol
from quatstbc.presets import CodeSpec, Constellation, PRESETS, preset

ALL_NAMES = ["alamouti-na", "golden", "golden-na-1", "golden-na-2", "zeta8", "zeta3",
             "mb-8.4", "mb-8.5", "mb-8.6", "four-9.2", "four-9.2bis", "four-9.3"]


def test_preset_catalogue():
    assert sorted(PRESETS) == sorted(ALL_NAMES)
    assert not preset("golden").algebra().nonassociative
    for name in ALL_NAMES:
        if name != "golden":
            assert preset(name).algebra().nonassociative, name
    with pytest.raises(ValueError):
        preset("nope")


def test_preset_b_has_unit_modulus_where_claimed():
    for name in ("alamouti-na", "golden", "golden-na-1", "golden-na-2", "zeta8", "zeta3",
                 "mb-8.4", "mb-8.5", "mb-8.6", "four-9.3"):
        assert preset(name).b.abs_sq() == 1, name


def test_preset_nvd_fractions_consistent():
    for name in ALL_NAMES:
        code = preset(name)
        bn, bd = code.nvd_pair()
        assert bn / bd == code.b, name


def test_round_trip_all_presets():
    for name in ALL_NAMES:
        code = preset(name)
        again = CodeSpec.loads(code.dumps())
        assert again == code, name


def test_spec_parse_rejects_floats():
    code = preset("zeta8")
    obj = code.to_json()
    obj["b"][0] = 0.5
    with pytest.raises(ValueError):
        CodeSpec.from_json(obj)
    golden = preset("golden").dumps()
    assert '"num": 5' in golden
    with pytest.raises(ValueError):
        CodeSpec.loads(golden.replace('"num": 5', '"num": 5.0'))


def test_spec_parse_missing_field():
    with pytest.raises(ValueError):
        CodeSpec.from_json({"name": "x"})


def test_constellation_values():
    box = Constellation("box", 1)
    assert box.values(False) == [(-1, 0), (0, 0), (1, 0)]
    assert len(box.values(True)) == 9
    assert (0, 0) not in Constellation("box", 1, include_zero=False).values(True)
    qam = Constellation("qam", 4)
    assert sorted(qam.values(True)) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    assert qam.values(False) == [(-1, 0), (1, 0)]
    assert len(Constellation("qam", 16).values(True)) == 16
    with pytest.raises(ValueError):
        Constellation("qam", 8).values(True)
    with pytest.raises(ValueError):
        Constellation("hex", 4)


def test_symbol_domain_enforced():
    code = preset("alamouti-na")            # rational symbols only
    with pytest.raises(ValueError):
        code.codeword([(1, 1), (0, 0), (0, 0), (0, 0)])
    gold = preset("golden")
    gold.codeword([(1, 1), (0, 0), (0, 0), (0, 0)])   # Gaussian fine here


def test_parse_symbol():
    assert parse_symbol("3") == (3, 0)
    assert parse_symbol("-2") == (-2, 0)
    assert parse_symbol("1+1i") == (1, 1)
    assert parse_symbol("2-1j") == (2, -1)
    assert parse_symbol("i") == (0, 1)
    assert parse_symbol("-i") == (0, -1)
    assert parse_symbol("+4i") == (0, 4)
    with pytest.raises(ValueError):
        parse_symbol("x")
    with pytest.raises(ValueError):
        parse_symbol("")


def test_cli_presets_and_nt(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    for name in ALL_NAMES:
        assert name in out

    assert main(["nt", "reldisc", "--m", "5"]) == 0
    assert json.loads(capsys.readouterr().out)["rel_disc_over_Qi"] == 5
    assert main(["nt", "h1", "--qi-ext", "6"]) == 0
    assert json.loads(capsys.readouterr().out)["h_is_one"] is False
    assert main(["nt", "unitrank", "--r", "2", "--s", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["unit_rank"] == 1
    assert main(["nt", "reldisc", "--m", "12"]) == 2   # not square-free
    capsys.readouterr()


def test_cli_build_golden(capsys):
    assert main(["build", "--preset", "golden", "--symbols", "1,0,0,0", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["shaping_inv_sqrt"] == 5
    # top-left is alpha = 1 + i - i theta; embedded value alpha/sqrt(5)
    alpha = complex(1, 1) - 1j * complex((1 + 5 ** 0.5) / 2)
    got = complex(*obj["float"][0][0])
    assert abs(got - alpha / 5 ** 0.5) < 1e-12


def test_cli_build_bad_symbols(capsys):
    assert main(["build", "--preset", "golden", "--symbols", "1,0,zz,0"]) == 2
    capsys.readouterr()


def test_cli_check_shaping(capsys):
    assert main(["check", "--preset", "zeta8", "--shaping"]) == 0
    out = capsys.readouterr().out
    assert "G/sqrt(2) dev" in out
    assert main(["check", "--preset", "zeta3", "--shaping", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["shaping"]["g_scaled_dev"] > 0.1


def test_cli_check_mindet_golden(capsys):
    assert main(["check", "--preset", "golden", "--mindet", "--L", "2"]) == 0
    out = capsys.readouterr().out
    assert "1/5" in out


def test_cli_check_nvd_failure_exit_code(tmp_path, capsys):
    # a spec whose declared fraction disagrees with b must fail the check
    code = preset("alamouti-na")
    obj = code.to_json()
    obj["nvd_fraction"] = [[{"num": 0}, {"num": 2}], [{"num": 1}]]   # 2i/1 != i
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    assert main(["check", "--spec", str(path), "--nvd", "--L", "1"]) == 1
    capsys.readouterr()


def test_cli_malformed_spec_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"name": "x", "shape": "2x2"')
    with pytest.raises(SystemExit) as exc:
        main(["check", "--spec", str(path), "--all"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_cli_simulate_deterministic(tmp_path):
    args = ["simulate", "--preset", "alamouti-na", "--qam", "4", "--snr", "0,8",
            "--trials", "50", "--seed", "9"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    header = out1.read_text().splitlines()[0]
    assert header == "snr_db,trials,errors,cer,ci_low,ci_high,code_name"


def test_cli_entry_point_installed():
    proc = subprocess.run([sys.executable, "-m", "quatstbc.cli", "presets"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "golden" in proc.stdout


def test_zeta8_codeword_display_form():
    # [[u0 + z w0, z(u1 - z w1)], [u1 + z w1, u0 - z w0]] with z = zeta_8
    code = preset("zeta8")
    tw = code.tower
    z = tw.elem(code.basis_u1)
    syms = [(1, 2), (0, -1), (3, 0), (1, 1)]
    u0, w0, u1, w1 = (code.symbol_elem(s) for s in syms)
    cw = code.codeword(syms)
    assert cw.entries == ((u0 + z * w0, z * (u1 - z * w1)),
                          (u1 + z * w1, u0 - z * w0))
    assert cw.shaping_n == 2


def test_zeta3_codeword_display_form():
    # sigma(zeta_3) is the complex conjugate cube root:
    # [[u0 + z w0, z(u1 + conj(z) w1)], [u1 + z w1, u0 + conj(z) w0]]
    code = preset("zeta3")
    tw = code.tower
    z = tw.elem(code.basis_u1)
    zbar = z.galois_conj()
    assert zbar == z.cc()
    syms = [(1, 0), (0, 1), (-1, 1), (2, 0)]
    u0, w0, u1, w1 = (code.symbol_elem(s) for s in syms)
    cw = code.codeword(syms)
    assert cw.entries == ((u0 + z * w0, z * (u1 + zbar * w1)),
                          (u1 + z * w1, u0 + zbar * w0))


def test_mb_84_block_display_form():
    # Y = [X | sigma(X)] with the ideal restriction on both halves:
    # [[a(c+dt), b sa(e+f st), sa(c+dt), sb a(e+ft)],
    #  [a(e+ft), sa(c+d st),  sa(e+f st), a(c+dt)]]
    code = preset("mb-8.4")
    tw = code.tower
    theta = tw.elem(code.basis_u1)
    alpha = tw.elem(code.ideal_alpha)
    b = code.b
    st, sa, sb = theta.galois_conj(), alpha.galois_conj(), b.galois_conj()
    syms = [(1, 1), (0, 2), (-1, 0), (1, -1)]
    c, d, e, f = (code.symbol_elem(s) for s in syms)
    cw = code.codeword(syms)
    assert cw.shape == "2x4" and cw.shaping_n == 5
    assert cw.entries[0] == (alpha * (c + d * theta), b * sa * (e + f * st),
                             sa * (c + d * st), sb * alpha * (e + f * theta))
    assert cw.entries[1] == (alpha * (e + f * theta), sa * (c + d * st),
                             sa * (e + f * st), alpha * (c + d * theta))


def test_codespec_rejects_degenerate_basis():
    with pytest.raises(ValueError):
        CodeSpec(name="bad", tower=preset("alamouti-na").tower, b_coords=(0, 1),
                 shape="2x2", basis_u1=(1, 0))      # u1 = 1 lies inside F
    with pytest.raises(ValueError):
        CodeSpec(name="bad2", tower=preset("golden").tower,
                 b_coords=(0, 1, 0, 0), shape="2x2",
                 basis_u1=(F(1, 2), 0, F(1, 2), 0), ideal_alpha=(0, 0, 0, 0))


def test_cli_det_census(tmp_path, capsys):
    out = tmp_path / "census.csv"
    assert main(["check", "--preset", "alamouti-na", "--mindet", "--L", "1",
                 "--det-census", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "c,d,e,f,abs_det_sq"
    assert len(lines) == 81
    capsys.readouterr()
