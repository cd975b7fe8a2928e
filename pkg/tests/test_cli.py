"""Command dispatch, exit codes, deterministic output, file round-trips."""

from twistcert import fixture_path
from twistcert.cli import format_certificate, parse_certificate, run
from twistcert import build_theorem2_certificate, CurveClass, SurfaceSpec


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_script_fixture_exits_zero(capsys):
    code, out, _ = invoke(capsys, "verify-script", str(fixture_path("chain_a.proof")))
    assert code == 0
    assert "ok" in out


def test_verify_script_broken_file_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad.proof"
    bad.write_text("start: c1 c2 c3\nstep 1: STAR() LR @ 1\nend: c1 c2 c3\n")
    code, out, _ = invoke(capsys, "verify-script", str(bad))
    assert code == 1
    assert "FAIL at step 1" in out


def test_det_example_output(capsys):
    code, out, _ = invoke(capsys, "det", "--word", "a1^-1 r", "--genus", "6", "--k", "0")
    assert code == 0
    assert out.strip() == "+1 (in twist subgroup)"


def test_det_rejects_inconsistent_genus(capsys):
    code, _, err = invoke(capsys, "det", "--word", "r", "--genus", "7", "--k", "0")
    assert code == 2 and "error" in err


def test_det_without_embedding_data_is_a_usage_error(capsys):
    code, _, err = invoke(capsys, "det", "--word", "r", "--genus", "7")
    assert code == 2 and "error" in err


def test_rep_check_star_word(capsys):
    code, out, _ = invoke(capsys, "rep-check", "--word", "( b a1 a2 a3 )^3 ( c1 c2 c3 )^-1")
    assert code == 0
    assert "identity: yes" in out


def test_classify_output(capsys):
    code, out, _ = invoke(capsys, "classify", "--surface", "n:8", "--curve", "nonsep:oc")
    assert code == 0
    assert "T1-nonorientable" in out
    assert "out of scope (conjectural)" in out


def test_classify_unrealizable_is_exit_two(capsys):
    code, _, err = invoke(capsys, "classify", "--surface", "o:3", "--curve", "nonsep:nc")
    assert code == 2 and "error" in err


def test_certify_out_of_scope_exits_two(capsys):
    code, _, err = invoke(capsys, "certify", "--surface", "n:8", "--curve", "nonsep:oc",
                          "--flavor", "twist", "--n", "1")
    assert code == 2
    assert "out of scope (conjectural)" in err


def test_certify_round_trip_through_files(tmp_path, capsys):
    script_path = tmp_path / "cert.proof"
    code, out, _ = invoke(capsys, "certify", "--surface", "n:7", "--curve", "sep:n2+n5",
                          "--flavor", "twist", "--n", "3",
                          "--emit-script", str(script_path))
    assert code == 0
    cert_path = tmp_path / "cert.txt"
    cert_path.write_text(out)

    code, out2, _ = invoke(capsys, "verify-cert", str(cert_path))
    assert code == 0 and "ok" in out2

    code, _, _ = invoke(capsys, "verify-script", str(script_path), "--rules", "torus+h")
    assert code == 0


def test_certify_output_is_deterministic(capsys):
    args = ("certify", "--surface", "o:3", "--curve", "nonsep", "--flavor", "extended",
            "--n", "2")
    code1, out1, _ = invoke(capsys, *args)
    code2, out2, _ = invoke(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_certify_n_range_is_ordered(capsys):
    code, out, _ = invoke(capsys, "certify", "--surface", "o:3", "--curve", "nonsep",
                          "--flavor", "extended", "--n-range=-1..1")
    assert code == 0
    rows = [line for line in out.splitlines() if line.startswith("n: ")]
    assert rows == ["n: -1", "n: 0", "n: 1"]


def test_certify_respects_the_script_limit(capsys):
    code, _, err = invoke(capsys, "certify", "--surface", "o:3", "--curve", "nonsep",
                          "--flavor", "extended", "--n", "40")
    assert code == 2 and "--max-n" in err
    code, out, _ = invoke(capsys, "certify", "--surface", "o:3", "--curve", "nonsep",
                          "--flavor", "extended", "--n", "40", "--max-n", "40")
    assert code == 0


def test_unknown_flag_is_rejected(capsys):
    code, _, _ = invoke(capsys, "det", "--word", "b", "--genus", "6", "--bogus", "1")
    assert code == 2


def test_malformed_word_never_raises(capsys):
    code, _, err = invoke(capsys, "rep-check", "--word", "( b")
    assert code == 2 and "error" in err


def test_tampered_certificate_fails_verification(tmp_path, capsys):
    cert = build_theorem2_certificate(SurfaceSpec(False, 6),
                                      CurveClass.parse("nonsep:oc"), 2)
    text = format_certificate(cert)
    tampered = text.replace("y: a1^-1 r", "y: a1^-1 r h")
    path = tmp_path / "tampered.txt"
    path.write_text(tampered)
    code, out, _ = invoke(capsys, "verify-cert", str(path))
    assert code == 1 and "FAIL" in out


def test_certificate_format_round_trip():
    cert = build_theorem2_certificate(SurfaceSpec(False, 7),
                                      CurveClass.parse("sep:n2+n5"), -2)
    parsed = parse_certificate(format_certificate(cert))
    assert parsed == cert


def test_mutated_input_files_never_crash_the_cli(tmp_path, capsys):
    """Deleting, duplicating or corrupting lines must give exit 1 or 2."""
    import random

    cert = build_theorem2_certificate(SurfaceSpec(False, 6),
                                      CurveClass.parse("nonsep:oc"), 2)
    sources = {
        "cert": format_certificate(cert).splitlines(),
        "script": fixture_path("chain_a.proof").read_text().splitlines(),
    }
    rng = random.Random(0xF022)
    for kind, lines in sources.items():
        command = "verify-cert" if kind == "cert" else "verify-script"
        for trial in range(60):
            mutated = list(lines)
            op = rng.randrange(3)
            idx = rng.randrange(len(mutated))
            if op == 0:
                del mutated[idx]
            elif op == 1:
                mutated.insert(idx, mutated[idx])
            else:
                line = mutated[idx]
                if line:
                    pos = rng.randrange(len(line))
                    line = line[:pos] + rng.choice("xyz9@(^") + line[pos + 1:]
                mutated[idx] = line
            path = tmp_path / f"{kind}_{trial}.txt"
            path.write_text("\n".join(mutated) + "\n")
            code = run([command, str(path)])
            capsys.readouterr()
            assert code in (0, 1, 2), (kind, trial, code)
