import json
import re
from pathlib import Path

from topfree.cli import main

DEMO_CONFIG = str(Path(__file__).resolve().parent.parent / "configs" / "groups-demo.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_reduce_forced_cancellation(capsys):
    code, out, _ = run(capsys, "reduce", "z2:s z3:t z3:t z3:t z2:s")
    assert code == 0
    assert "ε" in out and "length 0" in out


def test_reduce_already_reduced(capsys):
    code, out, _ = run(capsys, "reduce", "q:1/2 z2:s q:-1/2")
    assert code == 0 and "length 3" in out


def test_reduce_malformed_token(capsys):
    code, _, err = run(capsys, "reduce", "q:one")
    assert code == 2 and "token 0" in err


def test_reduce_with_config_file(capsys):
    code, out, _ = run(capsys, "--groups", DEMO_CONFIG, "reduce", "z3:t z3:t2")
    assert code == 0 and "length 0" in out


def test_separate_writes_certificate(capsys, tmp_path):
    out_path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "separate", "q:3/2 z2:s q:-3/2", "--out", str(out_path))
    assert code == 0
    assert "away q interval(center=3/2, radius=3/4) punctured" in out
    assert out_path.exists()


def test_separate_identity_word(capsys):
    code, _, err = run(capsys, "separate", "z2:s z2:s")
    assert code == 1 and "identity" in err


def test_separate_cap(capsys):
    code, _, err = run(capsys, "separate", " ".join(["q:1"] * 20))
    assert code == 3 and "cap" in err


def test_check_round_trip_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "separate", "s3:r q2:4 1 z3:t", "--out", str(a))
    run(capsys, "separate", "s3:r q2:4 1 z3:t", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "check", str(a), "-k", "400", "--seed", "42")
    assert code == 0 and "0 violations" in out
    again = run(capsys, "check", str(a), "-k", "400", "--seed", "42")
    strip_timing = lambda s: re.sub(r"[0-9.]+s", "", s)
    assert (code, strip_timing(out)) == (again[0], strip_timing(again[1]))


def test_check_exhaustive_on_interval_certificate(capsys, tmp_path):
    path = tmp_path / "cert.json"
    run(capsys, "separate", "q:3/2", "--out", str(path))
    code, _, err = run(capsys, "check", str(path), "--exhaustive")
    assert code == 2 and "infinite" in err


def test_check_tampered_certificate(capsys, tmp_path):
    path = tmp_path / "cert.json"
    run(capsys, "separate", "q:3/2 z2:s q:-3/2", "--out", str(path))
    data = json.loads(path.read_text())
    data["neighborhoods"][0]["punctured"] = False
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(data))
    code, out, _ = run(capsys, "check", str(tampered))
    assert code == 1 and "punctured" in out


def test_check_digest_mismatch(capsys, tmp_path):
    path = tmp_path / "cert.json"
    run(capsys, "separate", "z2:s", "--out", str(path))
    data = json.loads(path.read_text())
    data["config_digest"] = "f" * 64
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "configuration" in err


def test_machine_format_output(capsys):
    code, out, _ = run(capsys, "--format", "machine", "reduce", "z3:t z3:t")
    assert code == 0
    assert json.loads(out) == {"reduced": "z3:t2", "length": 1}


def test_proptest_text_and_exit(capsys):
    code, out, _ = run(capsys, "proptest", "bounds", "-k", "100", "--seed", "5")
    assert code == 0 and "bounds: PASS" in out


def test_proptest_machine(capsys):
    code, out, _ = run(
        capsys, "--format", "machine", "proptest", "tamper", "-k", "8", "--seed", "1"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] and payload["suites"][0]["checked"] == 8


def test_proptest_collapse_len4(capsys):
    code, out, _ = run(capsys, "proptest", "collapse", "--exhaustive-len", "4")
    assert code == 0 and "collapse: PASS" in out


def test_x0check_pipeline(capsys, tmp_path):
    witnesses = tmp_path / "witnesses.txt"
    witnesses.write_text("z3:t\nq:5/2 z2:s\n")
    excluded = tmp_path / "excluded.txt"
    excluded.write_text("1\nz2:s\n")
    out_dir = tmp_path / "certs"
    code, out, _ = run(
        capsys,
        "x0check",
        "--witnesses",
        str(witnesses),
        "--excluded",
        str(excluded),
        "--out",
        str(out_dir),
        "-k",
        "200",
    )
    assert code == 0 and "ok" in out
    assert (out_dir / "certificate-000.json").exists()


def test_x0check_witness_in_excluded(capsys, tmp_path):
    witnesses = tmp_path / "w.txt"
    witnesses.write_text("z2:s\n")
    excluded = tmp_path / "e.txt"
    excluded.write_text("z2:s\n")
    code, _, err = run(capsys, "x0check", "--witnesses", str(witnesses), "--excluded", str(excluded))
    assert code == 1 and "excluded" in err


def test_x0check_empty_excluded(capsys, tmp_path):
    witnesses = tmp_path / "w.txt"
    witnesses.write_text("z3:t\n")
    excluded = tmp_path / "e.txt"
    excluded.write_text("# nothing\n")
    code, out, _ = run(capsys, "x0check", "--witnesses", str(witnesses), "--excluded", str(excluded))
    assert code == 0 and "success" in out


def test_unknown_config_path(capsys):
    code, _, err = run(capsys, "--groups", "/nonexistent/groups.json", "reduce", "1")
    assert code == 2
