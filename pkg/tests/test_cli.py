"""Command-line driver: exit codes, determinism, and fixture round trips."""

import json

import pytest

from pmpdas import cli
from pmpdas.wire import decode_fixture, encode_fixture


def run_cli(args):
    return cli.main(args)


def test_storage_report_reference_row(capsys):
    assert run_cli(["storage-report", "--entries", "64", "--group", "4"]) == 0
    out = capsys.readouterr().out
    assert "2816" in out and "176" in out and "44" in out

    assert run_cli(["storage-report", "--entries", "64", "--group", "1"]) == 0
    assert "5120" in capsys.readouterr().out


def test_storage_report_json(capsys):
    assert run_cli(["storage-report", "--entries", "64", "--group", "4",
                    "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["grouped_total_bytes"] == 2816
    assert rows[0]["amortized_bytes_per_entry"] == 44


def test_storage_report_divisibility_error(capsys):
    assert run_cli(["storage-report", "--entries", "64", "--group", "3"]) == 2
    assert "divide" in capsys.readouterr().err


def test_unknown_flags_rejected():
    with pytest.raises(SystemExit) as exc:
        run_cli(["storage-report", "--entries", "64", "--group", "4",
                 "--bogus", "1"])
    assert exc.value.code == 2


def _tiny_config(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text("rows=2\ncols=4\npeers=20\nreplication=3\n"
                    "peer_capacity=none\nsamples=8\nseeds=1-2\n"
                    "churn=0.0,0.3\nmodes=vanilla,pmp\n")
    return str(path)


def test_ablation_deterministic_and_well_formed(tmp_path):
    cfg = _tiny_config(tmp_path)
    out1, out2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    assert run_cli(["ablation", "--config", cfg, "--output", out1]) == 0
    assert run_cli(["ablation", "--config", cfg, "--output", out2]) == 0
    blob = open(out1, "rb").read()
    assert blob == open(out2, "rb").read()
    lines = blob.decode().splitlines()
    assert lines[0] == ",".join(cli.ABLATION_COLUMNS)
    assert len(lines) == 1 + 2 * 2 * 2  # modes x churn x seeds
    # churn-0 rows all report a perfect hit rate
    for line in lines[1:]:
        cells = line.split(",")
        if cells[2] == "0.0":
            assert cells[6] == "1.0"


def test_ablation_json_and_seed_override(tmp_path, monkeypatch):
    cfg = _tiny_config(tmp_path)
    out = str(tmp_path / "a.json")
    monkeypatch.setenv("PMP_SEED", "9")
    assert run_cli(["ablation", "--config", cfg, "--format", "json",
                    "--output", out]) == 0
    rows = json.loads(open(out).read())
    assert {row["seed"] for row in rows} == {9}
    monkeypatch.setenv("PMP_SEED", "bogus")
    assert run_cli(["ablation", "--config", cfg, "--output", out]) == 2


def test_ablation_bad_config(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("rows=two\n")
    assert run_cli(["ablation", "--config", str(bad)]) == 2
    assert "bad config" in capsys.readouterr().err


def test_fixture_prove_verify_round_trip(tmp_path, capsys):
    fx = str(tmp_path / "fx.bin")
    fxp = str(tmp_path / "fxp.bin")
    assert run_cli(["gen-fixture", "--output", fx,
                    "--rows", "2", "--cols", "4"]) == 0
    assert run_cli(["prove", "--fixture", fx, "--output", fxp,
                    "--group", "4"]) == 0
    assert run_cli(["verify", "--fixture", fxp]) == 0
    assert "verified 4 groups" in capsys.readouterr().out


def test_verify_detects_tampered_scalar(tmp_path, capsys):
    fx, fxp = str(tmp_path / "fx.bin"), str(tmp_path / "fxp.bin")
    run_cli(["gen-fixture", "--output", fx, "--rows", "2", "--cols", "4"])
    run_cli(["prove", "--fixture", fx, "--output", fxp, "--group", "4"])
    blob = bytearray(open(fxp, "rb").read())
    blob[-5] ^= 0x01  # a byte inside the last proof object's scalars
    tampered = str(tmp_path / "tampered.bin")
    open(tampered, "wb").write(bytes(blob))
    assert run_cli(["verify", "--fixture", tampered]) == 1
    assert "band 1, group 1" in capsys.readouterr().err


def test_verify_detects_permuted_header_commitments(tmp_path, capsys):
    fx, fxp = str(tmp_path / "fx.bin"), str(tmp_path / "fxp.bin")
    run_cli(["gen-fixture", "--output", fx, "--rows", "2", "--cols", "4"])
    run_cli(["prove", "--fixture", fx, "--output", fxp, "--group", "4"])
    sections = decode_fixture(open(fxp, "rb").read())
    swapped = []
    for tag, payload in sections:
        if tag == "GRID":
            # the trailing 2 x 48 bytes are the row commitments; swap them
            body, c0, c1 = payload[:-96], payload[-96:-48], payload[-48:]
            payload = body + c1 + c0
        swapped.append((tag, payload))
    permuted = str(tmp_path / "permuted.bin")
    open(permuted, "wb").write(encode_fixture(swapped))
    assert run_cli(["verify", "--fixture", permuted]) == 1
    assert "verification failed" in capsys.readouterr().err


def test_verify_missing_sections(tmp_path, capsys):
    path = tmp_path / "empty.bin"
    path.write_bytes(encode_fixture([]))
    assert run_cli(["verify", "--fixture", str(path)]) == 2
    assert run_cli(["verify", "--fixture", str(tmp_path / "nope.bin")]) == 2
