import subprocess
import sys

import pytest

from absorbset.cli import run
from absorbset.construction import ConstructionParams, generate
from absorbset.tournament import parse, serialize


def lines(outcome):
    return dict(_split(line) for line in outcome.stdout.splitlines() if line.strip())


def _split(line):
    # fixed-column rows: label padded to 34 characters
    return line[:34].strip(), line[34:].strip()


def test_gen_small(tmp_path):
    res = run(["gen", "--n", "3", "--m", "1", "--seed", "1"])
    assert res.exit_code == 0
    t, layout = parse(res.stdout)
    assert t.vertex_count == 2 and len(list(t.arcs())) == 1 and layout.p == 2
    out = tmp_path / "x.act"
    assert run(["gen", "--n", "3", "--m", "1", "--seed", "1", "-o", str(out)]).exit_code == 0
    assert out.read_text() == res.stdout


def test_gen_errors():
    assert run(["gen", "--n", "0", "--m", "1"]).exit_code == 1
    assert run(["gen", "--n", "5", "--m", "10", "--max-vertices", "10"]).exit_code == 3
    assert run(["gen", "--n", "3"]).exit_code == 1


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("m", range(1, 6))
def test_gen_validate_solve_pipeline(tmp_path, n, m):
    path = tmp_path / "i.act"
    assert run(["gen", "--n", str(n), "--m", str(m), "--seed", "3", "-o", str(path)]).exit_code == 0
    v = run(["validate", str(path)])
    assert v.exit_code == 0 and "construction" in v.stdout
    s = run(["solve", str(path)])
    assert s.exit_code == 0
    assert lines(s)["proved optimal"] == "yes"


def test_validate_reports_violation(tmp_path):
    t, layout = generate(ConstructionParams(3, 1, 1))
    text = serialize(t, layout).replace("arc 1 0 1", "arc 1 0 3")
    path = tmp_path / "bad.act"
    path.write_text(text)
    res = run(["validate", str(path)])
    assert res.exit_code == 4 and "(b)" in res.stdout


def test_validate_plain_tournament(tmp_path):
    path = tmp_path / "plain.act"
    path.write_text("act 1\ncolours 1\nvertices 2\narc 0 1 1\n")
    res = run(["validate", str(path)])
    assert res.exit_code == 0 and "no bag metadata" in res.stdout


def test_input_errors(tmp_path):
    path = tmp_path / "broken.act"
    path.write_text("act 1\ncolours 1\nvertices 3\narc 0 1 1\n")
    res = run(["validate", str(path)])
    assert res.exit_code == 2 and "expected 3 arcs" in res.stderr
    assert run(["solve", str(tmp_path / "missing.act")]).exit_code == 2


def test_absorb_and_check(tmp_path):
    path = tmp_path / "rainbow.act"
    path.write_text("act 1\ncolours 3\nvertices 3\narc 0 1 1\narc 1 2 2\narc 2 0 3\n")
    res = run(["absorb", str(path), "--stats", "--colour", "1"])
    assert res.exit_code == 0
    assert lines(res)["absorbed pairs"] == "3"
    assert "coverage size histogram" in res.stdout
    assert run(["check", str(path), "-S", "1,2"]).exit_code == 0
    assert run(["check", str(path), "-S", "1"]).exit_code == 4
    assert run(["check", str(path), "-S", "1,x"]).exit_code == 1
    assert run(["check", str(path), "-S", "7"]).exit_code == 2
    assert run(["absorb", str(path), "--colour", "9"]).exit_code == 1


def test_solve_brute_and_budget(tmp_path):
    path = tmp_path / "i.act"
    run(["gen", "--n", "5", "--m", "3", "--seed", "4", "-o", str(path)])
    exact = lines(run(["solve", str(path)]))
    brute = lines(run(["solve", str(path), "--brute"]))
    assert exact["optimum"] == brute["optimum"] == "2"
    res = run(["solve", str(path), "--budget", "1"])
    assert res.exit_code == 3 and lines(res)["proved optimal"] == "no"
    big = tmp_path / "big.act"
    run(["gen", "--n", "3", "--m", "11", "-o", str(big)])
    assert run(["solve", str(big), "--brute"]).exit_code == 3


def test_bounds_table():
    res = run(["bounds", "--n", "3"])
    row = lines(res)
    assert res.exit_code == 0
    assert row["p"] == "2"
    assert row["certified-by-bound m (union)"] == "3"
    assert row["certified-by-bound m (relaxed)"] == "8"
    row4 = lines(run(["bounds", "--n", "4", "--m", "29"]))
    assert row4["p"] == "3" and row4["certified-by-bound m (union)"] == "29"
    assert row4["log union bound"] == "-0.115672"
    assert row4["certifies existence"] == "yes"
    assert lines(run(["bounds", "--n", "1"]))["log union bound"] == "-inf (certain zero)"


def test_bounds_sweep():
    res = run(["bounds", "--sweep", "5", "6"])
    assert res.stdout.splitlines()[1].split() == ["5", "6", "0.419263"]
    assert run(["bounds"]).exit_code == 1
    assert run(["bounds", "--sweep", "1", "5"]).exit_code == 1


def test_hunt_and_verify(tmp_path):
    cert = tmp_path / "c.cert"
    res = run(["hunt", "--n", "3", "--m", "10", "--trials", "10", "-o", str(cert)])
    assert res.exit_code == 0 and "seed 1" in res.stderr
    assert "optimum-at-least 2" in cert.read_text()
    ver = run(["verify-cert", str(cert)])
    assert ver.exit_code == 0 and lines(ver)["verdict"] == "holds"

    inst = tmp_path / "i.act"
    seed = next(l.split()[1] for l in cert.read_text().splitlines() if l.startswith("seed"))
    run(["gen", "--n", "3", "--m", "10", "--seed", seed, "-o", str(inst)])
    assert run(["verify-cert", str(cert), "--instance", str(inst)]).exit_code == 0

    other = tmp_path / "o.act"
    run(["gen", "--n", "3", "--m", "10", "--seed", "999", "-o", str(other)])
    assert run(["verify-cert", str(cert), "--instance", str(other)]).exit_code == 2


def test_hunt_exit_codes(tmp_path):
    assert run(["hunt", "--n", "4", "--m", "1", "--trials", "2"]).exit_code == 4
    assert run(["hunt", "--n", "5", "--m", "200"]).exit_code == 3


def test_verify_refuted(tmp_path):
    inst = tmp_path / "mono.act"
    arcs = "".join(f"arc {u} {v} 1\n" for u in range(4) for v in range(u + 1, 4))
    inst.write_text(f"act 1\ncolours 3\nvertices 4\n{arcs}")
    t, _ = parse(inst.read_text())
    from absorbset.witness import Certificate, instance_digest

    cert = tmp_path / "c.cert"
    cert.write_text(Certificate(3, 2, 0, 2, 2, instance_digest(t), 0).to_text())
    res = run(["verify-cert", str(cert), "--instance", str(inst)])
    assert res.exit_code == 4 and lines(res)["counterexample"] == "3"
    cert.write_text("cert 1\n")
    assert run(["verify-cert", str(cert)]).exit_code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "absorbset", "bounds", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "certified-by-bound m (union)" in proc.stdout
