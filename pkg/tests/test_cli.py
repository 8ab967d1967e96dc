import pytest

from liftlab import proofcnf, trees
from liftlab.cli import EXIT_GUARD, EXIT_INPUT, EXIT_OK, EXIT_REJECT, main

from conftest import FIXTURES

PROTO = FIXTURES / "protocols"
CNF = FIXTURES / "cnf"
PROOFS = FIXTURES / "proofs"
SETS = FIXTURES / "sets"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def kv(text):
    return dict(ln.split("=", 1) for ln in text.splitlines() if "=" in ln)


def test_counterexample_ind_exhaustive(capsys):
    code, out, _ = run(capsys, "counterexample", "--gadget", "ind", "--m", 2, "--N", 8, "--K", 2,
                       "--delta", 1, "--exhaustive", "--format", "kv", "--no-timestamp")
    r = kv(out)
    assert code == EXIT_OK and r["verdict"] == "PASS"
    assert r["size"] == "41479" and r["image_routes_agree"] == "yes"


def test_counterexample_ip_forbids_all_ones(capsys):
    code, out, _ = run(capsys, "counterexample", "--gadget", "ip", "--m", 2, "--N", 8, "--K", 2,
                       "--delta", 1, "--format", "kv", "--no-timestamp")
    r = kv(out)
    assert code == EXIT_OK and r["verdict"] == "PASS" and r["forbidden"] == "1" * 8


def test_counterexample_parameter_violation(capsys):
    code, _, err = run(capsys, "counterexample", "--m", 3, "--N", 8, "--K", 2, "--delta", 1)
    assert code == EXIT_INPUT and "8 > 8/(2*1)" in err


def test_counterexample_rational_k_and_report_file(capsys, tmp_path):
    dest = tmp_path / "r.kv"
    code, out, _ = run(capsys, "counterexample", "--m", 2, "--N", 8, "--K", "4/2", "--out", dest,
                       "--no-timestamp")
    assert code == EXIT_OK and kv(dest.read_text())["K"] == "2"
    assert out.startswith("counterexample\n")


def test_reports_are_deterministic(capsys):
    argv = ("entropy", "--set", SETS / "full_4x4.txt", "--m", 4, "--N", 2, "--no-timestamp")
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    stamped = run(capsys, "entropy", "--set", SETS / "full_4x4.txt", "--m", 4, "--N", 2, "--format", "kv")[1]
    assert "timestamp" in kv(stamped)


@pytest.mark.parametrize("proto,N,expect", [
    ("z1_split_m4", 1, {"0": "0", "1": "1"}),
    ("const0_m4", 2, {"00": "0", "01": "0", "10": "0", "11": "0"}),
    ("and2_split_m4", 2, {"00": "0", "01": "0", "10": "0", "11": "1"}),
])
def test_simulate_fixture_runs(capsys, tmp_path, proto, N, expect):
    dt_file, tr_file = tmp_path / "out.dt", tmp_path / "out.tsv"
    code, out, _ = run(capsys, "simulate", "--protocol", PROTO / f"{proto}.proto", "--m", 4, "--N", N,
                       "--all-z", "--emit-dt", dt_file, "--trace", tr_file, "--format", "kv",
                       "--no-timestamp")
    r = kv(out)
    assert code == EXIT_OK and r["bound_half_I_log2m_le_AB"] == "yes"
    for z, label in expect.items():
        assert r[f"z[{z}]"].startswith(f"label={label} ")
    if proto == "const0_m4":
        assert all("I=- " in r[f"z[{z}]"] for z in expect)
    dt = trees.loads(dt_file.read_text())
    assert trees.height(dt) <= N
    assert tr_file.read_text().startswith("# z=")


def test_simulate_single_z_and_bad_input(capsys):
    code, out, _ = run(capsys, "simulate", "--protocol", PROTO / "xor2_parity_m4.proto", "--m", 4,
                       "--N", 2, "--z", "10", "--mode", "parity-parity", "--no-timestamp")
    assert code == EXIT_OK and "label=1" in out
    assert run(capsys, "simulate", "--protocol", PROTO / "z1_split_m4.proto", "--m", 4, "--N", 2)[0] == EXIT_INPUT
    assert run(capsys, "simulate", "--protocol", PROTO / "z1_split_m4.proto", "--m", 4, "--N", 1,
               "--z", "2")[0] == EXIT_INPUT
    assert run(capsys, "simulate", "--protocol", CNF / "contradiction.cnf", "--m", 4, "--N", 1)[0] == EXIT_INPUT
    assert run(capsys, "simulate", "--protocol", PROTO / "missing.proto", "--m", 4, "--N", 1)[0] == EXIT_INPUT


def test_lift_cnf_counts(capsys, tmp_path):
    out_cnf, out_map = tmp_path / "l.cnf", tmp_path / "l.map"
    code, out, _ = run(capsys, "lift-cnf", "--in", CNF / "two_literal.cnf", "--m", 2, "--out", out_cnf,
                       "--map", out_map, "--format", "kv", "--no-timestamp")
    r = kv(out)
    assert code == EXIT_OK and r["lifted_clauses"] == "4" and r["lifted_vars"] == "6"
    lifted = proofcnf.parse_dimacs(out_cnf.read_text())
    assert len(lifted) == 4 and len(proofcnf.parse_map(out_map.read_text())) == 6
    code, out, _ = run(capsys, "lift-cnf", "--in", CNF / "full_3cnf.cnf", "--m", 4, "--out", out_cnf,
                       "--format", "kv", "--no-timestamp")
    r = kv(out)
    assert code == EXIT_OK and r["lifted_clauses"] == str(8 * 4 ** 3) and r["lifted_vars"] == "18"


def test_lift_cnf_width_overflow(capsys, tmp_path):
    wide = tmp_path / "wide.cnf"
    wide.write_text("p cnf 12 1\n" + " ".join(map(str, range(1, 13))) + " 0\n")
    code, _, err = run(capsys, "lift-cnf", "--in", wide, "--m", 8, "--out", tmp_path / "x.cnf")
    assert code == EXIT_GUARD and "guard" in err


def test_check_proof_accept_and_reject(capsys):
    code, out, _ = run(capsys, "check-proof", "--cnf", CNF / "contradiction.cnf", "--proof",
                       PROOFS / "contradiction.proof", "--tree", "--format", "kv", "--no-timestamp")
    assert code == EXIT_OK and kv(out)["verdict"] == "ACCEPT"
    code, out, _ = run(capsys, "check-proof", "--cnf", CNF / "bad_cover.cnf", "--proof",
                       PROOFS / "bad_cover.proof", "--format", "kv", "--no-timestamp")
    r = kv(out)
    assert code == EXIT_REJECT and r["line"] == "3" and r["witness"] == "01"


def test_pdt_actions(capsys, tmp_path):
    phi = CNF / "contradiction.cnf"
    tree = tmp_path / "t.dt"
    tree.write_text(trees.dumps(trees.Query(1, trees.Leaf("1"), trees.Leaf("2"))))
    assert run(capsys, "pdt", "verify", "--cnf", phi, "--tree", tree)[0] == EXIT_OK
    swapped = tmp_path / "s.dt"
    swapped.write_text(trees.dumps(trees.Query(1, trees.Leaf("2"), trees.Leaf("1"))))
    code, out, _ = run(capsys, "pdt", "verify", "--cnf", phi, "--tree", swapped, "--format", "kv")
    assert code == EXIT_REJECT and kv(out)["witness"] == "0"
    assert run(capsys, "pdt", "to-proof", "--cnf", phi, "--tree", swapped)[0] == EXIT_REJECT

    proof = tmp_path / "p.proof"
    code, out, _ = run(capsys, "pdt", "to-proof", "--cnf", phi, "--tree", tree, "--result", proof,
                       "--format", "kv", "--no-timestamp")
    assert code == EXIT_OK and kv(out)["proof_lines"] == "3"
    back = tmp_path / "back.dt"
    assert run(capsys, "pdt", "from-proof", "--cnf", phi, "--proof", proof, "--result", back)[0] == EXIT_OK
    assert trees.canonical(trees.loads(back.read_text())) == trees.canonical(trees.loads(tree.read_text()))


def test_pdt_lift_simulate(capsys, tmp_path):
    base = tmp_path / "base.dt"
    code, out, _ = run(capsys, "pdt", "lift-simulate", "--cnf", CNF / "contradiction.cnf", "--m", 4,
                       "--proof", PROOFS / "contradiction_lifted_m4.proof", "--result", base,
                       "--format", "kv", "--no-timestamp")
    r = kv(out)
    assert code == EXIT_OK and r["verdict"] == "ACCEPT" and int(r["dt_height"]) <= 1
    assert run(capsys, "pdt", "lift-simulate", "--cnf", CNF / "contradiction.cnf")[0] == EXIT_INPUT


def test_entropy_examples(capsys):
    code, out, _ = run(capsys, "entropy", "--set", SETS / "full_4x4.txt", "--m", 4, "--N", 2,
                       "--format", "kv", "--no-timestamp")
    r = kv(out)
    assert code == EXIT_OK and r["deficiency"] == "0.000000" and r["rate"] == "1.000000"
    r = kv(run(capsys, "entropy", "--set", SETS / "first_block_fixed.txt", "--m", 4, "--N", 2,
               "--format", "kv", "--no-timestamp")[1])
    assert r["deficiency"] == "2.000000" and r["rate"] == "0.000000" and r["witness_set"] == "0"
    r = kv(run(capsys, "entropy", "--set", SETS / "single_point.txt", "--m", 4, "--N", 2,
               "--format", "kv", "--no-timestamp")[1])
    assert r["deficiency"] == "4.000000" and r["maximal_set"] == "0,1"


def test_entropy_errors(capsys, tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    assert run(capsys, "entropy", "--set", empty, "--m", 4, "--N", 2)[0] == EXIT_INPUT
    bad = tmp_path / "bad.txt"
    bad.write_text("0 4\n")
    assert run(capsys, "entropy", "--set", bad, "--m", 4, "--N", 2)[0] == EXIT_INPUT


def test_argument_errors(capsys):
    assert run(capsys, "counterexample", "--m", 2, "--N", 8, "--K", "x/y")[0] == EXIT_INPUT
    assert run(capsys, "bogus")[0] == EXIT_INPUT
    assert run(capsys, "--version")[0] == EXIT_OK
