"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import itertools
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from liftlab import counterexample as ce, entropy, oracles, proofcnf as pc, protocol, simulation as sim, trees
from liftlab.entropy import PointerSet
from liftlab.errors import Inconsistent, SpanViolation
from liftlab.f2_linalg import AffineSystem, VarSpace
from liftlab.protocol import LiftedProblem
from liftlab.trees import Leaf, Query

from conftest import BASE_FUNCTIONS, canonical_pdt, read_fixture

FUNCTIONS = ["z1", "and2", "or2", "xor2", "xor3"]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def all_z(N):
    return [tuple((c >> i) & 1 for i in range(N)) for c in range(1 << N)]


def load(name):
    return protocol.loads(read_fixture("protocols", f"{name}.proto"))


def fixture_runs():
    """(protocol name, mode) for every protocol fixture and every mode it supports."""
    runs = [("const0_m4", sim.STAR)]
    for f in FUNCTIONS:
        runs += [(f"{f}_split_m4", sim.STAR), (f"{f}_parity_m4", sim.STAR), (f"{f}_parity_m4", sim.PARITY)]
    return runs


def omits_zero_after_drop(members, m, N, I):
    # all-zero output on [N]\I is reachable from y iff every kept block has a zero bit
    full = (1 << m) - 1
    keep = [i for i in range(N) if i not in I]
    return not any(all((y >> (m * i)) & full != full for i in keep) for y in members)


def _counterexample(gadget):
    p = ce.CounterexampleParams(m=2, N=8, K=2, delta=1, gadget=gadget)
    t0 = time.perf_counter()
    rep = ce.verify(p, ce.build(p))
    elapsed = time.perf_counter() - t0
    return p, rep, elapsed


def test_criterion_01_ind_counterexample(report):
    p, rep, elapsed = _counterexample("IND")
    exact = oracles.count_special_blocks(2, 8, 2, 3)
    closed = sum(math.comb(8, t) * 3 ** (8 - t) for t in range(2, 9))
    members = oracles.special_block_members(2, 8, 2, 3)
    sets = [I for r in (0, 1) for I in itertools.combinations(range(8), r)]
    # the all-1 block is the special one, so dropping at most one block still leaves an all-1 block
    image = all(omits_zero_after_drop(members, 2, 8, I) for I in sets)
    defic = 16 - math.log2(41479)
    ok = (rep.passed and rep.size == exact == closed == 41479 and rep.deficiency == defic <= 1
          and rep.rate >= 0.5 and rep.sets_checked == len(sets) == 9 and image
          and rep.forbidden == (0,) * 8 and elapsed < 10)
    report(1, ok, f"|S|={rep.size} D={rep.deficiency:.6f} rate={rep.rate:.6f} "
                  f"sets={rep.sets_checked} {elapsed:.2f}s")


def test_criterion_02_all_one_tail(report):
    checked = scanned = 0
    bad = []
    for m in (1, 2, 3):
        for N in range(1, 17):
            for K in (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3), Fraction(4)):
                if (1 << m) * K > N:
                    continue
                frac = ce.majority_fraction_check(m, N, K)
                checked += 1
                if frac < Fraction(1, 2):
                    bad.append((m, N, K, frac))
                if N * m <= 20:
                    scanned += 1
                    if oracles.tail_fraction(m, N, K) != frac:
                        bad.append((m, N, K, "scan mismatch"))
    report(2, not bad and checked > 0, f"{checked} grid points, {scanned} scanned exhaustively, bad={bad}")


def test_criterion_03_binomial_medians(report):
    bad = []
    for n in range(1, 21):
        for p in (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            ok, _ = ce.binomial_median_check(n, p)
            meds = oracles.binomial_median_interval(n, p)
            lo, hi = math.floor(n * p), math.ceil(n * p)
            if not ok or list(meds) != ce.binomial_medians(n, p) or not all(lo <= t <= hi for t in meds):
                bad.append((n, p))
    report(3, not bad, f"80 (n, p) pairs, bad={bad}")


def test_criterion_04_inner_product_analogue(report):
    p, rep, elapsed = _counterexample("IP")
    members = oracles.special_block_members(2, 8, 2, 0)
    # an output bit can be 1 iff that y-block is nonzero; check the rule on sampled rows
    rng = random.Random(4)
    X = [oracles.blocks_of(c, 2, 8) for c in range(1 << 16)]
    rule_ok = True
    for y in rng.sample(members, 3):
        Y = [oracles.blocks_of(y, 2, 8)]
        image = oracles.exhaustive_image("IP", X, Y)
        rule_ok &= ((1,) * 8 in image) == all((y >> (2 * i)) & 3 for i in range(8))
    image_ok = not any(all((y >> (2 * i)) & 3 for i in range(8) if i not in I)
                       for I in [()] + [(i,) for i in range(8)] for y in members)
    ok = (rep.passed and rep.size == len(members) == 41479 and rep.forbidden == (1,) * 8
          and rule_ok and image_ok and rep.rate > 0.5 and elapsed < 10)
    report(4, ok, f"|S|={rep.size} forbidden={''.join(map(str, rep.forbidden))} rate={rep.rate:.6f} "
                  f"{elapsed:.2f}s")


def test_criterion_05_simulation_correctness(report):
    bad = []
    for name in FUNCTIONS:
        N, f = BASE_FUNCTIONS[name]
        tt = oracles.truth_table(f, N)
        dt = trees.loads(read_fixture("trees", f"{name}.dt"))
        P = load(f"{name}_parity_m4")
        if protocol.dumps(protocol.canonical_protocol(dt, N, 4)) != protocol.dumps(P):
            bad.append((name, "fixture is not the canonical protocol"))
        if protocol.check_correct(P, LiftedProblem.from_function(N, 4, f)) is not None:
            bad.append((name, "protocol incorrect"))
        if not oracles.tree_computes(sim.extract_decision_tree(P, mode=sim.PARITY), tt, N):
            bad.append((name, "extracted tree disagrees"))
        # the fixture tree the protocol was built from has optimal height
        if trees.height(dt) != oracles.optimal_dt_height(tt, N) or not oracles.tree_computes(dt, tt, N):
            bad.append((name, "fixture tree not optimal"))
    report(5, not bad, f"{len(FUNCTIONS)} functions, m=4, bad={bad}")


def test_criterion_06_query_bound(report):
    runs = bad = 0
    ell = 2
    for name, mode in fixture_runs():
        P = load(name)
        for z in all_z(P.N):
            r = sim.simulate(P, z, mode=mode)
            runs += 1
            # (1/2) |I| log2 m <= A + B
            if not (len(r.queried) * ell <= 2 * (r.A + r.B) and r.query_bound_holds()):
                bad += 1
    for name in FUNCTIONS:
        N, _ = BASE_FUNCTIONS[name]
        T = canonical_pdt(trees.loads(read_fixture("trees", f"{name}.dt")), 4)
        for r in sim.pdt_simulate(T, 4, N, with_runs=True).runs:
            runs += 1
            if not len(r.queried) * ell <= 2 * (r.A + r.B):
                bad += 1
    report(6, bad == 0 and runs > 0, f"{runs} runs, {bad} violations")


def test_criterion_07_potential_invariant(report):
    heads = bad = 0
    for name, mode in fixture_runs():
        P = load(name)
        for z in all_z(P.N):
            r = sim.simulate(P, z, mode=mode, snapshots=True)
            for members, I, A, B in r.trace.snapshots:
                heads += 1
                pts = [tuple(row) for row in members.tolist()]
                if not oracles.potential_bound(pts, 4, P.N, I, A + B):
                    bad += 1
    report(7, bad == 0 and heads > 0, f"{heads} loop heads, {bad} violations")


def test_criterion_08_size_lifting(report):
    bad = []
    for name in FUNCTIONS:
        N, f = BASE_FUNCTIONS[name]
        tt = oracles.truth_table(f, N)
        P = load(f"{name}_parity_m4")
        T = sim.extract_decision_tree(P, mode=sim.PARITY)
        if trees.leaves(T) > P.leaves:
            bad.append((name, "protocol"))
        pdt = canonical_pdt(trees.loads(read_fixture("trees", f"{name}.dt")), 4)
        out = sim.pdt_simulate(pdt, 4, N)
        if trees.leaves(out) > trees.leaves(pdt) or not oracles.tree_computes(out, tt, N):
            bad.append((name, "pdt"))
    phi = pc.parse_dimacs(read_fixture("cnf", "contradiction.cnf"))
    lifted = pc.lift_cnf(phi, 4)
    T = pc.resplus_to_pdt(pc.loads_proof(read_fixture("proofs", "contradiction_lifted_m4.proof")), lifted)
    base = pc.lifted_pdt_to_base(T, lifted)
    solves = all(int(oracles.tree_value(base, lambda v: z[v - 1])) in oracles.cnf_falsified(phi.clauses, z)
                 for z in all_z(1))
    if trees.leaves(base) > trees.leaves(T) or not solves:
        bad.append(("contradiction", "search pdt"))
    report(8, not bad, f"{2 * len(FUNCTIONS) + 1} fixtures, bad={bad}")


def _pipeline(phi, lifted_proof, lifted):
    assert pc.check_resplus(lifted, lifted_proof, tree=True)
    T = pc.resplus_to_pdt(lifted_proof, lifted)
    base = pc.lifted_pdt_to_base(T, lifted)
    proof = pc.pdt_to_resplus(base, phi)
    return bool(pc.check_resplus(phi, proof, tree=True)), len(proof), len(lifted_proof)


def test_criterion_09_resolution_pipeline(report):
    t0 = time.perf_counter()
    phi1 = pc.parse_dimacs(read_fixture("cnf", "contradiction.cnf"))
    lifted1 = pc.lift_cnf(phi1, 4)
    ok1, n1, m1 = _pipeline(phi1, pc.loads_proof(read_fixture("proofs", "contradiction_lifted_m4.proof")),
                            lifted1)
    # the 2-CNF refutation is assembled from a base search tree composed with the gadget
    phi2 = pc.parse_dimacs(read_fixture("cnf", "implication_cycle.cnf"))
    lifted2 = pc.lift_cnf(phi2, 4)
    dt = Query(1, Query(3, Leaf("4"), Leaf("5")), Query(3, Query(2, Leaf("1"), Leaf("2")), Leaf("3")))
    proof2 = pc.pdt_to_resplus(pc.lift_search_tree(dt, lifted2), lifted2)
    ok2, n2, m2 = _pipeline(phi2, proof2, lifted2)
    elapsed = time.perf_counter() - t0
    ok = ok1 and ok2 and n1 <= m1 and n2 <= m2 and elapsed < 5
    report(9, ok, f"(z1)&(~z1): {m1} -> {n1} lines; 2-CNF: {m2} -> {n2} lines; {elapsed:.2f}s")


def _parity(a):
    for s in (8, 4, 2, 1):
        a = a ^ (a >> s)
    return a & 1


def _solutions(rows, n):
    v = np.arange(1 << n, dtype=np.uint32)
    keep = np.ones(len(v), dtype=bool)
    for r, b in rows:
        keep &= _parity(v & np.uint32(r)) == b
    return np.flatnonzero(keep)


def test_criterion_10_linalg_equivalence(report):
    rng = random.Random(10)
    bad = 0
    for _ in range(10_000):
        n = rng.randint(1, 16)
        E = AffineSystem(VarSpace(n))
        raw = []
        for _ in range(rng.randint(0, min(12, n))):
            r, b = rng.randrange(1, 1 << n), rng.randint(0, 1)
            try:
                E, _ = E.insert_mask(r, b)
            except (SpanViolation, Inconsistent):
                continue  # keep the raw equations independent
            raw.append((r, b))
            for k, (row, _) in enumerate(E.rows):
                for k2, p in enumerate(E.pivots):
                    if ((row >> p) & 1) != (k == k2):
                        bad += 1
        if not np.array_equal(_solutions(E.rows, n), _solutions(raw, n)):
            bad += 1
    report(10, bad == 0, f"10000 sequences, {bad} failures")


def _rate_leq(n, c1, w1, c2, w2):
    # log(n/c1)/w1 <= log(n/c2)/w2  <=>  n^w2 c2^w1 <= n^w1 c1^w2
    return n ** w2 * c2 ** w1 <= n ** w1 * c1 ** w2


def test_criterion_11_entropy_oracle(report):
    rng = random.Random(11)
    bad = []
    for trial in range(1000):
        N, m = rng.randint(1, 4), rng.randint(2, 4)
        universe = list(itertools.product(range(m), repeat=N))
        pts = rng.sample(universe, rng.randint(1, len(universe)))
        S = PointerSet.from_vectors(N, m, pts)
        excl = tuple(i for i in range(N) if rng.random() < 0.25)
        free = [i for i in range(N) if i not in excl]
        rep = entropy.min_entropy_rate(S, excl)
        if rep.size != len(pts) or abs(entropy.deficiency(S) - oracles.deficiency(len(pts), m, N)) > 1e-12:
            bad.append((trial, "deficiency"))
        if free:
            J = rep.witness_set
            c = oracles.max_projection_count(pts, J)
            hit = sum(1 for p in pts if tuple(p[j] for j in J) == tuple(rep.witness_assignment))
            if c != rep.witness_count or hit != c:
                bad.append((trial, "witness count"))
            for r in range(1, len(free) + 1):
                for K in itertools.combinations(free, r):
                    if not _rate_leq(len(pts), c, len(J), oracles.max_projection_count(pts, K), r):
                        bad.append((trial, "rate not minimal"))
        tau = rng.choice([Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)])
        I, alpha = entropy.maximal_low_rate_set(S, excl, tau)
        if oracles.violating_sets(pts, m, N, tau, excl):
            if not oracles.is_maximal_violation(pts, m, N, tau, I, alpha, excl):
                bad.append((trial, "maximal set"))
        elif (I, alpha) != ((), ()):
            bad.append((trial, "spurious set"))
    report(11, not bad, f"1000 random sets, bad={bad[:5]}")


def test_criterion_12_optimal_oracles(report):
    xor3 = oracles.truth_table(lambda z: z[0] ^ z[1] ^ z[2], 3)
    and2 = oracles.truth_table(lambda z: z[0] & z[1], 2)
    got = (oracles.optimal_dt_height(xor3, 3), oracles.optimal_pdt_height(xor3, 3),
           oracles.optimal_dt_height(and2, 2))
    report(12, got == (3, 1, 2), f"dt(XOR3), pdt(XOR3), dt(AND2) = {got}")
