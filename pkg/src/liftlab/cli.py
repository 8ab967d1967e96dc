"""Command-line entry point.

Exit codes: 0 pass, 1 semantic reject, 2 input or parameter error, 3 guard exceeded.
Reports print as aligned text, or as flat ``key=value`` lines with ``--format kv``;
``--out`` always writes the key=value form.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import (__version__, counterexample, entropy, proofcnf, protocol, simulation,
               trees)
from ._guard import ENV_OVERRIDE
from .errors import GuardExceeded, LiftlabError, SourceInvalid

EXIT_OK, EXIT_REJECT, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class Report:
    def __init__(self, title: str, timestamp: bool = True):
        self.title = title
        self.items: list[tuple[str, object]] = []
        if timestamp:
            self.items.append(("timestamp", _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")))

    def add(self, key: str, value) -> None:
        self.items.append((key, value))

    def extend(self, pairs) -> None:
        self.items.extend(pairs)

    @staticmethod
    def _fmt(v) -> str:
        if isinstance(v, bool):
            return "yes" if v else "no"
        return str(v)

    def text(self) -> str:
        width = max((len(k) for k, _ in self.items), default=0)
        lines = [self.title]
        lines += [f"  {k.ljust(width)}  {self._fmt(v)}" for k, v in self.items]
        return "\n".join(lines) + "\n"

    def kv(self) -> str:
        return "".join(f"{k}={self._fmt(v)}\n" for k, v in self.items)

    def emit(self, args) -> None:
        sys.stdout.write(self.kv() if args.format == "kv" else self.text())
        if getattr(args, "out", None):
            Path(args.out).write_text(self.kv())


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def bitstring(text: str) -> tuple:
    s = text.replace(",", "").strip()
    if not s or any(ch not in "01" for ch in s):
        raise argparse.ArgumentTypeError(f"not a bit string: {text!r}")
    return tuple(int(ch) for ch in s)


def int_list(text: str) -> tuple:
    return tuple(int(t) for t in text.replace(",", " ").split())


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise LiftlabError(f"cannot read {path}: {exc.strerror}") from exc


# --- subcommands ------------------------------------------------------------------
def cmd_counterexample(args) -> int:
    params = counterexample.CounterexampleParams(args.m, args.N, args.K, args.delta, args.gadget)
    family = counterexample.build(params)
    rep = counterexample.verify(params, family, force=args.force, cross_check=args.exhaustive)
    out = Report("counterexample", not args.no_timestamp)
    out.extend(rep.items())
    out.add("verdict", "PASS" if rep.passed else "FAIL")
    out.emit(args)
    return EXIT_OK if rep.passed else EXIT_REJECT


def _all_z(N: int):
    for code in range(1 << N):
        yield tuple((code >> i) & 1 for i in range(N))


def cmd_simulate(args) -> int:
    P = protocol.loads(_read(args.protocol))
    if (P.N, P.m) != (args.N, args.m):
        raise LiftlabError(f"protocol header says N={P.N}, m={P.m}")
    if args.z is not None and len(args.z) != args.N:
        raise LiftlabError(f"--z needs {args.N} bits")
    zs = list(_all_z(args.N)) if args.all_z or args.z is None else [args.z]
    out = Report("simulate", not args.no_timestamp)
    out.add("mode", args.mode)
    out.add("protocol_depth", P.depth)
    out.add("protocol_leaves", P.leaves)
    all_ok = True
    traces = []
    for z in zs:
        r = simulation.simulate(P, z, mode=args.mode, force=args.force)
        ok = r.query_bound_holds()
        all_ok &= ok
        key = "".join(map(str, z))
        out.add(f"z[{key}]", f"label={r.label} I={','.join(map(str, r.queried)) or '-'} "
                f"|I|={len(r.queried)} A+B={r.spoken} path_bits={r.path_bits} bound={'ok' if ok else 'FAIL'}")
        traces.append((key, r.trace.tsv()))
    if args.emit_dt:
        dt = simulation.extract_decision_tree(P, mode=args.mode, force=args.force)
        Path(args.emit_dt).write_text(trees.dumps(dt))
        out.add("dt_height", trees.height(dt))
        out.add("dt_leaves", trees.leaves(dt))
    if args.trace:
        Path(args.trace).write_text("".join(f"# z={k}\n{t}" for k, t in traces))
    out.add("bound_half_I_log2m_le_AB", all_ok)
    out.emit(args)
    return EXIT_OK if all_ok else EXIT_REJECT


def cmd_lift_cnf(args) -> int:
    phi = proofcnf.parse_dimacs(_read(args.input))
    lifted = proofcnf.lift_cnf(phi, args.m, force=args.force)
    Path(args.output).write_text(proofcnf.to_dimacs(lifted.cnf))
    if args.map:
        Path(args.map).write_text(lifted.map_text())
    expected_m = sum(args.m ** len(c) for c in phi.clauses)
    expected_n = phi.num_vars * (lifted.ell + args.m)
    out = Report("lift-cnf", not args.no_timestamp)
    out.extend([("base_vars", phi.num_vars), ("base_clauses", len(phi)), ("m", args.m),
                ("lifted_vars", lifted.cnf.num_vars), ("lifted_clauses", len(lifted.cnf)),
                ("expected_vars", expected_n), ("expected_clauses", expected_m)])
    ok = expected_m == len(lifted.cnf) and expected_n == lifted.cnf.num_vars
    out.add("counts_ok", ok)
    out.emit(args)
    return EXIT_OK if ok else EXIT_REJECT


def _verdict_report(out: Report, v: proofcnf.Verdict) -> int:
    out.add("verdict", "ACCEPT" if v.accepted else "REJECT")
    if not v.accepted:
        out.add("line", "-" if v.line is None else v.line)
        out.add("reason", v.reason)
        out.add("witness", "none" if v.witness is None else "".join(map(str, v.witness)))
    return EXIT_OK if v.accepted else EXIT_REJECT


def cmd_check_proof(args) -> int:
    phi = proofcnf.parse_dimacs(_read(args.cnf))
    proof = proofcnf.loads_proof(_read(args.proof))
    v = proofcnf.check_resplus(phi, proof, tree=args.tree, force=args.force)
    out = Report("check-proof", not args.no_timestamp)
    out.add("lines", len(proof))
    out.add("tree_like", proof.is_tree())
    code = _verdict_report(out, v)
    out.emit(args)
    return code


def cmd_pdt(args) -> int:
    phi = proofcnf.parse_dimacs(_read(args.cnf))
    out = Report(f"pdt {args.action}", not args.no_timestamp)
    if args.action == "verify":
        T = trees.loads(_read(args.tree))
        code = _verdict_report(out, proofcnf.pdt_solves_search(T, phi, force=args.force))
    elif args.action == "to-proof":
        T = trees.loads(_read(args.tree))
        proof = proofcnf.pdt_to_resplus(T, phi, force=args.force)
        _write_or_print(args.result, proof.dumps())
        out.extend([("tree_nodes", trees.size(T)), ("proof_lines", len(proof))])
        code = _verdict_report(out, proofcnf.check_resplus(phi, proof, tree=True, force=args.force))
    elif args.action == "from-proof":
        proof = proofcnf.loads_proof(_read(args.proof))
        T = proofcnf.resplus_to_pdt(proof, phi, force=args.force)
        _write_or_print(args.result, trees.dumps(T))
        out.extend([("proof_lines", len(proof)), ("tree_nodes", trees.size(T))])
        code = _verdict_report(out, proofcnf.pdt_solves_search(T, phi, force=args.force))
    else:
        if args.m is None:
            raise LiftlabError("lift-simulate needs --m")
        lifted = proofcnf.lift_cnf(phi, args.m, force=args.force)
        if args.proof:
            T = proofcnf.resplus_to_pdt(proofcnf.loads_proof(_read(args.proof)), lifted, force=args.force)
        elif args.tree:
            T = trees.loads(_read(args.tree))
        else:
            raise LiftlabError("lift-simulate needs --tree or --proof")
        lifted_ok = proofcnf.pdt_solves_search(T, lifted, force=args.force)
        if not lifted_ok:
            raise SourceInvalid(f"PDT does not solve the lifted search problem: {lifted_ok.reason}")
        base = proofcnf.lifted_pdt_to_base(T, lifted, force=args.force)
        _write_or_print(args.result, trees.dumps(base))
        out.extend([("pdt_height", trees.height(T)), ("pdt_leaves", trees.leaves(T)),
                    ("dt_height", trees.height(base)), ("dt_leaves", trees.leaves(base))])
        code = _verdict_report(out, proofcnf.pdt_solves_search(base, phi, force=args.force))
    out.emit(args)
    return code


def _write_or_print(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def parse_set(text: str, N: int, m: int) -> entropy.PointerSet:
    vecs = []
    for ln in text.splitlines():
        s = ln.split("#", 1)[0].strip()
        if s:
            vecs.append(int_list(s))
    for v in vecs:
        if len(v) != N or any(not 0 <= a < m for a in v):
            raise LiftlabError(f"vector {v} is not in [{m}]^{N}")
    return entropy.PointerSet.from_vectors(N, m, vecs)


def cmd_entropy(args) -> int:
    S = parse_set(_read(args.set), args.N, args.m)
    if len(S) == 0:
        raise entropy.EmptySet("the set file lists no vectors")
    excl = args.excluded or ()
    rep = entropy.min_entropy_rate(S, excl, force=args.force)
    blocks, alpha = entropy.maximal_low_rate_set(S, excl, args.tau, force=args.force)
    out = Report("entropy", not args.no_timestamp)
    out.extend([
        ("size", len(S)),
        ("deficiency", f"{entropy.deficiency(S):.6f}"),
        ("projected_deficiency", f"{rep.deficiency:.6f}"),
        ("rate", f"{rep.rate:.6f}"),
        ("witness_set", ",".join(map(str, rep.witness_set)) or "-"),
        ("witness_assignment", ",".join(map(str, rep.witness_assignment)) or "-"),
        ("tau", args.tau),
        ("maximal_set", ",".join(map(str, blocks)) or "-"),
        ("maximal_assignment", ",".join(map(str, alpha)) or "-"),
    ])
    out.emit(args)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "kv"), default="text")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp line")
    common.add_argument("--threads", type=int, default=1,
                        help="worker cap (runs are single-threaded; accepted for compatibility)")
    common.add_argument("--force", action="store_true", help=f"override size guards (same as {ENV_OVERRIDE}=1)")

    p = argparse.ArgumentParser(prog="liftlab", description="Lifting with small Index gadgets: "
                                "counterexamples, simulation, CNF lifting and Res(xor) checking.",
                                epilog="exit codes: 0 pass, 1 reject, 2 input error, 3 guard exceeded")
    p.add_argument("--version", action="version", version=f"liftlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("counterexample", parents=[common], help="build and verify the block family")
    c.add_argument("--out", help="also write the key=value report to this file")
    c.add_argument("--gadget", type=str.upper, choices=("IND", "IP"), default="IND")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--K", type=rational, required=True)
    c.add_argument("--delta", type=int, default=1)
    c.add_argument("--exhaustive", action="store_true",
                   help="also cross-check the image by enumerating every (x, y) pair")
    c.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("simulate", parents=[common], help="simulate a protocol by a decision tree")
    s.add_argument("--out", help="also write the key=value report to this file")
    s.add_argument("--protocol", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--z", type=bitstring, help="base input, z_0 first")
    g.add_argument("--all-z", action="store_true")
    s.add_argument("--emit-dt")
    s.add_argument("--trace")
    s.add_argument("--mode", choices=(simulation.STAR, simulation.PARITY), default=simulation.STAR)
    s.set_defaults(func=cmd_simulate)

    lc = sub.add_parser("lift-cnf", parents=[common], help="compose a CNF with the Index gadget")
    lc.add_argument("--in", dest="input", required=True)
    lc.add_argument("--m", type=int, required=True)
    lc.add_argument("--out", dest="output", required=True, help="lifted DIMACS file")
    lc.add_argument("--map")
    lc.set_defaults(func=cmd_lift_cnf)

    cp = sub.add_parser("check-proof", parents=[common], help="verify a Res(xor) refutation")
    cp.add_argument("--out", help="also write the key=value report to this file")
    cp.add_argument("--cnf", required=True)
    cp.add_argument("--proof", required=True)
    cp.add_argument("--tree", action="store_true", help="also require the proof to be tree-like")
    cp.set_defaults(func=cmd_check_proof)

    pd = sub.add_parser("pdt", parents=[common], help="parity decision trees for Search(phi)")
    pd.add_argument("--out", help="also write the key=value report to this file")
    pd.add_argument("action", choices=("verify", "to-proof", "from-proof", "lift-simulate"))
    pd.add_argument("--cnf", required=True, help="base formula (lift-simulate lifts it with --m)")
    pd.add_argument("--tree")
    pd.add_argument("--proof")
    pd.add_argument("--m", type=int)
    pd.add_argument("--result", help="write the produced tree or proof here")
    pd.set_defaults(func=cmd_pdt)

    e = sub.add_parser("entropy", parents=[common], help="deficiency and min-entropy rate of a set")
    e.add_argument("--out", help="also write the key=value report to this file")
    e.add_argument("--set", required=True, help="one vector per line, 0-based pointers")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--N", type=int, required=True)
    e.add_argument("--excluded", type=int_list, help="0-based blocks, comma separated")
    e.add_argument("--tau", type=rational, default=Fraction(1, 2))
    e.set_defaults(func=cmd_entropy)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    if args.force:
        os.environ[ENV_OVERRIDE] = "1"
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"liftlab: guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except SourceInvalid as exc:
        print(f"liftlab: rejected: {exc}", file=sys.stderr)
        return EXIT_REJECT
    except (LiftlabError, ValueError) as exc:
        print(f"liftlab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
