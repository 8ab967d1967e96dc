"""CNF formulas, their lifting by the Index gadget, and tree-like Res(xor) proofs.

A Res(xor) line is a disjunction of parity literals.  The literal
``[S = c]`` is the disjunct "XOR of S equals c"; a line is falsified
exactly on the affine subspace where every literal's parity takes the
other value.  Proofs are checked semantically on these subspaces.

Lifted DIMACS numbering, with 1-based block i, 0-based bit j' and
0-based position j::

    x[i, j'] -> (i-1)(ell+m) + j' + 1
    y[i, j]  -> (i-1)(ell+m) + ell + j + 1
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from . import _guard, trees
from .errors import (Inconsistent, MalformedProof, NotPowerOfTwo,
                     ParseError, SourceInvalid, SpanViolation, WidthOverflow)
from .f2_linalg import X_SIDE, Coord, AffineSystem, VarSpace, xbit, y

LIFT_CLAUSE_LIMIT = 10 ** 7
SCAN_LIMIT = 1 << 24
BOTTOM = "BOT"


# --- CNF --------------------------------------------------------------------
@dataclass(frozen=True)
class Cnf:
    """Clauses are tuples of signed 1-based variable ids; names default to "1", "2", ..."""

    num_vars: int
    clauses: tuple
    names: tuple = ()

    def __post_init__(self):
        if not self.clauses:
            raise ParseError("a CNF needs at least one clause")
        canon = []
        for c in self.clauses:
            seen: list = []
            for lit in c:
                lit = int(lit)
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ParseError(f"literal {lit} out of range 1..{self.num_vars}")
                if lit not in seen:
                    seen.append(lit)
            canon.append(tuple(seen))
        object.__setattr__(self, "clauses", tuple(canon))
        names = tuple(self.names) or tuple(str(k + 1) for k in range(len(canon)))
        if len(names) != len(canon):
            raise ParseError("clause names do not match the clause count")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.clauses)

    def clause(self, cid: int) -> tuple:
        """Clause by 1-based id."""
        if not 1 <= cid <= len(self.clauses):
            raise MalformedProof(f"clause id {cid} out of range 1..{len(self.clauses)}")
        return self.clauses[cid - 1]

    def falsified(self, cid: int, value: Callable[[int], int]) -> bool:
        return all(value(abs(lit)) != (lit > 0) for lit in self.clause(cid))


def parse_dimacs(text: str) -> Cnf:
    header = None
    lits: list[int] = []
    for ln in text.splitlines():
        s = ln.strip()
        if not s or s.startswith("c") or s.startswith("%"):
            continue
        if s.startswith("p"):
            parts = s.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"bad header: {s}")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header")
        try:
            lits.extend(int(tok) for tok in s.split())
        except ValueError as exc:
            raise ParseError(f"bad clause line: {s}") from exc
    if header is None:
        raise ParseError("missing 'p cnf' header")
    clauses, cur = [], []
    for lit in lits:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ParseError(f"header promises {header[1]} clauses, found {len(clauses)}")
    return Cnf(header[0], tuple(clauses))


def to_dimacs(cnf: Cnf) -> str:
    out = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    out += [" ".join(str(lit) for lit in c) + " 0" for c in cnf.clauses]
    return "\n".join(out) + "\n"


def is_unsat(cnf: Cnf, force: bool = False) -> bool:
    n = cnf.num_vars
    _guard.check("unsatisfiability scan", 1 << n, SCAN_LIMIT, force)
    codes = np.arange(1 << n, dtype=np.int64)
    sat = np.ones(len(codes), dtype=bool)
    for c in cnf.clauses:
        hit = np.zeros(len(codes), dtype=bool)
        for lit in c:
            hit |= _var_values(codes, n, abs(lit)) == (1 if lit > 0 else 0)
        sat &= hit
    return not bool(sat.any())


def _var_values(codes: np.ndarray, n: int, v: int) -> np.ndarray:
    """Value of variable v in lexicographic assignment codes (variable 1 most significant)."""
    return (codes >> (n - v)) & 1


def _code_to_bits(code: int, n: int) -> tuple:
    return tuple((code >> (n - v)) & 1 for v in range(1, n + 1))


# --- lifting -----------------------------------------------------------------
@dataclass(frozen=True)
class LiftedCnf:
    base: Cnf
    m: int
    cnf: Cnf
    clause_map: tuple
    offsets: tuple

    @property
    def ell(self) -> int:
        return self.m.bit_length() - 1

    @property
    def N(self) -> int:
        return self.base.num_vars

    def x_var(self, i: int, t: int) -> int:
        """DIMACS id of pointer bit t of 1-based block i."""
        return (i - 1) * (self.ell + self.m) + t + 1

    def y_var(self, i: int, j: int) -> int:
        return (i - 1) * (self.ell + self.m) + self.ell + j + 1

    def coord_of(self, v: int) -> Coord:
        """0-based coordinate of a lifted DIMACS variable."""
        w = self.ell + self.m
        block, off = divmod(v - 1, w)
        return xbit(block, off) if off < self.ell else y(block, off - self.ell)

    def var_of(self, c: Coord) -> int:
        if c.side == X_SIDE:
            return self.x_var(c.block + 1, c.position)
        return self.y_var(c.block + 1, c.position)

    def lifted_id(self, base_id: int, pointers: Sequence[int]) -> int:
        """Lifted clause id for a base clause and one pointer per literal."""
        code = 0
        for j in pointers:
            code = code * self.m + j
        return self.offsets[base_id - 1] + code + 1

    def map_text(self) -> str:
        lines = []
        for i in range(1, self.N + 1):
            lines += [f"x {i} {t} -> {self.x_var(i, t)}" for t in range(self.ell)]
            lines += [f"y {i} {j} -> {self.y_var(i, j)}" for j in range(self.m)]
        return "\n".join(lines) + "\n"


def lift_cnf(phi: Cnf, m: int, force: bool = False, limit: int = LIFT_CLAUSE_LIMIT) -> LiftedCnf:
    """Replace each width-k clause by m^k clauses of width (ell+1)k."""
    if m < 2 or m & (m - 1):
        raise NotPowerOfTwo(f"m = {m} must be a power of 2 and at least 2")
    total = sum(m ** len(c) for c in phi.clauses)
    if total > limit and not _guard.overridden(force):
        raise WidthOverflow(f"lifting yields {total} clauses, over the limit {limit}")
    ell = m.bit_length() - 1
    w = ell + m
    clauses, cmap, offsets = [], [], []
    for cid, c in enumerate(phi.clauses, start=1):
        offsets.append(len(clauses))
        for js in itertools.product(range(m), repeat=len(c)):
            out = []
            for lit, j in zip(c, js):
                base = (abs(lit) - 1) * w
                out += [(base + t + 1) if not (j >> t) & 1 else -(base + t + 1) for t in range(ell)]
            for lit, j in zip(c, js):
                v = (abs(lit) - 1) * w + ell + j + 1
                out.append(v if lit > 0 else -v)
            clauses.append(tuple(out))
            cmap.append(cid)
    cnf = Cnf(phi.num_vars * w, tuple(clauses))
    return LiftedCnf(phi, m, cnf, tuple(cmap), tuple(offsets))


def parse_map(text: str) -> dict:
    out = {}
    for ln in text.splitlines():
        if not ln.strip():
            continue
        m_ = re.fullmatch(r"\s*([xy])\s+(\d+)\s+(\d+)\s*->\s*(\d+)\s*", ln)
        if not m_:
            raise ParseError(f"bad map line: {ln}")
        side, i, j, v = m_.groups()
        out[(side, int(i), int(j))] = int(v)
    return out


# --- parity clauses ------------------------------------------------------------
@dataclass(frozen=True)
class ParityClause:
    """Disjunction of literals ``(support, c)`` each meaning XOR(support) = c."""

    literals: tuple = ()

    @classmethod
    def of(cls, literals: Iterable) -> "ParityClause":
        return cls(tuple((frozenset(s), int(c) & 1) for s, c in literals))

    @classmethod
    def from_clause(cls, clause: Sequence[int]) -> "ParityClause":
        return cls(tuple((frozenset((abs(lit),)), 1 if lit > 0 else 0) for lit in clause))

    def subspace(self, n: int) -> Optional[AffineSystem]:
        """Falsifying affine subspace over variables 1..n, or None when it is empty."""
        space = VarSpace(n)
        E = AffineSystem(space)
        for sup, c in self.literals:
            try:
                E, _ = E.insert_mask(space.mask(sup), c ^ 1)
            except SpanViolation:
                continue
            except Inconsistent:
                return None
        return E

    def is_empty_clause(self, n: int) -> bool:
        E = self.subspace(n)
        return E is not None and E.codim == 0

    def text(self) -> str:
        return " ".join("[" + " ".join(f"v{v}" for v in sorted(s)) + f" = {c}]"
                        for s, c in self.literals)


_LIT = re.compile(r"\[([^\]]*)\]")


def parse_literals(text: str) -> ParityClause:
    lits = []
    rest = _LIT.sub("", text).strip()
    if rest:
        raise ParseError(f"stray text in literal list: {rest!r}")
    for body in _LIT.findall(text):
        if "=" not in body:
            raise ParseError(f"literal [{body}] lacks '='")
        lhs, rhs = body.split("=", 1)
        sup: set = set()
        for tok in lhs.split():
            if not re.fullmatch(r"v?\d+", tok):
                raise ParseError(f"bad variable {tok!r}")
            sup ^= {int(tok.lstrip("v"))}
        if rhs.strip() not in ("0", "1"):
            raise ParseError(f"literal constant must be 0 or 1, got {rhs.strip()!r}")
        lits.append((frozenset(sup), int(rhs)))
    return ParityClause(tuple(lits))


# --- subspace algebra ---------------------------------------------------------
def _restrict(C: AffineSystem, A: Optional[AffineSystem]):
    """Equations of A rewritten in C's free coordinates; None if A misses C entirely.

    Returns the restricted system (over the same numbering, supported on
    C's free coordinates) whose solution set within C is A intersect C.
    """
    if A is None:
        return None
    R = AffineSystem(C.space)
    for r, b in A.rows:
        res, val = C.reduce_mask(r, b)
        try:
            R, _ = R.insert_mask(res, val)
        except SpanViolation:
            continue
        except Inconsistent:
            return None
    return R


def containment_CsubAuB(C: Optional[AffineSystem], A: Optional[AffineSystem],
                        B: Optional[AffineSystem]) -> bool:
    """Exact test of C subset of A union B for affine subspaces (None is empty)."""
    if C is None:
        return True
    RA, RB = _restrict(C, A), _restrict(C, B)
    if (RA is not None and RA.codim == 0) or (RB is not None and RB.codim == 0):
        return True
    for R1, R2 in ((RA, RB), (RB, RA)):
        if R1 is None or R1.codim != 1 or R2 is None:
            continue
        (h, a), = R1.rows
        if all((g == 0 and c == 0) or (g == h and c == a ^ 1) for g, c in R2.rows):
            return True
    return False


def subspaces_equal(A: Optional[AffineSystem], B: Optional[AffineSystem]) -> bool:
    if A is None or B is None:
        return A is None and B is None
    if A.codim != B.codim:
        return False
    return all(B.in_span_mask(r) == b for r, b in A.rows)


def _members(E: Optional[AffineSystem], codes: np.ndarray, n: int) -> np.ndarray:
    if E is None:
        return np.zeros(len(codes), dtype=bool)
    ok = np.ones(len(codes), dtype=bool)
    for r, b in E.rows:
        acc = np.zeros(len(codes), dtype=np.int64)
        for idx in _set_bits(r):
            acc ^= _var_values(codes, n, idx + 1)
        ok &= acc == b
    return ok


def _set_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def first_uncovered(C, A, B, n: int, force: bool = False) -> Optional[tuple]:
    """Lexicographically first point of C outside A and B, or None."""
    _guard.check("witness enumeration", 1 << n, SCAN_LIMIT, force)
    codes = np.arange(1 << n, dtype=np.int64)
    bad = _members(C, codes, n) & ~_members(A, codes, n) & ~_members(B, codes, n)
    hits = np.flatnonzero(bad)
    return _code_to_bits(int(hits[0]), n) if len(hits) else None


# --- proofs ------------------------------------------------------------------
@dataclass(frozen=True)
class ProofLine:
    id: int
    kind: str
    refs: tuple
    clause: ParityClause


@dataclass
class ResPlusProof:
    lines: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.lines)

    def by_id(self) -> dict:
        return {ln.id: ln for ln in self.lines}

    def is_tree(self) -> bool:
        used: dict = {}
        for ln in self.lines:
            if ln.kind == "INFER":
                for r in ln.refs:
                    used[r] = used.get(r, 0) + 1
        return all(v <= 1 for v in used.values())

    def dumps(self) -> str:
        out = []
        for ln in self.lines:
            head = f"L {ln.id} {ln.kind} " + " ".join(str(r) for r in ln.refs)
            out.append(f"{head} ; {ln.clause.text()}".rstrip())
        return "\n".join(out) + "\n"


def loads_proof(text: str) -> ResPlusProof:
    lines = []
    for raw in text.splitlines():
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        head, sep, tail = s.partition(";")
        if not sep:
            raise ParseError(f"proof line lacks ';': {s}")
        toks = head.split()
        try:
            if toks[0] != "L":
                raise ParseError(f"proof line must start with L: {s}")
            lid, kind = int(toks[1]), toks[2]
            refs = tuple(int(t) for t in toks[3:])
        except (IndexError, ValueError) as exc:
            raise ParseError(f"bad proof line: {s}") from exc
        if kind == "AXIOM" and len(refs) != 1 or kind == "INFER" and len(refs) != 2:
            raise ParseError(f"wrong number of references: {s}")
        if kind not in ("AXIOM", "INFER"):
            raise ParseError(f"unknown rule {kind}")
        lines.append(ProofLine(lid, kind, refs, parse_literals(tail)))
    return ResPlusProof(lines)


@dataclass
class Verdict:
    accepted: bool
    line: Optional[int] = None
    reason: str = ""
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.accepted


def _formula(phi) -> Cnf:
    return phi.cnf if isinstance(phi, LiftedCnf) else phi


def check_resplus(phi: Union[Cnf, LiftedCnf], proof: ResPlusProof, tree: bool = False,
                  force: bool = False) -> Verdict:
    """Semantic check: axioms match clause sub-cubes, inferences satisfy C in A u B,
    and the last line is the empty clause (its falsifying set is everything)."""
    cnf = _formula(phi)
    n = cnf.num_vars
    if not proof.lines:
        raise MalformedProof("proof has no lines")
    seen: dict = {}
    for ln in proof.lines:
        if ln.id in seen:
            raise MalformedProof(f"line id {ln.id} repeated")
        for s, _ in ln.clause.literals:
            if any(not 1 <= v <= n for v in s):
                raise MalformedProof(f"line {ln.id} mentions a variable outside 1..{n}")
        C = ln.clause.subspace(n)
        if ln.kind == "AXIOM":
            cid = ln.refs[0]
            if not 1 <= cid <= len(cnf):
                raise MalformedProof(f"line {ln.id} names clause {cid}, which does not exist")
            if not subspaces_equal(C, ParityClause.from_clause(cnf.clause(cid)).subspace(n)):
                return Verdict(False, ln.id, f"axiom does not match clause {cid}")
        else:
            for r in ln.refs:
                if r not in seen:
                    raise MalformedProof(f"line {ln.id} refers to {r}, which is not an earlier line")
            A, B = seen[ln.refs[0]], seen[ln.refs[1]]
            if not containment_CsubAuB(C, A, B):
                wit = first_uncovered(C, A, B, n, force) if n <= 24 or force else None
                return Verdict(False, ln.id, "inference fails C in A u B", wit)
        seen[ln.id] = C
    last = proof.lines[-1]
    if not last.clause.is_empty_clause(n):
        return Verdict(False, last.id, "last line is not the full space")
    if tree and not proof.is_tree():
        return Verdict(False, None, "proof is not tree-like")
    return Verdict(True)


# --- parity decision trees for Search(phi) -----------------------------------
def _leaf_clause(label: str, cnf: Cnf) -> Optional[int]:
    if label == BOTTOM:
        return None
    try:
        cid = int(label)
    except ValueError:
        return cnf.names.index(label) + 1 if label in cnf.names else None
    return cid if 1 <= cid <= len(cnf) else None


def pdt_solves_search(T: trees.Tree, phi: Union[Cnf, LiftedCnf], trusted_unsat: bool = False,
                      force: bool = False) -> Verdict:
    """Every assignment must reach a leaf naming a clause it falsifies."""
    cnf = _formula(phi)
    n = cnf.num_vars
    _guard.check("search-tree scan", 1 << n, SCAN_LIMIT, force)
    if not trusted_unsat and not is_unsat(cnf, force):
        return Verdict(False, None, "formula is satisfiable; Search is not total")
    for v in trees.all_vars(T):
        if not isinstance(v, int) or not 1 <= v <= n:
            raise SourceInvalid(f"tree variable {v!r} is not in 1..{n}")
    codes = np.arange(1 << n, dtype=np.int64)
    worst: list = []

    def rec(t, idx: np.ndarray) -> None:
        if len(idx) == 0:
            return
        if isinstance(t, trees.Leaf):
            cid = _leaf_clause(t.label, cnf)
            if cid is None:
                worst.append((int(idx[0]), f"leaf label {t.label!r} is not a clause"))
                return
            ok = np.zeros(len(idx), dtype=bool)
            for lit in cnf.clause(cid):
                ok |= _var_values(codes[idx], n, abs(lit)) == (1 if lit > 0 else 0)
            bad = idx[ok]
            if len(bad):
                worst.append((int(bad[0]), f"clause {cid} is satisfied"))
            return
        b = np.zeros(len(idx), dtype=np.int64)
        for v in trees.support(t):
            b ^= _var_values(codes[idx], n, v)
        rec(t.zero, idx[b == 0])
        rec(t.one, idx[b == 1])

    rec(T, codes)
    if worst:
        code, why = min(worst)
        return Verdict(False, None, why, _code_to_bits(code, n))
    return Verdict(True)


def pdt_to_resplus(T: trees.Tree, phi: Union[Cnf, LiftedCnf], trusted_unsat: bool = False,
                   force: bool = False) -> ResPlusProof:
    """One line per node: leaves are axioms, inner nodes the negation of their path."""
    cnf = _formula(phi)
    v = pdt_solves_search(T, cnf, trusted_unsat, force)
    if not v:
        raise SourceInvalid(f"tree does not solve Search: {v.reason} (witness {v.witness})")
    lines: list = []

    def rec(t, path: tuple) -> int:
        if isinstance(t, trees.Leaf):
            cid = _leaf_clause(t.label, cnf)
            lines.append(ProofLine(len(lines) + 1, "AXIOM", (cid,),
                                   ParityClause.from_clause(cnf.clause(cid))))
            return len(lines)
        sup = frozenset(trees.support(t))
        a = rec(t.zero, path + ((sup, 1),))
        b = rec(t.one, path + ((sup, 0),))
        lines.append(ProofLine(len(lines) + 1, "INFER", (a, b), ParityClause(path)))
        return len(lines)

    rec(T, ())
    return ResPlusProof(lines)


def resplus_to_pdt(proof: ResPlusProof, phi: Union[Cnf, LiftedCnf], force: bool = False) -> trees.Tree:
    """Parity decision tree read off an accepted proof, walking back from the last line."""
    cnf = _formula(phi)
    n = cnf.num_vars
    v = check_resplus(cnf, proof, force=force)
    if not v:
        raise SourceInvalid(f"proof rejected at line {v.line}: {v.reason}")
    lines = proof.by_id()
    subs = {ln.id: ln.clause.subspace(n) for ln in proof.lines}

    def query_from(C: AffineSystem, ln: ProofLine):
        for sup, c in ln.clause.literals:
            res, _ = C.reduce_mask(VarSpace(n).mask(sup), 0)
            if res:
                return sup, c ^ 1
        raise SourceInvalid(f"line {ln.id} has no literal that splits its consequence")

    def rec(lid: int) -> trees.Tree:
        ln = lines[lid]
        if ln.kind == "AXIOM":
            return trees.Leaf(str(ln.refs[0]))
        C = subs[lid]
        a, b = ln.refs
        if C is None:
            return rec(a)
        RA, RB = _restrict(C, subs[a]), _restrict(C, subs[b])
        hyper = [(p, R) for p, R in ((a, RA), (b, RB)) if R is not None and R.codim == 1]
        hyper.sort(key=lambda pr: lines[pr[0]].kind != "INFER")
        for p, R in hyper:
            other, R_other = (b, RB) if p == a else (a, RA)
            (h, val), = R.rows
            if R_other is None or not all((g == 0 and c == 0) or (g == h and c == val ^ 1)
                                          for g, c in R_other.rows):
                continue
            sup, inside = query_from(C, lines[p])
            # the branch where XOR(sup) = inside lands in line p
            kids = {inside: rec(p), inside ^ 1: rec(other)}
            return _node(sup, kids[0], kids[1])
        if RA is not None and RA.codim == 0:
            return rec(a)
        if RB is not None and RB.codim == 0:
            return rec(b)
        raise SourceInvalid(f"line {lid} is not covered by its parents")

    return rec(proof.lines[-1].id)


def _node(sup: frozenset, zero, one) -> trees.Tree:
    if len(sup) == 1:
        return trees.Query(next(iter(sup)), zero, one)
    return trees.ParityQuery(frozenset(sup), zero, one)


# --- lifted search trees --------------------------------------------------------
def lift_search_tree(dt: trees.Tree, lifted: LiftedCnf) -> trees.Tree:
    """Canonical PDT for Search of the lifted formula from a decision tree for Search(phi).

    Each query of base variable v reads the ell pointer bits of block v,
    then the pointed y-variable; a leaf naming clause c becomes the lifted
    clause of c selected by the pointers read on the path.
    """
    ell, base = lifted.ell, lifted.base

    def rec(t, ptr: dict) -> trees.Tree:
        if isinstance(t, trees.Leaf):
            cid = _leaf_clause(t.label, base)
            if cid is None:
                raise SourceInvalid(f"leaf {t.label!r} is not a clause")
            clause = base.clause(cid)
            missing = [abs(l) for l in clause if abs(l) not in ptr]
            if missing:
                raise SourceInvalid(f"clause {cid} uses unqueried variables {missing}")
            return trees.Leaf(str(lifted.lifted_id(cid, [ptr[abs(l)] for l in clause])))
        if not isinstance(t, trees.Query):
            raise SourceInvalid("only ordinary decision trees can be lifted")
        i = t.var

        def bitwise(k: int, pre: int) -> trees.Tree:
            if k == ell:
                p2 = dict(ptr)
                p2[i] = pre
                return trees.Query(lifted.y_var(i, pre), rec(t.zero, p2), rec(t.one, p2))
            return trees.Query(lifted.x_var(i, k), bitwise(k + 1, pre), bitwise(k + 1, pre | 1 << k))

        return bitwise(0, 0)

    return rec(dt, {})


def lifted_pdt_to_base(T: trees.Tree, lifted: LiftedCnf, tau=None, check: bool = True,
                       force: bool = False) -> trees.Tree:
    """Run the PDT simulation on a search PDT over lifted DIMACS variables.

    Returns a decision tree over base variables whose leaves name base clauses.
    """
    from . import simulation

    Tc = trees.relabel(T, var_map=lifted.coord_of)
    kwargs = {} if tau is None else {"tau": tau}
    out = simulation.pdt_simulate(Tc, lifted.m, lifted.N, check=check, force=force,
                                  label_map=lambda lab: str(lifted.clause_map[int(lab) - 1]),
                                  **kwargs)
    return trees.relabel(out, var_map=lambda i: i + 1)


__all__ = [
    "Cnf", "LiftedCnf", "ParityClause", "ProofLine", "ResPlusProof", "Verdict",
    "parse_dimacs", "to_dimacs", "is_unsat", "lift_cnf", "parse_map", "parse_literals",
    "loads_proof", "check_resplus", "containment_CsubAuB", "subspaces_equal",
    "first_uncovered", "pdt_solves_search", "pdt_to_resplus", "resplus_to_pdt",
    "lift_search_tree", "lifted_pdt_to_base",
]
