"""Exact desk-scale tools for query-to-communication lifting with the Index gadget.

Submodules: ``f2_linalg`` (row-reduced GF(2) systems), ``entropy``
(deficiency and min-entropy rate of pointer sets), ``gadgets``,
``counterexample`` (block families that defeat lifting with small
gadgets), ``protocol`` and ``trees`` (protocols, decision trees and
parity decision trees), ``simulation`` (protocol and PDT to decision
tree), ``proofcnf`` (CNF lifting and tree-like Res(xor) proofs) and
``oracles`` (brute-force ground truth).
"""

from ._kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
