"""Decision procedures: linear-time 2-SAT, trivial 1-SAT, and a brute-force oracle.

solve_2sat is the implication-graph algorithm: each clause (a v b)
contributes the implications -a -> b and -b -> a; the formula is
unsatisfiable iff some variable shares a strongly connected component with
its negation.  Component labels come from scipy's compiled SCC routine, so
graphs with millions of vertices run without recursion limits, and the
whole procedure is linear in n + m.

brute_force_sat enumerates the full truth table (hard-guarded at 24
variables) and is the ground truth against which the fast paths are tested.
"""

from __future__ import annotations

from dataclasses import dataclass
from graphlib import TopologicalSorter
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ClauseWidthError, TooLarge
from .formula import Assignment, CnfFormula, Literal, evaluate

_BRUTE_FORCE_MAX_VARS = 24


@dataclass(frozen=True, slots=True)
class Verdict:
    """Outcome of a decision procedure; the witness is present iff SAT and requested."""

    satisfiable: bool
    witness: Assignment | None = None

    @property
    def status(self) -> str:
        return "SAT" if self.satisfiable else "UNSAT"


def _literal_nodes(lits: np.ndarray) -> np.ndarray:
    # Variable v occupies nodes 2(v-1) (positive) and 2(v-1)+1 (negative).
    return 2 * (np.abs(lits) - 1) + (lits < 0)


def _implication_edges(pairs: np.ndarray, units: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Edge arrays of the implication graph for width-2 and width-1 clauses."""
    a = pairs[:, 0]
    b = pairs[:, 1]
    src = np.concatenate([_literal_nodes(-a), _literal_nodes(-b), _literal_nodes(-units)])
    dst = np.concatenate([_literal_nodes(b), _literal_nodes(a), _literal_nodes(units)])
    return src, dst


def _scc_labels(n_nodes: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    if len(src) == 0:
        return np.arange(n_nodes, dtype=np.int64)
    graph = csr_matrix(
        (np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n_nodes, n_nodes)
    )
    _, labels = connected_components(graph, directed=True, connection="strong")
    return labels


def _witness_from_labels(
    n_vars: int, labels: np.ndarray, src: np.ndarray, dst: np.ndarray
) -> Assignment:
    """Set a variable true iff its positive component comes later in a
    topological order of the condensation than its negative component."""
    n_comps = int(labels.max()) + 1 if len(labels) else 0
    comp_src = labels[src]
    comp_dst = labels[dst]
    keep = comp_src != comp_dst
    # Dedupe condensation edges so the sorter sees each dependency once.
    packed = np.unique(comp_src[keep].astype(np.int64) * n_comps + comp_dst[keep])
    sorter: TopologicalSorter[int] = TopologicalSorter()
    for comp in range(n_comps):
        sorter.add(comp)
    for code in packed:
        cu, cv = divmod(int(code), n_comps)
        sorter.add(cv, cu)
    rank = np.empty(n_comps, dtype=np.int64)
    for position, comp in enumerate(sorter.static_order()):
        rank[comp] = position
    pos_nodes = np.arange(0, 2 * n_vars, 2)
    values = rank[labels[pos_nodes]] > rank[labels[pos_nodes + 1]]
    return Assignment(tuple(bool(v) for v in values))


def _solve_2sat_arrays(
    n_vars: int, pairs: np.ndarray, units: np.ndarray, want_witness: bool
) -> Verdict:
    if n_vars == 0:
        return Verdict(True, Assignment(()) if want_witness else None)
    src, dst = _implication_edges(pairs, units)
    labels = _scc_labels(2 * n_vars, src, dst)
    pos = labels[0 : 2 * n_vars : 2]
    neg = labels[1 : 2 * n_vars : 2]
    if np.any(pos == neg):
        return Verdict(False)
    if not want_witness:
        return Verdict(True)
    return Verdict(True, _witness_from_labels(n_vars, labels, src, dst))


def solve_2sat(formula: CnfFormula, want_witness: bool = True) -> Verdict:
    """Decide a CNF of width <= 2.  Unit clauses enter as self-implications,
    so residuals mixing unit and binary clauses solve in one call.
    """
    pair_list: list[tuple[int, int]] = []
    unit_list: list[int] = []
    for clause in formula.clauses:
        if clause.width == 2:
            pair_list.append((clause.literals[0], clause.literals[1]))
        elif clause.width == 1:
            unit_list.append(clause.literals[0])
        else:
            raise ClauseWidthError(f"clause {clause} has width {clause.width} > 2")
    pairs = np.asarray(pair_list, dtype=np.int64).reshape(-1, 2)
    units = np.asarray(unit_list, dtype=np.int64)
    return _solve_2sat_arrays(formula.n_vars, pairs, units, want_witness)


def solve_1sat(units: Iterable[Literal]) -> Verdict:
    """A conjunction of unit clauses is satisfiable iff no complementary pair
    occurs.  Duplicates are harmless."""
    seen = set(units)
    satisfiable = all(-lit not in seen for lit in seen)
    return Verdict(satisfiable)


@dataclass(frozen=True, slots=True)
class BruteForceResult:
    satisfiable: bool
    model_count: int


def brute_force_sat(formula: CnfFormula) -> BruteForceResult:
    """Exhaustive truth-table verdict and model count, for n_vars <= 24.

    Assignment index i encodes variable v as bit v-1, matching the order of
    Assignment.values.
    """
    n = formula.n_vars
    if n > _BRUTE_FORCE_MAX_VARS:
        raise TooLarge(f"brute force is guarded at {_BRUTE_FORCE_MAX_VARS} variables, got {n}")
    total = 1 << n
    indices = np.arange(total, dtype=np.uint32)
    ok = np.ones(total, dtype=bool)
    for clause in formula.clauses:
        clause_sat = np.zeros(total, dtype=bool)
        for lit in clause.literals:
            bit = (indices >> (abs(lit) - 1)) & 1
            clause_sat |= (bit == 1) if lit > 0 else (bit == 0)
        ok &= clause_sat
    count = int(np.count_nonzero(ok))
    return BruteForceResult(satisfiable=count > 0, model_count=count)


def brute_force_models(formula: CnfFormula) -> list[Assignment]:
    """All satisfying assignments, in assignment-index order (small n only)."""
    n = formula.n_vars
    if n > _BRUTE_FORCE_MAX_VARS:
        raise TooLarge(f"brute force is guarded at {_BRUTE_FORCE_MAX_VARS} variables, got {n}")
    models = []
    for index in range(1 << n):
        x = Assignment(tuple(bool((index >> (v - 1)) & 1) for v in range(1, n + 1)))
        if evaluate(formula, x):
            models.append(x)
    return models
