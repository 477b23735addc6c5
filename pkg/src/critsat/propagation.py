"""Round-based unit propagation under a fixed set, with full telemetry,
plus the relabeling coupling onto the canonical fixed set.

Fixing a consistent literal set L splits a width-2 formula into four
disjoint clause categories:

* C0   - both literals contradict L: the fixed formula is already false;
* C1   - exactly one variable is covered and its literal contradicts L:
         the clause shrinks to a unit clause on the uncovered literal;
* Cstar- some literal agrees with L: the clause is satisfied and drops out;
* C2   - neither variable is covered: the clause is untouched.

The unit clauses force a new fixed set (literals whose negation is not
also forced), and the procedure recurses on the untouched clauses.  This
decomposition is exact: the fixed formula is satisfiable iff no round
produces a falsified clause or conflicting units and the final residual is
satisfiable.  propagate() iterates rounds to exhaustion and records
per-round counts (M0, M1, M2, Mstar), which is the raw material of the
trajectory and distribution studies.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

from .errors import ClauseWidthError, VariableOutOfRange
from .formula import (
    Clause,
    CnfFormula,
    FixedSet,
    Literal,
    canonicalize_clause,
)
from .solve import Verdict, solve_1sat, solve_2sat


@dataclass(frozen=True, slots=True)
class Partition:
    """Where each clause of a formula landed under a fixed set.

    c0/c1/c2/cstar are disjoint index lists into the input formula's clause
    list; unit_literals[i] is the surviving literal of the i-th C1 clause,
    in clause order, duplicates preserved; residual2 keeps the C2 clauses
    in their original order over the original variable universe.
    """

    c0: tuple[int, ...]
    c1: tuple[int, ...]
    c2: tuple[int, ...]
    cstar: tuple[int, ...]
    unit_literals: tuple[Literal, ...]
    residual2: CnfFormula

    @property
    def m_counts(self) -> tuple[int, int, int, int]:
        return (len(self.c0), len(self.c1), len(self.c2), len(self.cstar))


def partition_clauses(formula: CnfFormula, fixed: FixedSet) -> Partition:
    """Split a width-2 formula's clauses into the four categories under a fixing."""
    c0: list[int] = []
    c1: list[int] = []
    c2: list[int] = []
    cstar: list[int] = []
    units: list[Literal] = []
    residual: list[Clause] = []
    lits = fixed.literals
    for j, clause in enumerate(formula.clauses):
        if clause.width != 2:
            raise ClauseWidthError(f"clause {clause} has width {clause.width}, expected 2")
        a, b = clause.literals
        if abs(a) > formula.n_vars or abs(b) > formula.n_vars:
            raise VariableOutOfRange(f"clause {clause} outside 1..{formula.n_vars}")
        a_true = a in lits
        b_true = b in lits
        a_false = -a in lits
        b_false = -b in lits
        if a_true or b_true:
            cstar.append(j)
        elif a_false and b_false:
            c0.append(j)
        elif a_false:
            c1.append(j)
            units.append(b)
        elif b_false:
            c1.append(j)
            units.append(a)
        else:
            c2.append(j)
            residual.append(clause)
    return Partition(
        c0=tuple(c0),
        c1=tuple(c1),
        c2=tuple(c2),
        cstar=tuple(cstar),
        unit_literals=tuple(units),
        residual2=CnfFormula(n_vars=formula.n_vars, clauses=tuple(residual)),
    )


def induced_fixed_set(unit_literals: Iterable[Literal]) -> FixedSet:
    """The consistent part of a unit-clause multiset: literals whose negation
    is not also forced.  Always consistent by construction."""
    units = set(unit_literals)
    return FixedSet(frozenset(l for l in units if -l not in units))


@dataclass(frozen=True, slots=True)
class RoundRecord:
    """Telemetry for one propagation round (round_index starts at 1)."""

    round_index: int
    m_counts: tuple[int, int, int, int]
    unit_conflict: bool
    induced_fixed: FixedSet

    @property
    def m0(self) -> int:
        return self.m_counts[0]

    @property
    def m1(self) -> int:
        return self.m_counts[1]

    @property
    def m2(self) -> int:
        return self.m_counts[2]

    @property
    def mstar(self) -> int:
        return self.m_counts[3]

    @property
    def mbar1(self) -> int:
        """Number of distinct variables actually forced by this round's units.

        Smaller than m1 when units repeat a literal or conflict.
        """
        return self.induced_fixed.size

    @property
    def contradiction(self) -> bool:
        return self.m0 > 0 or self.unit_conflict

    def as_dict(self) -> dict:
        return {
            "round": self.round_index,
            "m0": self.m0,
            "m1": self.m1,
            "m2": self.m2,
            "mstar": self.mstar,
            "mbar1": self.mbar1,
            "unit_conflict": self.unit_conflict,
            "induced_fixed": sorted(self.induced_fixed.literals, key=abs),
        }


class TraceVerdict(Enum):
    CONTRADICTION = "contradiction"
    EXHAUSTED_FIXED_SET = "exhausted_fixed_set"
    ROUND_CAP = "round_cap"


@dataclass(frozen=True, slots=True)
class PropagationTrace:
    """Complete record of an iterated propagation.

    verdict is CONTRADICTION iff some round saw M0 > 0 or conflicting
    units; EXHAUSTED_FIXED_SET means the induced set became empty with the
    residual left over; ROUND_CAP means the cap stopped iteration first.
    final_verdict is the residual's 2-SAT verdict when it was requested and
    no contradiction occurred.
    """

    initial_fixed: FixedSet
    rounds: tuple[RoundRecord, ...]
    verdict: TraceVerdict
    residual: CnfFormula
    final_verdict: Verdict | None = None

    @property
    def contradiction_round(self) -> int | None:
        for rec in self.rounds:
            if rec.contradiction:
                return rec.round_index
        return None

    def cumulative_fixed(self) -> tuple[int, ...]:
        """Variables fixed after each round: |L| plus the sizes of the induced
        sets.  Uses mbar1, not m1, because duplicate or conflicting units do
        not fix a variable."""
        totals = []
        s = self.initial_fixed.size
        for rec in self.rounds:
            s += rec.mbar1
            totals.append(s)
        return tuple(totals)

    @property
    def overall_satisfiable(self) -> bool | None:
        """Satisfiability of the fixed formula, when the trace decides it.

        CONTRADICTION decides no.  A ROUND_CAP trace only decides when the
        residual is unsatisfiable (fixing more variables cannot rescue it);
        otherwise the answer is None, as it is whenever the residual went
        unsolved.
        """
        if self.verdict is TraceVerdict.CONTRADICTION:
            return False
        if self.final_verdict is None:
            return None
        if not self.final_verdict.satisfiable:
            return False
        if self.verdict is TraceVerdict.ROUND_CAP:
            return None
        return True


def propagation_round(
    formula2: CnfFormula, fixed: FixedSet, round_index: int = 1
) -> tuple[RoundRecord, CnfFormula, FixedSet]:
    """One round: partition, solve the unit clauses, induce the next fixing."""
    part = partition_clauses(formula2, fixed)
    conflict = not solve_1sat(part.unit_literals).satisfiable
    next_fixed = induced_fixed_set(part.unit_literals)
    record = RoundRecord(
        round_index=round_index,
        m_counts=part.m_counts,
        unit_conflict=conflict,
        induced_fixed=next_fixed,
    )
    return record, part.residual2, next_fixed


def propagate(
    formula: CnfFormula,
    fixed: FixedSet,
    round_cap: int | None = None,
    solve_residual: bool = False,
) -> PropagationTrace:
    """Iterate propagation rounds until the induced set empties, a
    contradiction appears, or the cap is reached (default cap: n_vars, a
    safety net that cannot bind because every round either fixes a new
    variable or terminates).

    A contradiction is reported only after its round completes, so the
    round's full counts are always recorded.  With solve_residual and no
    contradiction the residual goes to the 2-SAT solver; the trace then
    decides satisfiability of the fixed formula exactly whenever iteration
    ran to exhaustion.
    """
    if round_cap is None:
        round_cap = formula.n_vars
    if round_cap < 0:
        raise ValueError(f"round_cap must be >= 0, got {round_cap}")
    rounds: list[RoundRecord] = []
    current = formula
    current_fixed = fixed
    verdict = TraceVerdict.ROUND_CAP
    if not current_fixed.literals:
        verdict = TraceVerdict.EXHAUSTED_FIXED_SET
    else:
        for r in range(1, round_cap + 1):
            record, current, next_fixed = propagation_round(current, current_fixed, r)
            rounds.append(record)
            if record.contradiction:
                verdict = TraceVerdict.CONTRADICTION
                break
            if not next_fixed.literals:
                verdict = TraceVerdict.EXHAUSTED_FIXED_SET
                break
            current_fixed = next_fixed
        else:
            verdict = TraceVerdict.ROUND_CAP
    final: Verdict | None = None
    if solve_residual and verdict is not TraceVerdict.CONTRADICTION:
        final = solve_2sat(current)
    return PropagationTrace(
        initial_fixed=fixed,
        rounds=tuple(rounds),
        verdict=verdict,
        residual=current,
        final_verdict=final,
    )


class CouplingResult(NamedTuple):
    """A relabeled formula plus the permutation and sign map that produced it.

    gamma[v-1] is the new index of variable v; theta[v-1] is +1 or -1, the
    polarity flip applied to v's literals.
    """

    formula: CnfFormula
    gamma: tuple[int, ...]
    theta: tuple[int, ...]


def relabel_coupling(formula: CnfFormula, fixed: FixedSet) -> CouplingResult:
    """Relabel variables and polarities so that fixing `fixed` in the input is
    equivalent to fixing the canonical set [n] \\ [n-f], all positive, in the
    output.

    The i-th fixed variable by magnitude maps to n+1-i, its sign flipped
    positive; untouched variables keep their relative order in 1..n-f.
    Instance by instance the two fixed formulas have the same
    satisfiability status, and on a uniform random formula the output is
    again uniform and independent of the fixed set, which is what lets
    experiments use the canonical fixing without loss of generality.
    """
    n = formula.n_vars
    fixed_lits = sorted(fixed.literals, key=abs)
    if fixed_lits and abs(fixed_lits[-1]) > n:
        raise VariableOutOfRange(
            f"fixed literal {fixed_lits[-1]} outside 1..{n}"
        )
    gamma = [0] * n
    theta = [1] * n
    for i, lit in enumerate(fixed_lits, start=1):
        v = abs(lit)
        gamma[v - 1] = n + 1 - i
        theta[v - 1] = 1 if lit > 0 else -1
    free_target = 0
    for v in range(1, n + 1):
        if gamma[v - 1] == 0:
            free_target += 1
            gamma[v - 1] = free_target
    mapped = []
    for clause in formula.clauses:
        new_lits = [
            (1 if l > 0 else -1) * theta[abs(l) - 1] * gamma[abs(l) - 1]
            for l in clause.literals
        ]
        mapped.append(canonicalize_clause(new_lits))
    relabeled = CnfFormula(n_vars=n, clauses=tuple(mapped))
    return CouplingResult(formula=relabeled, gamma=tuple(gamma), theta=tuple(theta))


def substitute_fixed(formula: CnfFormula, fixed: FixedSet) -> tuple[CnfFormula, int]:
    """Apply a fixing syntactically: drop satisfied clauses, delete falsified
    literals.  Returns the shrunken formula (width-2 clauses may become
    units) and the number of clauses falsified outright, which cannot be
    represented as clauses; the substituted formula is unsatisfiable iff
    that count is positive or the returned formula is.
    """
    lits = fixed.literals
    kept: list[Clause] = []
    falsified = 0
    for clause in formula.clauses:
        if any(l in lits for l in clause.literals):
            continue
        remaining = tuple(l for l in clause.literals if -l not in lits)
        if not remaining:
            falsified += 1
        elif len(remaining) == clause.width:
            kept.append(clause)
        else:
            kept.append(Clause(remaining))
    return CnfFormula(n_vars=formula.n_vars, clauses=tuple(kept)), falsified
