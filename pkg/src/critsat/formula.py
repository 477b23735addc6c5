"""Core syntactic objects: literals, clauses, CNF formulas, assignments, fixed sets.

Conventions used throughout the package:

* Variables are 1-based.  A literal is a nonzero signed int; sign is the
  polarity, magnitude is the variable index.  ``3`` means "variable 3 is
  true", ``-3`` means "variable 3 is false".
* A clause stores its literals with strictly increasing variable
  magnitudes.  This is the canonical form of the sampling space: the model
  draws clauses from the 2^k * C(n, k) tuples with non-overlapping
  variables, so a clause never mentions a variable twice, in either
  polarity.
* Clause order inside a formula is significant and duplicates are allowed;
  two formulas are equal iff their clause lists are equal elementwise.
* The empty formula (zero clauses) is valid and satisfiable.

All types here are immutable after construction and safe to share between
threads or worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    DimacsSyntaxError,
    DuplicateVariable,
    InconsistentFixedSet,
    LengthMismatch,
    VariableOrderViolation,
    VariableOutOfRange,
)

# A literal is just an int; the alias is documentation, not enforcement.
Literal = int


def _check_literal(value: int) -> int:
    if not isinstance(value, (int,)) or isinstance(value, bool):
        raise TypeError(f"literal must be an int, got {type(value).__name__}")
    if value == 0:
        raise VariableOutOfRange("literal 0 is not allowed (variables are 1-based)")
    return int(value)


@dataclass(frozen=True, slots=True)
class Clause:
    """An ordered disjunction of literals with strictly increasing magnitudes."""

    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        if not self.literals:
            raise VariableOrderViolation("empty clause is not representable")
        lits = tuple(_check_literal(l) for l in self.literals)
        object.__setattr__(self, "literals", lits)
        prev = 0
        for lit in lits:
            v = abs(lit)
            if v == prev:
                raise DuplicateVariable(f"variable {v} occurs twice in clause {lits}")
            if v < prev:
                raise VariableOrderViolation(
                    f"literals {lits} are not sorted by increasing variable"
                )
            prev = v

    @property
    def width(self) -> int:
        return len(self.literals)

    def variables(self) -> tuple[int, ...]:
        return tuple(abs(l) for l in self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        return "(" + " v ".join(str(l) for l in self.literals) + ")"


def make_clause(literals: Iterable[Literal]) -> Clause:
    """Build a clause from literals already in strictly increasing variable order.

    Raises VariableOrderViolation if the magnitudes are out of order and
    DuplicateVariable if a variable appears twice.
    """
    return Clause(tuple(literals))


def canonicalize_clause(literals: Iterable[Literal]) -> Clause:
    """Sort literals by variable magnitude and build a clause.

    The input order is arbitrary; duplicate or complementary occurrences of a
    variable are rejected rather than repaired, since the model's clause
    space excludes them and silent repair would skew distribution tests.
    """
    lits = sorted((_check_literal(l) for l in literals), key=abs)
    if not lits:
        raise VariableOrderViolation("empty clause is not representable")
    return Clause(tuple(lits))


@dataclass(frozen=True, slots=True)
class CnfFormula:
    """A conjunction of clauses over variables 1..n_vars, in a significant order."""

    n_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.n_vars < 0:
            raise VariableOutOfRange(f"n_vars must be nonnegative, got {self.n_vars}")
        clauses = tuple(self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for clause in clauses:
            # Magnitudes inside a clause are increasing, so checking the last is enough.
            if abs(clause.literals[-1]) > self.n_vars:
                raise VariableOutOfRange(
                    f"clause {clause} mentions a variable beyond n_vars={self.n_vars}"
                )

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def max_width(self) -> int:
        return max((c.width for c in self.clauses), default=0)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True, slots=True)
class Assignment:
    """A total truth assignment; values[v-1] is the value of variable v."""

    values: tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(bool(b) for b in self.values))

    @property
    def n_vars(self) -> int:
        return len(self.values)

    def value_of(self, literal: Literal) -> bool:
        v = abs(literal)
        if not 1 <= v <= len(self.values):
            raise VariableOutOfRange(f"literal {literal} outside 1..{len(self.values)}")
        val = self.values[v - 1]
        return val if literal > 0 else not val

    def __iter__(self) -> Iterator[bool]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, slots=True)
class FixedSet:
    """A consistent set of literals: the variables being fixed, with polarities.

    Consistency means no literal appears together with its negation.
    """

    literals: frozenset[Literal]

    def __post_init__(self) -> None:
        lits = frozenset(_check_literal(l) for l in self.literals)
        object.__setattr__(self, "literals", lits)
        for lit in lits:
            if -lit in lits:
                raise InconsistentFixedSet(
                    f"literals {lit} and {-lit} are both present"
                )

    @property
    def size(self) -> int:
        return len(self.literals)

    def variables(self) -> frozenset[int]:
        return frozenset(abs(l) for l in self.literals)

    def covers(self, literal: Literal) -> bool:
        """True iff the literal's variable is assigned by this set (either sign)."""
        return literal in self.literals or -literal in self.literals

    def sign_of(self, variable: int) -> int:
        """+1 / -1 if the variable is fixed true / false, 0 if untouched."""
        if variable in self.literals:
            return 1
        if -variable in self.literals:
            return -1
        return 0

    def __contains__(self, literal: Literal) -> bool:
        return literal in self.literals

    def __iter__(self) -> Iterator[Literal]:
        return iter(sorted(self.literals, key=abs))

    def __len__(self) -> int:
        return len(self.literals)


EMPTY_FIXED_SET = FixedSet(frozenset())


def fixed_set(literals: Iterable[Literal]) -> FixedSet:
    return FixedSet(frozenset(literals))


def evaluate(formula: CnfFormula, x: Assignment) -> bool:
    """Conjunction-of-disjunctions semantics; the empty formula is true."""
    if x.n_vars != formula.n_vars:
        raise LengthMismatch(
            f"assignment has {x.n_vars} values, formula has {formula.n_vars} variables"
        )
    vals = x.values
    for clause in formula.clauses:
        for lit in clause.literals:
            if vals[abs(lit) - 1] == (lit > 0):
                break
        else:
            return False
    return True


def apply_fixed(x: Assignment, fixed: FixedSet) -> Assignment:
    """Overwrite x at the fixed variables: v true when v in L, false when -v in L.

    evaluate(formula, apply_fixed(x, L)) is the satisfaction value of the
    fixed formula at x; the entries of x under fixed variables are ignored.
    """
    values = list(x.values)
    n = len(values)
    for lit in fixed.literals:
        v = abs(lit)
        if v > n:
            raise VariableOutOfRange(f"fixed literal {lit} outside assignment of length {n}")
        values[v - 1] = lit > 0
    return Assignment(tuple(values))


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF. Clauses are canonicalized; tautologies and duplicate
    variables within a clause are rejected because the sampling space excludes them.
    """
    n_vars: int | None = None
    n_clauses_declared: int | None = None
    clauses: list[Clause] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n_vars is not None:
                raise DimacsSyntaxError(f"line {lineno}: duplicate problem line")
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsSyntaxError(f"line {lineno}: expected 'p cnf <n> <m>'")
            try:
                n_vars = int(parts[2])
                n_clauses_declared = int(parts[3])
            except ValueError as exc:
                raise DimacsSyntaxError(f"line {lineno}: non-integer header field") from exc
            if n_vars < 0 or n_clauses_declared < 0:
                raise DimacsSyntaxError(f"line {lineno}: negative header field")
            continue
        if n_vars is None:
            raise DimacsSyntaxError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError as exc:
                raise DimacsSyntaxError(f"line {lineno}: bad token {tok!r}") from exc
            if lit == 0:
                if not pending:
                    raise DimacsSyntaxError(f"line {lineno}: empty clause")
                clause = canonicalize_clause(pending)
                if abs(clause.literals[-1]) > n_vars:
                    raise VariableOutOfRange(
                        f"line {lineno}: clause {clause} exceeds declared n={n_vars}"
                    )
                clauses.append(clause)
                pending.clear()
            else:
                pending.append(lit)
    if pending:
        raise DimacsSyntaxError("last clause is not 0-terminated")
    if n_vars is None:
        raise DimacsSyntaxError("missing problem line")
    if n_clauses_declared is not None and n_clauses_declared != len(clauses):
        raise DimacsSyntaxError(
            f"header declares {n_clauses_declared} clauses, found {len(clauses)}"
        )
    return CnfFormula(n_vars=n_vars, clauses=tuple(clauses))


def write_dimacs(formula: CnfFormula) -> str:
    """Serialize to DIMACS CNF; parse_dimacs(write_dimacs(f)) == f."""
    lines = [f"p cnf {formula.n_vars} {formula.n_clauses}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(l) for l in clause.literals) + " 0")
    return "\n".join(lines) + "\n"
