"""Clauses, formulas, assignments, and the DIMACS round trip.

A small guided tour of the core types using a 4-variable formula with
exactly one satisfying assignment.
"""

from critsat import (
    Assignment,
    brute_force_models,
    canonicalize_clause,
    evaluate,
    make_clause,
    parse_dimacs,
    write_dimacs,
)
from critsat.formula import CnfFormula

# Clauses hold nonzero integer literals, sorted by variable, no variable
# twice.  make_clause checks, canonicalize_clause sorts for you.
c = make_clause([1, 2])
print("clause:", c.literals)
print("canonicalized (4, -2):", canonicalize_clause([4, -2]).literals)

# Five clauses over four variables.  Clause three says x3 implies x4,
# clause four forbids x1 and x4 together, and working through the rest
# pins every variable.
formula = CnfFormula(
    n_vars=4,
    clauses=(
        make_clause([1, 2]),
        make_clause([-2, 3]),
        make_clause([-3, 4]),
        make_clause([-1, -4]),
        make_clause([2, 4]),
    ),
)
print("formula:", formula.n_vars, "vars,", formula.n_clauses, "clauses")

# Brute force confirms the unique model: x1 false, the rest true.
models = brute_force_models(formula)
print("models:", [m.values for m in models])
assert models == [Assignment(values=(False, True, True, True))]

# evaluate() checks a candidate assignment clause by clause.
print("unique model evaluates:", evaluate(formula, models[0]))
print("all-true evaluates:", evaluate(formula, Assignment(values=(True,) * 4)))

# The DIMACS text form round-trips exactly.
text = write_dimacs(formula)
print()
print(text, end="")
assert parse_dimacs(text) == formula
assert write_dimacs(parse_dimacs(text)) == text
print()
print("round trip exact")
