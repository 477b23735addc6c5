"""The exact clause-category law and its Monte Carlo verification.

Under f fixed variables out of n, a uniform random clause lands in the
four categories with probabilities that are plain ratios of binomial
counts.  clause_category_probs gives them as exact fractions;
run_distribution_check samples clauses and tests the observed counts
against that law.
"""

from critsat import (
    clause_category_probs,
    enumerate_category_counts,
    run_distribution_check,
)

# The smallest interesting case: n = 4, f = 2.  Of the 24 clauses, one
# is falsified, eight become units, four are untouched, eleven satisfied.
probs = clause_category_probs(4, 2)
counts = enumerate_category_counts(4, 2)
print("n=4, f=2 counts:", counts, "of", sum(counts))
print("probabilities:  ", [str(p) for p in probs.as_tuple()])

# How the mass moves as f grows at n = 100.  Fixing more variables
# drains the untouched category and feeds units and satisfied clauses;
# the falsified share stays tiny until f is a real fraction of n.
print()
print("  f   p_falsified   p_unit   p_untouched   p_satisfied")
for f in (0, 5, 10, 25, 50, 100):
    p0, p1, p2, ps = clause_category_probs(100, f).as_floats()
    print(f"{f:>3}   {p0:11.5f}   {p1:6.4f}   {p2:11.4f}   {ps:11.4f}")

# Sampled counts against the law: category means within 4 sigma and a
# pooled chi-square over all samples.
report = run_distribution_check(n=100, f=10, m=100, samples=30_000, master_seed=3)
print()
print("distribution check at n=100, f=10, m=100:")
for cat in report.categories:
    print(f"  {cat.name:>10}: mean {cat.observed_mean:8.4f}"
          f" expected {cat.expected_mean:8.4f}  z = {cat.z_score:+.2f}")
print(f"chi-square p = {report.chisq_pvalue:.3f}  passed = {report.passed}")
