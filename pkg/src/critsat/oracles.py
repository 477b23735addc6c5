"""Closed-form reference quantities: category probabilities, the 1-SAT bound,
round budgets, and the critical Poisson branching process.

When f variables out of n are fixed, a uniform random width-2 clause falls
into one of four categories: falsified (both literals disagree with the
fixing), reduced to a unit clause, untouched, or satisfied.  The category
probability vector p(n, f) is computed in exact rational arithmetic
because the test suite requires equality with brute-force enumeration of
the clause space, not closeness.

The branching process is the heuristic picture of unit propagation at the
critical density: each round's unit clauses beget roughly
Poisson(previous count) new ones, a critical Galton-Watson process whose
survival probability at generation t decays like 2/t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import InvalidSpec, TooLarge
from .sampling import RngStream

_ENUMERATION_MAX_N = 200


@dataclass(frozen=True, slots=True)
class CategoryProbs:
    """Exact clause-category distribution under f of n fixed variables."""

    p0: Fraction
    p1: Fraction
    p2: Fraction
    pstar: Fraction

    def __post_init__(self) -> None:
        for name in ("p0", "p1", "p2", "pstar"):
            p = getattr(self, name)
            if not 0 <= p <= 1:
                raise InvalidSpec(f"{name}={p} outside [0, 1]")
        if self.p0 + self.p1 + self.p2 + self.pstar != 1:
            raise InvalidSpec("category probabilities must sum to exactly 1")

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.p0, self.p1, self.p2, self.pstar)

    def as_floats(self) -> tuple[float, float, float, float]:
        return tuple(float(p) for p in self.as_tuple())


def clause_category_probs(n: int, f: int) -> CategoryProbs:
    """The multinomial cell probabilities (p0, p1, p2, p*) for one uniform clause.

    p0 = f(f-1) / (4n(n-1))          both literals falsified
    p1 = (n-f)f / (n(n-1))           one variable fixed, clause not satisfied
    p2 = (n-f)(n-f-1) / (n(n-1))     neither variable fixed
    p* = (n - f/4 - 3/4)f / (n(n-1)) some literal satisfied
    """
    if n < 2:
        raise InvalidSpec(f"need n >= 2, got n={n}")
    if not 0 <= f <= n:
        raise InvalidSpec(f"need 0 <= f <= n, got f={f}")
    nn, ff = Fraction(n), Fraction(f)
    denom = nn * (nn - 1)
    return CategoryProbs(
        p0=ff * (ff - 1) / (4 * denom),
        p1=(nn - ff) * ff / denom,
        p2=(nn - ff) * (nn - ff - 1) / denom,
        pstar=(nn - ff / 4 - Fraction(3, 4)) * ff / denom,
    )


def enumerate_category_counts(n: int, f: int) -> tuple[int, int, int, int]:
    """Brute enumeration of the 4*C(n,2) width-2 clauses under the canonical
    fixing [n] \\ [n-f] (top f variables, all positive).

    This is the oracle clause_category_probs is tested against: counts
    divided by the clause-space size must equal the formulas exactly.
    """
    if n < 2:
        raise InvalidSpec(f"need n >= 2, got n={n}")
    if not 0 <= f <= n:
        raise InvalidSpec(f"need 0 <= f <= n, got f={f}")
    if n > _ENUMERATION_MAX_N:
        raise TooLarge(f"enumeration is guarded at n={_ENUMERATION_MAX_N}, got {n}")
    threshold = n - f  # variables above this are fixed true
    c0 = c1 = c2 = cstar = 0
    for v1 in range(1, n + 1):
        for v2 in range(v1 + 1, n + 1):
            for s1 in (1, -1):
                for s2 in (1, -1):
                    sat1 = v1 > threshold and s1 > 0
                    sat2 = v2 > threshold and s2 > 0
                    false1 = v1 > threshold and s1 < 0
                    false2 = v2 > threshold and s2 < 0
                    if sat1 or sat2:
                        cstar += 1
                    elif false1 and false2:
                        c0 += 1
                    elif false1 or false2:
                        c1 += 1
                    else:
                        c2 += 1
    return (c0, c1, c2, cstar)


def one_sat_bound(n: int, m: int) -> float:
    """Lower bound (1 - m/n)^m on the satisfiability probability of m random
    unit clauses over n variables; valid for n >= m."""
    if m < 0 or n < m:
        raise InvalidSpec(f"need n >= m >= 0, got n={n}, m={m}")
    if m == 0:
        return 1.0
    return (1.0 - m / n) ** m


class BudgetRegime(str, Enum):
    OVER = "over"
    UNDER = "under"


@dataclass(frozen=True, slots=True)
class RoundBudget:
    """Number of propagation rounds the two asymptotic analyses track."""

    regime: BudgetRegime
    n: int
    q: float
    rounds: int


def rounds_budget(n: int, q: float, regime: BudgetRegime | str) -> RoundBudget:
    """R = floor(n^(1-2q) * ln n) above the cutoff, floor(n^(1-2q) / ln^3 n)
    below it.  Logarithms are natural.

    Note that the under-cutoff budget collapses to 0 for desk-scale n; the
    trajectory study therefore runs to natural termination and reports
    budgets as metadata.
    """
    if n < 3:
        raise InvalidSpec(f"need n >= 3, got n={n}")
    if not 0 < q <= 0.5:
        raise InvalidSpec(f"need 0 < q <= 1/2, got q={q}")
    regime = BudgetRegime(regime)
    log_n = math.log(n)
    scale = float(n) ** (1.0 - 2.0 * q)
    if regime is BudgetRegime.OVER:
        rounds = math.floor(scale * log_n)
    else:
        rounds = math.floor(scale / log_n**3)
    return RoundBudget(regime=regime, n=n, q=q, rounds=rounds)


@dataclass(frozen=True, slots=True)
class GwConfig:
    """A critical branching-process run: Poisson(1) offspring, so the
    conditional law of a generation given the last is Poisson(previous size)."""

    x0: int
    max_gen: int

    def __post_init__(self) -> None:
        if self.x0 < 0:
            raise InvalidSpec(f"x0 must be >= 0, got {self.x0}")
        if self.max_gen < 0:
            raise InvalidSpec(f"max_gen must be >= 0, got {self.max_gen}")


def gw_generation(x: int, rng: RngStream) -> int:
    """One branching step: Poisson(x) children of a generation of size x."""
    if x < 0:
        raise InvalidSpec(f"generation size must be >= 0, got {x}")
    if x == 0:
        return 0
    return int(rng.generator.poisson(x))


@dataclass(frozen=True, slots=True)
class GwSurvival:
    x0: int
    gen: int
    trials: int
    survivors: int
    estimate: float
    stderr: float


def gw_survival(x0: int, gen: int, trials: int, seed: int) -> GwSurvival:
    """Monte Carlo estimate of P(X_gen > 0 | X_0 = x0) with binomial standard error.

    All trials evolve in lockstep, one vectorized Poisson draw per
    generation over the still-alive population, from a single stream
    derived from the seed; the result depends only on the arguments.
    """
    if trials < 1:
        raise InvalidSpec(f"need trials >= 1, got {trials}")
    if x0 < 0 or gen < 0:
        raise InvalidSpec(f"need x0 >= 0 and gen >= 0, got x0={x0}, gen={gen}")
    gen_rng = RngStream(seed, 0).generator
    population = np.full(trials, x0, dtype=np.int64)
    for _ in range(gen):
        alive = population > 0
        if not alive.any():
            break
        population[alive] = gen_rng.poisson(population[alive])
    survivors = int(np.count_nonzero(population))
    p_hat = survivors / trials
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return GwSurvival(
        x0=x0, gen=gen, trials=trials, survivors=survivors, estimate=p_hat, stderr=stderr
    )


def gw_survival_exact(gen: int) -> float:
    """Exact P(X_gen > 0 | X_0 = 1) via the generating-function recursion
    u <- exp(u - 1); survival is 1 - u after gen steps.  Test oracle."""
    if gen < 0:
        raise InvalidSpec(f"need gen >= 0, got {gen}")
    u = 0.0
    for _ in range(gen):
        u = math.exp(u - 1.0)
    return 1.0 - u
