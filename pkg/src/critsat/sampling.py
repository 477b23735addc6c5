"""Uniform sampling of clauses, formulas, and fixed sets with splittable RNG streams.

The random formula model draws m clauses independently and uniformly from
the 2^k * C(n, k) clauses whose k variables are distinct and sorted by
magnitude.  Reproducibility is a hard requirement of the experiment
harness, so all randomness flows through RngStream values keyed by a
64-bit master seed and a 64-bit stream index; the same key yields the same
sequence on every platform, and distinct trial indices yield independent
streams.  Nothing here shares mutable state, so streams can be handed to
worker threads or processes freely (each stream to exactly one worker).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec
from .formula import Clause, CnfFormula, FixedSet

_MAX_SEED = 2**64


class RngStream:
    """A reproducible random stream identified by (master_seed, stream_index).

    Wraps a PCG64 generator seeded through a SeedSequence, which guarantees
    that distinct stream indices give statistically independent streams and
    that the mapping from key to sequence is stable across platforms.
    The stream is stateful: sampling operations consume it in place.
    """

    __slots__ = ("master_seed", "stream_index", "generator")

    def __init__(self, master_seed: int, stream_index: int = 0):
        if not 0 <= master_seed < _MAX_SEED:
            raise InvalidSpec(f"master_seed must be a 64-bit unsigned int, got {master_seed}")
        if not 0 <= stream_index < _MAX_SEED:
            raise InvalidSpec(f"stream_index must be a 64-bit unsigned int, got {stream_index}")
        self.master_seed = int(master_seed)
        self.stream_index = int(stream_index)
        seq = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(self.stream_index,))
        self.generator = np.random.Generator(np.random.PCG64(seq))

    def __repr__(self) -> str:
        return f"RngStream(master_seed={self.master_seed}, stream_index={self.stream_index})"


def derive_stream(master_seed: int, trial_index: int) -> RngStream:
    """The per-trial stream of an experiment: trial i reads stream index i.

    This derivation is part of the package's stability contract; tables
    produced by the harness depend only on (master_seed, trial index),
    never on scheduling or worker count.
    """
    return RngStream(master_seed, trial_index)


@dataclass(frozen=True, slots=True)
class SampleSpec:
    """Parameters of the random formula model: n variables, m clauses of width k."""

    n: int
    m: int
    k: int = 2

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidSpec(f"clause width k must be >= 1, got {self.k}")
        if self.m < 0:
            raise InvalidSpec(f"clause count m must be >= 0, got {self.m}")
        if self.n < 0:
            raise InvalidSpec(f"variable count n must be >= 0, got {self.n}")
        if self.m > 0 and self.n < self.k:
            raise InvalidSpec(f"need n >= k to sample clauses, got n={self.n}, k={self.k}")


def sample_clause(n: int, k: int, rng: RngStream) -> Clause:
    """One clause uniform on the 2^k * C(n, k) sorted-variable clauses."""
    if k < 1 or n < k:
        raise InvalidSpec(f"need n >= k >= 1, got n={n}, k={k}")
    gen = rng.generator
    variables = np.sort(gen.choice(n, size=k, replace=False)) + 1
    signs = gen.integers(0, 2, size=k) * 2 - 1
    return Clause(tuple(int(s * v) for v, s in zip(variables, signs)))


def _sample_clause_pairs(n: int, m: int, gen: np.random.Generator) -> np.ndarray:
    """m independent width-2 clauses as an (m, 2) array of signed literals.

    Distinct variables come from a two-step partial shuffle: the second
    index is drawn uniformly from the n-1 values other than the first, by
    shifting a draw from [1, n-1] past the first.  Exactly uniform over
    unordered pairs after sorting, with no rejection loop, so the number of
    generator draws is a fixed function of (n, m).
    """
    a = gen.integers(1, n + 1, size=m, dtype=np.int64)
    b = gen.integers(1, n, size=m, dtype=np.int64)
    b = b + (b >= a)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    signs = gen.integers(0, 2, size=(m, 2), dtype=np.int64) * 2 - 1
    out = np.empty((m, 2), dtype=np.int64)
    out[:, 0] = lo * signs[:, 0]
    out[:, 1] = hi * signs[:, 1]
    return out


def _sample_unit_literals(n: int, m: int, gen: np.random.Generator) -> np.ndarray:
    """m independent width-1 clauses (literals uniform on +-[n])."""
    v = gen.integers(1, n + 1, size=m, dtype=np.int64)
    signs = gen.integers(0, 2, size=m, dtype=np.int64) * 2 - 1
    return v * signs


def sample_formula(spec: SampleSpec, rng: RngStream) -> CnfFormula:
    """m independent uniform clauses, order preserved.

    Widths 1 and 2 run vectorized; the general width falls back to
    per-clause sampling.  Each path consumes the stream in a fixed pattern,
    so a given (spec, stream) always produces the same formula.
    """
    if spec.m == 0:
        return CnfFormula(n_vars=spec.n, clauses=())
    if spec.k == 2:
        pairs = _sample_clause_pairs(spec.n, spec.m, rng.generator)
        clauses = tuple(Clause((int(r[0]), int(r[1]))) for r in pairs)
    elif spec.k == 1:
        lits = _sample_unit_literals(spec.n, spec.m, rng.generator)
        clauses = tuple(Clause((int(l),)) for l in lits)
    else:
        clauses = tuple(sample_clause(spec.n, spec.k, rng) for _ in range(spec.m))
    return CnfFormula(n_vars=spec.n, clauses=clauses)


def _sample_fixed_lits(n: int, f: int, gen: np.random.Generator) -> np.ndarray:
    """f distinct variables, uniform without replacement, independent fair signs."""
    variables = gen.choice(n, size=f, replace=False) + 1
    signs = gen.integers(0, 2, size=f) * 2 - 1
    return (variables * signs).astype(np.int64)


def sample_fixed_set(n: int, f: int, rng: RngStream) -> FixedSet:
    """A uniform consistent fixed set: f distinct variables with fair random signs."""
    if not 0 <= f <= n:
        raise InvalidSpec(f"need 0 <= f <= n, got f={f}, n={n}")
    if f == 0:
        return FixedSet(frozenset())
    lits = _sample_fixed_lits(n, f, rng.generator)
    return FixedSet(frozenset(int(l) for l in lits))


def canonical_fixed_set(n: int, f: int) -> FixedSet:
    """The canonical fixed set [n] \\ [n-f]: the top f variables, all positive.

    This is the normal form that the relabeling coupling maps any consistent
    set onto.
    """
    if not 0 <= f <= n:
        raise InvalidSpec(f"need 0 <= f <= n, got f={f}, n={n}")
    return FixedSet(frozenset(range(n - f + 1, n + 1)))
