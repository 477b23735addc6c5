"""Array-based trial engine behind the experiment harness.

The object layer in propagation.py states the round semantics; this module
repeats them on flat numpy arrays so that a single trial at n = 10^5 costs
milliseconds instead of seconds.  The two implementations are cross-checked
continuously: the harness re-runs an audited subsample of trials through
the object layer and insists on identical verdicts.

Everything here is deterministic given (master_seed, cell_index,
trial_index).  Worker threads only ever write disjoint slices of
preallocated output arrays, so the worker count cannot influence results,
only wall time.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import CritsatError
from .sampling import (
    _sample_clause_pairs,
    _sample_fixed_lits,
    derive_stream,
)
from .solve import _implication_edges, _scc_labels

VERDICT_CONTRADICTION = 0
VERDICT_EXHAUSTED = 1
VERDICT_ROUND_CAP = 2

_MODES = ("plain", "proof-faithful")
_FIX_MODES = ("uniform", "canonical")


class AuditFailure(CritsatError):
    """The fast path and the reference implementation disagreed on a trial."""


@dataclass(slots=True)
class PairTrace:
    """Outcome of one array-level propagation run."""

    verdict: int
    residual_pairs: np.ndarray  # (r, 2) literals over the residual universe
    residual_n_vars: int
    # Telemetry, empty unless collect_rounds was set:
    m0: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    mstar: np.ndarray
    mbar1: np.ndarray
    conflicts: np.ndarray

    @property
    def n_rounds(self) -> int:
        return len(self.m1)


_EMPTY_I64 = np.empty(0, dtype=np.int64)
_EMPTY_BOOL = np.empty(0, dtype=bool)


def propagate_pairs(
    pairs: np.ndarray,
    n: int,
    fixed_lits: np.ndarray,
    round_cap: int,
    collect_rounds: bool = False,
) -> PairTrace:
    """Round-based propagation on an (m, 2) literal array.

    Incremental: per-variable occurrence lists are built once, and each
    round only visits clauses containing a newly fixed variable, so total
    work is O(n + m) regardless of round count.
    """
    m = len(pairs)
    if len(fixed_lits) == 0:
        # Nothing to fix: zero rounds, the whole formula is the residual.
        return PairTrace(
            VERDICT_EXHAUSTED, pairs, n,
            _EMPTY_I64, _EMPTY_I64, _EMPTY_I64, _EMPTY_I64, _EMPTY_I64, _EMPTY_BOOL,
        )
    flat_vars = np.abs(pairs).ravel()
    order = np.argsort(flat_vars, kind="stable")
    occ_clause = order >> 1  # entry position p belongs to clause p // 2
    counts = np.bincount(flat_vars, minlength=n + 1)
    ends = np.cumsum(counts)  # ends[v] = end of variable v's slice in occ_clause

    sign = np.zeros(n + 1, dtype=np.int8)
    active = np.ones(m, dtype=bool)
    active_count = m
    current = np.asarray(fixed_lits, dtype=np.int64)

    rounds_m0: list[int] = []
    rounds_m1: list[int] = []
    rounds_m2: list[int] = []
    rounds_mstar: list[int] = []
    rounds_mbar1: list[int] = []
    rounds_conflict: list[bool] = []

    verdict = VERDICT_ROUND_CAP
    rounds_done = 0
    while rounds_done < round_cap:
        rounds_done += 1
        cur_vars = np.abs(current)
        sign[cur_vars] = np.sign(current).astype(np.int8)
        slices = [occ_clause[ends[v - 1] : ends[v]] for v in cur_vars]
        if slices:
            cand = np.unique(np.concatenate(slices))
            cand = cand[active[cand]]
        else:
            cand = np.empty(0, dtype=np.int64)
        l1 = pairs[cand, 0]
        l2 = pairs[cand, 1]
        v1 = sign[np.abs(l1)] * np.sign(l1)  # +1 true, -1 false, 0 free
        v2 = sign[np.abs(l2)] * np.sign(l2)
        sat = (v1 > 0) | (v2 > 0)
        c0 = ~sat & (v1 < 0) & (v2 < 0)
        u1 = ~sat & (v1 < 0) & (v2 == 0)  # l2 survives as a unit
        u2 = ~sat & (v2 < 0) & (v1 == 0)
        m0 = int(np.count_nonzero(c0))
        mstar = int(np.count_nonzero(sat))
        units = np.concatenate([l2[u1], l1[u2]])
        m1 = len(units)
        active[cand] = False
        active_count -= len(cand)

        uniq = np.unique(units)
        clash = np.isin(uniq, -uniq, assume_unique=True)
        conflict = bool(clash.any())
        nxt = uniq[~clash]

        if collect_rounds:
            rounds_m0.append(m0)
            rounds_m1.append(m1)
            rounds_m2.append(active_count)
            rounds_mstar.append(mstar)
            rounds_mbar1.append(len(nxt))
            rounds_conflict.append(conflict)

        if m0 > 0 or conflict:
            verdict = VERDICT_CONTRADICTION
            break
        if len(nxt) == 0:
            verdict = VERDICT_EXHAUSTED
            break
        current = nxt

    residual = pairs[active]
    return PairTrace(
        verdict,
        residual,
        n,
        np.asarray(rounds_m0, dtype=np.int64),
        np.asarray(rounds_m1, dtype=np.int64),
        np.asarray(rounds_m2, dtype=np.int64),
        np.asarray(rounds_mstar, dtype=np.int64),
        np.asarray(rounds_mbar1, dtype=np.int64),
        np.asarray(rounds_conflict, dtype=bool),
    )


def _relabel_pairs(pairs: np.ndarray, n: int, fixed_lits: np.ndarray) -> np.ndarray:
    """Array form of the relabeling coupling: returns pairs over [n] in which
    fixing the canonical top-|L| suffix, all positive, is equivalent to
    fixing `fixed_lits` in the input."""
    f = len(fixed_lits)
    if f == 0:
        return pairs
    gamma = np.zeros(n + 1, dtype=np.int64)
    theta = np.ones(n + 1, dtype=np.int64)
    by_mag = fixed_lits[np.argsort(np.abs(fixed_lits), kind="stable")]
    fixed_vars = np.abs(by_mag)
    gamma[fixed_vars] = n - np.arange(f)  # i-th smallest fixed variable -> n+1-(i+1)+1
    theta[fixed_vars] = np.sign(by_mag)
    free = np.flatnonzero(gamma[1:] == 0) + 1
    gamma[free] = np.arange(1, len(free) + 1)
    mag = np.abs(pairs)
    mapped = np.sign(pairs) * theta[mag] * gamma[mag]
    lo_first = np.abs(mapped[:, 0]) < np.abs(mapped[:, 1])
    out = np.empty_like(mapped)
    out[:, 0] = np.where(lo_first, mapped[:, 0], mapped[:, 1])
    out[:, 1] = np.where(lo_first, mapped[:, 1], mapped[:, 0])
    return out


def proof_faithful_trial(
    pairs: np.ndarray,
    n: int,
    f: int,
    fixed_lits: np.ndarray | None,
    gen: np.random.Generator,
    round_cap: int,
    collect_rounds: bool = False,
) -> PairTrace:
    """The controlled propagation process of the over-constrained analysis.

    Differences from plain propagation, round r with cumulative count S:

    * the formula is re-coupled each round so the fixing is always the
      canonical suffix, and round r fixes (M1 - 1)^+ variables where M1 is
      the previous round's unit-clause count (initialized to f + 1, so the
      first round fixes exactly f), not the induced set itself;
    * after each round the clause list is padded with fresh uniform
      clauses, or truncated, to exactly (n - floor(ln n) * S)^+ clauses
      over the shrunken universe of n - S variables.

    This process majorizes the satisfiability of the plain one; it is a
    different experiment, not a faster equivalent.
    """
    if fixed_lits is not None:
        pairs = _relabel_pairs(pairs, n, fixed_lits)
    log_floor = math.floor(math.log(n)) if n >= 2 else 0
    s_cum = f
    m1_prev = f + 1
    universe = n

    rounds_m0: list[int] = []
    rounds_m1: list[int] = []
    rounds_m2: list[int] = []
    rounds_mstar: list[int] = []
    rounds_mbar1: list[int] = []
    rounds_conflict: list[bool] = []

    verdict = VERDICT_ROUND_CAP
    rounds_done = 0
    while rounds_done < round_cap:
        fix_count = max(m1_prev - 1, 0)
        if fix_count == 0:
            verdict = VERDICT_EXHAUSTED
            break
        rounds_done += 1
        threshold = universe - fix_count
        mag = np.abs(pairs)
        val1 = np.where(mag[:, 0] > threshold, np.sign(pairs[:, 0]), 0)
        val2 = np.where(mag[:, 1] > threshold, np.sign(pairs[:, 1]), 0)
        sat = (val1 > 0) | (val2 > 0)
        c0 = ~sat & (val1 < 0) & (val2 < 0)
        u1 = ~sat & (val1 < 0) & (val2 == 0)
        u2 = ~sat & (val2 < 0) & (val1 == 0)
        untouched = ~sat & ~c0 & ~u1 & ~u2
        units = np.concatenate([pairs[u1, 1], pairs[u2, 0]])
        m0 = int(np.count_nonzero(c0))
        m1 = len(units)
        mstar = int(np.count_nonzero(sat))
        uniq = np.unique(units)
        clash = np.isin(uniq, -uniq, assume_unique=True)
        conflict = bool(clash.any())
        induced = uniq[~clash]

        universe = threshold
        residual = pairs[untouched]

        if collect_rounds:
            rounds_m0.append(m0)
            rounds_m1.append(m1)
            rounds_m2.append(len(residual))
            rounds_mstar.append(mstar)
            rounds_mbar1.append(len(induced))
            rounds_conflict.append(conflict)

        if m0 > 0 or conflict:
            pairs = residual
            verdict = VERDICT_CONTRADICTION
            break

        # Re-couple the untouched clauses so the induced set becomes the
        # canonical suffix of the shrunken universe.
        residual = _relabel_pairs(residual, universe, induced)
        # Pad with fresh uniform clauses, or truncate, to the scheduled count.
        target = max(n - log_floor * s_cum, 0)
        if len(residual) > target:
            residual = residual[:target]
        elif len(residual) < target:
            if universe < 2:
                verdict = VERDICT_EXHAUSTED
                pairs = residual
                break
            padding = _sample_clause_pairs(universe, target - len(residual), gen)
            residual = np.concatenate([residual, padding])
        pairs = residual
        s_cum += max(m1 - 1, 0)
        m1_prev = m1
    return PairTrace(
        verdict,
        pairs,
        universe,
        np.asarray(rounds_m0, dtype=np.int64),
        np.asarray(rounds_m1, dtype=np.int64),
        np.asarray(rounds_m2, dtype=np.int64),
        np.asarray(rounds_mstar, dtype=np.int64),
        np.asarray(rounds_mbar1, dtype=np.int64),
        np.asarray(rounds_conflict, dtype=bool),
    )


def batch_residual_sat(residuals: list[tuple[int, np.ndarray]]) -> np.ndarray:
    """Solve many residual 2-SAT instances with one SCC pass.

    Each (n_vars, pairs) instance becomes a disjoint block of the
    implication graph; a block is satisfiable iff no variable of that block
    shares a component with its negation.
    """
    if not residuals:
        return np.empty(0, dtype=bool)
    empty_units = np.empty(0, dtype=np.int64)
    srcs = []
    dsts = []
    offset = 0
    offsets = []
    for n_vars, pairs in residuals:
        src, dst = _implication_edges(pairs, empty_units)
        srcs.append(src + offset)
        dsts.append(dst + offset)
        offsets.append(offset)
        offset += 2 * n_vars
    labels = _scc_labels(offset, np.concatenate(srcs), np.concatenate(dsts))
    out = np.empty(len(residuals), dtype=bool)
    for i, (n_vars, _) in enumerate(residuals):
        block = labels[offsets[i] : offsets[i] + 2 * n_vars]
        out[i] = not np.any(block[0::2] == block[1::2])
    return out


def _trial_stream_index(cell_index: int, trial_index: int) -> int:
    """Stable packing of (cell, trial) into one 64-bit stream index.

    Part of the reproducibility contract: tables depend on the master seed
    and this layout only.
    """
    if trial_index >= 1 << 32:
        raise ValueError("trial index exceeds the 2^32 stream layout")
    return (cell_index << 32) | trial_index


def run_sat_cell(
    n: int,
    m: int,
    f: int,
    mode: str,
    fix_mode: str,
    master_seed: int,
    cell_index: int,
    trials: int,
    workers: int,
    audit_reference=None,
) -> np.ndarray:
    """SAT flags (uint8) for one (n, m, f) cell of `trials` trials.

    Trial t: derive its stream, sample the formula, sample or take the
    canonical fixing, propagate, and solve the residual.  audit_reference,
    when given, is called on a 1% subsample as audit_reference(n, m, f,
    fix_mode, master_seed, stream_index, engine_sat) and must not raise.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if fix_mode not in _FIX_MODES:
        raise ValueError(f"unknown fix_mode {fix_mode!r}")
    out = np.zeros(trials, dtype=np.uint8)
    if trials == 0:
        return out
    chunk = _chunk_size(n, trials)
    ranges = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]

    def run_range(bounds: tuple[int, int]) -> None:
        lo, hi = bounds
        pending: list[tuple[int, np.ndarray]] = []
        pending_slots: list[int] = []
        for t in range(lo, hi):
            stream_index = _trial_stream_index(cell_index, t)
            gen = derive_stream(master_seed, stream_index).generator
            pairs = _sample_clause_pairs(n, m, gen) if m > 0 else np.empty((0, 2), dtype=np.int64)
            if f == 0:
                pending.append((n, pairs))
                pending_slots.append(t)
                continue
            if fix_mode == "uniform":
                fixed = _sample_fixed_lits(n, f, gen)
            else:
                fixed = np.arange(n - f + 1, n + 1, dtype=np.int64)
            if mode == "plain":
                trace = propagate_pairs(pairs, n, fixed, round_cap=n)
            else:
                initial = fixed if fix_mode == "uniform" else None
                trace = proof_faithful_trial(pairs, n, f, initial, gen, round_cap=n)
            if trace.verdict == VERDICT_CONTRADICTION:
                out[t] = 0
            else:
                pending.append((trace.residual_n_vars, trace.residual_pairs))
                pending_slots.append(t)
        if pending:
            sat = batch_residual_sat(pending)
            for slot, ok in zip(pending_slots, sat):
                out[slot] = 1 if ok else 0

    _run_ranges(run_range, ranges, workers)

    if audit_reference is not None and mode == "plain" and n <= 1000:
        for t in range(0, trials, 100):
            stream_index = _trial_stream_index(cell_index, t)
            audit_reference(n, m, f, fix_mode, master_seed, stream_index, bool(out[t]))
    return out


@dataclass(slots=True)
class TrialTelemetry:
    verdict: int
    m1: np.ndarray
    mbar1: np.ndarray
    contradiction_round: int  # 0 when none
    extinction_round: int  # 0 when none; round whose induced set emptied cleanly


def run_trajectory_cell(
    n: int,
    m: int,
    f: int,
    mode: str,
    fix_mode: str,
    master_seed: int,
    cell_index: int,
    trials: int,
    workers: int,
    round_cap: int,
) -> list[TrialTelemetry]:
    """Per-trial round telemetry for a trajectory cell; same trial layout as
    run_sat_cell so the two views of a cell agree trial by trial."""
    results: list[TrialTelemetry | None] = [None] * trials
    chunk = _chunk_size(n, trials)
    ranges = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]

    def run_range(bounds: tuple[int, int]) -> None:
        lo, hi = bounds
        for t in range(lo, hi):
            gen = derive_stream(master_seed, _trial_stream_index(cell_index, t)).generator
            pairs = _sample_clause_pairs(n, m, gen) if m > 0 else np.empty((0, 2), dtype=np.int64)
            if fix_mode == "uniform":
                fixed = _sample_fixed_lits(n, f, gen)
            else:
                fixed = np.arange(n - f + 1, n + 1, dtype=np.int64)
            if mode == "plain":
                trace = propagate_pairs(pairs, n, fixed, round_cap=round_cap, collect_rounds=True)
            else:
                initial = fixed if fix_mode == "uniform" else None
                trace = proof_faithful_trial(
                    pairs, n, f, initial, gen, round_cap=round_cap, collect_rounds=True
                )
            contradiction_round = 0
            extinction_round = 0
            if trace.verdict == VERDICT_CONTRADICTION:
                contradiction_round = trace.n_rounds
            elif trace.verdict == VERDICT_EXHAUSTED:
                extinction_round = trace.n_rounds
            results[t] = TrialTelemetry(
                verdict=trace.verdict,
                m1=trace.m1,
                mbar1=trace.mbar1,
                contradiction_round=contradiction_round,
                extinction_round=extinction_round,
            )

    _run_ranges(run_range, ranges, workers)
    return results  # type: ignore[return-value]


def _chunk_size(n: int, trials: int) -> int:
    # Bounds the node count of one batched SCC pass (and one thread's slice).
    per_batch = max(1, int(4_000_000 // max(2 * n, 1)))
    return min(max(per_batch, 1), max(trials, 1))


def _run_ranges(fn, ranges, workers: int) -> None:
    if workers <= 1 or len(ranges) <= 1:
        for bounds in ranges:
            fn(bounds)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, bounds) for bounds in ranges]
        for fut in futures:
            fut.result()
