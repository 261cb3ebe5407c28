"""Execution of distillation protocols in the symplectic Pauli-frame model.

Only the relative error between Alice's and Bob's halves is physical for
Bell-diagonal states, so a trial is: sample an error on the noisy pairs,
compute the combined syndrome against the extended code, decode (with
erasure knowledge), and ask whether the residual lies in the stabilizer.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import sqrt
from typing import FrozenSet, Optional, Tuple

import numpy as np

from . import symplectic as sp
from .breeding import BreedingProtocolSpec
from .codes import FeasibilityError, LogicalClass

#: trials per deterministic chunk; fixed so worker count cannot change results
CHUNK = 10_000


@dataclass(frozen=True)
class ErrorPattern:
    """A symplectic error on the extended positions plus the erased set."""

    error: np.ndarray
    erased: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "error", np.asarray(self.error, dtype=np.int64))
        object.__setattr__(self, "erased", frozenset(int(i) for i in self.erased))
        self.error.setflags(write=False)


@dataclass(frozen=True)
class Channel:
    """I.i.d. per-noisy-pair noise: depolarizing rate plus optional erasure rate.

    A depolarized pair gets one of the p^2 - 1 nontrivial symplectic values
    uniformly; an erased pair gets a uniformly random value (identity included)
    and its position is flagged to the decoder.
    """

    p: int
    depolarizing: float
    erasure: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.depolarizing <= 1.0 and 0.0 <= self.erasure <= 1.0):
            raise ValueError("channel rates must lie in [0, 1]")


@dataclass(frozen=True)
class FixedChannel:
    """Replays one fixed error pattern every trial."""

    pattern: ErrorPattern


@dataclass(frozen=True)
class PostSelect:
    """Step-7 discard policy: none, nonzero-syndrome, or decoded-weight threshold."""

    mode: str = "none"
    threshold: int = 0

    def __post_init__(self):
        if self.mode not in ("none", "nonzero", "weight"):
            raise ValueError(f"unknown post-selection mode {self.mode!r}")

    @classmethod
    def parse(cls, text: str) -> "PostSelect":
        if text in ("none", "nonzero"):
            return cls(text)
        if text.startswith("weight:"):
            return cls("weight", int(text.split(":", 1)[1]))
        raise ValueError(f"cannot parse post-selection policy {text!r}")

    def discards(self, syndrome_nonzero: bool, decoded_weight: int) -> bool:
        if self.mode == "nonzero":
            return syndrome_nonzero
        if self.mode == "weight":
            return decoded_weight > self.threshold
        return False


KEEP_ALL = PostSelect("none")


@dataclass(frozen=True)
class ProtocolOutcome:
    combined_syndrome: Tuple[int, ...]
    decoded: np.ndarray
    logical: LogicalClass
    success: bool
    discarded: bool


@dataclass(frozen=True)
class GuaranteeCertificate:
    passed: bool
    patterns: int
    distance: int
    counterexample: Optional[ErrorPattern] = None


@dataclass(frozen=True)
class SimulationReport:
    trials: int
    discards: int
    successes: int
    gross_k: int
    net_yield: int
    seed: int

    @property
    def kept(self) -> int:
        return self.trials - self.discards

    @property
    def fidelity_estimate(self) -> float:
        return self.successes / self.kept if self.kept else 0.0

    @property
    def ci_halfwidth(self) -> float:
        """95% binomial confidence half-width for the fidelity estimate."""
        if not self.kept:
            return 0.0
        f = self.fidelity_estimate
        return 1.96 * sqrt(f * (1.0 - f) / self.kept)


@dataclass(frozen=True)
class ExactFidelity:
    fidelity: float
    acceptance: float = 1.0


def _check_pattern(spec: BreedingProtocolSpec, pattern: ErrorPattern) -> None:
    code = spec.extended_code
    n = code.n
    err = pattern.error
    if err.shape != (2 * n,):
        raise ValueError(f"error vector must have length {2 * n}")
    for i in spec.ebit_positions:
        if err[i] or err[n + i]:
            raise ValueError(f"preshared pair at position {i} cannot carry an error")
        if i in pattern.erased:
            raise ValueError(f"preshared pair at position {i} cannot be erased")
    if not pattern.erased <= set(spec.noisy_positions):
        raise ValueError("erased positions must be noisy positions")


def run_protocol(
    spec: BreedingProtocolSpec,
    pattern: ErrorPattern,
    postselect: PostSelect = KEEP_ALL,
) -> ProtocolOutcome:
    """One protocol execution against a fixed error pattern."""
    _check_pattern(spec, pattern)
    code = spec.extended_code
    err = pattern.error % code.p
    syn = code.syndrome(err)
    decoded = code.decode(syn, pattern.erased)
    residual = (err - decoded) % code.p
    logical = code.logical_class(residual)
    success = logical.is_identity
    discarded = postselect.discards(any(syn), int(sp.symp_weight(decoded)))
    return ProtocolOutcome(syn, decoded, logical, success, discarded)


def _nonzero_symplectic_values(p: int):
    return [(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]


def verify_guarantee(
    spec: BreedingProtocolSpec, max_patterns: int = 1_000_000
) -> GuaranteeCertificate:
    """Exhaustively check success for every pattern with 2t + e < d.

    Enumerates every erased subset of noisy positions of size e with every
    nonzero content on the erased pairs, times every weight-t error on the
    remaining noisy positions.
    """
    d = spec.params.d
    if d is None:
        raise FeasibilityError("protocol distance is undefined; nothing to guarantee")
    p = spec.extended_code.p
    n_total = spec.extended_code.n
    noisy = spec.noisy_positions
    values = _nonzero_symplectic_values(p)
    v = len(values)

    def case_count(t: int, e: int) -> int:
        from math import comb

        return comb(len(noisy), e) * v**e * comb(len(noisy) - e, t) * v**t

    total = sum(
        case_count(t, e)
        for e in range(d)
        for t in range((d - e - 1) // 2 + 1)
        if 2 * t + e < d
    )
    if total > max_patterns:
        raise FeasibilityError(
            f"guarantee verification needs {total} patterns, over cap {max_patterns}"
        )

    patterns = 0
    for e in range(d):
        for t in range((d - e - 1) // 2 + 1):
            for erased in itertools.combinations(noisy, e):
                rest = [i for i in noisy if i not in erased]
                for err_pos in itertools.combinations(rest, t):
                    support = list(erased) + list(err_pos)
                    for content in itertools.product(values, repeat=len(support)):
                        err = np.zeros(2 * n_total, dtype=np.int64)
                        for pos, (a, b) in zip(support, content):
                            err[pos] = a
                            err[n_total + pos] = b
                        pattern = ErrorPattern(err, frozenset(erased))
                        patterns += 1
                        outcome = run_protocol(spec, pattern)
                        if not outcome.success:
                            return GuaranteeCertificate(False, patterns, d, pattern)
    return GuaranteeCertificate(True, patterns, d)


def _batch_success(
    spec: BreedingProtocolSpec, errors: np.ndarray, postselect: PostSelect
) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized (success, discarded) over a batch of no-erasure error rows."""
    code = spec.extended_code
    p = code.p
    syn = code.syndromes_batch(errors)
    syn_idx = syn @ code._syndrome_radix
    decoded = code.decode_table()[syn_idx]
    residual = (errors - decoded) % p
    basis, pivots = code._stab_pivots
    rep = residual
    for i, c in enumerate(pivots):
        rep = (rep - rep[:, c : c + 1] * basis[i]) % p
    success = ~np.any(rep != 0, axis=1)
    if postselect.mode == "nonzero":
        discarded = syn_idx != 0
    elif postselect.mode == "weight":
        discarded = sp.symp_weights(decoded) > postselect.threshold
    else:
        discarded = np.zeros(len(errors), dtype=bool)
    return success, discarded


def _sample_chunk(
    spec: BreedingProtocolSpec,
    channel: Channel,
    seed: int,
    start: int,
    stop: int,
) -> Tuple[np.ndarray, np.ndarray]:
    """Sample error rows (and erasure masks) for trials [start, stop).

    Trial i draws from np.random.default_rng((seed, i)), so the partition of
    trials into chunks and workers cannot affect the sample.
    """
    p = channel.p
    n_total = spec.extended_code.n
    noisy = np.asarray(spec.noisy_positions, dtype=np.int64)
    m = len(noisy)
    count = stop - start
    u_err = np.empty((count, m))
    val_nz = np.empty((count, m), dtype=np.int64)
    with_erasure = channel.erasure > 0.0
    if with_erasure:
        u_er = np.empty((count, m))
        val_any = np.empty((count, m), dtype=np.int64)
    for row, trial in enumerate(range(start, stop)):
        rng = np.random.default_rng((seed, trial))
        u_err[row] = rng.random(m)
        val_nz[row] = rng.integers(1, p * p, size=m)
        if with_erasure:
            u_er[row] = rng.random(m)
            val_any[row] = rng.integers(0, p * p, size=m)
    values = np.where(u_err < channel.depolarizing, val_nz, 0)
    erased = np.zeros((count, m), dtype=bool)
    if with_erasure:
        erased = u_er < channel.erasure
        values = np.where(erased, val_any, values)
    errors = np.zeros((count, 2 * n_total), dtype=np.int64)
    errors[:, noisy] = values // p
    errors[:, n_total + noisy] = values % p
    return errors, erased


def _simulate_chunk(args) -> Tuple[int, int]:
    spec, channel, seed, start, stop, postselect = args
    errors, erased = _sample_chunk(spec, channel, seed, start, stop)
    if channel.erasure == 0.0:
        success, discarded = _batch_success(spec, errors, postselect)
        kept_success = success & ~discarded
        return int(kept_success.sum()), int(discarded.sum())
    noisy = spec.noisy_positions
    successes = discards = 0
    for row in range(len(errors)):
        erased_set = frozenset(noisy[j] for j in np.flatnonzero(erased[row]))
        outcome = run_protocol(spec, ErrorPattern(errors[row], erased_set), postselect)
        if outcome.discarded:
            discards += 1
        elif outcome.success:
            successes += 1
    return successes, discards


def simulate(
    spec: BreedingProtocolSpec,
    channel,
    trials: int,
    seed: int = 0,
    postselect: PostSelect = KEEP_ALL,
    workers: int = 1,
) -> SimulationReport:
    """Monte Carlo fidelity/yield estimate; deterministic in (channel, trials, seed)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if isinstance(channel, FixedChannel):
        outcome = run_protocol(spec, channel.pattern, postselect)
        discards = trials if outcome.discarded else 0
        successes = 0 if outcome.discarded else (trials if outcome.success else 0)
        return SimulationReport(
            trials, discards, successes, spec.params.gross_k, spec.params.net_yield, seed
        )
    if channel.p != spec.extended_code.p:
        raise ValueError("channel field size does not match the code")
    chunks = [
        (spec, channel, seed, start, min(start + CHUNK, trials), postselect)
        for start in range(0, trials, CHUNK)
    ]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_simulate_chunk, chunks))
    else:
        results = [_simulate_chunk(c) for c in chunks]
    successes = sum(r[0] for r in results)
    discards = sum(r[1] for r in results)
    return SimulationReport(
        trials, discards, successes, spec.params.gross_k, spec.params.net_yield, seed
    )


def exact_fidelity(
    spec: BreedingProtocolSpec,
    channel: Channel,
    postselect: PostSelect = KEEP_ALL,
    max_terms: int = 1 << 22,
) -> ExactFidelity:
    """Exact success probability by summing the channel over all error vectors."""
    if isinstance(channel, FixedChannel):
        outcome = run_protocol(spec, channel.pattern, postselect)
        if outcome.discarded:
            return ExactFidelity(0.0, 0.0)
        return ExactFidelity(1.0 if outcome.success else 0.0, 1.0)
    code = spec.extended_code
    p = code.p
    noisy = list(spec.noisy_positions)
    m = len(noisy)
    q = p * p
    if q**m > max_terms:
        raise FeasibilityError(f"exact sum needs {q}^{m} terms, over cap {max_terms}")
    rate = channel.depolarizing
    idx = np.arange(q**m, dtype=np.int64)
    radix = q ** np.arange(m - 1, -1, -1, dtype=np.int64)
    digits = (idx[:, None] // radix[None, :]) % q
    n_total = code.n
    errors = np.zeros((len(idx), 2 * n_total), dtype=np.int64)
    pos = np.asarray(noisy, dtype=np.int64)
    errors[:, pos] = digits // p
    errors[:, n_total + pos] = digits % p
    depol_prob = np.where(digits == 0, 1.0 - rate, rate / (q - 1) if q > 1 else 0.0)

    if channel.erasure == 0.0:
        prob = depol_prob.prod(axis=1)
        success, discarded = _batch_success(spec, errors, postselect)
        accept = ~discarded
        acceptance = float(prob[accept].sum())
        good = float(prob[success & accept].sum())
        if postselect.mode == "none":
            return ExactFidelity(good)
        return ExactFidelity(good / acceptance if acceptance else 0.0, acceptance)

    er = channel.erasure
    total_good = 0.0
    total_accept = 0.0
    for e in range(m + 1):
        for erased_local in itertools.combinations(range(m), e):
            subset_prob = er**e * (1.0 - er) ** (m - e)
            mask = np.ones(m, dtype=bool)
            mask[list(erased_local)] = False
            prob = depol_prob[:, mask].prod(axis=1) * (1.0 / q) ** e * subset_prob
            erased_set = frozenset(noisy[j] for j in erased_local)
            for row in range(len(errors)):
                outcome = run_protocol(spec, ErrorPattern(errors[row], erased_set), postselect)
                if not outcome.discarded:
                    total_accept += prob[row]
                    if outcome.success:
                        total_good += prob[row]
    if postselect.mode == "none":
        return ExactFidelity(total_good)
    return ExactFidelity(total_good / total_accept if total_accept else 0.0, total_accept)
