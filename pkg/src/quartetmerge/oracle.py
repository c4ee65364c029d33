"""Quartet oracles: exact answers, independent noise, and majority vote.

All oracles normalize a receiver pair to ascending index order before
answering, so callers may pass the pair either way round.  Every oracle
keeps an OracleStats; inference code reads query budgets from it instead
of counting on its own.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import BadSpec
from .topology import GroundTruth, QuartetType, quartet_type

Pair = tuple[str, str]


@dataclass
class OracleStats:
    """Probe and query counters, per pair and in total.

    ``total_queries`` counts probes at the oracle, so a majority vote of
    r sub-probes adds r.  ``quartet_queries`` counts logical quartet
    answers handed back to the caller (one per query call).
    """

    total_queries: int = 0
    quartet_queries: int = 0
    per_pair_counts: dict[Pair, int] = field(default_factory=dict)

    @property
    def distinct_pairs(self) -> int:
        return len(self.per_pair_counts)

    def record(self, pair: Pair, probes: int) -> None:
        self.total_queries += probes
        self.quartet_queries += 1
        self.per_pair_counts[pair] = self.per_pair_counts.get(pair, 0) + probes


@dataclass(frozen=True)
class OracleAnswer:
    """An answered quartet: the index-ascending pair and its type."""

    pair: Pair
    qtype: QuartetType


@dataclass(frozen=True)
class NoiseSpec:
    """Independent substitution noise.

    With probability ``p`` an answer is replaced by one of the three wrong
    types, chosen uniformly.  ``repeats`` odd sub-probes are taken per
    query and resolved by majority, ties going to the lowest type number;
    repeats = 1 is plain noisy querying.
    """

    p: float = 0.0
    repeats: int = 1
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise BadSpec(f"noise probability {self.p} outside [0, 1]")
        if self.repeats < 1 or self.repeats % 2 == 0:
            raise BadSpec(f"repeats must be odd and positive, got {self.repeats}")


class ExactOracle:
    """Answers quartet queries directly from the ground truth."""

    def __init__(self, gt: GroundTruth):
        self.gt = gt
        self.stats = OracleStats()

    def _normalize(self, ri: str, rj: str) -> Pair:
        tree = self.gt.tree
        if tree.receiver_index(ri) > tree.receiver_index(rj):
            ri, rj = rj, ri
        return ri, rj

    def _answer(self, pair: Pair) -> QuartetType:
        return quartet_type(self.gt, pair[0], pair[1])

    def query(self, ri: str, rj: str) -> OracleAnswer:
        pair = self._normalize(ri, rj)
        qtype = self._answer(pair)
        self.stats.record(pair, 1)
        return OracleAnswer(pair=pair, qtype=qtype)


class NoisyOracle(ExactOracle):
    """Exact oracle with independent per-query substitution noise.

    Deterministic for a fixed seed and query sequence.  With p = 0 the
    answers coincide with ExactOracle's bit for bit.
    """

    def __init__(self, gt: GroundTruth, noise: NoiseSpec):
        super().__init__(gt)
        self.noise = noise
        self._rng = random.Random(noise.seed)

    def _corrupt(self, true_type: QuartetType) -> QuartetType:
        if self._rng.random() < self.noise.p:
            wrong = [t for t in QuartetType if t != true_type]
            return wrong[self._rng.randrange(3)]
        return true_type

    def query(self, ri: str, rj: str) -> OracleAnswer:
        pair = self._normalize(ri, rj)
        qtype = self._corrupt(self._answer(pair))
        self.stats.record(pair, 1)
        return OracleAnswer(pair=pair, qtype=qtype)


class MajorityVoteOracle(NoisyOracle):
    """Noise mitigation by repeating each query and taking the modal answer.

    Each query costs ``repeats`` probes at the oracle but one logical
    quartet; both counts land in the stats.
    """

    def query(self, ri: str, rj: str) -> OracleAnswer:
        pair = self._normalize(ri, rj)
        true_type = self._answer(pair)
        votes = [0, 0, 0, 0]
        for _ in range(self.noise.repeats):
            votes[self._corrupt(true_type) - 1] += 1
        best = max(votes)
        # index() finds the lowest type among tied maxima
        qtype = QuartetType(votes.index(best) + 1)
        self.stats.record(pair, self.noise.repeats)
        return OracleAnswer(pair=pair, qtype=qtype)


def make_oracle(gt: GroundTruth, noise: NoiseSpec | None = None):
    """Pick the cheapest oracle that realizes the noise spec."""
    if noise is None or noise.p == 0.0 and noise.repeats == 1:
        return ExactOracle(gt)
    if noise.repeats == 1:
        return NoisyOracle(gt, noise)
    return MajorityVoteOracle(gt, noise)
