"""Benefit-guided binary search over per-receiver candidate intervals.

Every receiver starts with its whole root path as the candidate set for
its joining edge.  Candidate sets stay contiguous: an answer splits each
interval at the pair's branching point and keeps the half the answer
names.  The next pair to query is the one minimizing the worst-case
surviving fraction of candidates over the four possible answers, with the
benefit ratios of one pair sharing a denominator |P_i||P_j|.

Selection arithmetic is exact.  The public compute_benefits returns
Fractions; the selection loop compares num/den in float64, which is exact
here because distinct rationals with numerator and denominator below 2**26
cannot collide in double precision (root paths are far shorter than that).

Type-1 answers assert that two joins coincide.  By default that equality
is not folded back into the intervals; ``propagate_equalities`` links the
two receivers so that later shrinks of one narrow the other as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InconsistentAnswer, InsufficientReceivers, Stalled
from .oracle import Pair
from .results import InferenceResult
from .topology import JoiningConfig, LogicalTree, QuartetType


@dataclass(frozen=True)
class BenefitQuad:
    """Surviving-fraction ratios of the four answers for one pair."""

    t1: Fraction
    t2: Fraction
    t3: Fraction
    t4: Fraction

    @property
    def worst_case(self) -> Fraction:
        return max(self.t1, self.t2, self.t3, self.t4)


@dataclass(frozen=True)
class SearchStep:
    pair: Pair
    answer: QuartetType
    from_cache: bool


@dataclass
class GbsTrace:
    steps: list[SearchStep] = field(default_factory=list)


class CandidateState:
    """Candidate intervals, answer cache, and optional equality groups.

    Intervals are stored as inclusive edge-depth bounds (lo, hi) into each
    receiver's root path; a receiver is resolved when lo == hi.  Receivers
    whose root path is a single edge start resolved at zero cost.
    """

    def __init__(self, tree: LogicalTree, propagate_equalities: bool = False):
        n = tree.n_receivers
        self.tree = tree
        self.propagate = propagate_equalities
        self.pathlen = np.array(
            [tree.node_depth(r) for r in tree.receivers], dtype=np.int64
        )
        self.lo = np.ones(n, dtype=np.int64)
        self.hi = self.pathlen.copy()
        self.I, self.J = (a.astype(np.int64) for a in np.triu_indices(n, k=1))
        rec = tree.receivers
        self.branch_depth = np.array(
            [tree.lca_depth(rec[i], rec[j]) for i, j in zip(self.I, self.J)],
            dtype=np.int64,
        )
        self.answers: dict[Pair, QuartetType] = {}
        self.ans_code = np.zeros(len(self.I), dtype=np.int8)
        self._uf = list(range(n))
        self._members = {k: [k] for k in range(n)}

    # -- plain views -------------------------------------------------------

    def interval(self, r: str) -> tuple[int, int]:
        k = self.tree.receiver_index(r)
        return int(self.lo[k]), int(self.hi[k])

    def is_resolved(self, r: str) -> bool:
        k = self.tree.receiver_index(r)
        return self.lo[k] == self.hi[k]

    def all_resolved(self) -> bool:
        return bool(np.all(self.lo == self.hi))

    def unresolved(self) -> list[str]:
        return [r for k, r in enumerate(self.tree.receivers) if self.lo[k] != self.hi[k]]

    def _pair_index(self, i: int, j: int) -> int:
        n = self.tree.n_receivers
        return i * n - i * (i + 1) // 2 + (j - i - 1)

    # -- equality groups ----------------------------------------------------

    def _find(self, k: int) -> int:
        uf = self._uf
        while uf[k] != k:
            uf[k] = uf[uf[k]]
            k = uf[k]
        return k

    def _sync_group(self, k: int) -> None:
        root = self._find(k)
        members = self._members[root]
        if len(members) == 1:
            return
        glo = max(int(self.lo[m]) for m in members)
        ghi = min(int(self.hi[m]) for m in members)
        if glo > ghi:
            raise InconsistentAnswer("equality group intersected to nothing")
        for m in members:
            self.lo[m] = glo
            self.hi[m] = ghi

    def _union(self, i: int, j: int) -> None:
        ri, rj = self._find(i), self._find(j)
        if ri == rj:
            return
        if len(self._members[ri]) < len(self._members[rj]):
            ri, rj = rj, ri
        self._uf[rj] = ri
        self._members[ri].extend(self._members.pop(rj))


def compute_benefits(state: CandidateState, ri: str, rj: str) -> BenefitQuad:
    """Exact benefit ratios for the index-ordered pair (ri, rj).

    ``t1`` is |up_i| / (|P_i||P_j|): a type-1 answer collapses the pair to
    the shared prefix where the two joins coincide, so a single factor
    counts the surviving candidates.
    """
    tree = state.tree
    i = tree.receiver_index(ri)
    j = tree.receiver_index(rj)
    if i > j:
        i, j = j, i
        ri, rj = rj, ri
    d = tree.lca_depth(ri, rj)
    loi, hii = int(state.lo[i]), int(state.hi[i])
    loj, hij = int(state.lo[j]), int(state.hi[j])
    up_i = max(0, min(hii, d) - loi + 1)
    dn_i = max(0, hii - max(loi - 1, d))
    up_j = max(0, min(hij, d) - loj + 1)
    dn_j = max(0, hij - max(loj - 1, d))
    den = (hii - loi + 1) * (hij - loj + 1)
    return BenefitQuad(
        t1=Fraction(up_i, den),
        t2=Fraction(up_i * dn_j, den),
        t3=Fraction(dn_i * up_j, den),
        t4=Fraction(dn_i * dn_j, den),
    )


def select_quartet(state: CandidateState) -> Pair | None:
    """Eligible pair with the minimum worst-case surviving fraction.

    Skips pairs whose receivers are both resolved and answered pairs whose
    cached answer would shrink nothing.  Ties break in nested-loop order
    (ascending first index, then second), so argmin's first-minimum rule
    matches the enumeration exactly.  Returns None when nothing is
    eligible.
    """
    I, J, d = state.I, state.J, state.branch_depth
    loi, hii = state.lo[I], state.hi[I]
    loj, hij = state.lo[J], state.hi[J]
    si = hii - loi + 1
    sj = hij - loj + 1

    eligible = (si > 1) | (sj > 1)
    code = state.ans_code
    answered = code > 0
    if answered.any():
        i_above = (code == 1) | (code == 2)
        j_above = (code == 1) | (code == 3)
        nloi = np.where(i_above, loi, np.maximum(loi, d + 1))
        nhii = np.where(i_above, np.minimum(hii, d), hii)
        nloj = np.where(j_above, loj, np.maximum(loj, d + 1))
        nhij = np.where(j_above, np.minimum(hij, d), hij)
        progress = (nloi != loi) | (nhii != hii) | (nloj != loj) | (nhij != hij)
        eligible &= ~answered | progress

    if not eligible.any():
        return None

    up_i = np.clip(np.minimum(hii, d) - loi + 1, 0, None)
    dn_i = np.clip(hii - np.maximum(loi - 1, d), 0, None)
    up_j = np.clip(np.minimum(hij, d) - loj + 1, 0, None)
    dn_j = np.clip(hij - np.maximum(loj - 1, d), 0, None)
    num = np.maximum.reduce([up_i, up_i * dn_j, dn_i * up_j, dn_i * dn_j])
    wc = np.where(eligible, num / (si * sj), np.inf)
    k = int(np.argmin(wc))
    rec = state.tree.receivers
    return rec[int(I[k])], rec[int(J[k])]


def apply_update(state: CandidateState, pair: Pair, answer: QuartetType) -> None:
    """Shrink the pair's intervals according to the answer and cache it.

    Raises InconsistentAnswer when an interval would come out empty, which
    cannot happen with an exact oracle.
    """
    tree = state.tree
    i = tree.receiver_index(pair[0])
    j = tree.receiver_index(pair[1])
    if i > j:
        i, j = j, i
        pair = (pair[1], pair[0])
    d = tree.lca_depth(pair[0], pair[1])
    halves = (
        (i, answer in (QuartetType.BOTH_ABOVE, QuartetType.FIRST_ABOVE)),
        (j, answer in (QuartetType.BOTH_ABOVE, QuartetType.SECOND_ABOVE)),
    )
    new = []
    for k, above in halves:
        if above:
            nlo, nhi = int(state.lo[k]), min(int(state.hi[k]), d)
        else:
            nlo, nhi = max(int(state.lo[k]), d + 1), int(state.hi[k])
        if nlo > nhi:
            raise InconsistentAnswer(
                f"answer {answer!r} for {pair!r} empties a candidate interval"
            )
        new.append((k, nlo, nhi))
    for k, nlo, nhi in new:
        state.lo[k] = nlo
        state.hi[k] = nhi
    state.answers[pair] = answer
    state.ans_code[state._pair_index(i, j)] = int(answer)
    if state.propagate:
        if answer == QuartetType.BOTH_ABOVE:
            state._union(i, j)
        state._sync_group(i)
        state._sync_group(j)


def run_gbs(
    tree: LogicalTree, oracle, *, propagate_equalities: bool = False
) -> InferenceResult:
    """Run the search to full resolution and read off the joining map.

    Already-answered pairs can be re-selected at zero query cost; only
    distinct oracle queries count.  Raises Stalled if unresolved receivers
    remain with no eligible pair, which an exact oracle never produces.
    """
    if tree.n_receivers < 2:
        raise InsufficientReceivers("the search needs at least 2 receivers")
    state = CandidateState(tree, propagate_equalities)
    trace = GbsTrace()
    while not state.all_resolved():
        pair = select_quartet(state)
        if pair is None:
            raise Stalled(f"no eligible pair left; unresolved: {state.unresolved()}")
        cached = pair in state.answers
        if cached:
            answer = state.answers[pair]
        else:
            answer = oracle.query(*pair).qtype
        apply_update(state, pair, answer)
        trace.steps.append(SearchStep(pair=pair, answer=answer, from_cache=cached))

    joins = {
        r: tree.root_path(r)[int(state.lo[k]) - 1]
        for k, r in enumerate(tree.receivers)
    }
    return InferenceResult(
        joins=JoiningConfig(joins),
        queries_used=len(state.answers),
        trace=trace,
    )
