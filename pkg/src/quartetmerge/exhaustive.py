"""Ground-truth enumeration, identifiability, and minimum query counts.

These tools answer "how few quartets could possibly suffice" questions by
brute force on small instances: enumerate every valid joining
configuration, compare answer vectors, and search identifying subsets in
breadth-first size order.  Everything here is exponential by nature and
guarded by explicit caps.

Two notions of "the answers identify the configuration" are supported and
they are not equivalent:

* ``elimination`` (the default): no other valid configuration produces
  the same answers on the chosen pairs.  This is the information-theoretic
  reading; it exploits cross-receiver validity coupling.
* ``deduction``: closing the answers under the per-pair interval rules
  (above/below the branching point) and type-1 equalities pins every
  joining edge.  This is what an interval-based solver can conclude
  without enumerating configurations, and it may need strictly more pairs.

On the 4-receiver caterpillar with all joins coincident on the root edge,
deduction needs 3 pairs while elimination needs only 2: the answer pair
{(r1,r3): 1, (r2,r4): 1} leaves r1's interval ambiguous between depths 1
and 2, yet the depth-2 alternative would force two distinct joins onto the
shared prefix of (r1, r2) and is therefore no valid configuration at all.
"""

from __future__ import annotations

from itertools import combinations
from math import prod

import numpy as np

from .errors import InsufficientReceivers, StructuralViolation, TooLarge
from .topology import (
    GroundTruth,
    JoiningConfig,
    LogicalTree,
    PlacementScan,
    QuartetType,
    _quartet_type_raw,
)

Pair = tuple[str, str]

MODES = ("elimination", "deduction")


def lower_bound(n: int) -> int:
    """Queries any algorithm needs in the worst case: ceil(n / 2).

    Each quartet involves two receivers and every receiver's join must be
    pinned by at least one answer.
    """
    if n < 2:
        raise InsufficientReceivers(f"need at least 2 receivers, got {n}")
    return (n + 1) // 2


def all_pairs(tree: LogicalTree) -> list[Pair]:
    """Receiver pairs in nested-loop order, each in index order."""
    rec = tree.receivers
    return [(rec[i], rec[j]) for i in range(len(rec)) for j in range(i + 1, len(rec))]


def enumerate_valid_configs(
    tree: LogicalTree, *, max_receivers: int = 8, max_raw: int = 1_000_000
) -> list[JoiningConfig]:
    """All valid joining configurations, in lexicographic order.

    Order is by receiver index, then edge depth along the root path.  The
    caps bound the raw product of path lengths, not the (smaller) valid
    count; TooLarge asks the caller to decide, never silently truncates.
    """
    n = tree.n_receivers
    if n > max_receivers:
        raise TooLarge(f"{n} receivers exceeds the enumeration cap {max_receivers}")
    raw = prod(tree.node_depth(r) for r in tree.receivers)
    if raw > max_raw:
        raise TooLarge(f"{raw} raw combinations exceed the cap {max_raw}")

    receivers = tree.receivers
    paths = [tree.root_path(r).edges for r in receivers]
    scan = PlacementScan(tree)
    out: list[JoiningConfig] = []
    chosen: list[str] = []

    def descend(k: int) -> None:
        if k == n:
            out.append(JoiningConfig(dict(zip(receivers, chosen))))
            return
        r = receivers[k]
        blocked, exception = scan.allowed(r)
        depths = list(range(blocked + 1, len(paths[k]) + 1))
        if exception is not None:
            depths.insert(0, exception)
        for cd in depths:
            chosen.append(paths[k][cd - 1])
            scan.place(r, cd)
            descend(k + 1)
            scan.unplace(r)
            chosen.pop()

    descend(0)
    return out


def answer_set(gt: GroundTruth, pairs: list[Pair]) -> dict[Pair, QuartetType]:
    """Quartet answers for the given pairs, oriented as written."""
    return {p: gt.quartet_type(*p) for p in pairs}


def _answer_matrix(
    tree: LogicalTree, configs: list[JoiningConfig], pairs: list[Pair]
) -> np.ndarray:
    m = np.empty((len(configs), len(pairs)), dtype=np.int8)
    for row, cfg in enumerate(configs):
        joins = cfg.joins
        for col, (a, b) in enumerate(pairs):
            m[row, col] = int(_quartet_type_raw(tree, joins, a, b))
    return m


def _deduction_identified(
    tree: LogicalTree, pairs: list[Pair], joins_map
) -> bool:
    """Close answers under interval and equality rules; True if all pinned."""
    n = tree.n_receivers
    lo = [1] * n
    hi = [tree.node_depth(r) for r in tree.receivers]
    uf = list(range(n))

    def find(k: int) -> int:
        while uf[k] != k:
            uf[k] = uf[uf[k]]
            k = uf[k]
        return k

    for a, b in pairs:
        code = int(_quartet_type_raw(tree, joins_map, a, b))
        i = tree.receiver_index(a)
        j = tree.receiver_index(b)
        d = tree.lca_depth(a, b)
        for k, above in ((i, code in (1, 2)), (j, code in (1, 3))):
            if above:
                hi[k] = min(hi[k], d)
            else:
                lo[k] = max(lo[k], d + 1)
        if code == 1:
            uf[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for k in range(n):
        groups.setdefault(find(k), []).append(k)
    for members in groups.values():
        glo = max(lo[m] for m in members)
        ghi = min(hi[m] for m in members)
        for m in members:
            lo[m], hi[m] = glo, ghi
    return all(a == b for a, b in zip(lo, hi))


def identifies(
    tree: LogicalTree,
    pairs: list[Pair],
    config: JoiningConfig,
    *,
    configs: list[JoiningConfig] | None = None,
    mode: str = "elimination",
) -> bool:
    """True when the answers on ``pairs`` pin ``config`` uniquely."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
    joins = config.joins
    if mode == "deduction":
        return _deduction_identified(tree, pairs, joins)
    if configs is None:
        configs = enumerate_valid_configs(tree)
    target = [_quartet_type_raw(tree, joins, a, b) for a, b in pairs]
    for other in configs:
        if other == config:
            continue
        others = other.joins
        if all(
            _quartet_type_raw(tree, others, a, b) == t
            for (a, b), t in zip(pairs, target)
        ):
            return False
    return True


def min_identifying_set(
    tree: LogicalTree,
    config: JoiningConfig,
    *,
    max_subsets: int = 5_000_000,
    mode: str = "elimination",
) -> tuple[Pair, ...]:
    """Smallest pair subset whose answers pin ``config`` uniquely.

    Breadth-first in subset size; among equal-size subsets the first in
    combination order wins, so the witness is deterministic.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
    pairs = all_pairs(tree)
    explored = 0
    if mode == "deduction":
        joins = config.joins
        if _deduction_identified(tree, [], joins):
            return ()
        for k in range(1, len(pairs) + 1):
            for subset in combinations(pairs, k):
                explored += 1
                if explored > max_subsets:
                    raise TooLarge(f"subset search exceeded the cap {max_subsets}")
                if _deduction_identified(tree, list(subset), joins):
                    return subset
        raise StructuralViolation("the full pair set failed to pin the config")
    configs = enumerate_valid_configs(tree)
    if len(configs) == 1:
        return ()
    matrix = _answer_matrix(tree, configs, pairs)
    row = configs.index(config)
    target = matrix[row]
    for k in range(1, len(pairs) + 1):
        for cols in combinations(range(len(pairs)), k):
            explored += 1
            if explored > max_subsets:
                raise TooLarge(f"subset search exceeded the cap {max_subsets}")
            sel = list(cols)
            hits = (matrix[:, sel] == target[sel]).all(axis=1)
            if int(hits.sum()) == 1:
                return tuple(pairs[c] for c in cols)
    raise StructuralViolation("the full pair set failed to identify a valid config")


def min_quartets(tree: LogicalTree, config: JoiningConfig, **caps) -> int:
    """Size of the smallest identifying pair subset for ``config``."""
    return len(min_identifying_set(tree, config, **caps))


def min_quartets_all(
    tree: LogicalTree, *, max_subsets: int = 5_000_000, mode: str = "elimination"
) -> list[int]:
    """min_quartets for every valid configuration, in enumeration order.

    Under elimination each subset is evaluated against all configurations
    at once, which is far cheaper than per-configuration searches on the
    same tree; deduction falls back to the per-configuration search.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
    pairs = all_pairs(tree)
    configs = enumerate_valid_configs(tree)
    if mode == "deduction":
        return [
            min_quartets(tree, c, max_subsets=max_subsets, mode="deduction")
            for c in configs
        ]
    if len(configs) == 1:
        return [0]
    matrix = _answer_matrix(tree, configs, pairs)
    result = np.full(len(configs), -1, dtype=np.int64)
    explored = 0
    for k in range(1, len(pairs) + 1):
        for cols in combinations(range(len(pairs)), k):
            explored += 1
            if explored > max_subsets:
                raise TooLarge(f"subset search exceeded the cap {max_subsets}")
            sub = matrix[:, list(cols)]
            _, inverse, counts = np.unique(
                sub, axis=0, return_inverse=True, return_counts=True
            )
            unique_row = counts[inverse] == 1
            result[unique_row & (result < 0)] = k
        if not (result < 0).any():
            break
    if (result < 0).any():
        raise StructuralViolation("some valid configs were never identified")
    return result.tolist()
