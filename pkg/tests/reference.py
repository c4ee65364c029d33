"""Slow, obviously-correct reference implementations for the test suite.

Everything here works off the raw (parent, child, label) edge list and
first principles, deliberately sharing no logic with the package: paths
come from parent-map walks, validity from the literal all-pairs rule,
identifiability from whole-space enumeration.  Tests compare the fast
implementations against these.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping


def parent_map(tree) -> dict[str, tuple[str, str]]:
    """child -> (parent, edge label), straight from the edge list."""
    return {child: (parent, label) for parent, child, label in tree.edges()}


def ref_node_path(tree, leaf: str) -> list[str]:
    """Nodes from the root down to ``leaf``, inclusive."""
    pm = parent_map(tree)
    out = [leaf]
    while out[-1] in pm:
        out.append(pm[out[-1]][0])
    out.reverse()
    return out


def ref_root_path(tree, leaf: str) -> list[str]:
    """Edge labels from the root down to ``leaf``."""
    pm = parent_map(tree)
    out = []
    node = leaf
    while node in pm:
        parent, label = pm[node]
        out.append(label)
        node = parent
    out.reverse()
    return out


def ref_lca_depth(tree, ri: str, rj: str) -> int:
    pi, pj = ref_node_path(tree, ri), ref_node_path(tree, rj)
    depth = 0
    for a, b in zip(pi[1:], pj[1:]):
        if a != b:
            break
        depth += 1
    return depth


def ref_common_prefix(tree, ri: str, rj: str) -> list[str]:
    pi, pj = ref_root_path(tree, ri), ref_root_path(tree, rj)
    out = []
    for a, b in zip(pi, pj):
        if a != b:
            break
        out.append(a)
    return out


def ref_edge_depth(tree, label: str) -> int:
    pm = parent_map(tree)
    for child, (_, lab) in pm.items():
        if lab == label:
            return len(ref_node_path(tree, child)) - 1
    raise KeyError(label)


def ref_quartet_type(tree, joins: Mapping[str, str], first: str, second: str) -> int:
    """Type number 1..4 from the definition: a join is "above" when its
    edge lies on the pair's shared root-path prefix."""
    branch = ref_lca_depth(tree, first, second)
    above_first = ref_edge_depth(tree, joins[first]) <= branch
    above_second = ref_edge_depth(tree, joins[second]) <= branch
    if above_first and above_second:
        return 1
    if above_first:
        return 2
    if above_second:
        return 3
    return 4


def ref_is_valid(tree, joins: Mapping[str, str]) -> bool:
    """The all-pairs rule, checked literally against every pair."""
    for ri, rj in itertools.combinations(tree.receivers, 2):
        branch = ref_lca_depth(tree, ri, rj)
        di = ref_edge_depth(tree, joins[ri])
        dj = ref_edge_depth(tree, joins[rj])
        if di <= branch and dj <= branch and joins[ri] != joins[rj]:
            return False
    return True


def ref_enumerate(tree) -> list[dict[str, str]]:
    """Product-and-filter enumeration, lexicographic by receiver index
    then edge depth (root-to-leaf path order)."""
    paths = [ref_root_path(tree, r) for r in tree.receivers]
    out = []
    for combo in itertools.product(*paths):
        joins = dict(zip(tree.receivers, combo))
        if ref_is_valid(tree, joins):
            out.append(joins)
    return out


def ref_answers(tree, joins: Mapping[str, str], pairs: Iterable[tuple[str, str]]):
    return tuple(ref_quartet_type(tree, joins, a, b) for a, b in pairs)


def ref_identifies_elimination(tree, pairs, joins, configs=None) -> bool:
    """True when no other valid configuration answers identically."""
    if configs is None:
        configs = ref_enumerate(tree)
    target = ref_answers(tree, joins, pairs)
    hits = [c for c in configs if ref_answers(tree, c, pairs) == target]
    return hits == [dict(joins)]


def ref_identifies_deduction(tree, pairs, joins) -> bool:
    """Fixpoint closure of the answers alone: per-receiver candidate edge
    sets pruned by each answer, coincident receivers intersected."""
    candidates = {r: set(ref_root_path(tree, r)) for r in tree.receivers}
    groups = {r: {r} for r in tree.receivers}
    answered = [(a, b, ref_quartet_type(tree, joins, a, b)) for a, b in pairs]

    changed = True
    while changed:
        changed = False
        for a, b, t in answered:
            branch = ref_lca_depth(tree, a, b)
            for r, above in ((a, t in (1, 2)), (b, t in (1, 3))):
                keep = {
                    e for e in candidates[r]
                    if (ref_edge_depth(tree, e) <= branch) == above
                }
                if keep != candidates[r]:
                    candidates[r] = keep
                    changed = True
            if t == 1 and groups[a] is not groups[b]:
                merged = groups[a] | groups[b]
                joint = candidates[a] & candidates[b]
                for m in merged:
                    groups[m] = merged
                    if candidates[m] != joint:
                        candidates[m] = joint & candidates[m]
                        changed = True
        for r in tree.receivers:
            joint = set.intersection(*(candidates[m] for m in groups[r]))
            if joint != candidates[r]:
                candidates[r] = joint
                changed = True
    return all(len(c) == 1 for c in candidates.values())


def ref_min_quartets(tree, joins, mode: str = "elimination") -> int:
    """Smallest identifying pair-set size by brute subset search."""
    pairs = list(itertools.combinations(tree.receivers, 2))
    configs = ref_enumerate(tree)
    if len(configs) == 1:
        return 0
    for size in range(1, len(pairs) + 1):
        for subset in itertools.combinations(pairs, size):
            if mode == "elimination":
                ok = ref_identifies_elimination(tree, subset, joins, configs)
            else:
                ok = ref_identifies_deduction(tree, subset, joins)
            if ok:
                return size
    raise AssertionError("the full pair set must identify a valid config")
