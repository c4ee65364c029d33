"""Deterministic tree families and seeded joining-configuration sampling.

Node and label names follow one scheme across all shapes: the root is
``s1``, internal nodes are ``b1, b2, ...`` in construction order, receivers
are ``r1..rN``, and edge labels are ``e1, e2, ...`` in the order the edges
are laid down.  Receivers are numbered so that the planar leaf order of the
built tree equals the index order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BadSpec
from .topology import JoiningConfig, LogicalTree, PlacementScan, _NearestBlockers


@dataclass(frozen=True)
class GeneratorSpec:
    """Shape name plus receiver count, as used by the CLI and sweeps."""

    shape: str
    size: int
    seed: int | None = None


def star(n: int) -> LogicalTree:
    """Root edge into a hub with ``n`` receiver leaves.

    Every root path has two edges (the shared root edge and a private leaf
    edge), so star instances exercise the case where no receiver starts
    resolved.
    """
    if n < 2:
        raise BadSpec(f"star needs at least 2 receivers, got {n}")
    edges = [("s1", "b1", "e1")]
    receivers = []
    for k in range(1, n + 1):
        r = f"r{k}"
        edges.append(("b1", r, f"e{k + 1}"))
        receivers.append(r)
    return LogicalTree("s1", edges, receivers)


def tall_binary(n: int) -> LogicalTree:
    """Caterpillar: a chain of branch nodes, one leaf each, two at the bottom.

    Path lengths run from n (receivers r1, r2 at the bottom) down to 2
    (receiver rN just under the root).  This is the depth-extreme family:
    the deepest shared prefixes and the longest candidate paths.
    """
    if n < 2:
        raise BadSpec(f"tall_binary needs at least 2 receivers, got {n}")
    edges = [("s1", "b1", "e1")]
    labels = iter(range(2, 2 * n))
    for k in range(1, n):
        b = f"b{k}"
        if k < n - 1:
            # continue the chain before hanging this node's own leaf, so
            # the planar leaf order matches the receiver indexing
            edges.append((b, f"b{k + 1}", f"e{next(labels)}"))
            edges.append((b, f"r{n + 1 - k}", f"e{next(labels)}"))
        else:
            edges.append((b, "r1", f"e{next(labels)}"))
            edges.append((b, "r2", f"e{next(labels)}"))
    receivers = [f"r{k}" for k in range(1, n + 1)]
    return LogicalTree("s1", edges, receivers)


def _perfect(arity: int, depth: int) -> LogicalTree:
    if depth < 1:
        raise BadSpec(f"depth must be >= 1, got {depth}")
    n_leaves = arity**depth
    edges = [("s1", "b1", "e1")]
    label = 2
    next_b = 2
    frontier = ["b1"]
    for level in range(1, depth + 1):
        new_frontier = []
        leaf = 1
        for node in frontier:
            for _ in range(arity):
                if level == depth:
                    child = f"r{leaf}"
                    leaf += 1
                else:
                    child = f"b{next_b}"
                    next_b += 1
                edges.append((node, child, f"e{label}"))
                label += 1
                new_frontier.append(child)
        frontier = new_frontier
    receivers = [f"r{k}" for k in range(1, n_leaves + 1)]
    return LogicalTree("s1", edges, receivers)


def perfect_binary(depth: int) -> LogicalTree:
    """Root edge into a complete binary tree; 2**depth receivers."""
    return _perfect(2, depth)


def perfect_ternary(depth: int) -> LogicalTree:
    """Root edge into a complete ternary tree; 3**depth receivers."""
    return _perfect(3, depth)


_SHAPES = ("star", "perfect_binary", "tall_binary", "perfect_ternary")


def _log_exact(n: int, base: int) -> int:
    d = 0
    m = 1
    while m < n:
        m *= base
        d += 1
    if m != n:
        raise BadSpec(f"size {n} is not a power of {base}")
    return d


def make_tree(shape: str, size: int) -> LogicalTree:
    """Build a shape by receiver count.

    ``size`` is always the receiver count N; for the perfect families it
    must be an exact power of the arity.
    """
    if shape == "star":
        return star(size)
    if shape == "tall_binary":
        return tall_binary(size)
    if shape == "perfect_binary":
        return perfect_binary(_log_exact(size, 2))
    if shape == "perfect_ternary":
        return perfect_ternary(_log_exact(size, 3))
    raise BadSpec(f"unknown shape {shape!r}; expected one of {_SHAPES}")


def random_config(tree: LogicalTree, seed: int) -> JoiningConfig:
    """Seeded valid configuration, one receiver at a time in index order.

    Each receiver draws uniformly among the root-path edges that keep the
    partial configuration valid; the result is always valid, and the leaf
    edge is always available so sampling cannot fail.  Identical seeds give
    identical configurations.
    """
    rng = random.Random(seed)
    tree._ensure_lca()
    chosen_depth: dict[str, int] = {}
    if tree._planar:
        # Index order is the planar leaf order, so the nearest-blocker
        # stack answers the same constraints as a full scan in O(1) each.
        blockers = _NearestBlockers()
        adj = tree._adj_list
        last = tree.n_receivers - 1
        for t, r in enumerate(tree.receivers):
            path_len = tree.node_depth(r)
            blocked, exception = blockers.constraint()
            n_choices = path_len - blocked + (1 if exception is not None else 0)
            pick = rng.randrange(n_choices)
            if exception is not None and pick == n_choices - 1:
                cd = exception
            else:
                cd = blocked + 1 + pick
            chosen_depth[r] = cd
            if t < last:
                blockers.advance(cd, adj[t])
    else:
        scan = PlacementScan(tree)
        for r in tree.receivers:
            path_len = tree.node_depth(r)
            blocked, exception = scan.allowed(r)
            n_choices = path_len - blocked + (1 if exception is not None else 0)
            pick = rng.randrange(n_choices)
            if exception is not None and pick == n_choices - 1:
                cd = exception
            else:
                cd = blocked + 1 + pick
            chosen_depth[r] = cd
            scan.place(r, cd)

    # Resolve chosen depths to edge labels in one pass down the tree.
    joins: dict[str, str] = {}
    label_stack: list[str] = []
    children = tree._children
    stack = [(tree.root, iter(children[tree.root]))]
    while stack:
        node, it = stack[-1]
        child = next(it, None)
        if child is None:
            stack.pop()
            if label_stack:
                label_stack.pop()
            continue
        label_stack.append(tree.label_of(node, child))
        if not children[child]:
            joins[child] = label_stack[chosen_depth[child] - 1]
            label_stack.pop()
        else:
            stack.append((child, iter(children[child])))
    return JoiningConfig({r: joins[r] for r in tree.receivers})
