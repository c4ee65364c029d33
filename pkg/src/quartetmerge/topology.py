"""Logical routing trees, root paths, joining configurations and quartet types.

A logical tree is rooted and leaf-labelled: the root is the probing source,
every leaf is a receiver, and every internal node except possibly the root
has out-degree at least two (degree-two relay nodes are collapsed away, as in
traceroute-style logical topologies).  A second source attaches to the tree
at one "joining" edge per receiver; a quartet query on a receiver pair
reports how the two joining edges sit relative to the pair's branching point.

Conventions used throughout:

* Nodes and edge labels are non-empty strings.  Edge labels are unique.
* The depth of an edge is the depth of its child endpoint, so the edges of a
  root path have depths 1..len(path) with no gaps.
* Receiver order is significant and fixed at construction; "lower receiver"
  always means lower index in that order, never lexicographic on names.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    InvalidConfiguration,
    InvalidTree,
    MisplacedJoin,
    SameReceiver,
    UnknownReceiver,
)


class QuartetType(IntEnum):
    """Relation of two joining edges to the pair's branching point.

    For an ordered pair (first, second), "above" means the joining edge lies
    on the shared prefix of the two root paths (strictly above the branching
    point).  BOTH_ABOVE additionally implies the two joining edges coincide.
    """

    BOTH_ABOVE = 1
    FIRST_ABOVE = 2
    SECOND_ABOVE = 3
    BOTH_BELOW = 4


@dataclass(frozen=True)
class RootPath:
    """Ordered edge labels from the root down to one receiver."""

    receiver: str
    edges: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[str]:
        return iter(self.edges)

    def __getitem__(self, i):
        return self.edges[i]


@dataclass(frozen=True)
class JoiningConfig:
    """One joining edge per receiver, keyed by receiver name."""

    joins: Mapping[str, str]

    def __getitem__(self, receiver: str) -> str:
        return self.joins[receiver]

    def __contains__(self, receiver: str) -> bool:
        return receiver in self.joins

    def __iter__(self) -> Iterator[str]:
        return iter(self.joins)

    def __len__(self) -> int:
        return len(self.joins)

    def keys(self):
        return self.joins.keys()

    def items(self):
        return self.joins.items()

    def __hash__(self) -> int:
        return hash(frozenset(self.joins.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, JoiningConfig):
            return dict(self.joins) == dict(other.joins)
        if isinstance(other, Mapping):
            return dict(self.joins) == dict(other)
        return NotImplemented


class LogicalTree:
    """Immutable rooted tree with labelled edges and ordered receiver leaves.

    Construction validates the full shape contract: one root, acyclic and
    connected, no relay nodes (non-root internal nodes have out-degree >= 2),
    and the receiver sequence names exactly the leaves.  Instances never
    mutate after construction and are safe to share.

    A range-min table over the planar leaf order is built lazily on the
    first ancestry query; it makes lca and edge-membership checks O(1),
    which the oracles and samplers rely on at large N.
    """

    __slots__ = (
        "root",
        "receivers",
        "_parent",
        "_children",
        "_labels",
        "_by_label",
        "_depth",
        "_rindex",
        "_leaf_pos",
        "_leaf_at",
        "_adj_node",
        "_adj_depth",
        "_adj_list",
        "_sparse",
        "_span",
        "_planar",
    )

    def __init__(
        self,
        root: str,
        edges: Iterable[tuple[str, str, str]],
        receivers: Iterable[str],
    ):
        parent: dict[str, str] = {}
        children: dict[str, list[str]] = {}
        labels: dict[tuple[str, str], str] = {}
        by_label: dict[str, tuple[str, str]] = {}

        if not root or not isinstance(root, str):
            raise InvalidTree("root must be a non-empty string")
        for u, v, lab in edges:
            if not u or not v or not lab:
                raise InvalidTree(f"empty field in edge ({u!r}, {v!r}, {lab!r})")
            if u == v:
                raise InvalidTree(f"self-loop at {u!r}")
            if v in parent:
                raise InvalidTree(f"node {v!r} has two incoming edges")
            if lab in by_label:
                raise InvalidTree(f"duplicate edge label {lab!r}")
            parent[v] = u
            children.setdefault(u, []).append(v)
            children.setdefault(v, [])
            labels[(u, v)] = lab
            by_label[lab] = (u, v)
        if not labels:
            raise InvalidTree("a tree needs at least one edge")
        if root in parent:
            raise InvalidTree("root has an incoming edge")
        if root not in children:
            raise InvalidTree("root is not an endpoint of any edge")

        depth: dict[str, int] = {root: 0}
        stack = [root]
        while stack:
            u = stack.pop()
            du = depth[u] + 1
            for c in children[u]:
                depth[c] = du
                stack.append(c)
        if len(depth) != len(children):
            raise InvalidTree("graph is not connected from the root")

        leaves = set()
        for u, cs in children.items():
            if not cs:
                leaves.add(u)
            elif len(cs) == 1 and u != root:
                raise InvalidTree(f"relay node {u!r} has out-degree 1")

        rec = tuple(receivers)
        if len(rec) != len(set(rec)):
            raise InvalidTree("duplicate receiver name")
        if set(rec) != leaves:
            raise InvalidTree("receivers must name exactly the leaves")

        self.root = root
        self.receivers = rec
        self._parent = parent
        self._children = children
        self._labels = labels
        self._by_label = by_label
        self._depth = depth
        self._rindex = {r: k for k, r in enumerate(rec)}
        self._leaf_pos = None  # built by _ensure_lca

    # -- basic accessors -------------------------------------------------

    @property
    def n_receivers(self) -> int:
        return len(self.receivers)

    def receiver_index(self, r: str) -> int:
        try:
            return self._rindex[r]
        except KeyError:
            raise UnknownReceiver(f"unknown receiver {r!r}") from None

    def parent(self, node: str) -> str | None:
        return self._parent.get(node)

    def children(self, node: str) -> tuple[str, ...]:
        return tuple(self._children[node])

    def nodes(self) -> tuple[str, ...]:
        return tuple(self._depth)

    def edges(self) -> tuple[tuple[str, str, str], ...]:
        """Edges as (parent, child, label) in depth-first preorder."""
        out = []
        stack = [self.root]
        while stack:
            u = stack.pop()
            if u != self.root:
                p = self._parent[u]
                out.append((p, u, self._labels[(p, u)]))
            stack.extend(reversed(self._children[u]))
        return tuple(out)

    def edge_labels(self) -> tuple[str, ...]:
        return tuple(lab for _, _, lab in self.edges())

    def has_label(self, label: str) -> bool:
        return label in self._by_label

    def edge_endpoints(self, label: str) -> tuple[str, str]:
        try:
            return self._by_label[label]
        except KeyError:
            raise InvalidTree(f"no edge labelled {label!r}") from None

    def edge_depth(self, label: str) -> int:
        """Depth of the edge's child endpoint."""
        return self._depth[self.edge_endpoints(label)[1]]

    def node_depth(self, node: str) -> int:
        return self._depth[node]

    def label_of(self, u: str, v: str) -> str:
        return self._labels[(u, v)]

    # -- paths and ancestry ----------------------------------------------

    def root_path(self, r: str) -> RootPath:
        """Edge labels from the root down to receiver ``r``."""
        self.receiver_index(r)
        out = []
        v = r
        while v != self.root:
            u = self._parent[v]
            out.append(self._labels[(u, v)])
            v = u
        out.reverse()
        return RootPath(receiver=r, edges=tuple(out))

    def _ensure_lca(self) -> None:
        if self._leaf_pos is not None:
            return
        # One DFS yields the planar leaf order, the lca of each adjacent
        # leaf pair, and the leaf-position span of every node.  lca of any
        # receiver pair is then a range-min over the adjacent-lca depths.
        pos: dict[str, int] = {}
        leaf_at: list[str] = []
        adj_node: list[str] = []
        adj_depth: list[int] = []
        span: dict[str, tuple[int, int]] = {}
        depth = self._depth
        children = self._children

        best_node = None
        best_depth = 1 << 60
        seen_leaf = False
        stack: list[tuple[str, Iterator[str]]] = [(self.root, iter(children[self.root]))]
        first_leaf: dict[str, int] = {}
        while stack:
            node, it = stack[-1]
            child = next(it, None)
            if child is None:
                stack.pop()
                if node in first_leaf:
                    span[node] = (first_leaf[node], len(leaf_at) - 1)
                continue
            if seen_leaf and depth[node] < best_depth:
                best_depth = depth[node]
                best_node = node
            if node not in first_leaf:
                first_leaf[node] = len(leaf_at)
            if not children[child]:
                if seen_leaf:
                    adj_node.append(best_node)
                    adj_depth.append(best_depth)
                p = len(leaf_at)
                pos[child] = p
                leaf_at.append(child)
                span[child] = (p, p)
                seen_leaf = True
                best_depth = 1 << 60
                best_node = None
            else:
                stack.append((child, iter(children[child])))

        self._leaf_pos = pos
        self._leaf_at = leaf_at
        self._adj_node = adj_node
        self._adj_depth = np.asarray(adj_depth, dtype=np.int32)
        self._adj_list = adj_depth
        self._span = span
        self._planar = tuple(leaf_at) == self.receivers
        m = len(adj_depth)
        if m == 0:
            self._sparse = []
            return
        # Sparse table of argmin positions into _adj_depth.
        levels = [np.arange(m, dtype=np.int32)]
        half = 1
        while 2 * half <= m:
            prev = levels[-1]
            a = prev[: m - 2 * half + 1]
            b = prev[half : m - half + 1]
            take_b = self._adj_depth[b] < self._adj_depth[a]
            levels.append(np.where(take_b, b, a))
            half *= 2
        self._sparse = levels

    def _adj_argmin(self, lo: int, hi: int) -> int:
        """Position of the minimum of _adj_depth[lo..hi], inclusive."""
        k = (hi - lo + 1).bit_length() - 1
        level = self._sparse[k]
        a = int(level[lo])
        b = int(level[hi - (1 << k) + 1])
        if self._adj_depth[b] < self._adj_depth[a]:
            return b
        return a

    def _pair_positions(self, ri: str, rj: str) -> tuple[int, int]:
        i = self.receiver_index(ri)
        j = self.receiver_index(rj)
        if i == j:
            raise SameReceiver(f"need two distinct receivers, got {ri!r} twice")
        self._ensure_lca()
        return self._leaf_pos[ri], self._leaf_pos[rj]

    def lca(self, ri: str, rj: str) -> str:
        """Lowest common ancestor (the pair's branching point)."""
        pi, pj = self._pair_positions(ri, rj)
        if pi > pj:
            pi, pj = pj, pi
        return self._adj_node[self._adj_argmin(pi, pj - 1)]

    def lca_depth(self, ri: str, rj: str) -> int:
        pi, pj = self._pair_positions(ri, rj)
        if pi > pj:
            pi, pj = pj, pi
        return int(self._adj_depth[self._adj_argmin(pi, pj - 1)])

    def on_root_path(self, label: str, r: str) -> bool:
        """True when the labelled edge lies on ``r``'s root path."""
        self.receiver_index(r)
        _, v = self.edge_endpoints(label)
        self._ensure_lca()
        lo, hi = self._span[v]
        return lo <= self._leaf_pos[r] <= hi

    def common_prefix(self, ri: str, rj: str) -> tuple[str, ...]:
        """Shared root-path edges of the pair, ordered root to branch point."""
        b = self.lca(ri, rj)
        out = []
        v = b
        while v != self.root:
            u = self._parent[v]
            out.append(self._labels[(u, v)])
            v = u
        out.reverse()
        return tuple(out)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogicalTree):
            return NotImplemented
        return (
            self.root == other.root
            and self.receivers == other.receivers
            and self._parent == other._parent
            and self._labels == other._labels
        )

    def __hash__(self) -> int:
        return hash((self.root, self.receivers, frozenset(self._labels.items())))

    def __repr__(self) -> str:
        return (
            f"LogicalTree(root={self.root!r}, edges={len(self._labels)}, "
            f"receivers={len(self.receivers)})"
        )


class PlacementScan:
    """Incremental pairwise-validity tracking over receivers in index order.

    Placing joins one receiver at a time, the edges still allowed for the
    next receiver form a contiguous suffix of its root path (every edge
    strictly below the deepest branching point it shares with an already
    placed "blocking" receiver), plus at most one exception edge: the join
    of that deepest blocker, which it is allowed to coincide with.

    A receiver j blocks i exactly when j's join lies on the shared prefix
    of i and j.  Among blockers on one side of i in planar leaf order the
    nearest one has the deepest branching point, so a short outward scan
    per side finds the constraint; typical cost is O(1) per receiver.
    """

    def __init__(self, tree: LogicalTree):
        tree._ensure_lca()
        self.tree = tree
        self._positions: list[int] = []  # sorted planar positions of placed receivers
        self._cd_at: dict[int, int] = {}  # position -> join edge depth

    def _side_block(self, p: int, idx: int, step: int) -> tuple[int, int] | None:
        """Nearest blocker scanning outward from sorted slot ``idx``."""
        positions = self._positions
        tree = self.tree
        while 0 <= idx < len(positions):
            q = positions[idx]
            lo, hi = (p, q - 1) if p < q else (q, p - 1)
            branch_depth = int(tree._adj_depth[tree._adj_argmin(lo, hi)])
            cd = self._cd_at[q]
            if cd <= branch_depth:
                return branch_depth, cd
            idx += step
        return None

    def allowed(self, r: str) -> tuple[int, int | None]:
        """Constraint on ``r``: (blocked_depth, exception_depth_or_None).

        Edges at depth > blocked_depth are allowed; the edge at the
        exception depth (when present) is the single allowed edge within
        the blocked prefix.  blocked_depth = 0 means unconstrained.
        """
        p = self.tree._leaf_pos[r]
        idx = bisect.bisect_left(self._positions, p)
        left = self._side_block(p, idx - 1, -1)
        right = self._side_block(p, idx, +1)
        best = None
        for cand in (left, right):
            if cand is not None and (best is None or cand[0] > best[0]):
                best = cand
        if best is None:
            return 0, None
        return best

    def place(self, r: str, join_depth: int) -> None:
        p = self.tree._leaf_pos[r]
        positions = self._positions
        if not positions or p > positions[-1]:
            positions.append(p)
        else:
            bisect.insort(positions, p)
        self._cd_at[p] = join_depth

    def unplace(self, r: str) -> None:
        p = self.tree._leaf_pos[r]
        positions = self._positions
        if positions and positions[-1] == p:
            positions.pop()
        else:
            positions.remove(p)
        del self._cd_at[p]


class _NearestBlockers:
    """Constraint tracking specialized to leaves placed in planar order.

    Gives the same (blocked, exception) answers as PlacementScan.allowed
    when placements follow the planar leaf order (the successor side is
    then always empty) but in amortized O(1) per leaf.  Once the branch
    depth separating a placed receiver from the frontier drops below its
    join depth, that receiver can never block again and is dropped, so a
    stack of (branch_depth, join_depth) pairs with branch depths strictly
    increasing toward the top carries the whole state.  Receivers merged
    by a shared capped branch depth always hold equal join depths in a
    valid prefix, so keeping one entry per depth loses nothing.
    """

    __slots__ = ("_branch", "_cd")

    def __init__(self):
        self._branch: list[int] = []
        self._cd: list[int] = []

    def constraint(self) -> tuple[int, int | None]:
        """(blocked_depth, exception_depth_or_None) for the next leaf."""
        if not self._branch:
            return 0, None
        return self._branch[-1], self._cd[-1]

    def advance(self, join_depth: int, boundary_depth: int) -> None:
        """Absorb the leaf just placed.

        ``boundary_depth`` is the branch depth separating it from the next
        leaf in planar order (the adjacent-pair lca depth).
        """
        branch, cd = self._branch, self._cd
        keep = join_depth if join_depth <= boundary_depth else -1
        while branch and branch[-1] >= boundary_depth:
            branch.pop()
            dropped = cd.pop()
            if keep < 0 and dropped <= boundary_depth:
                keep = dropped
        if keep >= 0:
            branch.append(boundary_depth)
            cd.append(keep)


def is_valid_config(tree: LogicalTree, config: JoiningConfig | Mapping[str, str]) -> bool:
    """Check the pairwise shared-prefix rule for a full joining configuration.

    For every receiver pair, two distinct joins must not both lie on the
    pair's common prefix.  Raises MisplacedJoin when a join is missing or
    is not an edge of its receiver's root path; returns False only for
    violations of the pairwise rule itself.

    Runs in O(N): sweeping leaves in planar order, the earliest violating
    pair is always visible through the nearest-blocker stack when its
    second member is reached.
    """
    joins = config.joins if isinstance(config, JoiningConfig) else config
    depths = {}
    for r in tree.receivers:
        if r not in joins:
            raise MisplacedJoin(f"no join assigned to receiver {r!r}")
        label = joins[r]
        if not tree.has_label(label) or not tree.on_root_path(label, r):
            raise MisplacedJoin(f"join {label!r} is not on the root path of {r!r}")
        depths[r] = tree.edge_depth(label)
    if tree.n_receivers < 2:
        return True
    tree._ensure_lca()
    adj = tree._adj_list
    blockers = _NearestBlockers()
    last = tree.n_receivers - 1
    for t, r in enumerate(tree._leaf_at):
        cd = depths[r]
        blocked, exception = blockers.constraint()
        if cd <= blocked and cd != exception:
            return False
        if t < last:
            blockers.advance(cd, adj[t])
    return True


def _quartet_type_raw(
    tree: LogicalTree, joins: Mapping[str, str], first: str, second: str
) -> QuartetType:
    # Shared by GroundTruth.quartet_type and the exhaustive tools, which
    # classify against many configurations without building a GroundTruth
    # (and its validity check) per candidate.
    branch_depth = tree.lca_depth(first, second)
    e1 = joins[first]
    e2 = joins[second]
    above1 = tree.edge_depth(e1) <= branch_depth
    above2 = tree.edge_depth(e2) <= branch_depth
    if above1 and above2:
        if e1 != e2:
            raise InvalidConfiguration(
                f"distinct joins {e1!r}, {e2!r} on the shared prefix of "
                f"({first!r}, {second!r})"
            )
        return QuartetType.BOTH_ABOVE
    if above1:
        return QuartetType.FIRST_ABOVE
    if above2:
        return QuartetType.SECOND_ABOVE
    return QuartetType.BOTH_BELOW


def quartet_type(gt: "GroundTruth", first: str, second: str) -> QuartetType:
    """Classify the ordered receiver pair against the ground truth.

    The orientation follows the argument order: FIRST_ABOVE means the first
    receiver's join sits on the pair's shared prefix while the second's sits
    below the branching point.  Swapping the arguments exchanges types 2 and
    3 and fixes types 1 and 4.
    """
    return _quartet_type_raw(gt.tree, gt.config.joins, first, second)


@dataclass(frozen=True)
class GroundTruth:
    """A logical tree together with a valid joining configuration."""

    tree: LogicalTree
    config: JoiningConfig

    def __post_init__(self):
        if not is_valid_config(self.tree, self.config):
            raise InvalidConfiguration("configuration violates the pairwise rule")

    def quartet_type(self, first: str, second: str) -> QuartetType:
        return quartet_type(self, first, second)
