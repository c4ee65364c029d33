"""Tree model, ancestry queries, quartet classification, validity."""

from __future__ import annotations

import itertools

import pytest

from quartetmerge import (
    GroundTruth,
    InvalidConfiguration,
    InvalidTree,
    JoiningConfig,
    LogicalTree,
    MisplacedJoin,
    QuartetType,
    SameReceiver,
    UnknownReceiver,
    is_valid_config,
    make_tree,
    quartet_type,
    random_config,
)
from quartetmerge.topology import PlacementScan
from reference import (
    ref_common_prefix,
    ref_enumerate,
    ref_is_valid,
    ref_lca_depth,
    ref_quartet_type,
    ref_root_path,
)

SHAPES = [
    ("star", 4),
    ("star", 7),
    ("tall_binary", 2),
    ("tall_binary", 6),
    ("perfect_binary", 8),
    ("perfect_ternary", 9),
]


# -- construction contract -------------------------------------------------

def test_minimal_tree_is_one_edge():
    tree = LogicalTree("s", [("s", "r", "e")], ["r"])
    assert tree.n_receivers == 1
    assert list(tree.root_path("r")) == ["e"]


@pytest.mark.parametrize(
    "edges, receivers, msg",
    [
        ([("s", "s", "e1")], ["s"], "self-loop"),
        ([("s", "a", "e1"), ("b", "a", "e2")], ["a"], "two incoming"),
        ([("s", "a", "e1"), ("s", "b", "e1")], ["a", "b"], "duplicate edge label"),
        ([("s", "a", "e1"), ("a", "s", "e2")], ["a"], "incoming"),
        ([("s", "a", "e1"), ("b", "c", "e2")], ["a", "c"], "not connected"),
        ([("s", "a", "e1"), ("a", "b", "e2")], ["b"], "relay"),
        ([("s", "a", "e1"), ("s", "b", "e2")], ["a", "a"], "duplicate receiver"),
        ([("s", "a", "e1"), ("s", "b", "e2")], ["a"], "exactly the leaves"),
        ([], ["r"], "at least one edge"),
    ],
)
def test_malformed_trees_rejected(edges, receivers, msg):
    with pytest.raises(InvalidTree, match=msg):
        LogicalTree("s", edges, receivers)


def test_root_with_single_child_is_allowed():
    # only non-root internal nodes are relay-checked
    tree = LogicalTree("s", [("s", "h", "e1"), ("h", "a", "e2"), ("h", "b", "e3")], ["a", "b"])
    assert tree.node_depth("h") == 1


def test_trees_compare_by_structure():
    a = make_tree("star", 3)
    b = make_tree("star", 3)
    assert a == b and hash(a) == hash(b)
    assert a != make_tree("star", 4)


# -- ancestry against the reference ----------------------------------------

@pytest.mark.parametrize("shape, size", SHAPES)
def test_root_paths_match_reference(shape, size):
    tree = make_tree(shape, size)
    for r in tree.receivers:
        assert list(tree.root_path(r)) == ref_root_path(tree, r)
        assert tree.node_depth(r) == len(ref_root_path(tree, r))


@pytest.mark.parametrize("shape, size", SHAPES)
def test_lca_and_prefix_match_reference(shape, size):
    tree = make_tree(shape, size)
    for ri, rj in itertools.combinations(tree.receivers, 2):
        assert tree.lca_depth(ri, rj) == ref_lca_depth(tree, ri, rj)
        assert tree.lca_depth(rj, ri) == ref_lca_depth(tree, ri, rj)
        assert list(tree.common_prefix(ri, rj)) == ref_common_prefix(tree, ri, rj)


def test_lca_rejects_equal_and_unknown_receivers():
    tree = make_tree("star", 3)
    with pytest.raises(SameReceiver):
        tree.lca("r1", "r1")
    with pytest.raises(UnknownReceiver):
        tree.lca("r1", "nope")


def test_on_root_path(three_fork_tree):
    t = three_fork_tree
    assert t.on_root_path("e1", "r3")
    assert t.on_root_path("e3", "r2")
    assert not t.on_root_path("e5", "r3")
    assert not t.on_root_path("e2", "r4")


# -- quartet classification -------------------------------------------------

def test_worked_example_types(three_fork_tree, three_fork_config):
    gt = GroundTruth(three_fork_tree, three_fork_config)
    assert quartet_type(gt, "r2", "r3") is QuartetType.BOTH_ABOVE
    assert quartet_type(gt, "r1", "r3") is QuartetType.BOTH_BELOW
    assert quartet_type(gt, "r1", "r4") is QuartetType.SECOND_ABOVE
    assert quartet_type(gt, "r4", "r1") is QuartetType.FIRST_ABOVE


@pytest.mark.parametrize("shape, size", SHAPES)
def test_quartet_types_match_reference(shape, size):
    tree = make_tree(shape, size)
    for seed in range(5):
        gt = GroundTruth(tree, random_config(tree, seed))
        for ri, rj in itertools.combinations(tree.receivers, 2):
            got = quartet_type(gt, ri, rj)
            assert got.value == ref_quartet_type(tree, gt.config.joins, ri, rj)


def test_swap_exchanges_types_two_and_three(three_fork_tree):
    tree = three_fork_tree
    swap = {1: 1, 2: 3, 3: 2, 4: 4}
    for joins in ref_enumerate(tree):
        gt = GroundTruth(tree, JoiningConfig(joins))
        for ri, rj in itertools.combinations(tree.receivers, 2):
            assert quartet_type(gt, rj, ri).value == swap[quartet_type(gt, ri, rj).value]


# -- validity ----------------------------------------------------------------

def test_missing_and_misplaced_joins_raise(three_fork_tree):
    with pytest.raises(MisplacedJoin, match="no join"):
        is_valid_config(three_fork_tree, {"r1": "e2"})
    bad = {"r1": "e5", "r2": "e3", "r3": "e3", "r4": "e1"}
    with pytest.raises(MisplacedJoin, match="root path"):
        is_valid_config(three_fork_tree, bad)


def test_ground_truth_rejects_invalid_config(three_fork_tree):
    # two distinct joins on the shared prefix of (r2, r3)
    with pytest.raises(InvalidConfiguration):
        GroundTruth(
            three_fork_tree,
            JoiningConfig({"r1": "e2", "r2": "e1", "r3": "e3", "r4": "e4"}),
        )


@pytest.mark.parametrize(
    "shape, size",
    [("star", 3), ("tall_binary", 4), ("perfect_binary", 4), ("perfect_ternary", 3)],
)
def test_validity_matches_reference_exhaustively(shape, size):
    tree = make_tree(shape, size)
    paths = [list(tree.root_path(r)) for r in tree.receivers]
    for combo in itertools.product(*paths):
        joins = dict(zip(tree.receivers, combo))
        assert is_valid_config(tree, joins) == ref_is_valid(tree, joins)


def test_validity_accepts_mapping_or_config(three_fork_tree, three_fork_config):
    assert is_valid_config(three_fork_tree, three_fork_config)
    assert is_valid_config(three_fork_tree, dict(three_fork_config.joins))


# -- incremental scan ---------------------------------------------------------

def test_scan_tracks_allowed_suffix_and_exception(three_fork_tree):
    scan = PlacementScan(three_fork_tree)
    assert scan.allowed("r2") == (0, None)
    scan.place("r2", 2)  # join on e3, the shared prefix of (r2, r3)
    blocked, exception = scan.allowed("r3")
    assert (blocked, exception) == (2, 2)
    scan.unplace("r2")
    assert scan.allowed("r3") == (0, None)


def test_scan_out_of_order_placements(three_fork_tree):
    # placement order is free; constraints depend only on what is placed
    scan = PlacementScan(three_fork_tree)
    scan.place("r4", 1)
    scan.place("r1", 2)
    blocked, exception = scan.allowed("r3")
    assert blocked == 1 and exception == 1


# -- JoiningConfig mapping behaviour ------------------------------------------

def test_config_behaves_like_a_mapping(three_fork_config):
    cfg = three_fork_config
    assert cfg["r2"] == "e3" and "r2" in cfg
    assert len(cfg) == 4
    assert dict(cfg) == {"r1": "e2", "r2": "e3", "r3": "e3", "r4": "e1"}
    assert cfg == {"r1": "e2", "r2": "e3", "r3": "e3", "r4": "e1"}
    assert cfg == JoiningConfig(dict(cfg))
    assert hash(cfg) == hash(JoiningConfig(dict(cfg)))
