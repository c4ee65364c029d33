"""Randomized invariants over arbitrary small trees, not just the families."""

from __future__ import annotations

import itertools

from hypothesis import given, settings, strategies as st

from quartetmerge import (
    ExactOracle,
    GroundTruth,
    JoiningConfig,
    LogicalTree,
    QuartetType,
    identifies,
    is_valid_config,
    parse_topology,
    quartet_type,
    random_config,
    run_gbs,
    run_rea,
    serialize_topology,
)
from reference import ref_is_valid, ref_quartet_type

SWAPPED = {
    QuartetType.BOTH_ABOVE: QuartetType.BOTH_ABOVE,
    QuartetType.FIRST_ABOVE: QuartetType.SECOND_ABOVE,
    QuartetType.SECOND_ABOVE: QuartetType.FIRST_ABOVE,
    QuartetType.BOTH_BELOW: QuartetType.BOTH_BELOW,
}


@st.composite
def trees(draw, max_receivers: int = 6) -> LogicalTree:
    """Random relay-free tree with receivers exactly at the leaves."""
    n = draw(st.integers(2, max_receivers))
    leaves = [f"r{k}" for k in range(1, n + 1)]
    edges: list[tuple[str, str, str]] = []
    labels = itertools.count(1)
    branches = itertools.count(1)

    def build(parent: str, group: list[str]) -> None:
        k = draw(st.integers(2, len(group)))
        cuts = sorted(
            draw(
                st.sets(
                    st.integers(1, len(group) - 1), min_size=k - 1, max_size=k - 1
                )
            )
        )
        for lo, hi in zip([0, *cuts], [*cuts, len(group)]):
            part = group[lo:hi]
            if len(part) == 1:
                edges.append((parent, part[0], f"e{next(labels)}"))
            else:
                b = f"b{next(branches)}"
                edges.append((parent, b, f"e{next(labels)}"))
                build(b, part)

    if draw(st.booleans()):
        # root edge into a hub, as in the generated families
        edges.append(("s1", "b0", f"e{next(labels)}"))
        build("b0", leaves)
    else:
        build("s1", leaves)
    order = draw(st.permutations(leaves))
    return LogicalTree("s1", edges, list(order))


@st.composite
def instances(draw):
    """Tree plus an arbitrary (not necessarily valid) joining map."""
    tree = draw(trees())
    joins = {}
    for r in tree.receivers:
        path = tree.root_path(r).edges
        joins[r] = path[draw(st.integers(0, len(path) - 1))]
    return tree, joins


@st.composite
def valid_instances(draw):
    tree = draw(trees())
    return tree, random_config(tree, draw(st.integers(0, 2**16)))


@given(valid_instances(), st.data())
@settings(deadline=None)
def test_swap_exchanges_one_sided_types(inst, data):
    tree, config = inst
    gt = GroundTruth(tree, config)
    pairs = list(itertools.combinations(tree.receivers, 2))
    a, b = data.draw(st.sampled_from(pairs))
    assert quartet_type(gt, b, a) == SWAPPED[quartet_type(gt, a, b)]


@given(valid_instances(), st.data())
@settings(deadline=None)
def test_quartet_type_matches_reference(inst, data):
    tree, config = inst
    gt = GroundTruth(tree, config)
    pairs = list(itertools.combinations(tree.receivers, 2))
    a, b = data.draw(st.sampled_from(pairs))
    assert int(quartet_type(gt, a, b)) == ref_quartet_type(tree, config.joins, a, b)


@given(instances())
@settings(deadline=None)
def test_validity_scan_matches_naive_all_pairs(inst):
    tree, joins = inst
    assert is_valid_config(tree, joins) == ref_is_valid(tree, joins)


@given(valid_instances())
@settings(deadline=None)
def test_sampled_configs_are_valid(inst):
    tree, config = inst
    assert ref_is_valid(tree, config.joins)


@given(valid_instances())
@settings(deadline=None)
def test_rea_recovers_in_exactly_n_minus_one(inst):
    tree, config = inst
    res = run_rea(tree, ExactOracle(GroundTruth(tree, config)))
    assert res.matches(config)
    assert res.queries_used == tree.n_receivers - 1


@given(valid_instances(), st.booleans())
@settings(deadline=None)
def test_gbs_recovers_within_the_pair_budget(inst, propagate):
    tree, config = inst
    res = run_gbs(
        tree, ExactOracle(GroundTruth(tree, config)), propagate_equalities=propagate
    )
    assert res.matches(config)
    n = tree.n_receivers
    assert res.queries_used <= n * (n - 1) // 2
    assert res.queries_used == sum(not s.from_cache for s in res.trace.steps)


@given(valid_instances())
@settings(deadline=None)
def test_serialization_round_trip(inst):
    tree, config = inst
    parsed, parsed_config = parse_topology(serialize_topology(tree, config))
    assert parsed == tree
    assert parsed_config == config
    bare, none = parse_topology(serialize_topology(tree))
    assert bare == tree and none is None


@given(valid_instances(), st.data())
@settings(deadline=None, max_examples=50)
def test_deduction_implies_elimination(inst, data):
    tree, config = inst
    pairs = list(itertools.combinations(tree.receivers, 2))
    subset = data.draw(
        st.lists(st.sampled_from(pairs), min_size=1, max_size=3, unique=True)
    )
    if identifies(tree, subset, config, mode="deduction"):
        assert identifies(tree, subset, config, mode="elimination")
