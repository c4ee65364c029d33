#!/usr/bin/env python3
"""How few quartets could possibly identify a joining map?

Brute force over all valid joining maps answers this exactly on small
trees, under two different readings of "the answers identify the map":

* elimination: no other valid map produces the same answers.  This is the
  information-theoretic minimum; it exploits the fact that many candidate
  maps are invalid to begin with.
* deduction: interval reasoning plus type-1 equalities must pin every
  join on its own.  This is what an online solver can actually conclude,
  and it can need strictly more answers.
"""

from quartetmerge import (
    GroundTruth,
    JoiningConfig,
    answer_set,
    enumerate_valid_configs,
    lower_bound,
    make_tree,
    min_identifying_set,
    min_quartets_all,
)

print("anchor 1: perfect binary, n=4, every join on its own leaf edge")
tree = make_tree("perfect_binary", 4)
config = JoiningConfig({r: tree.root_path(r)[-1] for r in tree.receivers})
for mode in ("elimination", "deduction"):
    witness = min_identifying_set(tree, config, mode=mode)
    print(f"  {mode:<12} minimum {len(witness)}: {witness}")
answers = answer_set(GroundTruth(tree, config), [("r1", "r2"), ("r3", "r4")])
print(f"  the two answers: {[(p, t.name) for p, t in answers.items()]}")
print("  two disjoint BOTH_BELOW answers pin all four joins at once\n")

print("anchor 2: caterpillar, n=4, all joins coincide on the root edge")
tree = make_tree("tall_binary", 4)
config = JoiningConfig({r: "e1" for r in tree.receivers})
for mode in ("elimination", "deduction"):
    witness = min_identifying_set(tree, config, mode=mode)
    print(f"  {mode:<12} minimum {len(witness)}: {witness}")
print("  the two-answer set leaves an interval ambiguous, but the only")
print("  alternative map inside it is invalid, so elimination still wins\n")

print("worst-case minimum over every valid map (elimination):")
print(f"{'shape':<16}{'n':>4}{'maps':>6}{'floor':>7}{'worst':>7}{'n-1':>5}")
for shape, sizes in [("star", (3, 5)), ("tall_binary", (3, 5)), ("perfect_binary", (4,))]:
    for n in sizes:
        t = make_tree(shape, n)
        counts = min_quartets_all(t)
        print(f"{shape:<16}{n:>4}{len(enumerate_valid_configs(t)):>6}"
              f"{lower_bound(n):>7}{max(counts):>7}{n - 1:>5}")
print("\nthe worst case always sits between ceil(n/2) and n-1")
