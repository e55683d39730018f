"""
Zones, nodes and entailment
===========================

A node abstracts a set of configurations: one variable per active state,
named after its location, with a DBM over those variables, plus the set of
states whose clock has been switched off.  We follow the a-successors of
the no-unit-gap automaton that keep one more copy of q1 alive each time,
then compare two hand-written nodes under the entailment check.
"""
from pathlib import Path

from ata_zones.corpus import no_unit_gap
from ata_zones.entailment import node_entails, node_entails_bounded
from ata_zones.zones import dump_node, enumerate_targets, initial_node, parse_node, successor

ata = no_unit_gap()
node = initial_node(ata)
print(dump_node(node))
for _ in range(3):
    # pick the successor with the most variables, i.e. the most copies kept
    targets = enumerate_targets(node, "a", ata)
    node = max((successor(node, t) for t in targets), key=lambda n: -1 if n is None else len(n.variables()))
    print("-- a -->")
    print(dump_node(node))

# the two-variable chain is covered by the three-variable one for M = 3,
# although no variable-to-same-name map witnesses it
DATA = Path(__file__).parent / "data"
small = parse_node((DATA / "pair.zone").read_text())
large = parse_node((DATA / "triple.zone").read_text())
print("\npair entails triple:", node_entails(small, large, 3))
print("with the identity map only:", node_entails_bounded(small, large, 3))
print("triple entails pair:", node_entails(large, small, 3))
