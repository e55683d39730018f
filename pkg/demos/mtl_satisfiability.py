"""
Satisfiability of an MTL formula
================================

A formula is turned into a one-clock alternating automaton and the zone
graph of that automaton is explored.  A NonEmpty verdict comes with a
concrete timed word, which is checked against the formula directly.
"""
from ata_zones.emptiness import ExploreConfig, explore, mtl_sat
from ata_zones.mtl import parse_mtl, satisfied_by, translate, width_bound
from ata_zones.textio import format_ata, format_word

phi = parse_mtl("(F a) U[1,2] c")
t = translate(phi, ("a", "b", "c"))
print(format_ata(t.ata))
print("width bound:", width_bound(phi))

# the whole graph, without any pruning
graph = explore(t.ata, ExploreConfig(pruning="none", stop_at_accepting=False)).graph
print(f"\n{len(graph.nodes)} nodes, {len(graph.edges)} edges")
for e in graph.edges[:6]:
    print(f"  {e.src} -{e.letter}-> {e.dst}")

# one letter per position: the second formula needs a and c (or d) at the
# start, and in the third the next letter comes too late to be the one at time 1
for text in ["(F a) U[1,2] c", "(a U[1,2] b) & (c U[0,1] d)", "F[1,1] a & X[2,3] b"]:
    f = parse_mtl(text)
    v = mtl_sat(f)
    line = f"{text:30s} {v.status}"
    if v.witness is not None:
        line += f"  {format_word(v.witness)}  (holds: {satisfied_by(v.witness, f)})"
    print(line)
