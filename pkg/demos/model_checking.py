"""
Checking a timed automaton against an alternating specification
===============================================================

The product of a timed automaton with the no-unit-gap automaton is empty
exactly when no word accepted by both exists.  ``data/unit_gap.ta`` reads
two a's exactly one unit apart, so the product is empty; relaxing its guard
to [1,2] admits a joint word.
"""
from pathlib import Path

from ata_zones.corpus import no_unit_gap
from ata_zones.intervals import Interval
from ata_zones.product import TaEdge, TimedAutomaton, model_check
from ata_zones.textio import format_word, parse_ta

DATA = Path(__file__).parent / "data"
spec = no_unit_gap()
ta = parse_ta((DATA / "unit_gap.ta").read_text())
print("unit gap:", model_check(ta, spec).status)

relaxed = TimedAutomaton.build({"a"}, ("y",), "p0", {"p2"}, [
    TaEdge("p0", "a", "p1", resets=frozenset({"y"})),
    TaEdge("p1", "a", "p2", (("y", Interval.closed(1, 2)),)),
])
v = model_check(relaxed, spec)
print("gap in [1,2]:", v.status, format_word(v.witness))
