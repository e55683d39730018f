"""
Running a one-clock alternating timed automaton
================================================

The automaton in ``data/no_unit_gap.ata`` accepts the timed words over {a}
in which no two a's are exactly one time unit apart.  Every a spawns a
fresh copy q1 that watches the clock; q2 is the trap reached when a later a
arrives with that copy's clock at exactly 1.
"""
from pathlib import Path

from ata_zones.ata import accepting_run, accepts, format_config
from ata_zones.textio import format_word, parse_ata, parse_word

DATA = Path(__file__).parent / "data"
ata = parse_ata((DATA / "no_unit_gap.ata").read_text())
print(ata.name, "over", sorted(ata.alphabet), "with max constant", ata.max_constant)

# a configuration is a set of (location, clock value) pairs
word = parse_word("(0.5,a)(0.7,a)")
print("\nrun on", format_word(word))
print("  ", format_config(ata.initial_config()))
for step in accepting_run(ata, word):
    print(f"   --{step.delay}-->", format_config(step.elapsed))
    print(f"   --{step.letter}-->", format_config(step.config))

# gaps of exactly 1, even between non-adjacent a's, are rejected
for text in ["(0.5,a)(0.7,a)", "(0.5,a)(1,a)", "(0.3,a)(0.3,a)(0.7,a)", "(0.3,a)(0.3,a)(0.8,a)"]:
    print(f"{text:28s}", "accepted" if accepts(ata, parse_word(text)) else "rejected")
