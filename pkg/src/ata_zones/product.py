"""Model checking timed automata against 1-ATA specifications.

The product explores a timed automaton together with an ATA on the same
word.  A compound node holds the automaton location, one zone over the
automaton clocks followed by the ATA variables, and the inactive ATA
variables.  Clocks are never renamed, so entailment between compound nodes
maps each clock to itself.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .ata import OneATA, discrete_successors, time_elapse_config
from .dbm import Dbm
from .emptiness import ExploreConfig, Verdict, explore
from .entailment import kinds_fit, zone_entails
from .zones import VarName, enumerate_targets, symbolic_step


@dataclass(frozen=True)
class TaEdge:
    src: str
    letter: str
    dst: str
    guards: tuple = ()   # (clock, Interval) pairs
    resets: frozenset = frozenset()


@dataclass(frozen=True)
class TimedAutomaton:
    name: str
    alphabet: frozenset
    clocks: tuple
    locations: frozenset
    initial: str
    accepting: frozenset
    edges: tuple

    def __post_init__(self):
        if self.initial not in self.locations:
            raise ValueError(f"initial location {self.initial!r} is not declared")
        for e in self.edges:
            if e.src not in self.locations or e.dst not in self.locations:
                raise ValueError(f"edge {e.src} -{e.letter}-> {e.dst} uses an unknown location")
            if e.letter not in self.alphabet:
                raise ValueError(f"edge letter {e.letter!r} is not in the alphabet")
            for c, _ in e.guards:
                if c not in self.clocks:
                    raise ValueError(f"unknown clock {c!r}")
            if not set(e.resets) <= set(self.clocks):
                raise ValueError("reset of an unknown clock")

    @classmethod
    def build(cls, alphabet, clocks, initial, accepting, edges, locations=(), name="T"):
        edges = tuple(edges)
        locs = set(locations) | {initial} | set(accepting)
        for e in edges:
            locs |= {e.src, e.dst}
        return cls(name, frozenset(alphabet), tuple(clocks), frozenset(locs), initial,
                   frozenset(accepting), edges)

    @property
    def max_constant(self) -> int:
        return max([iv.max_constant for e in self.edges for _, iv in e.guards], default=0)

    def outgoing(self, loc, letter):
        return [e for e in self.edges if e.src == loc and e.letter == letter]


def universal_automaton(alphabet) -> TimedAutomaton:
    """One accepting location with a guard-free loop on every letter."""
    edges = [TaEdge("u", a, "u") for a in sorted(alphabet)]
    return TimedAutomaton.build(alphabet, (), "u", {"u"}, edges, name="universal")


@dataclass(frozen=True)
class CompoundNode:
    ta_loc: str
    zone: Dbm
    inactive: frozenset = frozenset()

    def ata_vars(self, n_clocks):
        return self.zone.vars[n_clocks:]

    def key(self):
        return (self.ta_loc, self.zone.key(), self.inactive)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, CompoundNode) and self.key() == other.key()


class ProductSystem:
    """Zone graph of a timed automaton running alongside a 1-ATA."""

    def __init__(self, ta: TimedAutomaton, ata: OneATA):
        if not all(isinstance(c, str) for c in ta.clocks):
            raise ValueError("clock names must be plain strings")
        self.ta = ta
        self.ata = ata
        self.n_clocks = len(ta.clocks)
        self.M = max(ta.max_constant, ata.max_constant)
        self.letters = sorted(ta.alphabet | ata.alphabet)

    def initial(self):
        variables = list(self.ta.clocks) + [VarName(self.ata.initial, 1)]
        return CompoundNode(self.ta.initial, Dbm.zeros(variables))

    def _ata_node(self, node):
        # a view of the ATA part, only used to enumerate targets
        ata_vars = node.zone.vars[self.n_clocks:]
        return _VarsView(ata_vars, node.inactive)

    def successors(self, node):
        view = self._ata_node(node)
        counter = 0
        for a in self.letters:
            edges = self.ta.outgoing(node.ta_loc, a)
            if not edges:
                continue
            targets = enumerate_targets(view, a, self.ata)
            for edge, target in itertools.product(edges, targets):
                k = counter
                counter += 1
                result = symbolic_step(node.zone, target, self.ta.clocks, edge.guards, edge.resets)
                if result is None:
                    continue
                zone, inactive, record = result
                yield a, k, CompoundNode(edge.dst, zone, frozenset(inactive)), record

    def is_accepting(self, node) -> bool:
        if node.ta_loc not in self.ta.accepting:
            return False
        locs = {v.loc for v in node.zone.vars[self.n_clocks:]} | {v.loc for v in node.inactive}
        return locs <= self.ata.accepting

    def entails(self, n1, n2, mode: str) -> bool:
        if n1.ta_loc != n2.ta_loc or not n1.inactive <= n2.inactive:
            return False
        if mode == "bounded":
            if n1.zone.vars != n2.zone.vars:
                return False
        elif not kinds_fit(n1.zone, n2.zone, _kind):
            return False
        return zone_entails(n1.zone, n2.zone, self.M, _kind)

    def key(self, node):
        return node.key()

    def dump(self, node) -> str:
        lines = [f"location: {node.ta_loc}"] + node.zone.constraint_lines()
        if node.inactive:
            lines.append("inactive: {" + ", ".join(str(v) for v in sorted(node.inactive)) + "}")
        return "\n".join(lines)

    def initial_width(self) -> int:
        return self.n_clocks + 1

    def replay(self, word) -> bool:
        return product_accepts(self.ta, self.ata, word)


def _kind(var):
    return ("loc", var.loc) if isinstance(var, VarName) else ("clock", var)


class _VarsView:
    """Minimal stand-in for :class:`Node` accepted by ``enumerate_targets``."""

    def __init__(self, active, inactive):
        self._vars = tuple(active) + tuple(sorted(inactive))

    def variables(self):
        return self._vars


def model_check(ta: TimedAutomaton, spec: OneATA, config: ExploreConfig | None = None) -> Verdict:
    """Decide whether ``L(ta)`` and ``L(spec)`` are disjoint.

    ``spec`` describes the bad behaviours, typically the translation of a
    negated property.  ``Empty`` means the automaton is safe.
    """
    return explore(ProductSystem(ta, spec), config)


def product_accepts(ta: TimedAutomaton, ata: OneATA, word) -> bool:
    """Whether both automata accept ``word``, by explicit joint simulation."""
    zero = Fraction(0)
    states = {(ta.initial, tuple(zero for _ in ta.clocks), ata.initial_config())}
    for delay, letter in word:
        delay = Fraction(delay)
        nxt = set()
        for loc, clocks, cfg in states:
            clocks = tuple(v + delay for v in clocks)
            succs = [s for _, s in discrete_successors(ata, time_elapse_config(cfg, delay), letter)]
            if not succs:
                continue
            for e in ta.outgoing(loc, letter):
                values = dict(zip(ta.clocks, clocks))
                if not all(iv.contains(values[c]) for c, iv in e.guards):
                    continue
                new_clocks = tuple(zero if c in e.resets else values[c] for c in ta.clocks)
                for s in succs:
                    nxt.add((e.dst, new_clocks, s))
        states = nxt
        if not states:
            return False
    return any(loc in ta.accepting and ata.is_accepting(cfg) for loc, _, cfg in states)


def ta_accepts(ta: TimedAutomaton, word) -> bool:
    """Membership for the timed automaton alone."""
    zero = Fraction(0)
    states = {(ta.initial, tuple(zero for _ in ta.clocks))}
    for delay, letter in word:
        delay = Fraction(delay)
        nxt = set()
        for loc, clocks in states:
            values = {c: v + delay for c, v in zip(ta.clocks, clocks)}
            for e in ta.outgoing(loc, letter):
                if all(iv.contains(values[c]) for c, iv in e.guards):
                    nxt.add((e.dst, tuple(zero if c in e.resets else values[c] for c in ta.clocks)))
        states = nxt
    return any(loc in ta.accepting for loc, _ in states)

