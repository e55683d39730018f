"""Symbolic successor computation for 1-ATAs.

A node pairs a zone over named clock variables ``x_{q,i}`` with a set of
inactive variables ``x_{q,0}``.  Each variable stands for one state of a
configuration; a configuration satisfies a node when some location
preserving surjection from the variables onto its states lands in the zone.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .ata import OneATA, state_key
from .dbm import INF, Dbm, decode, interval_constraints


class VarName(NamedTuple):
    loc: str
    index: int

    def __str__(self):
        return f"{self.loc}.{self.index}"


@dataclass(frozen=True)
class Node:
    zone: Dbm
    inactive: frozenset = frozenset()

    def __post_init__(self):
        if list(self.zone.vars) != sorted(self.zone.vars):
            raise ValueError("zone variables must be sorted")
        if any(v.index != 0 for v in self.inactive):
            raise ValueError("inactive variables carry index 0")
        if any(v.index == 0 for v in self.zone.vars):
            raise ValueError("active variables carry a positive index")

    @property
    def active(self) -> tuple:
        return self.zone.vars

    @property
    def is_empty_zone(self) -> bool:
        return not self.zone.vars

    def variables(self) -> tuple:
        return self.zone.vars + tuple(sorted(self.inactive))

    def locations(self) -> set:
        return {v.loc for v in self.zone.vars} | {v.loc for v in self.inactive}

    def is_accepting(self, ata: OneATA) -> bool:
        return self.locations() <= ata.accepting

    def key(self):
        return (self.zone.key(), self.inactive)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, Node) and self.key() == other.key()

    def __str__(self):
        return dump_node(self)


EMPTY_NODE = Node(Dbm.universe(()), frozenset())


def make_node(zone: Dbm, inactive=()) -> Node:
    """Build a node, putting the zone variables in canonical order."""
    order = sorted(zone.vars)
    if list(zone.vars) != order:
        zone = zone.reorder(order)
    return Node(zone, frozenset(inactive))


def initial_node(ata: OneATA) -> Node:
    return Node(Dbm.zeros([VarName(ata.initial, 1)]))


def time_elapse_node(node: Node) -> Node:
    return Node(node.zone.up(), node.inactive)


@dataclass(frozen=True)
class StepRecord:
    """How one symbolic step relates variables before and after it.

    ``guards`` lists ``(pre_index, interval)`` checks on the elapsed zone and
    ``sources`` gives, for each new variable, its pre-step matrix index or 0
    when it was reset.
    """

    guards: tuple
    sources: tuple


def enumerate_targets(node: Node, letter: str, ata: OneATA) -> list:
    """Every choice of one non-false clause per variable.

    Variables are taken in the order of :meth:`Node.variables`.  A variable
    whose transition is undefined or false leaves no target.
    """
    options = []
    variables = node.variables()
    for var in variables:
        clauses = ata.clauses(var.loc, letter)
        if clauses is None:
            return []
        usable = [c for c in clauses if not c.is_false]
        if not usable:
            return []
        options.append(usable)
    return [tuple(zip(variables, combo)) for combo in itertools.product(*options)]


def successor(node: Node, target) -> Node | None:
    """The successor of ``node`` along one target, or ``None`` if guards fail."""
    result = successor_with_record(node, target)
    return None if result is None else result[0]


def successor_with_record(node: Node, target):
    """Like :func:`successor` but also returns the :class:`StepRecord`."""
    result = symbolic_step(node.zone, target)
    if result is None:
        return None
    zone, inactive, record = result
    return Node(zone, frozenset(inactive)), record


def symbolic_step(zone: Dbm, target, clocks=(), clock_guards=(), clock_resets=()):
    """Shared successor computation on a zone whose first variables may be clocks.

    ``clocks`` are extra variables (timed automaton clocks) kept in front of
    the ATA variables, constrained by ``clock_guards`` and reset to zero when
    listed in ``clock_resets``.  Returns ``(zone, inactive, record)`` or
    ``None`` when the guards cannot be met.
    """
    zone = zone.up()
    guards = []
    items = []
    for clock, interval in clock_guards:
        i = zone.index(clock)
        guards.append((i, interval))
        items += interval_constraints(i, interval)
    for var, clause in target:
        if var.index and clause.guard is not None:
            i = zone.index(var)
            guards.append((i, clause.guard))
            items += interval_constraints(i, clause.guard)
    zone = zone.constrain_many(items)
    if zone is None:
        return None

    inactive = set()
    new_vars = {}
    if any(clause.has_atoms for _, clause in target):
        for _, clause in target:
            for q in clause.reset:
                new_vars[VarName(q, 1)] = 0
            for q in clause.deact:
                inactive.add(VarName(q, 0))
        # resets own index 1; copied clocks take the smallest free index
        used = {v.loc: {1} for v in new_vars}
        for var, clause in target:
            for q in sorted(clause.now):
                if var.index == 0:
                    inactive.add(VarName(q, 0))
                    continue
                taken = used.setdefault(q, set())
                ell = 1
                while ell in taken:
                    ell += 1
                taken.add(ell)
                new_vars[VarName(q, ell)] = zone.index(var)
    names = sorted(new_vars)
    clock_sources = [0 if c in clock_resets else zone.index(c) for c in clocks]
    sources = tuple(clock_sources + [new_vars[v] for v in names])
    new_zone = zone.select(sources, list(clocks) + names)
    return new_zone, inactive, StepRecord(tuple(guards), sources)


def successors(node: Node, letter: str, ata: OneATA) -> list:
    """``(target_index, target, successor, record)`` for every live target."""
    out = []
    for k, target in enumerate(enumerate_targets(node, letter, ata)):
        result = successor_with_record(node, target)
        if result is not None:
            out.append((k, target, result[0], result[1]))
    return out


# -- concrete semantics of nodes ------------------------------------------------

def node_satisfies(cfg, node: Node) -> bool:
    """Whether a configuration satisfies a node (exhaustive surjection search)."""
    cfg = list(cfg)
    variables = list(node.zone.vars)
    inactive_locs = {v.loc for v in node.inactive}
    if {q for q, v in cfg if v is None} != inactive_locs:
        return False
    active_states = [s for s in cfg if s[1] is not None]
    if not variables:
        return not active_states
    by_loc = {}
    for s in active_states:
        by_loc.setdefault(s[0], []).append(s)
    for var in variables:
        if var.loc not in by_loc:
            return False
    if {s[0] for s in active_states} - {v.loc for v in variables}:
        return False
    if len(variables) < len(active_states):
        return False

    zone = node.zone
    n = len(variables)
    values = [None] * n

    def consistent(k):
        # check every constraint between variable k and earlier ones
        vk = values[k]
        i = k + 1
        for j in range(0, k + 1):
            vj = Fraction(0) if j == 0 else values[j - 1]
            for a, b, d in ((i, j, vk - vj), (j, i, vj - vk)):
                if a == b:
                    continue
                code = int(zone.m[a, b])
                if code >= INF:
                    continue
                c, strict = decode(code)
                if d > c or (strict and d == c):
                    return False
        return True

    def search(k, covered):
        if k == n:
            return len(covered) == len(active_states)
        remaining = n - k
        if len(active_states) - len(covered) > remaining:
            return False
        for s in by_loc[variables[k].loc]:
            values[k] = s[1]
            if consistent(k) and search(k + 1, covered | {s}):
                return True
        return False

    return search(0, frozenset())


def sample_configuration(node: Node) -> frozenset:
    point = node.zone.sample()
    return frozenset(
        [(v.loc, point[v]) for v in node.zone.vars] + [(v.loc, None) for v in node.inactive]
    )


def random_configuration(node: Node, rng) -> frozenset:
    point = node.zone.random_point(rng)
    return frozenset(
        [(v.loc, point[v]) for v in node.zone.vars] + [(v.loc, None) for v in node.inactive]
    )


def configuration_key(cfg):
    return tuple(sorted(cfg, key=state_key))


# -- text format -------------------------------------------------------------------

def dump_zone_lines(zone: Dbm) -> list:
    return zone.constraint_lines()


def dump_node(node: Node) -> str:
    """Render a node in the line-oriented zone dump format."""
    if node.is_empty_zone:
        lines = ["EMPTYNODE"] if not node.inactive else ["EMPTYZONE"]
    else:
        lines = dump_zone_lines(node.zone)
    if node.inactive:
        lines.append("inactive: {" + ", ".join(str(v) for v in sorted(node.inactive)) + "}")
    return "\n".join(lines)


def parse_var(token: str) -> VarName:
    loc, sep, idx = token.strip().rpartition(".")
    if not sep or not loc or not idx.isdigit():
        raise ValueError(f"malformed variable {token!r}; expected loc.index")
    return VarName(loc, int(idx))


def parse_node(text: str) -> Node:
    """Inverse of :func:`dump_node`."""
    constraints = []
    inactive = set()
    names = set()
    empty = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("EMPTYNODE", "EMPTYZONE"):
            empty = True
            continue
        if line.startswith("inactive:"):
            body = line[len("inactive:"):].strip()
            if not (body.startswith("{") and body.endswith("}")):
                raise ValueError(f"line {lineno}: malformed inactive set")
            for tok in body[1:-1].split(","):
                if tok.strip():
                    var = parse_var(tok)
                    if var.index != 0:
                        raise ValueError(f"line {lineno}: inactive variables carry index 0")
                    inactive.add(var)
            continue
        parts = line.split()
        if len(parts) != 5 or parts[1] != "-" or parts[3] not in ("<", "<="):
            raise ValueError(f"line {lineno}: expected 'y - x REL k', got {line!r}")
        try:
            bound = int(parts[4])
        except ValueError:
            raise ValueError(f"line {lineno}: bound must be an integer") from None
        left = None if parts[0] == "0" else parse_var(parts[0])
        right = None if parts[2] == "0" else parse_var(parts[2])
        for v in (left, right):
            if v is not None:
                if v.index == 0:
                    raise ValueError(f"line {lineno}: active variables carry a positive index")
                names.add(v)
        constraints.append((left, right, parts[3] == "<", bound))
    if empty and names:
        raise ValueError("an empty zone cannot carry constraints")
    zone = Dbm.from_constraints(sorted(names), constraints)
    if zone is None:
        raise ValueError("the constraints describe an empty zone")
    return Node(zone, frozenset(inactive))
