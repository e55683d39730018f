"""Both directions of the successor round trip on random triples."""
from __future__ import annotations

import itertools
import math
import random

from ata_zones.ata import minimal_model
from ata_zones.dbm import INF, Dbm, decode
from ata_zones.zones import enumerate_targets, successor_with_record

from gen import random_ata, reachable_nodes


def random_triples(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        ata = random_ata(rng)
        nodes = reachable_nodes(ata, limit=40)
        # favour larger zones, which exercise the index allocation
        nodes.sort(key=lambda n: -len(n.zone.vars))
        for node in nodes[:3]:
            for a in sorted(ata.alphabet):
                targets = enumerate_targets(node, a, ata)
                if targets:
                    out.append((ata, node, a, rng.choice(targets)))
    return out[:count]


def concrete_step(node, valuation, delay, target):
    """Union of the minimal models of the target's clauses, one per variable."""
    states = set()
    for var, clause in target:
        value = None if var.index == 0 else valuation[var] + delay
        model = minimal_model(clause, value)
        if model is None:
            return None
        states |= model
    return frozenset(states)


def valuation_for(gamma, succ):
    """A valuation of ``succ``'s variables whose states are exactly ``gamma``."""
    active = {st for st in gamma if st[1] is not None}
    options = [[st for st in active if st[0] == v.loc] for v in succ.zone.vars]
    for combo in itertools.product(*options):
        point = {v: st[1] for v, st in zip(succ.zone.vars, combo)}
        if set(combo) == active and succ.zone.contains(point):
            return point
    return None


def has_predecessor(node, target, gamma):
    """Whether some valuation of ``node`` and delay step into ``gamma`` along ``target``.

    Unknowns are the elapsed values ``w(x)`` and the delay ``D``; the node's
    constraints on ``w(x) - D`` stay difference constraints once the zero
    row is read as ``D``.  Constants are scaled to clear denominators.
    """
    succ, record = successor_with_record(node, target)
    point = valuation_for(gamma, succ)
    if point is None:
        return False
    old = list(node.zone.vars)
    names = ["D"] + old
    cons = [(None, "D", False, 0)]
    m = node.zone.m
    for i, j in itertools.permutations(range(len(names)), 2):
        code = int(m[i, j])
        if code < INF:
            c, strict = decode(code)
            cons.append((names[i], names[j], strict, c))
    for i, interval in record.guards:
        cons += interval_bounds(old[i - 1], interval)
    pinned = []
    for k, src in enumerate(record.sources):
        if src:
            pinned.append((old[src - 1], point[succ.zone.vars[k]]))
    scale = math.lcm(1, *(v.denominator for _, v in pinned))
    cons = [(x, y, strict, c * scale) for x, y, strict, c in cons]
    for x, v in pinned:
        cons += [(x, None, False, int(v * scale)), (None, x, False, -int(v * scale))]
    z = Dbm.from_constraints(names, cons)
    if z is None:
        return False
    s = z.sample()
    d = s["D"] / scale
    pre = {x: s[x] / scale - d for x in old}
    assert node.zone.contains(pre)
    return concrete_step(node, pre, d, target) == gamma


def interval_bounds(x, interval):
    cons = [(None, x, not interval.lower_closed, -interval.lower)]
    if interval.upper is not None:
        cons.append((x, None, not interval.upper_closed, interval.upper))
    return cons
