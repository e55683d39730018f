"""Entailment between nodes.

``n1`` entails ``n2`` when every configuration of ``n2`` contains a
sub-configuration that is region equivalent (bound ``M``) to one of ``n1``.
It is decided on valuations: for every ``v2`` in ``Z2`` there must be a
location preserving injection ``r`` from the variables of ``Z1`` into those
of ``Z2`` such that the region of ``v2 . r`` meets ``Z1``.

For a canonical ``Z1`` a region meets ``Z1`` iff each of its two-variable
projections (the constant zero included) meets the matching projection of
``Z1``.  So the valuations that fail a fixed ``r`` form a finite union of
zones, one or two per ordered pair of variables, and entailment reduces to
emptiness of the intersection of these unions over all ``r``.
"""
from __future__ import annotations

import itertools

from .dbm import INF, Dbm, decode, encode, negate
from .regions import enumerate_regions, project_signature


def kind_of(var):
    """Variables may only be mapped onto variables of the same kind.

    ATA variables are grouped by location; any other name (a timed
    automaton clock) forms a kind of its own.
    """
    loc = getattr(var, "loc", None)
    return ("loc", loc) if loc is not None else ("clock", var)


def pair_pieces(b: int, a: int, a2: int, M: int) -> list:
    """Constraint sets of the valuations whose pair region misses ``y2 - y (b)``.

    ``a`` and ``a2`` are the target matrix indices of ``y`` and ``y2``
    (0 for the constant zero).  Each returned item is a list of
    ``(i, j, code)`` constraints.
    """
    if b >= INF:
        return []
    c, _ = decode(b)
    at_most_m = encode(M, False)
    pieces = []
    piece = [(a, a2, negate(b))]
    if a:
        piece.append((a, 0, at_most_m))
    if a2:
        piece.append((a2, 0, at_most_m))
    pieces.append(piece)
    if a2:
        # y2 beyond M: only y <= M - c still rules out every witness
        if a:
            pieces.append([(a, 0, encode(min(M, M - c), False)), (0, a2, encode(-M, True))])
        elif M - c >= 0:
            pieces.append([(0, a2, encode(-M, True))])
    return pieces


def _covers(zone: Dbm, constraints) -> bool:
    m = zone.m
    return all(m[i, j] <= code for i, j, code in constraints)


def _bad_pieces(z1: Dbm, z2: Dbm, image, M, pairs):
    """Non-empty pieces for the pairs ``pairs`` of an injection ``image``.

    ``image[i]`` is the ``Z2`` index of ``Z1`` index ``i`` (``image[0] == 0``).
    Returns ``None`` when one piece alone already covers ``Z2``.
    """
    out = []
    for i, j in pairs:
        b = int(z1.m[j, i])
        for piece in pair_pieces(b, image[i], image[j], M):
            if _covers(z2, piece):
                return None
            if z2.constrain_many(piece) is not None:
                out.append(piece)
    return out


def _injections(z1: Dbm, z2: Dbm, M, kind):
    """Yield ``(image, pieces)`` for every location preserving injection.

    Partial maps whose pairs already make every valuation of ``Z2`` fail are
    pruned, together with all their extensions.
    """
    n = len(z1.vars)
    candidates = []
    for v in z1.vars:
        k = kind(v)
        candidates.append([z2.index(w) for w in z2.vars if kind(w) == k])
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    image = [0] * (n + 1)
    used = set()

    def extend(pos, pieces):
        if pos == n:
            yield list(image), pieces
            return
        i = order[pos] + 1
        done = [0] + [order[p] + 1 for p in range(pos)]
        pairs = [(i, j) for j in done] + [(j, i) for j in done]
        for target in candidates[i - 1]:
            if target in used:
                continue
            image[i] = target
            new = _bad_pieces(z1, z2, image, M, pairs)
            if new is None:
                continue
            used.add(target)
            yield from extend(pos + 1, pieces + new)
            used.discard(target)
        image[i] = 0

    yield from extend(0, [])


def _reduce(union: list) -> list:
    """Drop zones included in another member of the union."""
    kept = []
    for z in union:
        if any(k.includes(z) for k in kept):
            continue
        kept = [k for k in kept if not z.includes(k)]
        kept.append(z)
    return kept


def uncovered_part(z1: Dbm, z2: Dbm, M: int, kind=kind_of) -> list:
    """Zones whose union is the set of ``Z2`` valuations no injection handles."""
    if not z1.vars:
        return []
    running = [z2]
    seen_any = False
    for _, pieces in _injections(z1, z2, M, kind):
        seen_any = True
        nxt = []
        for zone in running:
            for piece in pieces:
                cut = zone.constrain_many(piece)
                if cut is not None:
                    nxt.append(cut)
        running = _reduce(nxt)
        if not running:
            return []
    if not seen_any:
        # every injection was pruned or none exists; either way Z2 is uncovered
        return [z2]
    return running


def zone_entails(z1: Dbm, z2: Dbm, M: int, kind=kind_of) -> bool:
    return not uncovered_part(z1, z2, M, kind)


def node_entails(n1, n2, M: int) -> bool:
    """Full entailment ``n1`` below ``n2`` for zone graph nodes."""
    if not n1.inactive <= n2.inactive:
        return False
    if not kinds_fit(n1.zone, n2.zone, kind_of):
        return False
    return zone_entails(n1.zone, n2.zone, M)


def entailment_counterexample(n1, n2, M: int):
    """A valuation of ``n2`` witnessing non-entailment, ``{}`` for an
    inactive-set mismatch, or ``None`` when ``n1`` entails ``n2``."""
    if not n1.inactive <= n2.inactive:
        return {}
    rest = uncovered_part(n1.zone, n2.zone, M)
    return rest[0].sample() if rest else None


def kinds_fit(z1: Dbm, z2: Dbm, kind) -> bool:
    need = {}
    for v in z1.vars:
        need[kind(v)] = need.get(kind(v), 0) + 1
    have = {}
    for v in z2.vars:
        have[kind(v)] = have.get(kind(v), 0) + 1
    return all(have.get(k, 0) >= c for k, c in need.items())


def compute_nr(z1: Dbm, z2: Dbm, mapping, M: int) -> list:
    """The valuations of ``Z2`` that fail the injection ``mapping``.

    ``mapping`` sends every variable of ``Z1`` to a variable of ``Z2``.  The
    result is a list of zones whose union is the failing set.
    """
    image = [0] + [z2.index(mapping[v]) for v in z1.vars]
    n = len(z1.vars)
    pairs = [(i, j) for i in range(n + 1) for j in range(n + 1) if i != j]
    out = []
    for i, j in pairs:
        for piece in pair_pieces(int(z1.m[j, i]), image[i], image[j], M):
            cut = z2.constrain_many(piece)
            if cut is not None:
                out.append(cut)
    return _reduce(out)


def node_entails_bounded(n1, n2, M: int) -> bool:
    """Cheaper entailment: same variables and the identity map only."""
    if n1.zone.vars != n2.zone.vars or not n1.inactive <= n2.inactive:
        return False
    if not n1.zone.vars:
        return True
    z1, z2 = n1.zone, n2.zone
    n = len(z1.vars)
    for i, j in itertools.permutations(range(n + 1), 2):
        for piece in pair_pieces(int(z1.m[j, i]), i, j, M):
            if z2.constrain_many(piece) is not None:
                return False
    return True


# -- reference check by region enumeration ---------------------------------------


def location_injections(vars1, vars2, kind=kind_of):
    """Every kind preserving injection, as tuples of positions in ``vars2``."""
    options = [[j for j, w in enumerate(vars2) if kind(w) == kind(v)] for v in vars1]
    for combo in itertools.product(*options):
        if len(set(combo)) == len(combo):
            yield combo


def brute_force_zone_entails(z1: Dbm, z2: Dbm, M: int, kind=kind_of) -> bool:
    regions1 = set(enumerate_regions(z1, M))
    injections = list(location_injections(z1.vars, z2.vars, kind))
    if not injections:
        return False
    for sig in enumerate_regions(z2, M):
        if not any(project_signature(sig, r) in regions1 for r in injections):
            return False
    return True


def brute_force_node_entails(n1, n2, M: int) -> bool:
    """Entailment decided by enumerating the regions of both zones."""
    if not n1.inactive <= n2.inactive:
        return False
    return brute_force_zone_entails(n1.zone, n2.zone, M)
