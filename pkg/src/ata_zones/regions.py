"""Region equivalence on configurations and region enumeration for zones.

These routines are exhaustive and meant as reference implementations; the
symbolic entailment check in :mod:`ata_zones.entailment` is tested against
them.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .dbm import Dbm, encode

# -- configurations ---------------------------------------------------------------


def _frac(v: Fraction) -> Fraction:
    return v - math.floor(v)


def _class(v, M):
    """Region class of a single value: (kind, integer part)."""
    if v is None:
        return ("off", 0)
    if v > M:
        return ("big", 0)
    k = math.floor(v)
    return ("int", k) if v == k else ("open", k)


def region_equivalent(cfg1, cfg2, M: int) -> bool:
    """Whether some location preserving bijection relates the two configurations."""
    s1, s2 = sorted(cfg1, key=_order_key), sorted(cfg2, key=_order_key)
    if len(s1) != len(s2):
        return False
    if sorted(q for q, _ in s1) != sorted(q for q, _ in s2):
        return False

    def fits(pairs):
        for (q, v), (_, w) in pairs:
            if _class(v, M) != _class(w, M):
                return False
        small = [(v, w) for (_, v), (_, w) in pairs if v is not None and v <= M]
        for (v1, w1), (v2, w2) in itertools.combinations(small, 2):
            a, b = _frac(v1), _frac(v2)
            c, d = _frac(w1), _frac(w2)
            if (a < b) != (c < d) or (a == b) != (c == d):
                return False
        return True

    used = [False] * len(s2)
    chosen = []

    def search(i):
        if i == len(s1):
            return fits(chosen)
        q, v = s1[i]
        for j, (q2, w) in enumerate(s2):
            if used[j] or q2 != q or _class(v, M) != _class(w, M):
                continue
            used[j] = True
            chosen.append((s1[i], s2[j]))
            if search(i + 1):
                return True
            chosen.pop()
            used[j] = False
        return False

    return search(0)


def _order_key(state):
    q, v = state
    return (q, v is not None, v if v is not None else 0)


def config_entails(cfg1, cfg2, M: int) -> bool:
    """``cfg1`` is region equivalent to some subset of ``cfg2``."""
    cfg2 = sorted(cfg2, key=_order_key)
    if len(cfg1) > len(cfg2):
        return False
    for subset in itertools.combinations(cfg2, len(cfg1)):
        if region_equivalent(cfg1, subset, M):
            return True
    return False


# -- regions of a zone -----------------------------------------------------------


def _class_constraints(i, cls, M):
    kind, k = cls
    if kind == "int":
        return [(i, 0, encode(k, False)), (0, i, encode(-k, False))]
    if kind == "open":
        return [(i, 0, encode(k + 1, True)), (0, i, encode(-k, True))]
    return [(0, i, encode(-M, True))]


def _classes(M):
    out = []
    for k in range(M + 1):
        out.append(("int", k))
        if k < M:
            out.append(("open", k))
    out.append(("big", 0))
    return out


def enumerate_regions(zone: Dbm, M: int) -> list:
    """Signatures of every region (bound ``M``) that meets ``zone``.

    A signature is a tuple with one ``(kind, integer_part, rank)`` entry per
    zone variable, where ``rank`` orders the fractional parts of the values
    lying strictly between integers and at most ``M``.
    """
    n = len(zone.vars)
    classes = _classes(M)
    found = []

    def assign(i, z, chosen):
        if i > n:
            order_fracs(z, chosen)
            return
        for cls in classes:
            z2 = z.constrain_many(_class_constraints(i, cls, M))
            if z2 is not None:
                assign(i + 1, z2, chosen + [cls])

    def order_fracs(z, chosen):
        opens = [i + 1 for i, c in enumerate(chosen) if c[0] == "open"]

        def grow(z, remaining, groups):
            if not remaining:
                rank = {}
                for r, g in enumerate(groups):
                    for i in g:
                        rank[i] = r
                found.append(tuple(
                    (c[0], c[1], rank.get(i + 1, -1)) for i, c in enumerate(chosen)
                ))
                return
            for size in range(1, len(remaining) + 1):
                for group in itertools.combinations(remaining, size):
                    items = []
                    head = group[0]
                    for other in group[1:]:
                        d = chosen[head - 1][1] - chosen[other - 1][1]
                        items += [(head, other, encode(d, False)), (other, head, encode(-d, False))]
                    if groups:
                        prev = groups[-1][0]
                        # frac(prev) < frac(head)
                        d = chosen[prev - 1][1] - chosen[head - 1][1]
                        items.append((prev, head, encode(d, True)))
                    z2 = z.constrain_many(items)
                    if z2 is not None:
                        rest = [i for i in remaining if i not in group]
                        grow(z2, rest, groups + [group])

        grow(z, opens, [])

    assign(1, zone, [])
    return found


def project_signature(sig, positions) -> tuple:
    """Restrict a signature to ``positions`` and renumber fractional ranks."""
    picked = [sig[p] for p in positions]
    ranks = sorted({r for _, _, r in picked if r >= 0})
    renum = {r: k for k, r in enumerate(ranks)}
    return tuple((kind, k, renum.get(r, -1)) for kind, k, r in picked)
