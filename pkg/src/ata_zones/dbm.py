"""Difference bound matrices over named clock variables.

Bounds are encoded as integers so that the usual min-plus algebra becomes
integer arithmetic: ``(<, c)`` is ``2c`` and ``(<=, c)`` is ``2c + 1``.  A
smaller code is a tighter bound, and the sum of two codes is
``a + b - ((a | b) & 1)``.  Entry ``m[i, j]`` bounds ``x_i - x_j``; index 0
is the constant zero.
"""
from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

INF = 1 << 60
_FINITE_LIMIT = 1 << 58
LE_ZERO = 1
LT_ZERO = 0
ZERO = None


def encode(c: int, strict: bool) -> int:
    return 2 * c + (0 if strict else 1)


def decode(b: int) -> tuple[int, bool]:
    """Return ``(c, strict)`` for a finite code."""
    return b >> 1, not (b & 1)


def bound_add(a, b):
    if a >= INF or b >= INF:
        return INF
    return a + b - ((a | b) & 1)


def negate(b: int) -> int:
    """Code of the complement of ``x - y (b)``, expressed as a bound on ``y - x``."""
    c, strict = decode(b)
    return encode(-c, not strict)


def _outer_add(col, row):
    s = col + row - ((col | row) & 1)
    return np.where((col >= INF) | (row >= INF), INF, s)


def close(m: np.ndarray) -> bool:
    """Floyd-Warshall in place.  Returns False if the matrix is inconsistent."""
    n = m.shape[0]
    for k in range(n):
        np.minimum(m, _outer_add(m[:, k:k + 1], m[k:k + 1, :]), out=m)
    if (np.diagonal(m) < LE_ZERO).any():
        return False
    np.fill_diagonal(m, LE_ZERO)
    return True


def tighten(m: np.ndarray, i: int, j: int, b: int) -> bool:
    """Add ``x_i - x_j (b)`` to a canonical matrix in place, keeping it canonical."""
    if b >= m[i, j]:
        return True
    if bound_add(int(m[j, i]), b) < LE_ZERO:
        return False
    via = _outer_add(m[:, i:i + 1], np.full((1, 1), b, dtype=np.int64))
    np.minimum(m, _outer_add(via, m[j:j + 1, :]), out=m)
    return True


class Dbm:
    """An immutable canonical DBM over a tuple of variable names.

    Every variable is implicitly non-negative.  Instances are only created in
    canonical, non-empty form; operations that may produce an empty zone
    return ``None`` instead.
    """

    __slots__ = ("vars", "m", "_index", "_key")

    def __init__(self, variables, matrix: np.ndarray):
        self.vars = tuple(variables)
        matrix.setflags(write=False)
        self.m = matrix
        self._index = {v: i + 1 for i, v in enumerate(self.vars)}
        self._key = None

    # construction

    @classmethod
    def universe(cls, variables) -> "Dbm":
        variables = tuple(variables)
        n = len(variables) + 1
        m = np.full((n, n), INF, dtype=np.int64)
        m[0, :] = LE_ZERO
        np.fill_diagonal(m, LE_ZERO)
        return cls(variables, m)

    @classmethod
    def from_constraints(cls, variables, constraints) -> "Dbm | None":
        """Zone of ``(x, y, strict, c)`` constraints meaning ``x - y < c`` or ``<= c``."""
        z = cls.universe(variables)
        m = z.m.copy()
        for x, y, strict, c in constraints:
            i, j = z.index(x), z.index(y)
            m[i, j] = min(m[i, j], encode(c, strict))
        if not close(m):
            return None
        return cls(z.vars, m)

    @classmethod
    def zeros(cls, variables) -> "Dbm":
        """The zone where every variable equals 0."""
        variables = tuple(variables)
        n = len(variables) + 1
        return cls(variables, np.full((n, n), LE_ZERO, dtype=np.int64))

    # access

    def __len__(self):
        return len(self.vars)

    def index(self, var) -> int:
        return 0 if var is ZERO else self._index[var]

    def bound(self, x, y) -> int:
        """Code of the tightest bound on ``x - y``."""
        return int(self.m[self.index(x), self.index(y)])

    def key(self):
        if self._key is None:
            self._key = (self.vars, self.m.tobytes())
        return self._key

    def __eq__(self, other):
        return isinstance(other, Dbm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Dbm({self.constraint_lines()})"

    # operations

    def constrain(self, x, y, strict: bool, c: int) -> "Dbm | None":
        return self.constrain_index(self.index(x), self.index(y), encode(c, strict))

    def constrain_index(self, i: int, j: int, b: int) -> "Dbm | None":
        if b >= self.m[i, j]:
            return self
        m = self.m.copy()
        if not tighten(m, i, j, b):
            return None
        return Dbm(self.vars, m)

    def constrain_many(self, items) -> "Dbm | None":
        """Apply ``(i, j, code)`` constraints given by matrix index."""
        m = None
        for i, j, b in items:
            if b >= (self.m if m is None else m)[i, j]:
                continue
            if m is None:
                m = self.m.copy()
            if not tighten(m, i, j, b):
                return None
        return self if m is None else Dbm(self.vars, m)

    def within(self, var, interval) -> "Dbm | None":
        """Intersect with ``var in interval``."""
        i = self.index(var)
        return self.constrain_many(interval_constraints(i, interval))

    def up(self) -> "Dbm":
        """Let time elapse: drop every upper bound against zero."""
        if not self.vars:
            return self
        m = self.m.copy()
        m[1:, 0] = INF
        return Dbm(self.vars, m)

    def select(self, sources, variables) -> "Dbm":
        """New zone whose ``k``-th variable equals old index ``sources[k]``.

        Source 0 denotes a variable reset to zero.  The result stays
        canonical because it is a projection of a canonical extension.
        """
        idx = np.array([0] + list(sources), dtype=np.intp)
        m = self.m[np.ix_(idx, idx)].copy()
        np.fill_diagonal(m, LE_ZERO)
        return Dbm(variables, m)

    def project(self, keep) -> "Dbm":
        keep = list(keep)
        return self.select([self.index(v) for v in keep], keep)

    def rename(self, mapping) -> "Dbm":
        return Dbm([mapping.get(v, v) for v in self.vars], self.m.copy())

    def reorder(self, variables) -> "Dbm":
        return self.select([self.index(v) for v in variables], variables)

    def intersect(self, other: "Dbm") -> "Dbm | None":
        if self.vars != other.vars:
            other = other.reorder(self.vars)
        m = np.minimum(self.m, other.m)
        if not close(m):
            return None
        return Dbm(self.vars, m)

    def includes(self, other: "Dbm") -> bool:
        """Zone inclusion ``other <= self`` for zones over the same variables."""
        if self.vars != other.vars:
            other = other.reorder(self.vars)
        return bool((other.m <= self.m).all())

    def contains(self, valuation) -> bool:
        """Membership of a ``{var: value}`` valuation (exact rationals)."""
        vals = [Fraction(0)] + [Fraction(valuation[v]) for v in self.vars]
        n = len(vals)
        for i in range(n):
            for j in range(n):
                b = int(self.m[i, j])
                if i == j or b >= INF:
                    continue
                c, strict = decode(b)
                d = vals[i] - vals[j]
                if d > c or (strict and d == c):
                    return False
        return True

    def _pick(self, rng: random.Random | None) -> dict:
        n = len(self.vars)
        vals = [Fraction(0)] + [None] * n
        order = list(range(1, n + 1))
        if rng is not None:
            rng.shuffle(order)
        assigned = [0]
        for i in order:
            lo, lo_strict = Fraction(0), False
            hi, hi_strict = None, False
            for j in assigned:
                # x_j - x_i <= c  gives  x_i >= x_j - c
                b = int(self.m[j, i])
                if b < INF:
                    c, strict = decode(b)
                    cand = vals[j] - c
                    if cand > lo or (cand == lo and strict):
                        lo, lo_strict = cand, strict
                b = int(self.m[i, j])
                if b < INF:
                    c, strict = decode(b)
                    cand = vals[j] + c
                    if hi is None or cand < hi or (cand == hi and strict):
                        hi, hi_strict = cand, strict
            vals[i] = _choose(lo, lo_strict, hi, hi_strict, rng)
            assigned.append(i)
        return {v: vals[k + 1] for k, v in enumerate(self.vars)}

    def sample(self) -> dict:
        """A deterministic point of the zone, preferring small values."""
        return self._pick(None)

    def random_point(self, rng: random.Random) -> dict:
        return self._pick(rng)

    # printing

    def constraint_lines(self, name=str) -> list:
        """Every finite bound as ``y - x REL k``, sorted."""
        names = ["0"] + [name(v) for v in self.vars]
        lines = []
        n = len(names)
        for i in range(n):
            for j in range(n):
                b = int(self.m[i, j])
                if i == j or b >= INF:
                    continue
                c, strict = decode(b)
                lines.append(f"{names[i]} - {names[j]} {'<' if strict else '<='} {c}")
        return sorted(lines)


def _choose(lo, lo_strict, hi, hi_strict, rng):
    if hi is not None and hi == lo:
        return lo
    if rng is None:
        if not lo_strict:
            return lo
        if hi is None or hi - lo > 1:
            return lo + Fraction(1, 2)
        return (lo + hi) / 2
    if hi is None:
        hi = lo + rng.choice([1, 2, 3])
        hi_strict = False
    denominators = [1, 2, 3, 4, 8]
    candidates = []
    for d in denominators:
        k0 = int(lo * d) - 1
        k1 = int(hi * d) + 1
        for k in range(k0, k1 + 1):
            x = Fraction(k, d)
            if (x > lo or (x == lo and not lo_strict)) and (x < hi or (x == hi and not hi_strict)):
                candidates.append(x)
    if not candidates:
        return (lo + hi) / 2
    return rng.choice(candidates)


def interval_constraints(i: int, interval) -> list:
    """``(i, j, code)`` constraints expressing ``x_i in interval``."""
    out = [(0, i, encode(-interval.lower, not interval.lower_closed))]
    if interval.upper is not None:
        out.append((i, 0, encode(interval.upper, not interval.upper_closed)))
    return out
