"""Reduction from monotone 3-SAT to non-entailment of zones.

For a formula with ``k`` all-positive clauses followed by ``m - k``
all-negative ones, :func:`gen_hardness_instance` builds two nodes such that
the first entails the second exactly when the formula is unsatisfiable.

The small zone ``Z`` has a gadget of three x/y pairs per polarity.  The
large zone ``Z'`` has one x/y pair per literal occurrence, placed in a time
slot of width 2 determined by its clause and position, with padding pairs
before the first and after the last clause.  Occurrences of the same
variable are rigidly linked, so one valuation of ``Z'`` encodes one
assignment; a gadget fits into ``Z'`` under some injection exactly when a
clause is falsified.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .dbm import Dbm
from .zones import Node, VarName

QX, QY = "qx", "qy"


@dataclass(frozen=True)
class MonotoneCnf:
    n_vars: int
    clauses: tuple  # tuples of non-zero ints, positives first

    def __post_init__(self):
        seen_negative = False
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError("every clause needs exactly three literals")
            if any(lit == 0 or abs(lit) > self.n_vars for lit in clause):
                raise ValueError(f"literal out of range in {clause}")
            if all(lit > 0 for lit in clause):
                if seen_negative:
                    raise ValueError("positive clauses must precede negative ones")
            elif all(lit < 0 for lit in clause):
                seen_negative = True
            else:
                raise ValueError(f"clause {clause} mixes polarities")

    @property
    def k(self) -> int:
        return sum(1 for c in self.clauses if c[0] > 0)

    @property
    def m(self) -> int:
        return len(self.clauses)

    @classmethod
    def of(cls, clauses, n_vars=None) -> "MonotoneCnf":
        """Sort clauses so positives come first."""
        clauses = [tuple(c) for c in clauses]
        pos = [c for c in clauses if c and c[0] > 0]
        neg = [c for c in clauses if not c or c[0] <= 0]
        if n_vars is None:
            n_vars = max((abs(l) for c in clauses for l in c), default=0)
        return cls(n_vars, tuple(pos + neg))


def is_satisfiable(cnf: MonotoneCnf) -> bool:
    """Brute force over all assignments."""
    for bits in itertools.product((False, True), repeat=cnf.n_vars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in cnf.clauses):
            return True
    return False


def parse_dimacs(text: str) -> MonotoneCnf:
    """Read a DIMACS CNF file; clauses may span lines and end with 0."""
    n_vars = None
    clauses, current = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: malformed problem line")
            n_vars = int(parts[2])
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ValueError(f"line {lineno}: not a literal: {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    return MonotoneCnf.of(clauses, n_vars)


@dataclass
class HardnessInstance:
    z: Node
    z_prime: Node
    M: int
    names: dict  # readable label -> VarName


def gen_hardness_instance(cnf: MonotoneCnf) -> HardnessInstance:
    m, k = cnf.m, cnf.k
    names = {}

    def var(label, loc, index):
        names[label] = VarName(loc, index)
        return names[label]

    # gadget: x/y pairs 1..3 for the positive side, 4..6 for the negative side
    gx = {(s, j): var(f"x{s}{j}", QX, (0 if s == "+" else 3) + j) for s in "+-" for j in (1, 2, 3)}
    gy = {(s, j): var(f"y{s}{j}", QY, (0 if s == "+" else 3) + j) for s in "+-" for j in (1, 2, 3)}
    cons = []
    for j in (1, 2, 3):
        cons += [(gy["+", j], gx["+", j], False, 1), (gx["+", j], gy["+", j], False, 0)]
        cons += [(gy["-", j], gx["-", j], False, 2), (gx["-", j], gy["-", j], True, -1)]
    for s in "+-":
        for j in (1, 2):
            cons += [(gx[s, j + 1], gy[s, j], False, 5), (gy[s, j], gx[s, j + 1], False, -1)]
    split = 14 * (k + 1) - 2
    cons += [(gy["+", 3], None, True, split), (None, gx["-", 1], True, -split)]
    cons += [(gy["-", 3], gx["+", 1], True, 14 * (m + 2) - 6)]
    z = Dbm.from_constraints(sorted(list(gx.values()) + list(gy.values())), cons)

    # large zone: padding slot 0, clause slots 1..m, padding slot m + 1
    px = {j: var(f"px{j}", QX, j) for j in (1, 2, 3)}
    py = {j: var(f"py{j}", QY, j) for j in (1, 2, 3)}
    lx = {(i, j): var(f"x^{i}_{j}", QX, 3 * i + j) for i in range(1, m + 1) for j in (1, 2, 3)}
    ly = {(i, j): var(f"y^{i}_{j}", QY, 3 * i + j) for i in range(1, m + 1) for j in (1, 2, 3)}
    nx = {j: var(f"nx{j}", QX, 3 * (m + 1) + j) for j in (1, 2, 3)}
    ny = {j: var(f"ny{j}", QY, 3 * (m + 1) + j) for j in (1, 2, 3)}
    cons2 = []

    def equal(v, value):
        cons2.extend([(v, None, False, value), (None, v, False, -value)])

    for j in (1, 2, 3):
        equal(px[j], 3 * (j - 1))
        equal(py[j], 3 * (j - 1))
        base = 14 * (m + 1) + 3 * (j - 1)
        equal(nx[j], base)
        equal(ny[j], base + 2)
    for (i, j), x in lx.items():
        y = ly[i, j]
        lo = 14 * i + 3 * (j - 1)
        for v in (x, y):
            cons2 += [(v, None, False, lo + 2), (None, v, False, -lo)]
        cons2.append((x, y, False, 0))
    occurrences = sorted(lx)
    for (i, j), (i2, j2) in itertools.combinations(occurrences, 2):
        if abs(cnf.clauses[i - 1][j - 1]) != abs(cnf.clauses[i2 - 1][j2 - 1]):
            continue
        d = 14 * (i2 - i) + 3 * (j2 - j)
        for a, b in ((lx[i2, j2], lx[i, j]), (ly[i2, j2], ly[i, j])):
            cons2 += [(a, b, False, d), (b, a, False, -d)]
    all_vars = list(px.values()) + list(py.values()) + list(lx.values()) + list(ly.values())
    all_vars += list(nx.values()) + list(ny.values())
    z_prime = Dbm.from_constraints(sorted(all_vars), cons2)
    if z is None or z_prime is None:
        raise RuntimeError("hardness construction produced an empty zone")
    return HardnessInstance(Node(z), Node(z_prime), 14 * (m + 2), names)
