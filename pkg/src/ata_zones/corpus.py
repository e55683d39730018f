"""Small reference automata used by the tests and demos."""
from __future__ import annotations

from .ata import TRUE, Deactivate, Guard, Loc, OneATA, Reset
from .intervals import Interval


def no_unit_gap() -> OneATA:
    """Accepts the words over ``{a}`` in which no two a's are exactly 1 apart.

    Every a spawns a watcher ``q1`` with a fresh clock; a watcher that reads
    another a at clock value exactly 1 moves to the rejecting sink ``q2``.
    """
    q0, q1, q2 = Loc("q0"), Loc("q1"), Loc("q2")
    transitions = {
        ("q0", "a"): q0 & Reset(q1),
        ("q1", "a"): (Guard(Interval(1, None, False)) & q1)
        | (Guard(Interval(0, 1, True, False)) & q1)
        | (Guard(Interval.point(1)) & q2),
        ("q2", "a"): q2,
    }
    return OneATA.build({"a"}, "q0", {"q0", "q1"}, transitions, name="no_unit_gap")


def answered_requests() -> OneATA:
    """Every a is followed later by some c and by a b exactly 1 time unit later.

    ``qb`` waits for the b with a running clock; ``qc`` needs no clock and is
    started deactivated.
    """
    qa, qb, qc = Loc("qa"), Loc("qb"), Loc("qc")
    open_unit = Guard(Interval(0, 1, False, False))
    above_unit = Guard(Interval(1, None, False))
    transitions = {
        ("qa", "a"): qa & Reset(qb) & Deactivate(qc),
        ("qa", "b"): qa,
        ("qa", "c"): qa,
        ("qb", "a"): qb,
        ("qb", "b"): Guard(Interval.point(1)) | (open_unit & qb) | (above_unit & qb),
        ("qb", "c"): qb,
        ("qc", "a"): qc,
        ("qc", "b"): qc,
        ("qc", "c"): TRUE,
    }
    return OneATA.build({"a", "b", "c"}, "qa", {"qa"}, transitions, name="answered_requests")


# one-sided formulas used by the termination checks and the demos
ONE_SIDED_FORMULAS = (
    "(F a) U[1,2] c",
    "a U[1,2] b",
    "(a U[1,2] b) & (c U[0,1] d)",
    "X[0,1] (a U[1,2] b)",
    "F[1,1] a",
    "(F a) & F[2,3] b",
    "(a | b) U[1,inf) c",
    "(a U b) U[0,2] (c & X[1,1] a)",
    "F (a & X[1,1] a)",
    "a & X[0,1] (b U[1,2] c)",
    "(F[0,1] a) & (F[1,2] b) & (F[2,3] c)",
    "(b U a) U[1,2] (a & F[1,1] b)",
    "F (a & F[1,1] b) & F[2,2] c",
)
