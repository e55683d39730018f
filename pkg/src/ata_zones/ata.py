"""One-clock alternating timed automata with clock deactivation.

A state is a pair ``(location, value)`` where ``value`` is a ``Fraction`` or
``None`` for an inactive clock.  A configuration is a frozenset of states.
Transition formulas are small immutable trees; they are normalised once into
disjunctive clauses when an automaton is built.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .intervals import Interval

INACTIVE = None


# -- transition formulas -----------------------------------------------------

class Formula:
    """Base class of transition formulas."""

    __slots__ = ()

    def __and__(self, other):
        return conj(self, other)

    def __or__(self, other):
        return disj(self, other)


@dataclass(frozen=True)
class FTrue(Formula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class FFalse(Formula):
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Loc(Formula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Guard(Formula):
    interval: Interval

    def __str__(self):
        return str(self.interval)


@dataclass(frozen=True)
class Conj(Formula):
    parts: tuple

    def __str__(self):
        return "(" + " & ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Disj(Formula):
    parts: tuple

    def __str__(self):
        return "(" + " | ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Reset(Formula):
    sub: Formula

    def __str__(self):
        return f"x.{self.sub}"


@dataclass(frozen=True)
class Deactivate(Formula):
    sub: Formula

    def __str__(self):
        return f"~x.{self.sub}"


TRUE = FTrue()
FALSE = FFalse()


def conj(*parts: Formula) -> Formula:
    if not parts:
        return TRUE
    return parts[0] if len(parts) == 1 else Conj(tuple(parts))


def disj(*parts: Formula) -> Formula:
    if not parts:
        return FALSE
    return parts[0] if len(parts) == 1 else Disj(tuple(parts))


def satisfies(model, value, formula: Formula) -> bool:
    """Decide ``model |=_value formula`` for a set of states ``model``."""
    if isinstance(formula, FTrue):
        return True
    if isinstance(formula, FFalse):
        return False
    if isinstance(formula, Loc):
        return (formula.name, value) in model
    if isinstance(formula, Guard):
        return value is None or formula.interval.contains(value)
    if isinstance(formula, Conj):
        return all(satisfies(model, value, p) for p in formula.parts)
    if isinstance(formula, Disj):
        return any(satisfies(model, value, p) for p in formula.parts)
    if isinstance(formula, Reset):
        return satisfies(model, Fraction(0), formula.sub)
    if isinstance(formula, Deactivate):
        return satisfies(model, None, formula.sub)
    raise TypeError(f"not a transition formula: {formula!r}")


# -- clauses ---------------------------------------------------------------------

@dataclass(frozen=True)
class Clause:
    """A conjunction of at most one guard and of now, reset and deactivate atoms.

    ``guard`` is ``None`` when the clause has no (or only a universal) guard.
    """

    guard: Interval | None = None
    now: frozenset = frozenset()
    reset: frozenset = frozenset()
    deact: frozenset = frozenset()
    is_false: bool = False

    @property
    def has_atoms(self) -> bool:
        return bool(self.now or self.reset or self.deact)

    @property
    def is_true(self) -> bool:
        return not self.is_false and self.guard is None and not self.has_atoms

    def atoms(self):
        return (
            [("now", q) for q in sorted(self.now)]
            + [("reset", q) for q in sorted(self.reset)]
            + [("deact", q) for q in sorted(self.deact)]
        )

    def weaker_than(self, other: "Clause") -> bool:
        """True when every model of ``other`` contains a model of ``self``."""
        if self.is_false or other.is_false:
            return other.is_false
        if self.guard is not None and (other.guard is None or not self.guard.includes(other.guard)):
            return False
        return self.now <= other.now and self.reset <= other.reset and self.deact <= other.deact

    def __str__(self):
        if self.is_false:
            return "false"
        parts = [] if self.guard is None else [str(self.guard)]
        parts += sorted(self.now)
        parts += [f"x.{q}" for q in sorted(self.reset)]
        parts += [f"~x.{q}" for q in sorted(self.deact)]
        return " & ".join(parts) if parts else "true"


FALSE_CLAUSE = Clause(is_false=True)
TRUE_CLAUSE = Clause()


def _merge(c1: Clause, c2: Clause) -> Clause | None:
    if c1.guard is None:
        guard = c2.guard
    elif c2.guard is None:
        guard = c1.guard
    else:
        guard = c1.guard.intersect(c2.guard)
        if guard is None:
            return None
    return Clause(guard, c1.now | c2.now, c1.reset | c2.reset, c1.deact | c2.deact)


def _dnf(formula: Formula, mode: str) -> list:
    # mode records the innermost enclosing clock operator: now, reset or deact
    if isinstance(formula, FTrue):
        return [TRUE_CLAUSE]
    if isinstance(formula, FFalse):
        return []
    if isinstance(formula, Loc):
        q = frozenset([formula.name])
        return [{"now": Clause(now=q), "reset": Clause(reset=q), "deact": Clause(deact=q)}[mode]]
    if isinstance(formula, Guard):
        interval = formula.interval
        if mode == "deact":
            return [TRUE_CLAUSE]
        if mode == "reset":
            return [TRUE_CLAUSE] if interval.contains(0) else []
        return [Clause(guard=None if interval.is_universal else interval)]
    if isinstance(formula, Disj):
        return [c for part in formula.parts for c in _dnf(part, mode)]
    if isinstance(formula, Conj):
        clauses = [TRUE_CLAUSE]
        for part in formula.parts:
            sub = _dnf(part, mode)
            clauses = [m for c1 in clauses for c2 in sub if (m := _merge(c1, c2)) is not None]
            if not clauses:
                break
        return clauses
    if isinstance(formula, Reset):
        return _dnf(formula.sub, "reset")
    if isinstance(formula, Deactivate):
        return _dnf(formula.sub, "deact")
    raise TypeError(f"not a transition formula: {formula!r}")


def dnf_normalize(formula: Formula) -> tuple:
    """Rewrite a formula into an equivalent tuple of clauses.

    Duplicate and absorbed clauses (those implied by a weaker sibling) are
    dropped.  An unsatisfiable formula yields ``(FALSE_CLAUSE,)``.
    """
    clauses = list(dict.fromkeys(_dnf(formula, "now")))
    kept = [
        c for i, c in enumerate(clauses)
        if not any(j != i and d.weaker_than(c) for j, d in enumerate(clauses))
    ]
    return tuple(kept) if kept else (FALSE_CLAUSE,)


def minimal_model(clause: Clause, value) -> frozenset | None:
    """The unique minimal model of a clause read at clock ``value``."""
    if clause.is_false:
        return None
    if clause.guard is not None and value is not None and not clause.guard.contains(value):
        return None
    zero = Fraction(0)
    return frozenset(
        [(q, value) for q in clause.now]
        + [(q, zero) for q in clause.reset]
        + [(q, None) for q in clause.deact]
    )


# -- automata --------------------------------------------------------------------

@dataclass(frozen=True, eq=True)
class OneATA:
    """A 1-ATA whose transitions are stored as clause tuples.

    ``delta`` maps ``(location, letter)`` to a tuple of clauses.  A missing
    entry means the transition is undefined, which blocks any run through it.
    """

    name: str
    locations: frozenset
    alphabet: frozenset
    initial: str
    accepting: frozenset
    delta: Mapping = field(hash=False)

    def __post_init__(self):
        if not self.alphabet:
            raise ValueError("alphabet must not be empty")
        if self.initial not in self.locations:
            raise ValueError(f"initial location {self.initial!r} is not declared")
        if not self.accepting <= self.locations:
            raise ValueError("accepting locations must be declared locations")
        for (q, a), clauses in self.delta.items():
            if q not in self.locations or a not in self.alphabet:
                raise ValueError(f"transition on unknown location or letter: {q!r}, {a!r}")
            for c in clauses:
                missing = (c.now | c.reset | c.deact) - self.locations
                if missing:
                    raise ValueError(f"transition {q} -{a}-> mentions unknown {sorted(missing)}")

    @classmethod
    def build(cls, alphabet: Iterable[str], initial: str, accepting: Iterable[str],
              transitions: Mapping, locations: Iterable[str] = (), name: str = "A") -> "OneATA":
        """Build an automaton from ``{(q, a): Formula}`` transitions."""
        delta = {key: dnf_normalize(f) for key, f in transitions.items()}
        locs = set(locations) | {initial} | set(accepting)
        for (q, _), clauses in delta.items():
            locs.add(q)
            for c in clauses:
                locs |= c.now | c.reset | c.deact
        return cls(name, frozenset(locs), frozenset(alphabet), initial, frozenset(accepting), delta)

    def clauses(self, q: str, a: str) -> tuple | None:
        return self.delta.get((q, a))

    @property
    def max_constant(self) -> int:
        return max_constant(self)

    def is_accepting(self, config) -> bool:
        return all(q in self.accepting for q, _ in config)

    def initial_config(self) -> frozenset:
        return frozenset([(self.initial, Fraction(0))])


def max_constant(ata: OneATA) -> int:
    """The largest interval endpoint used by any guard (0 if none)."""
    best = 0
    for clauses in ata.delta.values():
        for c in clauses:
            if c.guard is not None:
                best = max(best, c.guard.max_constant)
    return best


# -- configurations --------------------------------------------------------------

def state_key(state):
    q, v = state
    return (q, v is not None, v if v is not None else 0)


def config(*states) -> frozenset:
    """Build a configuration from ``(location, value)`` pairs.

    Values may be ints, strings such as ``"1/3"`` or ``"0.5"``, or ``None``.
    """
    return frozenset((q, None if v is None else Fraction(v)) for q, v in states)


def format_config(cfg) -> str:
    parts = []
    for q, v in sorted(cfg, key=state_key):
        parts.append(f"({q},{'⊥' if v is None else v})")
    return "{" + ", ".join(parts) + "}"


def config_width(cfg) -> int:
    """Number of states with an active clock."""
    return sum(1 for _, v in cfg if v is not None)


def time_elapse_config(cfg, delay) -> frozenset:
    delay = Fraction(delay)
    if delay < 0:
        raise ValueError("delays must be non-negative")
    return frozenset((q, v if v is None else v + delay) for q, v in cfg)


def discrete_successors(ata: OneATA, cfg, letter: str) -> list:
    """All ``(clause_combination, successor)`` pairs for one letter.

    The combination lists one clause per state of ``cfg`` in sorted state
    order.  Combinations without a model are skipped.
    """
    states = sorted(cfg, key=state_key)
    options = []
    for q, v in states:
        clauses = ata.clauses(q, letter)
        if clauses is None:
            return []
        usable = [(c, m) for c in clauses if (m := minimal_model(c, v)) is not None]
        if not usable:
            return []
        options.append(usable)
    result = []
    for combo in itertools.product(*options):
        succ = frozenset().union(*(m for _, m in combo))
        result.append((tuple(c for c, _ in combo), succ))
    return result


def step(ata: OneATA, cfgs: Iterable, delay, letter: str) -> set:
    """Set of configurations reachable from ``cfgs`` by one timed letter."""
    out = set()
    for cfg in cfgs:
        for _, succ in discrete_successors(ata, time_elapse_config(cfg, delay), letter):
            out.add(succ)
    return out


def accepts(ata: OneATA, word) -> bool:
    """Exhaustive membership test for a finite timed word ``[(d, a), ...]``."""
    cfgs = {ata.initial_config()}
    for delay, letter in word:
        cfgs = step(ata, cfgs, delay, letter)
        if not cfgs:
            return False
    return any(ata.is_accepting(c) for c in cfgs)


@dataclass
class RunStep:
    delay: Fraction
    letter: str
    elapsed: frozenset
    clauses: tuple
    config: frozenset


def accepting_run(ata: OneATA, word) -> list | None:
    """One accepting run as a list of :class:`RunStep`, or ``None``."""
    word = [(Fraction(d), a) for d, a in word]

    def search(cfg, i):
        if i == len(word):
            return [] if ata.is_accepting(cfg) else None
        delay, letter = word[i]
        elapsed = time_elapse_config(cfg, delay)
        for clauses, succ in discrete_successors(ata, elapsed, letter):
            rest = search(succ, i + 1)
            if rest is not None:
                return [RunStep(delay, letter, elapsed, clauses, succ)] + rest
        return None

    return search(ata.initial_config(), 0)


def observed_width(ata: OneATA, depth: int, delays: Iterable) -> int:
    """Largest configuration width seen within ``depth`` timed letters.

    Every delay of ``delays`` and every letter is tried at every step.
    """
    delays = [Fraction(d) for d in delays]
    letters = sorted(ata.alphabet)
    frontier = {ata.initial_config()}
    best = config_width(ata.initial_config())
    for _ in range(depth):
        nxt = set()
        for d in delays:
            for a in letters:
                nxt |= step(ata, frontier, d, a)
        if not nxt:
            break
        best = max(best, max(config_width(c) for c in nxt))
        frontier = nxt
    return best
