"""Metric temporal logic over finite timed words, and its translation to 1-ATAs.

Formulas are in negation normal form: negation only applies to letters.
``F_I f`` is sugar for ``true U_I f`` and ``true`` for ``(b | !b)`` with a
letter ``b`` of the formula.  Positions are 1-based; a delay ``d_i`` is the
time elapsed between positions ``i - 1`` and ``i``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import ata as A
from .intervals import UNIVERSAL, Interval, parse_interval


class MtlFormula:
    __slots__ = ()


@dataclass(frozen=True)
class Atom(MtlFormula):
    letter: str

    def __str__(self):
        return self.letter


@dataclass(frozen=True)
class NegAtom(MtlFormula):
    letter: str

    def __str__(self):
        return f"!{self.letter}"


@dataclass(frozen=True)
class And(MtlFormula):
    left: MtlFormula
    right: MtlFormula

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(MtlFormula):
    left: MtlFormula
    right: MtlFormula

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Next(MtlFormula):
    interval: Interval
    sub: MtlFormula

    def __str__(self):
        return f"X{self.interval} {_unary(self.sub)}"


@dataclass(frozen=True)
class Until(MtlFormula):
    interval: Interval
    left: MtlFormula
    right: MtlFormula

    def __str__(self):
        return f"({self.left} U{self.interval} {self.right})"


def _unary(f):
    s = str(f)
    return s if isinstance(f, (Atom, NegAtom, And, Or, Until)) else f"({s})"


def true_formula(letter: str) -> MtlFormula:
    return Or(Atom(letter), NegAtom(letter))


def eventually(interval: Interval, sub: MtlFormula, letter: str) -> MtlFormula:
    return Until(interval, true_formula(letter), sub)


def letters(f: MtlFormula) -> set:
    if isinstance(f, (Atom, NegAtom)):
        return {f.letter}
    if isinstance(f, (And, Or)):
        return letters(f.left) | letters(f.right)
    if isinstance(f, Next):
        return letters(f.sub)
    return letters(f.left) | letters(f.right)


def subformulas(f: MtlFormula):
    yield f
    if isinstance(f, (And, Or, Until)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, Next):
        yield from subformulas(f.sub)


def is_pure_ltl(f: MtlFormula) -> bool:
    """No interval other than ``[0, inf)`` occurs in ``f``."""
    return all(
        not isinstance(g, (Next, Until)) or g.interval.is_universal for g in subformulas(f)
    )


def is_one_sided(f: MtlFormula) -> bool:
    """Every until in ``f`` has a pure LTL left operand."""
    return all(not isinstance(g, Until) or is_pure_ltl(g.left) for g in subformulas(f))


def width_bound(f: MtlFormula) -> int:
    """Bound on the active-clock width of the translated automaton.

    Raises ``ValueError`` unless ``f`` is one-sided.
    """
    if not is_one_sided(f):
        raise ValueError("width is only bounded for one-sided formulas")
    return _width(f)


def _width(f):
    if is_pure_ltl(f):
        return 1
    if isinstance(f, Or):
        return max(_width(f.left), _width(f.right))
    if isinstance(f, And):
        return _width(f.left) + _width(f.right)
    if isinstance(f, Next):
        return _width(f.sub)
    if isinstance(f, Until):
        return _width(f.right)
    return 1


# -- semantics -------------------------------------------------------------------------


def holds(word, f: MtlFormula, position: int = 1) -> bool:
    """Decide ``(word, position) |= f`` by direct recursion on the semantics."""
    word = [(Fraction(d), a) for d, a in word]
    return _holds(word, position, f, {})


def satisfied_by(word, f: MtlFormula) -> bool:
    """Word-level satisfaction; the empty word satisfies nothing."""
    return bool(word) and holds(word, f, 1)


def _holds(word, i, f, memo):
    key = (i, f)
    if key in memo:
        return memo[key]
    n = len(word)
    if isinstance(f, Atom):
        r = word[i - 1][1] == f.letter
    elif isinstance(f, NegAtom):
        r = word[i - 1][1] != f.letter
    elif isinstance(f, And):
        r = _holds(word, i, f.left, memo) and _holds(word, i, f.right, memo)
    elif isinstance(f, Or):
        r = _holds(word, i, f.left, memo) or _holds(word, i, f.right, memo)
    elif isinstance(f, Next):
        r = i < n and f.interval.contains(word[i][0]) and _holds(word, i + 1, f.sub, memo)
    elif isinstance(f, Until):
        r = False
        elapsed = Fraction(0)
        for k in range(i, n + 1):
            if k > i:
                elapsed += word[k - 1][0]
            if f.interval.contains(elapsed) and _holds(word, k, f.right, memo):
                r = True
                break
            if not _holds(word, k, f.left, memo):
                break
    else:
        raise TypeError(f"not an MTL formula: {f!r}")
    memo[key] = r
    return r


# -- translation -------------------------------------------------------------------------


@dataclass
class Translation:
    ata: A.OneATA
    location_of: dict
    describe: dict
    formula: MtlFormula

    @property
    def width_bound(self):
        """``width_bound(formula)``, or None when the formula is not one-sided."""
        return _width(self.formula) if is_one_sided(self.formula) else None


def translate(f: MtlFormula, alphabet=None, name: str = "mtl") -> Translation:
    """Build a 1-ATA accepting exactly the finite words that satisfy ``f``.

    Locations are the initial location ``init``, one location per until
    subformula and one per next subformula (the latter waits one step before
    checking its interval).  No location is accepting.  Pure LTL parts run
    with a deactivated clock.
    """
    sigma = sorted(set(alphabet or ()) | letters(f))
    location_of = {}
    describe = {"init": f"init[{f}]"}

    def loc(key):
        if key not in location_of:
            location_of[key] = f"q{len(location_of) + 1}"
            describe[location_of[key]] = str(key[1]) if key[0] == "until" else f"({key[1]})^r"
        return A.Loc(location_of[key])

    def wrap(g, a, reset_if_timed=True):
        body = delta(g, a)
        if is_pure_ltl(g):
            return A.Deactivate(body)
        return A.Reset(body) if reset_if_timed else body

    def delta(g, a):
        if isinstance(g, Atom):
            return A.TRUE if g.letter == a else A.FALSE
        if isinstance(g, NegAtom):
            return A.FALSE if g.letter == a else A.TRUE
        if isinstance(g, And):
            return A.conj(wrap(g.left, a, False), wrap(g.right, a, False))
        if isinstance(g, Or):
            return A.disj(wrap(g.left, a, False), wrap(g.right, a, False))
        if isinstance(g, Next):
            marker = loc(("next", g))
            return A.Deactivate(marker) if is_pure_ltl(g) else A.Reset(marker)
        if isinstance(g, Until):
            here = loc(("until", g))
            return A.disj(
                A.conj(wrap(g.right, a), A.Guard(g.interval)),
                A.conj(wrap(g.left, a), here),
            )
        raise TypeError(f"not an MTL formula: {g!r}")

    transitions = {}
    init_name = "init"
    for a in sigma:
        transitions[(init_name, a)] = A.Deactivate(delta(f, a)) if is_pure_ltl(f) else A.Reset(delta(f, a))
    done = set()
    while True:
        pending = [k for k in location_of if k not in done]
        if not pending:
            break
        for key in pending:
            done.add(key)
            kind, g = key
            for a in sigma:
                if kind == "until":
                    body = delta(g, a)
                else:
                    body = A.conj(A.Guard(g.interval), wrap(g.sub, a))
                transitions[(location_of[key], a)] = body
    ata = A.OneATA.build(sigma, init_name, (), transitions, name=name)
    return Translation(ata, location_of, describe, f)


# -- surface syntax -------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<interval>[\[(]\s*\d+\s*,\s*(?:\d+|inf)\s*[\])])|(?P<op>[!&|()])"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))"
)
_KEYWORDS = {"X", "F", "U", "true", "false", "inf", "G"}


class MtlSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at column {position + 1}")
        self.position = position


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MtlSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                                 len(text) - len(text[pos:].lstrip()))
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        out.append((kind, value, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.uses_true = False

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            raise MtlSyntaxError(f"expected {value!r} but found {v or 'end of input'!r}", pos)

    def parse(self):
        f = self.disjunction()
        kind, v, pos = self.peek()
        if kind != "end":
            raise MtlSyntaxError(f"unexpected {v!r}", pos)
        return f

    def disjunction(self):
        f = self.conjunction()
        while self.peek()[1] == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.until()
        while self.peek()[1] == "&":
            self.take()
            f = And(f, self.until())
        return f

    def until(self):
        left = self.unary()
        if self.peek()[1] == "U":
            self.take()
            interval = self.interval()
            return Until(interval, left, self.until())
        return left

    def interval(self):
        kind, v, pos = self.peek()
        if kind != "interval":
            return UNIVERSAL
        self.take()
        try:
            return parse_interval(v)
        except ValueError as e:
            raise MtlSyntaxError(str(e), pos) from None

    def unary(self):
        kind, v, pos = self.take()
        if v == "!":
            k2, v2, p2 = self.take()
            if k2 != "ident" or v2 in _KEYWORDS:
                raise MtlSyntaxError("negation applies to letters only", p2)
            return NegAtom(v2)
        if v == "X":
            interval = self.interval()
            return Next(interval, self.unary())
        if v == "F":
            interval = self.interval()
            self.uses_true = True
            return Until(interval, _TOP, self.unary())
        if v == "G":
            raise MtlSyntaxError("G is not supported", pos)
        if kind == "interval":
            raise MtlSyntaxError("interval not preceded by X, F or U", pos)
        if v == "(":
            f = self.disjunction()
            self.expect(")")
            return f
        if v == "true":
            self.uses_true = True
            return _TOP
        if v == "false":
            self.uses_true = True
            return _BOT
        if kind == "ident" and v not in _KEYWORDS:
            return Atom(v)
        raise MtlSyntaxError(f"unexpected {v or 'end of input'!r}", pos)


@dataclass(frozen=True)
class _Const(MtlFormula):
    value: bool


_TOP = _Const(True)
_BOT = _Const(False)


def _desugar(f, letter):
    if isinstance(f, _Const):
        if f.value:
            return true_formula(letter)
        return And(Atom(letter), NegAtom(letter))
    if isinstance(f, And):
        return And(_desugar(f.left, letter), _desugar(f.right, letter))
    if isinstance(f, Or):
        return Or(_desugar(f.left, letter), _desugar(f.right, letter))
    if isinstance(f, Next):
        return Next(f.interval, _desugar(f.sub, letter))
    if isinstance(f, Until):
        return Until(f.interval, _desugar(f.left, letter), _desugar(f.right, letter))
    return f


def _raw_letters(f):
    if isinstance(f, (Atom, NegAtom)):
        return {f.letter}
    if isinstance(f, (And, Or)):
        return _raw_letters(f.left) | _raw_letters(f.right)
    if isinstance(f, Next):
        return _raw_letters(f.sub)
    if isinstance(f, Until):
        return _raw_letters(f.left) | _raw_letters(f.right)
    return set()


def parse_mtl(text: str, alphabet=None) -> MtlFormula:
    """Parse the surface syntax: ``! & | X[l,u] U[l,u] F[l,u] true false``.

    Precedence from tightest: unary operators, ``U`` (right associative),
    ``&``, ``|``.  A missing interval means ``[0,inf)``.
    """
    p = _Parser(text)
    f = p.parse()
    if p.uses_true:
        pool = _raw_letters(f) | set(alphabet or ())
        if not pool:
            raise MtlSyntaxError("true/false need at least one letter in the alphabet", 0)
        f = _desugar(f, min(pool))
    return f
