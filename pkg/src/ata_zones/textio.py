"""Text formats: the ATA and timed automaton languages and timed words.

ATA files look like::

    ata A1;
    alphabet a;
    init q0;
    accepting q0 q1;
    q0 -a-> q0 & x.q1;
    q1 -a-> ((1,inf) & q1) | ([0,1) & q1) | ([1,1] & q2);
    q2 -a-> q2;

``x.f`` resets the clock, ``~x.f`` deactivates it.  Comments start with
``#``.  Timed automata use ``ta``, ``clocks`` and edges such as
``p -a-> q [y in [1,2]] {reset y};``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from . import ata as A
from .intervals import parse_interval
from .product import TaEdge, TimedAutomaton


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        where = "" if line is None else f"line {line}, column {column}: "
        super().__init__(where + message)
        self.line = line
        self.column = column


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _strip_comments(text):
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)


def _statements(text):
    """Yield ``(statement, offset)`` for each ``;``-terminated statement."""
    clean = _strip_comments(text)
    start = 0
    for m in re.finditer(";", clean):
        body = clean[start:m.start()]
        if body.strip():
            yield body, start
        start = m.end()
    if clean[start:].strip():
        line, col = _line_col(text, start + len(clean[start:]) - len(clean[start:].lstrip()))
        raise ParseError("statement is missing its terminating ';'", line, col)


_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_FORMULA_TOKEN = re.compile(
    r"\s*(?:(?P<deact>(?:~\s*x|x̄)\s*\.)|(?P<reset>x\s*\.)"
    r"|(?P<interval>[\[(]\s*\d+\s*,\s*(?:\d+|inf)\s*[\])])"
    r"|(?P<op>[&|()])|(?P<ident>" + _IDENT + r"))"
)


class _FormulaParser:
    def __init__(self, text, base, source):
        self.source = source
        self.tokens = []
        pos = 0
        while True:
            rest = text[pos:]
            if not rest.strip():
                break
            m = _FORMULA_TOKEN.match(text, pos)
            if not m:
                off = base + pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected {rest.strip()[:1]!r} in formula", *_line_col(source, off))
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), base + m.start(kind)))
            pos = m.end()
        self.tokens.append(("end", "", base + len(text)))
        self.i = 0

    def error(self, message, offset):
        return ParseError(message, *_line_col(self.source, offset))

    def parse(self):
        f = self.disj()
        kind, v, off = self.tokens[self.i]
        if kind != "end":
            raise self.error(f"unexpected {v!r}", off)
        return f

    def disj(self):
        parts = [self.conj()]
        while self.tokens[self.i][1] == "|":
            self.i += 1
            parts.append(self.conj())
        return A.disj(*parts)

    def conj(self):
        parts = [self.unary()]
        while self.tokens[self.i][1] == "&":
            self.i += 1
            parts.append(self.unary())
        return A.conj(*parts)

    def unary(self):
        kind, v, off = self.tokens[self.i]
        self.i += 1
        if kind == "reset":
            return A.Reset(self.unary())
        if kind == "deact":
            return A.Deactivate(self.unary())
        if kind == "interval":
            try:
                return A.Guard(parse_interval(v))
            except ValueError as e:
                raise self.error(str(e), off) from None
        if v == "(":
            f = self.disj()
            kind2, v2, off2 = self.tokens[self.i]
            if v2 != ")":
                raise self.error("expected ')'", off2)
            self.i += 1
            return f
        if kind == "ident":
            if v == "true":
                return A.TRUE
            if v == "false":
                return A.FALSE
            return A.Loc(v)
        raise self.error(f"unexpected {v or 'end of formula'!r}", off)


def parse_formula(text: str) -> A.Formula:
    return _FormulaParser(text, 0, text).parse()


_TRANSITION = re.compile(r"\s*(" + _IDENT + r")\s*-\s*(" + _IDENT + r")\s*->", re.S)


def parse_ata(text: str) -> A.OneATA:
    header = {}
    transitions = {}
    for body, off in _statements(text):
        lead = len(body) - len(body.lstrip())
        words = body.split()
        keyword = words[0]
        where = _line_col(text, off + lead)
        m = _TRANSITION.match(body)
        if not m and keyword in ("ata", "alphabet", "init", "accepting", "locations"):
            if keyword in header:
                raise ParseError(f"duplicate '{keyword}' declaration", *where)
            for w in words[1:]:
                if not re.fullmatch(_IDENT, w):
                    raise ParseError(f"bad name {w!r}", *where)
            header[keyword] = words[1:]
            continue
        if not m:
            raise ParseError("expected a declaration or 'loc -letter-> formula'", *where)
        q, a = m.group(1), m.group(2)
        formula = _FormulaParser(body[m.end():], off + m.end(), text).parse()
        key = (q, a)
        transitions[key] = A.disj(transitions[key], formula) if key in transitions else formula
    for needed in ("alphabet", "init"):
        if needed not in header:
            raise ParseError(f"missing '{needed}' declaration")
    if len(header["init"]) != 1:
        raise ParseError("exactly one initial location is required")
    alphabet = header["alphabet"]
    for (q, a) in transitions:
        if a not in alphabet:
            raise ParseError(f"transition {q} -{a}-> uses a letter outside the alphabet")
    name = header.get("ata", ["A"])
    try:
        return A.OneATA.build(alphabet, header["init"][0], header.get("accepting", []),
                              transitions, header.get("locations", []),
                              name=name[0] if name else "A")
    except ValueError as e:
        raise ParseError(str(e)) from None


def format_ata(ata: A.OneATA) -> str:
    lines = [
        f"ata {ata.name};",
        "alphabet " + " ".join(sorted(ata.alphabet)) + ";",
        "locations " + " ".join(sorted(ata.locations)) + ";",
        f"init {ata.initial};",
        ("accepting " + " ".join(sorted(ata.accepting))).rstrip() + ";",
    ]
    for (q, a) in sorted(ata.delta):
        clauses = ata.delta[q, a]
        parts = []
        for c in clauses:
            text = str(c)
            if len(clauses) > 1 and " & " in text:
                text = f"({text})"
            parts.append(text)
        lines.append(f"{q} -{a}-> " + " | ".join(parts) + ";")
    return "\n".join(lines) + "\n"


# -- timed automata -----------------------------------------------------------------

_TA_EDGE = re.compile(
    r"\s*(" + _IDENT + r")\s*-\s*(" + _IDENT + r")\s*->\s*(" + _IDENT + r")"
    r"\s*(?:\[(?P<guards>.*)\])?\s*(?:\{(?P<resets>[^}]*)\})?\s*$",
    re.S,
)
_TA_GUARD = re.compile(r"\s*(" + _IDENT + r")\s+in\s+([\[(][^\])]*[\])])\s*")


def parse_ta(text: str) -> TimedAutomaton:
    header = {}
    edges = []
    for body, off in _statements(text):
        lead = len(body) - len(body.lstrip())
        words = body.split()
        where = _line_col(text, off + lead)
        m = _TA_EDGE.match(body)
        if not m and words[0] in ("ta", "alphabet", "clocks", "init", "accepting", "locations"):
            if words[0] in header:
                raise ParseError(f"duplicate '{words[0]}' declaration", *where)
            header[words[0]] = words[1:]
            continue
        if not m:
            raise ParseError("expected 'p -a-> q [guards] {reset clocks}'", *where)
        guards = []
        if m.group("guards") and m.group("guards").strip():
            for piece in _split_guards(m.group("guards")):
                g = _TA_GUARD.fullmatch(piece)
                if not g:
                    raise ParseError(f"bad guard {piece.strip()!r}", *where)
                try:
                    guards.append((g.group(1), parse_interval(g.group(2))))
                except ValueError as e:
                    raise ParseError(str(e), *where) from None
        resets = frozenset()
        if m.group("resets") is not None:
            words_r = m.group("resets").split()
            if not words_r or words_r[0] != "reset":
                raise ParseError("reset block must read {reset c1 c2}", *where)
            resets = frozenset(words_r[1:])
        edges.append(TaEdge(m.group(1), m.group(2), m.group(3), tuple(guards), resets))
    for needed in ("alphabet", "init"):
        if needed not in header:
            raise ParseError(f"missing '{needed}' declaration")
    try:
        return TimedAutomaton.build(header["alphabet"], header.get("clocks", []), header["init"][0],
                                    header.get("accepting", []), edges, header.get("locations", []),
                                    name=(header.get("ta") or ["T"])[0])
    except ValueError as e:
        raise ParseError(str(e)) from None


def _split_guards(text):
    # split on commas that are not inside an interval
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def format_ta(ta: TimedAutomaton) -> str:
    lines = [
        f"ta {ta.name};",
        "alphabet " + " ".join(sorted(ta.alphabet)) + ";",
        ("clocks " + " ".join(ta.clocks)).rstrip() + ";",
        "locations " + " ".join(sorted(ta.locations)) + ";",
        f"init {ta.initial};",
        ("accepting " + " ".join(sorted(ta.accepting))).rstrip() + ";",
    ]
    for e in ta.edges:
        text = f"{e.src} -{e.letter}-> {e.dst}"
        if e.guards:
            text += " [" + ", ".join(f"{c} in {iv}" for c, iv in e.guards) + "]"
        if e.resets:
            text += " {reset " + " ".join(sorted(e.resets)) + "}"
        lines.append(text + ";")
    return "\n".join(lines) + "\n"


# -- timed words -----------------------------------------------------------------------

_PAIR = re.compile(r"\s*\(\s*([0-9./]+)\s*,\s*(" + _IDENT + r")\s*\)")


def parse_word(text: str) -> list:
    """Parse ``(0.5,a)(1/3,b)``; delays are exact rationals."""
    word = []
    pos = 0
    text = text.strip()
    if text in ("", "ε", "eps"):
        return word
    while pos < len(text):
        m = _PAIR.match(text, pos)
        if not m:
            raise ParseError(f"malformed timed word near {text[pos:pos + 10]!r}", 1, pos + 1)
        try:
            delay = Fraction(m.group(1))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad delay {m.group(1)!r}", 1, m.start(1) + 1) from None
        word.append((delay, m.group(2)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return word


def format_word(word) -> str:
    return "".join(f"({Fraction(d)},{a})" for d, a in word)
