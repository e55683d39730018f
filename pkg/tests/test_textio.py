import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ata_zones.corpus import answered_requests, no_unit_gap
from ata_zones.intervals import Interval
from ata_zones.mtl import parse_mtl, translate
from ata_zones.product import TaEdge, TimedAutomaton
from ata_zones.textio import (
    ParseError, format_ata, format_ta, format_word, parse_ata, parse_formula, parse_ta, parse_word,
)

from gen import random_ata, random_formula

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"
F = Fraction


def test_no_unit_gap_source():
    ata = parse_ata((DATA / "no_unit_gap.ata").read_text())
    assert ata == no_unit_gap()
    assert ata.max_constant == 1
    assert [str(c) for c in ata.clauses("q1", "a")] == ["(1,inf) & q1", "[0,1) & q1", "[1,1] & q2"]


def test_answered_requests_source():
    ata = parse_ata((DATA / "answered_requests.ata").read_text())
    assert ata == answered_requests()
    (c,) = ata.clauses("qc", "c")
    assert c.is_true


def test_deactivation_spellings():
    assert parse_formula("x̄.q") == parse_formula("~x.q") == parse_formula("~ x . q")


def test_empty_alphabet_is_rejected():
    with pytest.raises(ParseError, match="alphabet"):
        parse_ata("ata A; alphabet ; init p;")


@pytest.mark.parametrize("text,line,column", [
    ("ata A;\nalphabet a;\ninit p;\np -a-> q & & r;", 4, 12),
    ("alphabet a;\ninit p;\np -a-> [2,1] & p;", 3, 8),
    ("alphabet a;\ninit p;\np -a-> (p | q;", 3, 14),
    ("alphabet a;\n  init p", 2, 3),
    ("alphabet a;\ninit p;\nwhat is this;", 3, 1),
])
def test_errors_carry_positions(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_ata(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(err.value)


def test_unknown_letter_and_duplicate_header():
    with pytest.raises(ParseError):
        parse_ata("alphabet a; init p; p -b-> p;")
    with pytest.raises(ParseError):
        parse_ata("alphabet a; alphabet b; init p;")


def test_repeated_transition_lines_are_joined():
    ata = parse_ata("alphabet a; init p; p -a-> p; p -a-> [1,1];")
    assert [str(c) for c in ata.clauses("p", "a")] == ["p", "[1,1]"]


def test_ata_round_trip_on_random_and_translated_automata():
    rng = random.Random(5)
    automata = [no_unit_gap(), answered_requests()] + [random_ata(rng) for _ in range(60)]
    automata += [translate(random_formula(rng, 3)).ata for _ in range(40)]
    for ata in automata:
        text = format_ata(ata)
        again = parse_ata(text)
        assert again == ata, text
        assert format_ata(again) == text


def test_timed_automaton_round_trip():
    text = (DATA / "unit_gap.ta").read_text()
    ta = parse_ta(text)
    assert ta.clocks == ("y",) and ta.accepting == {"p2"}
    assert ta.edges[0].resets == {"y"} and ta.edges[1].guards == (("y", Interval.point(1)),)
    assert parse_ta(format_ta(ta)) == ta
    two = TimedAutomaton.build({"a", "b"}, ("y1", "y2"), "p", {"q"}, [
        TaEdge("p", "a", "q", (("y1", Interval(1, 2, True, False)), ("y2", Interval(0, None))),
               frozenset({"y1", "y2"})),
        TaEdge("q", "b", "p"),
    ])
    assert parse_ta(format_ta(two)) == two


@pytest.mark.parametrize("text", [
    "alphabet a; init p; p -a-> q [z in [0,1]];",
    "alphabet a; clocks y; init p; p -a-> q [y = 1];",
    "alphabet a; clocks y; init p; p -a-> q {y};",
    "alphabet a; clocks y; init p; p -b-> q;",
    "alphabet a; init p; init q;",
])
def test_timed_automaton_errors(text):
    with pytest.raises(ParseError):
        parse_ta(text)


def test_word_examples():
    assert parse_word("(0.5,a)(0.7,a)") == [(F(1, 2), "a"), (F(7, 10), "a")]
    assert parse_word(" (1/3, b) (2,c) ") == [(F(1, 3), "b"), (F(2), "c")]
    assert parse_word("") == parse_word("eps") == []
    assert format_word([(F(3, 10), "b"), (F(1), "a")]) == "(3/10,b)(1,a)"


@pytest.mark.parametrize("text", ["(0.5,a", "(x,a)", "(1/0,a)", "0.5,a"])
def test_word_errors(text):
    with pytest.raises(ParseError):
        parse_word(text)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.fractions(min_value=0, max_value=10), st.sampled_from(["a", "b", "req"])),
                max_size=6))
def test_word_round_trip(word):
    assert parse_word(format_word(word)) == word


def test_mtl_round_trip_through_printing():
    rng = random.Random(8)
    for _ in range(200):
        f = random_formula(rng, 4)
        assert parse_mtl(str(f)) == f
