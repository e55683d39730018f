"""Non-negative time intervals with integer endpoints."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Interval:
    """An interval of non-negative reals with natural endpoints.

    ``upper`` is ``None`` for an unbounded interval, whose upper side is
    then always open.
    """

    lower: int
    upper: int | None
    lower_closed: bool = True
    upper_closed: bool = False

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError("interval lower bound must be non-negative")
        if self.upper is None:
            if self.upper_closed:
                raise ValueError("an unbounded interval has an open upper end")
        elif self.upper < self.lower or (
            self.upper == self.lower and not (self.lower_closed and self.upper_closed)
        ):
            raise ValueError(f"empty interval {self._text()}")

    @classmethod
    def closed(cls, lower: int, upper: int) -> "Interval":
        return cls(lower, upper, True, True)

    @classmethod
    def point(cls, value: int) -> "Interval":
        return cls(value, value, True, True)

    @classmethod
    def at_least(cls, lower: int, strict: bool = False) -> "Interval":
        return cls(lower, None, not strict, False)

    @property
    def is_universal(self) -> bool:
        return self.lower == 0 and self.lower_closed and self.upper is None

    @property
    def max_constant(self) -> int:
        return self.lower if self.upper is None else self.upper

    def contains(self, value) -> bool:
        value = Fraction(value)
        if value < self.lower or (value == self.lower and not self.lower_closed):
            return False
        if self.upper is None:
            return True
        return value < self.upper or (value == self.upper and self.upper_closed)

    __contains__ = contains

    def intersect(self, other: "Interval") -> "Interval | None":
        if (self.lower, not self.lower_closed) >= (other.lower, not other.lower_closed):
            lower, lower_closed = self.lower, self.lower_closed
        else:
            lower, lower_closed = other.lower, other.lower_closed
        if self.upper is None:
            upper, upper_closed = other.upper, other.upper_closed
        elif other.upper is None or (self.upper, self.upper_closed) <= (other.upper, other.upper_closed):
            upper, upper_closed = self.upper, self.upper_closed
        else:
            upper, upper_closed = other.upper, other.upper_closed
        try:
            return Interval(lower, upper, lower_closed, upper_closed)
        except ValueError:
            return None

    def includes(self, other: "Interval") -> bool:
        """True when every point of ``other`` lies in ``self``."""
        return self.intersect(other) == other

    def _text(self) -> str:
        left = "[" if self.lower_closed else "("
        if self.upper is None:
            return f"{left}{self.lower},inf)"
        right = "]" if self.upper_closed else ")"
        return f"{left}{self.lower},{self.upper}{right}"

    def __str__(self):
        return self._text()

    def __repr__(self):
        return f"Interval({self._text()})"


UNIVERSAL = Interval(0, None)

_INTERVAL_RE = re.compile(r"\s*([\[(])\s*(\d+)\s*,\s*(\d+|inf|∞)\s*([\])])\s*$")


def parse_interval(text: str) -> Interval:
    """Parse ``[l,u]``, ``(l,u)``, ``[l,inf)`` and the mixed forms."""
    match = _INTERVAL_RE.match(text)
    if not match:
        raise ValueError(f"malformed interval {text!r}")
    left, lo, hi, right = match.groups()
    if hi in ("inf", "∞"):
        if right != ")":
            raise ValueError(f"unbounded interval must be right-open: {text!r}")
        return Interval(int(lo), None, left == "[", False)
    return Interval(int(lo), int(hi), left == "[", right == "]")
