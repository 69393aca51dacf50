"""Exact dyadic rationals, circle arcs and finite unions of arcs on [0, 1).

The circle is the half-open unit interval with 0 identified with 1.  Every
arc is half-open, ``[lo, lo + length)`` read mod 1, and may wrap past 1.
General rationals (needed for fixed points such as 1/3) are plain
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

import numbers
import re
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union


class Dyadic:
    """A number ``num / 2**exp`` kept in lowest terms (``exp == 0`` or ``num`` odd)."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int = 0, exp: int = 0):
        if exp < 0:
            num <<= -exp
            exp = 0
        if num == 0:
            exp = 0
        elif exp and not num & 1:
            tz = (num & -num).bit_length() - 1
            if tz > exp:
                tz = exp
            num >>= tz
            exp -= tz
        self.num = num
        self.exp = exp

    @classmethod
    def _raw(cls, num: int, exp: int) -> "Dyadic":
        d = object.__new__(cls)
        d.num = num
        d.exp = exp
        return d

    @classmethod
    def coerce(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"{value} is not a dyadic rational")
            return cls._raw(value.numerator, den.bit_length() - 1)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Dyadic")

    _TEXT = re.compile(r"^\s*(-?\d+)\s*(?:/\s*2\^(\d+))?\s*$")

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse ``"num/2^exp"`` (or a bare integer)."""
        m = cls._TEXT.match(text)
        if not m:
            raise ValueError(f"not a dyadic literal: {text!r}")
        return cls(int(m.group(1)), int(m.group(2) or 0))

    # numbers.Rational protocol, so Fraction interoperates exactly
    @property
    def numerator(self) -> int:
        return self.num

    @property
    def denominator(self) -> int:
        return 1 << self.exp

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __float__(self) -> float:
        return self.num / (1 << self.exp) if self.exp < 1000 else float(self.to_fraction())

    def __repr__(self) -> str:
        return f"Dyadic({self.num}, {self.exp})"

    def __str__(self) -> str:
        return f"{self.num}/2^{self.exp}"

    def __hash__(self) -> int:
        if self.exp == 0:
            return hash(self.num)
        return hash(self.to_fraction())

    def __bool__(self) -> bool:
        return self.num != 0

    def __neg__(self) -> "Dyadic":
        return Dyadic._raw(-self.num, self.exp)

    def __pos__(self) -> "Dyadic":
        return self

    def __abs__(self) -> "Dyadic":
        return Dyadic._raw(abs(self.num), self.exp)

    def __add__(self, other):
        if not isinstance(other, Dyadic):
            if isinstance(other, int):
                return Dyadic._raw(self.num + (other << self.exp), self.exp)
            if isinstance(other, Fraction):
                return self.to_fraction() + other
            return NotImplemented
        a, b = self, other
        if a.exp < b.exp:
            a, b = b, a
        return Dyadic(a.num + (b.num << (a.exp - b.exp)), a.exp)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (Dyadic, int)):
            return self + (-other)
        if isinstance(other, Fraction):
            return self.to_fraction() - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Dyadic):
            if not self.num or not other.num:
                return ZERO
            return Dyadic(self.num * other.num, self.exp + other.exp)
        if isinstance(other, int):
            return Dyadic(self.num * other, self.exp)
        if isinstance(other, Fraction):
            return self.to_fraction() * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int) and other and not other & (other - 1) and other > 0:
            return self.scale(-(other.bit_length() - 1))
        return self.to_fraction() / (other.to_fraction() if isinstance(other, Dyadic) else other)

    def __rtruediv__(self, other):
        return other / self.to_fraction()

    def scale(self, e: int) -> "Dyadic":
        """Return ``self * 2**e``."""
        if not self.num or not e:
            return self
        if e > 0:
            if e <= self.exp:
                return Dyadic._raw(self.num, self.exp - e)
            return Dyadic._raw(self.num << (e - self.exp), 0)
        if self.exp == 0:
            return Dyadic(self.num, -e)
        return Dyadic._raw(self.num, self.exp - e)

    def frac(self) -> "Dyadic":
        """Representative of ``self`` mod 1 in [0, 1)."""
        if self.exp == 0:
            return ZERO
        return Dyadic(self.num & ((1 << self.exp) - 1), self.exp)

    def floor(self) -> int:
        return self.num >> self.exp

    def _cmp(self, other) -> int:
        if isinstance(other, Dyadic):
            if self.exp >= other.exp:
                x, y = self.num, other.num << (self.exp - other.exp)
            else:
                x, y = self.num << (other.exp - self.exp), other.num
        elif isinstance(other, int):
            x, y = self.num, other << self.exp
        elif isinstance(other, Fraction):
            x = self.num * other.denominator
            y = other.numerator << self.exp
        else:
            raise TypeError
        return (x > y) - (x < y)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, (int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __reduce__(self):
        return (Dyadic, (self.num, self.exp))


numbers.Rational.register(Dyadic)

ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)
TWO = Dyadic(2)

Number = Union[Dyadic, Fraction, int]


def dyadic(value) -> Dyadic:
    """Convenience constructor: ``dyadic("3/2^3")``, ``dyadic(Fraction(1, 4))``, ``dyadic(1)``."""
    if isinstance(value, str) and "^" not in value and "/" in value:
        return Dyadic.coerce(Fraction(value))
    return Dyadic.coerce(value)


def format_rational(x) -> str:
    """``p/q`` text for any rational (always with an explicit denominator)."""
    q = Fraction(x)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    if "^" in text:
        return Dyadic.parse(text).to_fraction()
    return Fraction(text)


def mod1(x):
    """Reduce a Dyadic or Fraction into [0, 1)."""
    if isinstance(x, Dyadic):
        return x.frac()
    return x - (x.numerator // x.denominator)


class ImageCoversCircle(ValueError):
    """An affine image would be longer than the circle; the caller must split the arc."""


@dataclass(frozen=True)
class CircleInterval:
    """The half-open arc ``[lo, lo + length)`` mod 1."""

    lo: Dyadic
    length: Dyadic

    def __post_init__(self):
        lo = Dyadic.coerce(self.lo)
        length = Dyadic.coerce(self.length)
        if not (ZERO <= lo < ONE):
            raise ValueError(f"arc start {lo} not in [0, 1)")
        if not (ZERO < length <= ONE):
            raise ValueError(f"arc length {length} not in (0, 1]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "length", length)

    @classmethod
    def between(cls, a, b) -> "CircleInterval":
        """Arc from ``a`` forward to ``b`` (both taken mod 1); equal ends give the full circle."""
        a = mod1(Dyadic.coerce(a))
        b = mod1(Dyadic.coerce(b))
        length = (b - a).frac()
        return cls(a, length if length else ONE)

    @property
    def hi(self) -> Dyadic:
        return self.lo + self.length

    @property
    def wraps(self) -> bool:
        return self.hi > ONE

    @property
    def is_full(self) -> bool:
        return self.length == ONE

    def contains(self, x) -> bool:
        if self.is_full:
            return True
        return mod1(x - self.lo) < self.length

    __contains__ = contains

    def segments(self) -> list[tuple[Dyadic, Dyadic]]:
        """Non-wrapping pieces ``[a, b)`` with ``0 <= a < b <= 1``."""
        if self.is_full:
            return [(ZERO, ONE)]
        hi = self.hi
        if hi <= ONE:
            return [(self.lo, hi)]
        return [(ZERO, hi - ONE), (self.lo, ONE)]

    def __str__(self) -> str:
        return f"[{self.lo}, {self.lo}+{self.length})"

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "len": str(self.length)}

    @classmethod
    def from_json(cls, obj: dict) -> "CircleInterval":
        return cls(Dyadic.parse(obj["lo"]), Dyadic.parse(obj["len"]))


FULL_CIRCLE = CircleInterval(ZERO, ONE)


def affine_image(iv: CircleInterval, e: int, b) -> CircleInterval:
    """Image of ``iv`` under ``x -> 2**e * x + b`` (mod 1).

    Raises :class:`ImageCoversCircle` if the image would be longer than 1.
    """
    length = iv.length.scale(e)
    if length > ONE:
        raise ImageCoversCircle(f"image of {iv} has length {length}")
    lo = (iv.lo.scale(e) + Dyadic.coerce(b)).frac()
    return CircleInterval(lo, length)


Segment = tuple  # (a, b) with 0 <= a < b <= 1, both Dyadic


def _normalize(segments: Iterable[Segment]) -> tuple:
    segs = sorted((a, b) for a, b in segments if a < b)
    out: list[list[Dyadic]] = []
    for a, b in segs:
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1][1] = b
        else:
            out.append([a, b])
    return tuple((a, b) for a, b in out)


class IntervalSet:
    """A finite union of half-open arcs, kept in canonical form.

    Internally the set is a sorted tuple of disjoint, non-touching,
    non-wrapping segments ``[a, b)`` of [0, 1].  :attr:`arcs` presents the
    same set as circle arcs, merging a piece ending at 1 with a piece
    starting at 0 into one wrapping arc (listed last, since its start is
    largest).
    """

    __slots__ = ("segments",)

    def __init__(self, segments: Iterable[Segment] = ()):
        self.segments = _normalize(
            (Dyadic.coerce(a), Dyadic.coerce(b)) for a, b in segments
        )
        for a, b in self.segments:
            if a < ZERO or b > ONE:
                raise ValueError(f"segment [{a}, {b}) outside [0, 1]")

    @classmethod
    def _from_canonical(cls, segments: tuple) -> "IntervalSet":
        s = object.__new__(cls)
        s.segments = segments
        return s

    @classmethod
    def from_arcs(cls, arcs: Iterable[CircleInterval]) -> "IntervalSet":
        segs = []
        for arc in arcs:
            segs.extend(arc.segments())
        return cls(segs)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls._from_canonical(())

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls._from_canonical(((ZERO, ONE),))

    @property
    def arcs(self) -> list[CircleInterval]:
        segs = list(self.segments)
        if not segs:
            return []
        if segs == [(ZERO, ONE)]:
            return [FULL_CIRCLE]
        wrap = None
        if len(segs) > 1 and segs[0][0] == ZERO and segs[-1][1] == ONE:
            first = segs.pop(0)
            last = segs.pop()
            wrap = CircleInterval(last[0], (ONE - last[0]) + first[1])
        arcs = [CircleInterval(a, b - a) for a, b in segs]
        if wrap is not None:
            arcs.append(wrap)
        return arcs

    def length(self) -> Dyadic:
        total = ZERO
        for a, b in self.segments:
            total = total + (b - a)
        return total

    def is_empty(self) -> bool:
        return not self.segments

    def is_full(self) -> bool:
        return self.segments == ((ZERO, ONE),)

    def __bool__(self) -> bool:
        return bool(self.segments)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.segments == other.segments

    def __hash__(self):
        return hash(self.segments)

    def __iter__(self) -> Iterator[CircleInterval]:
        return iter(self.arcs)

    def __repr__(self) -> str:
        return "IntervalSet(" + ", ".join(str(a) for a in self.arcs) + ")"

    def contains_point(self, x) -> bool:
        x = mod1(x)
        i = bisect_right(self.segments, (x, TWO)) - 1
        if i < 0:
            return False
        a, b = self.segments[i]
        return a <= x < b

    def __contains__(self, x) -> bool:
        return self.contains_point(x)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet._from_canonical(_normalize(self.segments + other.segments))

    __or__ = union

    def complement(self) -> "IntervalSet":
        out = []
        pos = ZERO
        for a, b in self.segments:
            if a > pos:
                out.append((pos, a))
            pos = b
        if pos < ONE:
            out.append((pos, ONE))
        return IntervalSet._from_canonical(tuple(out))

    __invert__ = complement

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        A, B = self.segments, other.segments
        while i < len(A) and j < len(B):
            a = A[i][0] if A[i][0] > B[j][0] else B[j][0]
            b = A[i][1] if A[i][1] < B[j][1] else B[j][1]
            if a < b:
                out.append((a, b))
            if A[i][1] < B[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet._from_canonical(tuple(out))

    __and__ = intersection

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersection(other.complement())

    __sub__ = difference

    def contains(self, other: "IntervalSet") -> bool:
        """True iff every point of ``other`` lies in ``self``."""
        return other.difference(self).is_empty()

    def is_disjoint(self, other: "IntervalSet") -> bool:
        return self.intersection(other).is_empty()

    def boundary(self) -> set:
        """Endpoints of the arcs (points of the closure not in the interior)."""
        pts = set()
        for arc in self.arcs:
            if arc.is_full:
                continue
            pts.add(arc.lo)
            pts.add(arc.hi.frac())
        return pts

    def closure_disjoint(self, other: "IntervalSet") -> bool:
        """True iff the closures of the two sets do not meet."""
        if not self.is_disjoint(other):
            return False
        return not (self.boundary() & other.boundary())

    def closure_contains_point(self, x) -> bool:
        return self.contains_point(x) or mod1(x) in self.boundary()

    def affine_image(self, e: int, b) -> "IntervalSet":
        """Image under ``x -> 2**e * x + b`` mod 1 (the map must not overlap the set with itself)."""
        arcs = [affine_image(arc, e, b) for arc in self.arcs]
        return IntervalSet.from_arcs(arcs)

    def to_json(self) -> list:
        return [arc.to_json() for arc in self.arcs]
