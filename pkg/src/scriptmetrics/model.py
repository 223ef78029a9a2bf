"""Domain types shared by every analysis: letters and their decompositions,
phoneme-to-grapheme mapping tables and integer-support frequency tables.

All types are immutable; every function here is pure.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, NamedTuple


class DataError(ValueError):
    """Invalid input data (empty tables, bad parameters, malformed values)."""


class ComponentKind(Enum):
    POINT = "point"
    LINE = "straight-line"
    ARC = "arc"  # curve not exceeding 180 degrees

    @property
    def weight(self) -> int:
        return _COMPONENT_WEIGHTS[self]


class ConnectionKind(Enum):
    CONTINUOUS = "continuous"
    CRISP = "crisp"
    CROSSING = "crossing"

    @property
    def weight(self) -> int:
        return _CONNECTION_WEIGHTS[self]


_COMPONENT_WEIGHTS = {ComponentKind.POINT: 1, ComponentKind.LINE: 2, ComponentKind.ARC: 3}
_CONNECTION_WEIGHTS = {
    ConnectionKind.CONTINUOUS: 1,
    ConnectionKind.CRISP: 2,
    ConnectionKind.CROSSING: 3,
}

#: Discrete orientation classes a stroke may carry.  ``None`` stands for "none".
ORIENTATIONS = ("N", "NE", "E", "SE", "S", "SW", "W", "NW")


@dataclass(frozen=True)
class Component:
    kind: ComponentKind
    orientation: str | None = None
    annotation: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Letter:
    glyph: str
    transliteration: str
    components: tuple[Component, ...]
    connections: tuple[ConnectionKind, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "connections", tuple(self.connections))


@dataclass(frozen=True)
class Alphabet:
    name: str
    letters: tuple[Letter, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    @property
    def glyphs(self) -> list[str]:
        return [letter.glyph for letter in self.letters]

    def letter(self, glyph: str) -> Letter:
        for letter in self.letters:
            if letter.glyph == glyph:
                return letter
        raise KeyError(glyph)


class Violation(NamedTuple):
    glyph: str
    code: str
    message: str


def validate_alphabet(alphabet: Alphabet) -> list[Violation]:
    """Collect every problem with ``alphabet``; an empty list means valid."""
    violations = []
    seen = Counter()
    for letter in alphabet.letters:
        g = letter.glyph
        seen[g] += 1
        if seen[g] == 2:
            violations.append(Violation(g, "duplicate-glyph", f"glyph {g!r} occurs more than once"))
        if len(g) != 1:
            violations.append(Violation(g, "bad-glyph", f"glyph {g!r} is not a single character"))
        if not letter.components:
            violations.append(Violation(g, "empty-components", f"letter {g!r} has no components"))
        for i, comp in enumerate(letter.components):
            if comp.orientation is None:
                continue
            if comp.kind is ComponentKind.POINT:
                violations.append(
                    Violation(g, "point-orientation", f"component {i} of {g!r} is a point with an orientation")
                )
            elif comp.orientation not in ORIENTATIONS:
                violations.append(
                    Violation(g, "bad-orientation", f"component {i} of {g!r} has unknown orientation {comp.orientation!r}")
                )
    return violations


PHONEME_CATEGORIES = ("vowel", "consonant")
PALATALIZATION = ("hard", "palatalized", "semi-palatalized")


@dataclass(frozen=True)
class Phoneme:
    ipa: str
    category: str
    palatalization: str = "hard"

    def __post_init__(self):
        if not self.ipa:
            raise DataError("phoneme IPA string is empty")
        if self.category not in PHONEME_CATEGORIES:
            raise DataError(f"unknown phoneme category {self.category!r}")
        if self.palatalization not in PALATALIZATION:
            raise DataError(f"unknown palatalization {self.palatalization!r}")


@dataclass(frozen=True)
class GraphemeRepresentation:
    graphemes: str
    context: str = ""
    example: str = ""

    def __post_init__(self):
        if not self.graphemes:
            raise DataError("grapheme representation is empty")


@dataclass(frozen=True)
class MappingTable:
    """Phonemes with the ways each can be written, in table order."""

    phonemes: tuple[tuple[Phoneme, tuple[GraphemeRepresentation, ...]], ...]

    def __post_init__(self):
        entries = tuple((ph, tuple(reps)) for ph, reps in self.phonemes)
        object.__setattr__(self, "phonemes", entries)
        seen = set()
        for ph, reps in entries:
            if ph.ipa in seen:
                raise DataError(f"phoneme /{ph.ipa}/ appears more than once")
            seen.add(ph.ipa)
            if not reps:
                raise DataError(f"phoneme /{ph.ipa}/ has no graphemic representation")

    def __len__(self) -> int:
        return len(self.phonemes)

    def representations(self, ipa: str) -> tuple[GraphemeRepresentation, ...]:
        for ph, reps in self.phonemes:
            if ph.ipa == ipa:
                return reps
        raise KeyError(ipa)


class FrequencyTable:
    """Histogram over integer support values: ``x -> f(x)``.

    Stored sorted by support.  Zero counts are kept when given, which matters
    for densified tables fed to the runs test.
    """

    __slots__ = ("_items",)

    def __init__(self, counts: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        pairs = counts.items() if isinstance(counts, Mapping) else counts
        items = {}
        for x, f in pairs:
            if isinstance(x, bool) or int(x) != x:
                raise DataError(f"support value {x!r} is not an integer")
            if isinstance(f, bool) or int(f) != f or f < 0:
                raise DataError(f"count {f!r} at x={x} is not a non-negative integer")
            if int(x) in items:
                raise DataError(f"support value {x} occurs twice")
            items[int(x)] = int(f)
        self._items = tuple(sorted(items.items()))

    @classmethod
    def from_values(cls, values: Iterable[int]) -> FrequencyTable:
        return cls(Counter(values))

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    @property
    def support(self) -> list[int]:
        return [x for x, _ in self._items]

    @property
    def counts(self) -> list[int]:
        return [f for _, f in self._items]

    @property
    def n(self) -> int:
        return sum(f for _, f in self._items)

    def __getitem__(self, x: int) -> int:
        return dict(self._items).get(x, 0)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other):
        if isinstance(other, FrequencyTable):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self._items == FrequencyTable(other)._items
        return NotImplemented

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        return f"FrequencyTable({dict(self._items)!r})"

    def as_dict(self) -> dict[int, int]:
        return dict(self._items)

    def nonzero(self) -> FrequencyTable:
        return FrequencyTable((x, f) for x, f in self._items if f)

    def densified(self) -> FrequencyTable:
        """Fill every gap between the smallest and largest support value with 0."""
        nz = self.nonzero()
        if not nz:
            return nz
        d = nz.as_dict()
        lo, hi = nz.support[0], nz.support[-1]
        return FrequencyTable((x, d.get(x, 0)) for x in range(lo, hi + 1))


class Moments(NamedTuple):
    mean: float
    variance: float
    sd: float


def representation_histogram(mapping: MappingTable) -> FrequencyTable:
    """Count phonemes by their number of graphemic representations."""
    if not len(mapping):
        raise DataError("empty mapping table")
    return FrequencyTable.from_values(len(reps) for _, reps in mapping.phonemes)


def table_moments(table: FrequencyTable, variance_mode: str = "population") -> Moments:
    """Mean, variance and sd of a frequency table.

    ``variance_mode`` is ``"population"`` (divide by N) or ``"sample"`` (N - 1).
    """
    if variance_mode not in ("population", "sample"):
        raise ValueError(f"unknown variance mode {variance_mode!r}")
    n = table.n
    if n == 0:
        raise DataError("empty table")
    if variance_mode == "sample" and n < 2:
        raise DataError("insufficient data: sample variance needs at least 2 observations")
    mean = sum(x * f for x, f in table.items()) / n
    ss = sum(f * (x - mean) ** 2 for x, f in table.items())
    var = ss / n if variance_mode == "population" else ss / (n - 1)
    return Moments(mean, var, math.sqrt(var))
