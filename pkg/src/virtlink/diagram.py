"""Gauss paragraphs, Gauss diagrams and the conversions between them.

A Gauss paragraph is an unordered collection of cyclic words.  Every
crossing ``i`` contributes an over-letter ``i`` and an under-letter ``i+`` or
``i-``, where the superscript is the sign of the crossing.  The matching Gauss
diagram draws one arrow per crossing, from the over-letter (tail) to the
under-letter (head).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._unionfind import UnionFind


class InvalidParagraph(ValueError):
    """Raised when a paragraph built in code violates its invariants."""


class InvalidDiagram(ValueError):
    """Raised when a Gauss diagram violates its invariants."""


class Letter(NamedTuple):
    """One letter of a Gauss word.

    ``sign`` is 0 for the over-letter ``i`` and the crossing sign (+1 or -1)
    for the under-letter ``i+`` / ``i-``.
    """

    index: int
    sign: int = 0

    @property
    def is_over(self) -> bool:
        return self.sign == 0

    def __str__(self):
        return f"{self.index}{'' if self.sign == 0 else '+' if self.sign > 0 else '-'}"


Word = tuple[Letter, ...]


@dataclass(frozen=True)
class GaussParagraph:
    """Validated Gauss paragraph with crossings numbered ``1..n``.

    Words are cyclic; the stored starting letter is arbitrary but stable.
    """

    words: tuple[Word, ...]
    # flat (index, sign, word_lengths) arrays, letters word by word
    arrays: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        words = tuple(tuple(Letter(*l) for l in w) for w in self.words)
        object.__setattr__(self, "words", words)
        over, under = set(), {}
        for w in words:
            if len(w) % 2:
                raise InvalidParagraph(f"word {' '.join(map(str, w))!r} has odd length")
            for letter in w:
                if letter.sign not in (0, 1, -1) or letter.index < 1:
                    raise InvalidParagraph(f"bad letter {letter!r}")
                if letter.is_over:
                    if letter.index in over:
                        raise InvalidParagraph(f"over-letter {letter} repeated")
                    over.add(letter.index)
                else:
                    if letter.index in under:
                        raise InvalidParagraph(f"crossing {letter.index} has two under-letters")
                    under[letter.index] = letter.sign
        if over != set(under):
            raise InvalidParagraph("every crossing needs one over- and one under-letter")
        if over != set(range(1, len(over) + 1)):
            raise InvalidParagraph("crossings must be numbered 1..n")
        object.__setattr__(self, "_signs", tuple(under[i] for i in range(1, len(over) + 1)))
        size = sum(map(len, words))
        arrays = (
            np.fromiter((l.index for w in words for l in w), np.int32, size),
            np.fromiter((l.sign for w in words for l in w), np.int32, size),
            np.fromiter(map(len, words), np.int32, len(words)),
        )
        for a in arrays:
            a.setflags(write=False)
        object.__setattr__(self, "arrays", arrays)

    @classmethod
    def from_lists(cls, words) -> GaussParagraph:
        """Build from nested lists of ``int`` / ``(int, sign)`` items."""
        return cls(tuple(
            tuple(Letter(x) if isinstance(x, int) else Letter(*x) for x in w) for w in words
        ))

    @property
    def n(self) -> int:
        return len(self._signs)

    @property
    def k(self) -> int:
        return len(self.words)

    @property
    def signs(self) -> tuple[int, ...]:
        """Crossing signs; ``signs[i - 1]`` belongs to crossing ``i``."""
        return self._signs

    def sign(self, i: int) -> int:
        return self._signs[i - 1]

    def __len__(self):
        return sum(len(w) for w in self.words)

    def __str__(self):
        return " / ".join(" ".join(map(str, w)) for w in self.words)

    def relabel(self, mapping) -> GaussParagraph:
        """Rename crossings through ``mapping[old] -> new``."""
        return GaussParagraph(tuple(
            tuple(Letter(mapping[l.index], l.sign) for l in w) for w in self.words
        ))


Slot = tuple[int, int]  # (circle, position along the circle)


class Arrow(NamedTuple):
    tail: Slot
    head: Slot
    sign: int


@dataclass(frozen=True)
class GaussDiagram:
    """Oriented circles carrying signed arrows.

    ``circle_sizes[c]`` is the number of arrow ends on circle ``c``; slot
    ``(c, p)`` is the ``p``-th end met counterclockwise.
    """

    circle_sizes: tuple[int, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "circle_sizes", tuple(self.circle_sizes))
        arrows = tuple(Arrow(tuple(a[0]), tuple(a[1]), a[2]) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        seen = set()
        for a in arrows:
            if a.sign not in (1, -1):
                raise InvalidDiagram(f"arrow sign must be +1 or -1, got {a.sign}")
            if a.tail == a.head:
                raise InvalidDiagram("arrow tail and head coincide")
            for c, p in (a.tail, a.head):
                if not (0 <= c < len(self.circle_sizes) and 0 <= p < self.circle_sizes[c]):
                    raise InvalidDiagram(f"slot {(c, p)} out of range")
                if (c, p) in seen:
                    raise InvalidDiagram(f"slot {(c, p)} used twice")
                seen.add((c, p))
        if len(seen) != sum(self.circle_sizes):
            raise InvalidDiagram("every slot must carry exactly one arrow end")

    @property
    def n(self) -> int:
        return len(self.arrows)

    @property
    def k(self) -> int:
        return len(self.circle_sizes)


def paragraph_to_diagram(p: GaussParagraph) -> GaussDiagram:
    """Arrow ``i - 1`` runs from the over-letter of ``i`` to its under-letter."""
    tails, heads = {}, {}
    for c, word in enumerate(p.words):
        for pos, letter in enumerate(word):
            (tails if letter.is_over else heads)[letter.index] = (c, pos)
    arrows = tuple(Arrow(tails[i], heads[i], p.sign(i)) for i in range(1, p.n + 1))
    return GaussDiagram(tuple(len(w) for w in p.words), arrows)


def diagram_to_paragraph(d: GaussDiagram) -> GaussParagraph:
    """Label arrow ``a`` by crossing ``a + 1`` and read each circle in order."""
    words = [[None] * size for size in d.circle_sizes]
    for a, arrow in enumerate(d.arrows):
        c, p = arrow.tail
        words[c][p] = Letter(a + 1)
        c, p = arrow.head
        words[c][p] = Letter(a + 1, arrow.sign)
    return GaussParagraph(tuple(tuple(w) for w in words))


class Component(NamedTuple):
    """A non-splittable part of a paragraph.

    ``crossings[i - 1]`` is the original label of the part's crossing ``i``;
    ``words`` lists the original positions of the part's words.
    """

    paragraph: GaussParagraph
    crossings: tuple[int, ...]
    words: tuple[int, ...]


def _word_classes(p: GaussParagraph) -> list[list[int]]:
    uf = UnionFind(p.k)
    first_word = {}
    for c, word in enumerate(p.words):
        for letter in word:
            if letter.index in first_word:
                uf.union(first_word[letter.index], c)
            else:
                first_word[letter.index] = c
    return uf.groups()


def components(p: GaussParagraph) -> list[Component]:
    """Split ``p`` into minimal groups of words sharing no crossing.

    Parts are ordered by lowest crossing label; crossing-free words come last
    in their written order.  Labels inside each part are compressed to
    ``1..m`` preserving their relative order.
    """
    parts = []
    for group in _word_classes(p):
        labels = sorted({l.index for c in group for l in p.words[c]})
        renaming = {old: new for new, old in enumerate(labels, 1)}
        sub = GaussParagraph(tuple(
            tuple(Letter(renaming[l.index], l.sign) for l in p.words[c]) for c in group
        ))
        parts.append(Component(sub, tuple(labels), tuple(group)))
    parts.sort(key=lambda part: (not part.crossings, part.crossings[:1], part.words))
    return parts


def split_components(p: GaussParagraph) -> list[GaussParagraph]:
    return [part.paragraph for part in components(p)]


def is_splittable(p: GaussParagraph) -> bool:
    return len(_word_classes(p)) > 1
