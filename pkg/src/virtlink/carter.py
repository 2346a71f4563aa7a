"""Carter surface of a Gauss paragraph and its genus.

The surface is a cell complex: one vertex per crossing, one edge per pair of
successive letters, and faces traced by always turning left.  Each edge is
walked once in each direction, so the work is linear in the paragraph length.

The Euler characteristic is the usual ``V - E + F`` with ``V = n`` and
``E = 2n``.  The closed formula ``n - 2 * sum(|u_i|) + F`` that circulates
with this algorithm gives ``-4`` on ``{1 2+, 1- 2}`` instead of the torus
value 0, so it is not used.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .diagram import Component, GaussParagraph, Letter, components


class OddCharacteristic(ArithmeticError):
    """An odd Euler characteristic; only a tracing bug can produce one."""


class SplittableInput(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CarterComplex:
    """Traced complex of a non-splittable paragraph.

    Letters are flattened word by word; edge ``e`` runs from occurrence ``e``
    to the next letter of the same word.  Arc ``2e`` walks edge ``e`` in word
    order and arc ``2e + 1`` against it; ``successor`` maps each arc to the
    next arc of its face.  A face, as listed by ``faces``, is a cycle of
    ``(edge, direction)`` pairs starting at its lowest arc.
    """

    paragraph: GaussParagraph
    next_letter: np.ndarray
    successor: np.ndarray
    face_count: int
    vertex_count: int

    @property
    def euler_characteristic(self) -> int:
        if not len(self.next_letter):
            return 2  # crossing-free circle: a sphere by convention
        return self.vertex_count - len(self.next_letter) + self.face_count

    @property
    def genus(self) -> int:
        return genus(self)

    @cached_property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(l for w in self.paragraph.words for l in w)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(enumerate(self.next_letter.tolist()))

    @cached_property
    def faces(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        succ = self.successor.tolist()
        used = bytearray(len(succ))
        out = []
        for start in range(len(succ)):
            if not used[start]:
                face, arc = [], start
                while not used[arc]:
                    used[arc] = 1
                    face.append((arc >> 1, -1 if arc & 1 else 1))
                    arc = succ[arc]
                out.append(tuple(face))
        return tuple(out)

    def arc_label(self, arc: tuple[int, int]) -> str:
        """``(a b)+`` notation: letters in travel order, then direction."""
        e, d = arc
        a, b = self.letters[e], self.letters[int(self.next_letter[e])]
        if d < 0:
            a, b = b, a
        return f"({a} {b}){'+' if d > 0 else '-'}"

    def face_label(self, face) -> str:
        return "".join(self.arc_label(arc) for arc in face)


_WALK_BELOW = 2048


def _walk_cycles(perm: list[int]) -> int:
    used = bytearray(len(perm))
    count = 0
    for start in range(len(perm)):
        if not used[start]:
            count += 1
            arc = start
            while not used[arc]:
                used[arc] = 1
                arc = perm[arc]
    return count


def _cycles(perm: np.ndarray) -> int:
    """Number of cycles of a permutation, in linear expected work.

    Each round splices out a random set of elements, no two consecutive,
    then renumbers the survivors; fixed points are complete cycles.  Unlike
    following the cycles one step at a time, the loads of a round are
    independent, so the cost does not jump once the arrays outgrow the
    cache.  Short remainders are walked directly.
    """
    rng = np.random.default_rng(0)
    perm = np.asarray(perm, dtype=np.int32)
    count = 0
    while len(perm) > _WALK_BELOW:
        m = len(perm)
        ids = np.arange(m, dtype=np.int32)
        fixed = perm == ids
        count += int(fixed.sum())
        coin = rng.random(m) < 0.5
        pred = np.empty(m, dtype=np.int32)
        pred[perm] = ids
        drop = coin & ~coin[pred] | fixed
        nxt = np.where(drop[perm] & ~fixed[perm], perm[perm], perm)
        keep = ~drop
        perm = (np.cumsum(keep, dtype=np.int32) - 1)[nxt[keep]]
    return count + _walk_cycles(perm.tolist())


def _connected(index, over, lengths) -> bool:
    """Whether the words form one piece once the two letters of each crossing
    are joined."""
    k = len(lengths)
    if k < 2:
        return True
    word = np.repeat(np.arange(k, dtype=np.int32), lengths)
    ends = np.zeros((index.max() + 1, 2), dtype=np.int32)
    ends[index, over] = word
    edges = csr_matrix((np.ones(len(ends) - 1, dtype=np.int8), (ends[1:, 0], ends[1:, 1])), (k, k))
    return connected_components(edges, directed=False, return_labels=False) == 1


def build_carter(p: GaussParagraph) -> CarterComplex:
    """Trace the faces of the Carter surface of a non-splittable paragraph.

    The arc successor map is built in a few vectorized passes; its cycles
    are the faces.
    """
    index, sign, lengths = p.arrays
    size = len(index)
    if not size:
        if p.k > 1:
            raise SplittableInput(f"paragraph splits into {p.k} parts")
        empty = np.zeros(0, dtype=np.int32)
        return CarterComplex(p, empty, empty, 0, 0)
    over = (sign == 0).astype(np.int32)
    if (lengths == 0).any() or not _connected(index, over, lengths):
        raise SplittableInput(f"paragraph splits into {len(components(p))} parts")
    starts = np.repeat(np.cumsum(lengths, dtype=np.int32) - lengths, lengths)
    pos = np.arange(size, dtype=np.int32)
    nxt = starts + (pos - starts + 1) % np.repeat(lengths, lengths)
    prv = np.empty(size, dtype=np.int32)
    prv[nxt] = pos

    where = np.empty((p.n + 1, 2), dtype=np.int32)
    where[index, over] = pos
    partner = where[index, 1 - over]
    # Arriving at x after moving in direction s, leave the partner occurrence
    # in direction s * turn[x]: the crossing sign at an over-letter and its
    # negative at an under-letter.
    crossing_sign = np.asarray((0,) + p.signs, dtype=np.int32)
    turn = np.where(over == 1, crossing_sign[index], -sign)

    arcs = np.arange(2 * size, dtype=np.int32)
    e, back = arcs >> 1, (arcs & 1).astype(bool)
    x = np.where(back, e, nxt[e])
    y = partner[x]
    leave_forward = np.where(back, -turn[x], turn[x]) > 0
    succ = np.where(leave_forward, 2 * y, 2 * prv[y] + 1)
    return CarterComplex(p, nxt, succ, _cycles(succ), p.n)


def genus(c: CarterComplex) -> int:
    chi = c.euler_characteristic
    if chi % 2:
        raise OddCharacteristic(f"Euler characteristic {chi} is odd")
    if chi > 2:
        raise SplittableInput(f"Euler characteristic {chi} exceeds 2")
    return (2 - chi) // 2


class CarterPlanarity(NamedTuple):
    parts: list[Component]
    complexes: list[CarterComplex]
    genera: list[int]

    @property
    def planar(self) -> bool:
        return all(g == 0 for g in self.genera)

    @property
    def total_genus(self) -> int:
        """Sum over parts (genus is additive under connected sum)."""
        return sum(self.genera)


def is_planar_carter(p: GaussParagraph) -> CarterPlanarity:
    parts = components(p)
    complexes = [build_carter(part.paragraph) for part in parts]
    return CarterPlanarity(parts, complexes, [genus(c) for c in complexes])


def carter_genus(p: GaussParagraph) -> int:
    """Least genus of a connected paragraph (shortcut used for timing)."""
    return genus(build_carter(p))


__all__ = [
    "CarterComplex", "CarterPlanarity", "OddCharacteristic", "SplittableInput",
    "build_carter", "carter_genus", "genus", "is_planar_carter",
]
