"""Gauss codes of single curves, their alpha/beta invariants, and the merge
that turns a multi-word paragraph into one code.

For a code ``W`` and index ``i``, ``S_i`` is the stretch read forward from
``i^+1`` up to ``i^-1`` (both excluded).  ``alpha_i`` sums the superscripts in
``S_i``.  ``beta_ij`` sums the superscripts of the symbols of the closed
stretch ``S_i + {i^+1, i^-1}`` whose reversed copy ``x^-e`` lies in ``S_j``.
A code is planar exactly when all of these vanish.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .diagram import Component, GaussParagraph, Letter, components


class IndexOutOfRange(IndexError):
    pass


class InvalidCode(ValueError):
    pass


class SplittableInput(ValueError):
    pass


class Symbol(NamedTuple):
    index: int
    exp: int  # +1 or -1

    def __str__(self):
        return f"{self.index}{'+' if self.exp > 0 else '-'}"


@dataclass(frozen=True)
class GaussCode:
    """Cyclic word in which every index ``1..m`` appears once with each exponent."""

    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        symbols = tuple(Symbol(*s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(set(symbols)) != len(symbols):
            raise InvalidCode("repeated symbol")
        m = len(symbols) // 2
        expected = {Symbol(i, e) for i in range(1, m + 1) for e in (1, -1)}
        if set(symbols) != expected:
            raise InvalidCode("symbols must be a permutation of 1+,1-,...,m+,m-")

    @classmethod
    def from_ints(cls, values) -> GaussCode:
        """``[1, -2, -1, 2]`` is the code ``1+ 2- 1- 2+``."""
        return cls(tuple(Symbol(abs(v), 1 if v > 0 else -1) for v in values))

    @property
    def m(self) -> int:
        return len(self.symbols) // 2

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return " ".join(map(str, self.symbols))

    def rotate(self, shift: int) -> GaussCode:
        if not self.symbols:
            return self
        shift %= len(self.symbols)
        return GaussCode(self.symbols[shift:] + self.symbols[:shift])

    def relabel(self, mapping) -> GaussCode:
        return GaussCode(tuple(Symbol(mapping[s.index], s.exp) for s in self.symbols))


class InvariantTable(NamedTuple):
    """``alpha[i - 1]`` and ``beta[i - 1][j - 1]`` for indices ``1..m``."""

    alpha: tuple[int, ...]
    beta: tuple[tuple[int, ...], ...]

    @property
    def vanishes(self) -> bool:
        return not any(self.alpha) and not any(any(row) for row in self.beta)


def _positions(code: GaussCode):
    plus, minus = {}, {}
    for p, s in enumerate(code.symbols):
        (plus if s.exp > 0 else minus)[s.index] = p
    return plus, minus


def _check_index(code: GaussCode, *indices):
    for i in indices:
        if not 1 <= i <= code.m:
            raise IndexOutOfRange(f"index {i} outside 1..{code.m}")


def invariant_table(code: GaussCode) -> InvariantTable:
    """All alpha and beta values in ``O(m^2)`` via prefix sums."""
    L, m = len(code), code.m
    if m == 0:
        return InvariantTable((), ())
    plus, minus = _positions(code)
    exps = [s.exp for s in code.symbols]
    # open stretch S_i = positions start+1 .. start+length in the doubled word
    start = [plus[i] for i in range(1, m + 1)]
    length = [(minus[i] - plus[i]) % L - 1 for i in range(1, m + 1)]
    prefix = list(itertools.accumulate(exps + exps, initial=0))
    alpha = tuple(prefix[s + n + 1] - prefix[s + 1] for s, n in zip(start, length))

    # beta_ij sums, over j's open stretch, the exponents of symbols whose
    # reversed twin lies in i's closed stretch.
    twin = [0] * L
    for p, s in enumerate(code.symbols):
        twin[p] = (minus if s.exp > 0 else plus)[s.index]
    beta = []
    for i in range(m):
        inside = [False] * L
        p = start[i]
        for q in range(length[i] + 2):
            inside[(p + q) % L] = True
        mask = [-exps[q] if inside[twin[q]] else 0 for q in range(L)]
        pre = list(itertools.accumulate(mask + mask, initial=0))
        beta.append(tuple(pre[s + n + 1] - pre[s + 1] for s, n in zip(start, length)))
    return InvariantTable(alpha, tuple(beta))


def alpha(code: GaussCode, i: int) -> int:
    _check_index(code, i)
    return invariant_table(code).alpha[i - 1]


def beta(code: GaussCode, i: int, j: int) -> int:
    _check_index(code, i, j)
    return invariant_table(code).beta[i - 1][j - 1]


def is_planar_code(code: GaussCode) -> bool:
    return invariant_table(code).vanishes


def _merge_once(words, signs, i, fresh):
    """Unite the word holding over-letter ``i`` with the one holding its
    under-letter, doubling crossing ``i`` into ``i`` and ``fresh``."""
    eps = signs[i]
    a = next(c for c, w in enumerate(words) if Letter(i) in w)
    b = next(c for c, w in enumerate(words) if Letter(i, eps) in w)
    u1, u2 = words[a], words[b]
    cut = u2.index(Letter(i, eps)) + 1
    u2 = u2[cut:] + u2[:cut]
    at = u1.index(Letter(i)) + 1
    merged = u1[:at] + [Letter(fresh, eps)] + u2 + [Letter(fresh)] + u1[at:]
    signs[fresh] = eps
    rest = [w for c, w in enumerate(words) if c not in (a, b)]
    return [merged] + rest


def _connecting(words, n):
    """Crossings whose over- and under-letters sit in different words."""
    home = {}
    out = []
    for c, w in enumerate(words):
        for letter in w:
            home.setdefault(letter.index, []).append(c)
    for i in range(1, n + 1):
        if i in home and home[i][0] != home[i][1]:
            out.append(i)
    return out


def _finish(word, signs) -> GaussCode:
    return GaussCode(tuple(
        Symbol(l.index, l.sign if l.sign else -signs[l.index]) for l in word
    ))


def _check_connected(p: GaussParagraph):
    if p.k == 0 or len(components(p)) > 1:
        raise SplittableInput("paragraph must be non-empty and non-splittable")


def paragraph_to_code(p: GaussParagraph, choose=None, trace=None) -> GaussCode:
    """Merge the words of a non-splittable paragraph into one Gauss code.

    Each merge doubles the lowest crossing joining two different words (or
    the one picked by ``choose(candidates)``); doubled crossings get fresh
    indices ``n + 1, n + 2, ...``.  The result has ``2n + 2k - 2`` symbols.
    ``trace``, if a list, receives a readable line per merge.
    """
    _check_connected(p)
    words = [list(w) for w in p.words]
    signs = {i: p.sign(i) for i in range(1, p.n + 1)}
    fresh = p.n
    for _ in range(p.k - 1):
        candidates = _connecting(words, p.n)
        i = choose(candidates) if choose else candidates[0]
        fresh += 1
        words = _merge_once(words, signs, i, fresh)
        if trace is not None:
            trace.append(f"double crossing {i} (new crossing ~{i} = {fresh}): "
                         + " / ".join(" ".join(map(str, w)) for w in words))
    return _finish(words[0], signs)


def all_associated_codes(p: GaussParagraph) -> Iterator[GaussCode]:
    """Every code reachable by some order of merges."""
    _check_connected(p)

    def walk(words, signs, fresh):
        if len(words) == 1:
            yield _finish(words[0], signs)
            return
        for i in _connecting(words, p.n):
            s = dict(signs)
            yield from walk(_merge_once(words, s, i, fresh + 1), s, fresh + 1)

    yield from walk([list(w) for w in p.words],
                    {i: p.sign(i) for i in range(1, p.n + 1)}, p.n)


def code_to_paragraph(code: GaussCode) -> GaussParagraph:
    """One-word paragraph whose associated code is ``code`` itself.

    ``i^+1`` becomes the under-letter ``i+`` and ``i^-1`` the over-letter of a
    positive crossing.
    """
    return GaussParagraph((tuple(
        Letter(s.index, 1) if s.exp > 0 else Letter(s.index) for s in code.symbols
    ),))


class CriterionPlanarity(NamedTuple):
    parts: list[Component]
    codes: list[GaussCode]
    verdicts: list[bool]

    @property
    def planar(self) -> bool:
        return all(self.verdicts)


def is_planar_criterion(p: GaussParagraph, choose=None) -> CriterionPlanarity:
    parts = components(p)
    codes = [paragraph_to_code(part.paragraph, choose) for part in parts]
    return CriterionPlanarity(parts, codes, [is_planar_code(c) for c in codes])
