"""Finite groups as multiplication tables, and exact homomorphism counts.

Counting homomorphisms into a small finite group is a cheap, sound (but
incomplete) way to tell presented groups apart: isomorphic groups give equal
counts for every target.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .wirtinger import WirtingerPresentation, inverse


class TooLarge(ValueError):
    pass


class SearchTooLarge(ValueError):
    pass


class InvalidTable(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroupTable:
    """Elements ``0..order-1``; ``product[a, b]`` is ``a * b``.

    The group axioms are checked on construction.
    """

    product: np.ndarray
    identity: int = 0
    name: str = ""
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        P = np.asarray(self.product, dtype=np.int64)
        N = P.shape[0] if P.ndim == 2 else 0
        if P.ndim != 2 or P.shape != (N, N) or N == 0:
            raise InvalidTable("product table must be a non-empty square")
        if P.min() < 0 or P.max() >= N:
            raise InvalidTable("product table entries out of range")
        e = self.identity
        if not (0 <= e < N) or (P[e] != np.arange(N)).any() or (P[:, e] != np.arange(N)).any():
            raise InvalidTable(f"{e} is not an identity")
        if not (P[P, :] == P[:, P]).all():  # (ab)c == a(bc) for all triples
            raise InvalidTable("product is not associative")
        hits = np.argwhere(P == e)
        inv = np.full(N, -1)
        inv[hits[:, 0]] = hits[:, 1]
        if (inv < 0).any() or (P[inv, np.arange(N)] != e).any():
            raise InvalidTable("some element has no inverse")
        P.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "product", P)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return self.product.shape[0]

    def is_abelian(self) -> bool:
        return bool((self.product == self.product.T).all())


def conjugacy_classes(G: FiniteGroupTable) -> list[list[int]]:
    P, inv = G.product, G.inverse
    seen, classes = set(), []
    for x in range(G.order):
        if x not in seen:
            cls = sorted({int(P[P[inv[g], x], g]) for g in range(G.order)})
            seen.update(cls)
            classes.append(cls)
    return classes


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> FiniteGroupTable:
    """Permutations of ``n`` letters in lexicographic order; ``a * b`` applies
    ``b`` first."""
    if not 1 <= n <= 5:
        raise TooLarge(f"S{n} is outside the supported range S1..S5")
    perms = list(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(a[x] for x in b)] for b in perms] for a in perms]
    return FiniteGroupTable(np.array(table), 0, f"S{n}")


@lru_cache(maxsize=None)
def cyclic_group(n: int) -> FiniteGroupTable:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    r = np.arange(n)
    return FiniteGroupTable((r[:, None] + r[None, :]) % n, 0, f"Z{n}")


def group_by_name(name: str) -> FiniteGroupTable:
    """``S1``..``S5`` or ``Z<n>``."""
    kind, digits = name[:1].upper(), name[1:]
    if kind in "SZ" and digits.isdigit():
        return symmetric_group(int(digits)) if kind == "S" else cyclic_group(int(digits))
    raise ValueError(f"unknown group {name!r}; expected S1..S5 or Z<n>")


def load_group(path) -> FiniteGroupTable:
    """Read ``{"product": [[...]], "identity": 0, "name": ...}`` from JSON."""
    with open(path) as fh:
        data = json.load(fh)
    return FiniteGroupTable(np.array(data["product"]), data.get("identity", 0),
                            data.get("name", str(path)))


# -- homomorphism counting ---------------------------------------------------------

_CHUNK = 1 << 20


def _plan(pres: WirtingerPresentation):
    """Order the search: branch on a generator, or compute one that a relator
    forces, or check a relator whose generators are all known.

    Returns ``(steps, free)`` where ``free`` counts generators that no check
    depends on; each contributes a factor ``|G|`` without enumeration.
    """
    rels = pres.relators
    gens_of = [{r.target, r.source} | {g for g, _ in r.conjugator} for r in rels]
    used = set().union(*gens_of) if rels else set()
    known, pending, steps = set(), set(range(len(rels))), []
    while True:
        progress = True
        while progress:
            progress = False
            for q in sorted(pending):
                r = rels[q]
                conj = {g for g, _ in r.conjugator}
                if not conj <= known:
                    continue
                if r.target in known and r.source in known:
                    steps.append(("check", q))
                elif r.source in known:
                    steps.append(("force", r.target, q))
                    known.add(r.target)
                elif r.target in known and r.target != r.source:
                    steps.append(("force", r.source, q))
                    known.add(r.source)
                else:
                    continue
                pending.discard(q)
                progress = True
        todo = used - known
        if not todo:
            break
        g = max(sorted(todo), key=lambda v: sum(v in gens_of[q] for q in pending))
        steps.append(("branch", g))
        known.add(g)

    # drop branches that no check depends on, with everything forced from them
    deps = {}
    for step in steps:
        if step[0] == "branch":
            deps[step[1]] = {step[1]}
        elif step[0] == "force":
            deps[step[1]] = set().union(*(deps[g] for g in gens_of[step[2]] if g != step[1]))
    needed = set()
    for step in steps:
        if step[0] == "check":
            needed |= set().union(*(deps[g] for g in gens_of[step[1]]))
    kept = [s for s in steps if s[0] == "check"
            or (s[0] == "branch" and s[1] in needed)
            or (s[0] == "force" and deps[s[1]] <= needed)]
    free = pres.n - len(used) + sum(1 for s in steps if s[0] == "branch" and s[1] not in needed)
    return kept, free


def _word_values(rows, word, P, inv):
    acc = None
    for g, e in word:
        v = rows[:, g] if e > 0 else inv[rows[:, g]]
        acc = v if acc is None else P[acc, v]
    return acc


def _rhs(rows, r, P, inv, solve_source=False):
    if solve_source:  # m_source = w m_target w^-1
        r = r.flipped()
    w = r.conjugator
    word = inverse(w) + ((r.source, 1),) + w
    return _word_values(rows, word, P, inv)


class _Budget:
    def __init__(self, limit):
        self.left = limit
        self.limit = limit

    def spend(self, count):
        self.left -= count
        if self.left < 0:
            raise SearchTooLarge(f"more than {self.limit} partial assignments enumerated")


def _run(rows, steps, start, rels, P, inv, budget):
    N = P.shape[0]
    for k in range(start, len(steps)):
        step = steps[k]
        if not len(rows):
            return 0
        if step[0] == "branch":
            if len(rows) * N > _CHUNK and len(rows) > 1:
                size = max(1, _CHUNK // N)
                return sum(_run(rows[a:a + size], steps, k, rels, P, inv, budget)
                           for a in range(0, len(rows), size))
            budget.spend(len(rows) * N)
            rows = np.repeat(rows, N, axis=0)
            rows[:, step[1]] = np.tile(np.arange(N, dtype=rows.dtype), len(rows) // N)
        elif step[0] == "force":
            r = rels[step[2]]
            rows[:, step[1]] = _rhs(rows, r, P, inv, solve_source=step[1] != r.target)
        else:
            r = rels[step[1]]
            rows = rows[rows[:, r.target] == _rhs(rows, r, P, inv)]
    return len(rows)


def _run_branch(args):
    return _run(*args)


def count_homomorphisms(pres: WirtingerPresentation, G: FiniteGroupTable,
                        limit: int = 10**8, workers: int = 1) -> int:
    """Exact number of homomorphisms from the presented group into ``G``.

    Generators are assigned in a fixed order, generators fixed by an earlier
    relator are computed rather than enumerated, and every relator is checked
    as soon as its generators are known.  Raises ``SearchTooLarge`` once more
    than ``limit`` partial assignments have been enumerated (per worker).
    """
    steps, free = _plan(pres)
    N = G.order
    P, inv = G.product, G.inverse
    rows = np.zeros((1, max(pres.n, 1)), dtype=np.int16)
    rels = pres.relators
    first = next((k for k, s in enumerate(steps) if s[0] == "branch"), None)
    if workers > 1 and first is not None:
        prefix = _run(rows, steps[:first], 0, rels, P, inv, _Budget(limit))
        if prefix:
            g = steps[first][1]
            jobs = []
            for x in range(N):
                seed = rows.copy()
                seed[:, g] = x
                jobs.append((seed, steps, first + 1, rels, P, inv, _Budget(limit)))
            with ProcessPoolExecutor(workers) as pool:
                total = sum(pool.map(_run_branch, jobs))
        else:
            total = 0
    else:
        total = _run(rows, steps, 0, rels, P, inv, _Budget(limit))
    return total * N ** free


def count_homomorphisms_naive(pres: WirtingerPresentation, G: FiniteGroupTable) -> int:
    """Plain enumeration over all ``|G|^n`` assignments (for small checks)."""
    P, inv = G.product.tolist(), G.inverse.tolist()

    def value(img, word):
        acc = G.identity
        for g, e in word:
            acc = P[acc][img[g] if e > 0 else inv[img[g]]]
        return acc

    total = 0
    for img in itertools.product(range(G.order), repeat=pres.n):
        if all(img[r.target] == value(img, inverse(r.conjugator) + ((r.source, 1),) + r.conjugator)
               for r in pres.relators):
            total += 1
    return total


__all__ = [
    "FiniteGroupTable", "InvalidTable", "SearchTooLarge", "TooLarge", "conjugacy_classes",
    "count_homomorphisms", "count_homomorphisms_naive", "cyclic_group", "group_by_name",
    "load_group", "symmetric_group",
]
