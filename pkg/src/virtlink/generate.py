"""Exhaustive and random instance generators for cross-checks and replay."""

from __future__ import annotations

import itertools
import random

from .diagram import GaussParagraph, Letter, components, paragraph_to_diagram


def _set_partitions(items, k):
    """Partitions of ``items`` into exactly ``k`` unordered non-empty blocks."""
    if not items:
        if k == 0:
            yield []
        return
    if k == 0:
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest, k - 1):
        yield [[first]] + part
    for part in _set_partitions(rest, k):
        for b in range(len(part)):
            yield part[:b] + [[first] + part[b]] + part[b + 1:]


def _cyclic_orders(block):
    head, tail = block[0], block[1:]
    for perm in itertools.permutations(tail):
        yield (head,) + perm


def all_paragraphs(max_n=3, max_k=3, connected=True):
    """Every paragraph with ``n <= max_n`` crossings and ``1 <= k <= max_k``
    non-empty words, over all signs, splits and cyclic orders.

    The single empty word stands in for ``n = 0``.
    """
    yield GaussParagraph(((),))
    for n in range(1, max_n + 1):
        for signs in itertools.product((1, -1), repeat=n):
            letters = [Letter(i) for i in range(1, n + 1)]
            letters += [Letter(i, s) for i, s in enumerate(signs, 1)]
            for k in range(1, max_k + 1):
                for blocks in _set_partitions(letters, k):
                    if any(len(b) % 2 for b in blocks):
                        continue
                    for words in itertools.product(*map(_cyclic_orders, blocks)):
                        p = GaussParagraph(words)
                        if not connected or len(components(p)) == 1:
                            yield p


def random_paragraph(rng: random.Random, n: int, k: int, empty_words: int = 0) -> GaussParagraph:
    """Random paragraph with ``n`` crossings spread over ``k`` even-length words
    (``1 <= k <= n`` unless ``n == 0``) plus ``empty_words`` crossing-free words."""
    letters = [Letter(i) for i in range(1, n + 1)]
    letters += [Letter(i, rng.choice((1, -1))) for i in range(1, n + 1)]
    rng.shuffle(letters)
    if n == 0:
        k = 0
    cuts = sorted(rng.sample(range(1, n), k - 1)) if k > 1 else []
    bounds = [0] + [2 * c for c in cuts] + [2 * n]
    words = [tuple(letters[a:b]) for a, b in zip(bounds, bounds[1:])]
    words += [()] * empty_words
    rng.shuffle(words)
    return GaussParagraph(tuple(words))


def random_connected_paragraph(rng: random.Random, n: int, k: int) -> GaussParagraph:
    while True:
        p = random_paragraph(rng, n, k)
        if len(components(p)) == 1:
            return p


def random_diagram(rng: random.Random, max_n: int = 5):
    n = rng.randint(0, max_n)
    k = rng.randint(1, max(1, min(n, 3)))
    return paragraph_to_diagram(random_paragraph(rng, n, k, empty_words=rng.random() < 0.15))


def random_presentation(rng: random.Random, max_gens: int = 5, max_conj: int = 4):
    """Random realizable presentation: every graph component is a tree or
    has exactly one cycle, and conjugators have at most ``max_conj`` letters."""
    from .wirtinger import Relator, WirtingerPresentation, default_names

    n = rng.randint(1, max_gens)
    verts = list(range(n))
    rng.shuffle(verts)
    cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
    blocks = [verts[a:b] for a, b in zip([0] + cuts, cuts + [n])]

    def word():
        return tuple((rng.randrange(n), rng.choice((1, -1)))
                     for _ in range(rng.randint(0, max_conj)))

    rels = []
    for block in blocks:
        pairs = [(v, rng.choice(block[:k])) for k, v in enumerate(block) if k]
        if rng.random() < 0.7:
            pairs.append((rng.choice(block), rng.choice(block)))
        for a, b in pairs:
            if rng.random() < 0.5:
                a, b = b, a
            rels.append(Relator(a, b, word()))
    rng.shuffle(rels)
    return WirtingerPresentation(default_names(n), tuple(rels))
