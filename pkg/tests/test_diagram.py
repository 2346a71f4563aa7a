import random

import pytest
from hypothesis import given, settings, strategies as st

from virtlink.codec import parse_paragraph
from virtlink.diagram import (
    Arrow, GaussDiagram, GaussParagraph, InvalidDiagram, InvalidParagraph, Letter, components,
    diagram_to_paragraph, is_splittable, paragraph_to_diagram, split_components,
)
from virtlink.generate import all_paragraphs, random_paragraph


def test_letter_text():
    assert [str(l) for l in (Letter(3), Letter(3, 1), Letter(3, -1))] == ["3", "3+", "3-"]


@pytest.mark.parametrize("words", [
    [[1, 1]],                       # no under-letter
    [[1, (1, 1), (1, -1), 2]],      # two under-letters
    [[1, (1, 1), 2]],               # odd word
    [[2, (2, 1)]],                  # labels not 1..n
])
def test_invalid_paragraphs(words):
    with pytest.raises(InvalidParagraph):
        GaussParagraph.from_lists(words)


def test_hopf_diagram():
    d = paragraph_to_diagram(parse_paragraph("1 2+ / 1- 2"))
    assert d.circle_sizes == (2, 2)
    assert d.arrows == (Arrow((0, 0), (1, 0), -1), Arrow((1, 1), (0, 1), 1))


@pytest.mark.parametrize("sizes, arrows", [
    ((2,), [((0, 0), (0, 0), 1)]),
    ((2,), [((0, 0), (0, 1), 2)]),
    ((2,), [((0, 0), (0, 2), 1)]),
    ((4,), [((0, 0), (0, 1), 1)]),
    ((2,), [((0, 0), (0, 1), 1), ((0, 1), (0, 0), 1)]),
])
def test_invalid_diagrams(sizes, arrows):
    with pytest.raises(InvalidDiagram):
        GaussDiagram(sizes, arrows)


def test_components_split_and_relabel():
    p = parse_paragraph("3 3+ / 1 2- / () / 1- 2")
    parts = components(p)
    assert [part.crossings for part in parts] == [(1, 2), (3,), ()]
    assert [part.words for part in parts] == [(1, 3), (0,), (2,)]
    assert str(parts[1].paragraph) == "1 1+"
    assert is_splittable(p)
    assert split_components(p)[0] == parse_paragraph("1 2- / 1- 2")


def test_single_empty_word_is_one_component():
    parts = components(parse_paragraph("()"))
    assert len(parts) == 1 and parts[0].paragraph.k == 1


def test_empty_paragraph_has_no_components():
    assert components(parse_paragraph("")) == []


def test_exhaustive_enumeration_is_connected_and_distinct():
    seen = set()
    for p in all_paragraphs(2, 2):
        assert not is_splittable(p)
        seen.add(p.words)
    # one empty word, then n = 1 and n = 2 paragraphs with all signs
    assert len(seen) > 20


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_diagram_round_trip(seed):
    rng = random.Random(seed)
    n = rng.randint(0, 7)
    p = random_paragraph(rng, n, rng.randint(1, max(1, n)), empty_words=rng.randint(0, 2))
    d = paragraph_to_diagram(p)
    assert diagram_to_paragraph(d) == p
    assert paragraph_to_diagram(diagram_to_paragraph(d)) == d


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_components_partition_the_paragraph(seed):
    rng = random.Random(seed)
    n = rng.randint(0, 7)
    p = random_paragraph(rng, n, rng.randint(1, max(1, n)), empty_words=rng.randint(0, 2))
    parts = components(p)
    assert sorted(w for part in parts for w in part.words) == list(range(p.k))
    assert sorted(c for part in parts for c in part.crossings) == list(range(1, p.n + 1))
    for part in parts:
        assert not is_splittable(part.paragraph)
        back = {new: old for new, old in enumerate(part.crossings, 1)}
        restored = tuple(tuple(Letter(back[l.index], l.sign) for l in w)
                         for w in part.paragraph.words)
        assert restored == tuple(p.words[w] for w in part.words)
