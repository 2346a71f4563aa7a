import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from virtlink.carter import carter_genus
from virtlink.codec import parse_code, parse_paragraph
from virtlink.gausscode import (
    GaussCode, IndexOutOfRange, InvalidCode, SplittableInput, all_associated_codes, alpha,
    beta, code_to_paragraph, invariant_table, is_planar_code, is_planar_criterion,
    paragraph_to_code,
)
from virtlink.generate import all_paragraphs, random_connected_paragraph

BRUNNIAN = "1- 4+ 5- 2+ 4- 5+ 3+ 2- 6- 1+ 3- 6+"


def test_curl():
    c = parse_code("1+ 1-")
    assert alpha(c, 1) == 0 and beta(c, 1, 1) == 0
    assert is_planar_code(c)


def test_brunnian_code():
    c = parse_code(BRUNNIAN)
    assert alpha(c, 2) == 1
    assert not is_planar_code(c)


def test_two_crossing_code():
    c = parse_code("1+ 2- 1- 2+")
    assert alpha(c, 1) == -1
    # S_1 = {2-}; the closed stretch of 2 holds 2+, whose reverse 2- is in S_1
    assert beta(c, 2, 1) == 1
    assert not is_planar_code(c)


def test_index_out_of_range():
    c = parse_code("1+ 1-")
    with pytest.raises(IndexOutOfRange):
        alpha(c, 2)
    with pytest.raises(IndexOutOfRange):
        beta(c, 1, 0)


def test_invalid_code():
    with pytest.raises(InvalidCode):
        GaussCode.from_ints([1, 2])


def test_empty_code_is_planar():
    assert is_planar_code(GaussCode(()))


def all_codes(m):
    symbols = [(i, e) for i in range(1, m + 1) for e in (1, -1)]
    first, rest = symbols[0], symbols[1:]
    for perm in itertools.permutations(rest):
        yield GaussCode((first,) + perm)


def test_table_matches_set_oracle_exhaustively():
    for m in range(1, 4):
        for c in all_codes(m):
            sym = list(c.symbols)
            table = invariant_table(c)
            for i in range(1, m + 1):
                assert table.alpha[i - 1] == oracles.alpha(sym, i)
                for j in range(1, m + 1):
                    assert table.beta[i - 1][j - 1] == oracles.beta(sym, i, j), (str(c), i, j)


def test_one_word_planarity_matches_genus():
    # a one-word code lifts to a paragraph; planar curves are exactly genus 0
    for m in range(1, 5):
        for c in all_codes(m):
            assert is_planar_code(c) == (carter_genus(code_to_paragraph(c)) == 0), str(c)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_planarity_invariant_under_rotation_and_renumbering(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 8)
    sym = [(i, e) for i in range(1, m + 1) for e in (1, -1)]
    rng.shuffle(sym)
    c = GaussCode(tuple(sym))
    perm = list(range(1, m + 1))
    rng.shuffle(perm)
    verdict = is_planar_code(c)
    assert is_planar_code(c.rotate(rng.randrange(2 * m))) == verdict
    assert is_planar_code(c.relabel({i: perm[i - 1] for i in range(1, m + 1)})) == verdict


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_alpha_complement_is_negative(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 8)
    sym = [(i, e) for i in range(1, m + 1) for e in (1, -1)]
    rng.shuffle(sym)
    c = GaussCode(tuple(sym))
    for i in range(1, m + 1):
        # reading from i- to i+ instead gives the complement, which sums to -alpha
        flipped = GaussCode(tuple((x, -e if x == i else e) for x, e in sym))
        assert alpha(flipped, i) == -alpha(c, i)


def same_cyclic(a, b):
    return any(a.rotate(s) == b for s in range(max(1, len(a))))


class TestMerge:
    def test_hopf(self):
        trace = []
        c = paragraph_to_code(parse_paragraph("1 2+ / 1- 2"), trace=trace)
        assert str(c) == "1+ 3- 2- 1- 3+ 2+"
        assert alpha(c, 1) == -2
        assert len(trace) == 1

    def test_single_word_only_relabels(self):
        assert same_cyclic(paragraph_to_code(parse_paragraph("1 1+")), parse_code("1+ 1-"))
        assert same_cyclic(paragraph_to_code(parse_paragraph("1 2- 1+ 2")),
                           parse_code("1- 2- 1+ 2+"))

    def test_splittable_rejected(self):
        with pytest.raises(SplittableInput):
            paragraph_to_code(parse_paragraph("1 1+ / 2 2-"))
        with pytest.raises(SplittableInput):
            paragraph_to_code(parse_paragraph(""))

    def test_code_lift_round_trip(self):
        c = parse_code(BRUNNIAN)
        assert paragraph_to_code(code_to_paragraph(c)) == c

    def test_choose_hook(self):
        p = parse_paragraph("1 2+ 3 4 / 1- 2 / 3+ 4-")
        picked = []
        paragraph_to_code(p, choose=lambda cands: picked.append(list(cands)) or cands[-1])
        assert picked[0] == [1, 2, 3, 4]

    def test_all_merges_share_a_verdict_exhaustively(self):
        for p in all_paragraphs(3, 3):
            if p.k > 1:
                verdicts = {is_planar_code(c) for c in all_associated_codes(p)}
                assert len(verdicts) == 1, str(p)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_all_merges_up_to_four_words(self, seed):
        rng = random.Random(seed)
        n = rng.randint(4, 7)
        p = random_connected_paragraph(rng, n, 4)
        codes = list(all_associated_codes(p))
        assert {len(c) for c in codes} == {2 * n + 6}
        assert {is_planar_code(c) for c in codes} == {carter_genus(p) == 0}

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_length_law(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 10)
        k = rng.randint(1, min(n, 5))
        p = random_connected_paragraph(rng, n, k)
        assert len(paragraph_to_code(p)) == 2 * n + 2 * k - 2


def test_criterion_per_component():
    res = is_planar_criterion(parse_paragraph("1 1+ / 2 2+ 3 3- / 4 5 4+ 5+ / ()"))
    assert res.verdicts == [True, True, False, True]
    assert not res.planar
