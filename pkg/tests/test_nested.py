"""Iterated forests, flatten/unflatten, the term DSL."""

import pytest

from hforest import oracles
from hforest.forest import (
    EMPTY,
    ForestError,
    Tree,
    h_equiv,
    h_leq,
    join,
    normalize,
    singleton,
    wrap,
)
from hforest.nested import (
    LabeledNPreorder,
    TermSyntaxError,
    flatten,
    l_join,
    morphism_exists,
    nesting_level,
    parse_term,
    print_term,
    s_embed,
    unflatten,
)


def test_nesting_level():
    assert nesting_level(EMPTY) == 0
    assert nesting_level(join(singleton(0), singleton(1))) == 1
    assert nesting_level(s_embed(parse_term("0*1"))) == 2
    assert nesting_level((wrap(parse_term("0*1"), singleton(2)),)) == 2


def test_s_embed():
    assert s_embed(0) == singleton(0)
    q1, q2 = parse_term("0*1"), parse_term("0|1")
    assert h_leq(s_embed(q1), s_embed(q2)) == h_leq(q1, q2)
    assert h_leq(s_embed(q2), s_embed(q1)) == h_leq(q2, q1)
    assert h_equiv(l_join(s_embed(q1)), q1)
    with pytest.raises(ForestError):
        s_embed(EMPTY)


def test_l_join():
    f, g = parse_term("0*1"), parse_term("1*0")
    two_chain = (wrap(f, s_embed(g)),)
    assert h_equiv(l_join(two_chain), join(f, g))
    with pytest.raises(ForestError):
        l_join(join(singleton(0), singleton(1)))


def test_l_join_monotone_on_corpus():
    corpus = oracles.normalized_corpus(oracles.nested_forests(4, 2, 2))
    nested = [f for f in corpus if nesting_level(f) == 2]
    for p in nested:
        for q in nested:
            if h_leq(p, q):
                assert h_leq(l_join(p), l_join(q))


def test_flatten_examples():
    x = flatten(s_embed(join(singleton(0), singleton(1))), 2)
    assert x.size == 2
    assert x.labels == (0, 1)
    assert sorted(x.pairs(0)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert sorted(x.pairs(1)) == [(0, 0), (1, 1)]
    y = flatten(singleton(0), 1)
    assert y.size == 1 and y.labels == (0,)
    with pytest.raises(ForestError):
        flatten(s_embed(parse_term("0*1")), 1)


def test_unflatten_examples():
    x = flatten(s_embed(join(singleton(0), singleton(1))), 2)
    assert h_equiv(unflatten(x), s_embed(join(singleton(0), singleton(1))))
    y = flatten(singleton(0), 1)
    assert unflatten(y) == singleton(0)


def test_unflatten_rejects_non_forest_layer():
    # one element below two incomparable ones: its up-set is not a chain
    x = LabeledNPreorder(
        3,
        ((0b111, 0b010, 0b100),),
        (0, 0, 0),
    )
    with pytest.raises(ForestError, match="layer 0"):
        unflatten(x)


def test_round_trip_on_corpus():
    for level in (1, 2, 3):
        for f in oracles.nested_forests(4, 2, level, include_empty=False):
            d = max(nesting_level(f), 1)
            g = unflatten(flatten(f, d))
            assert g == f or h_equiv(g, f)


def test_morphism_agrees_with_h_leq():
    corpus = oracles.normalized_corpus(oracles.nested_forests(4, 2, 2))
    flats = [flatten(f, 2) for f in corpus]
    for i, f in enumerate(corpus):
        for j, g in enumerate(corpus):
            assert h_leq(f, g) == morphism_exists(flats[i], flats[j])


def test_morphism_depth_mismatch():
    with pytest.raises(ForestError):
        morphism_exists(flatten(singleton(0), 1), flatten(singleton(0), 2))


def test_parse_examples():
    assert parse_term("⊥") == EMPTY
    assert parse_term("bot") == EMPTY
    assert parse_term("0*(1⊔2)") == (wrap(0, join(singleton(1), singleton(2))),)
    assert parse_term("0*(1|2)") == (wrap(0, join(singleton(1), singleton(2))),)
    inner = parse_term("0*1")
    assert parse_term("(0*1)*2") == (Tree(inner, (Tree(2),)),)
    assert parse_term("s(0*1)") == (Tree(inner),)
    assert parse_term("0*1*2") == (Tree(0, (Tree(1, (Tree(2),)),)),)


def test_parse_color_bound():
    parse_term("0|1", k=2)
    with pytest.raises(TermSyntaxError):
        parse_term("0|2", k=2)


def test_parse_errors():
    for bad in ("", "0*", "(0", "0)", "s(", "*1", "0 1"):
        with pytest.raises(TermSyntaxError):
            parse_term(bad)


def test_print_parse_round_trip():
    for level in (1, 2):
        for f in oracles.nested_forests(4, 2, level):
            text = print_term(f)
            assert parse_term(text) == normalize(f)


def test_verbose_singleton_labels_are_equivalent():
    terse = s_embed(0)
    verbose = (Tree((Tree(0),)),)
    assert h_equiv(terse, verbose)
    assert normalize(verbose) == normalize(terse)
