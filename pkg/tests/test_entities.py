from __future__ import annotations

import pytest

from convref.nlp.chunks import chunk_noun_phrases
from convref.nlp.entities import CATEGORY_COLORS, EntityCategory, classify_entity, color_for
from convref.nlp.tokens import tokenize

from oracles import token_seq


def classify_text(text, lexicon, gazetteers):
    phrases = chunk_noun_phrases(tokenize(text, lexicon))
    assert len(phrases) == 1, phrases
    return classify_entity(phrases[0], gazetteers)


@pytest.mark.parametrize("text,expected", [
    ("Google", EntityCategory.ORGANIZATION),
    ("New York", EntityCategory.LOCATION),
    ("Paris", EntityCategory.LOCATION),
    ("Pablo Picasso", EntityCategory.PERSON),
    ("last May", EntityCategory.DATE),
    ("42 dollars", EntityCategory.NUMERIC),
    ("quiet garden", EntityCategory.GENERAL),
])
def test_fixture_categories(text, expected, lexicon, gazetteers):
    assert classify_text(text, lexicon, gazetteers) is expected


def test_head_token_lookup(gazetteers):
    phrase = chunk_noun_phrases(token_seq(("Mr", "PROPN"), ("Picasso", "PROPN")))[0]
    assert classify_entity(phrase, gazetteers) is EntityCategory.PERSON


def test_bare_year_is_date(gazetteers):
    phrase = chunk_noun_phrases(token_seq(("1995", "NUM")))[0]
    assert classify_entity(phrase, gazetteers) is EntityCategory.DATE


def test_date_beats_numeric(gazetteers):
    phrase = chunk_noun_phrases(token_seq(("May", "DATEWORD"), ("2019", "NUM")))[0]
    assert classify_entity(phrase, gazetteers) is EntityCategory.DATE


def test_priority_order_is_stable(gazetteers):
    # "washington" sits in the location list; location outranks person.
    phrase = chunk_noun_phrases(token_seq(("Washington", "PROPN")))[0]
    assert classify_entity(phrase, gazetteers) is EntityCategory.LOCATION


def test_color_mapping_exact():
    assert color_for(EntityCategory.PERSON) == "red"
    assert color_for(EntityCategory.LOCATION) == "blue"
    assert color_for(EntityCategory.ORGANIZATION) == "purple"
    assert color_for(EntityCategory.DATE) == "green"
    assert color_for(EntityCategory.NUMERIC) == "neutral"
    assert color_for(EntityCategory.GENERAL) == "neutral"


def test_color_mapping_total():
    assert set(CATEGORY_COLORS) == set(EntityCategory)


def test_gazetteer_fixture_suite(lexicon, gazetteers):
    """Every bundled entity example classifies to its gazetteer section."""
    cases = [
        ("Microsoft", EntityCategory.ORGANIZATION),
        ("United Nations", EntityCategory.ORGANIZATION),
        ("NASA", EntityCategory.ORGANIZATION),
        ("DuckDuckGo", EntityCategory.ORGANIZATION),
        ("Tokyo", EntityCategory.LOCATION),
        ("Calgary", EntityCategory.LOCATION),
        ("Los Angeles", EntityCategory.LOCATION),
        ("Einstein", EntityCategory.PERSON),
        ("Frida Kahlo", EntityCategory.PERSON),
        ("next Friday", EntityCategory.DATE),
        ("tomorrow", EntityCategory.DATE),
        ("September 2021", EntityCategory.DATE),
        ("300 dollars", EntityCategory.NUMERIC),
        ("$40", EntityCategory.NUMERIC),
    ]
    for text, expected in cases:
        assert classify_text(text, lexicon, gazetteers) is expected, text
