import pytest

from sume.presenter import DeckError, blank_slide, load_deck, parse_deck
from sume.presenter.deck import PP_LAYOUT_BLANK, PP_LAYOUT_TITLE


def test_minimal_title_deck():
    deck = parse_deck('{"title": "T", "slides": [{"layout": "ppLayoutTitle"}]}')
    assert deck.title == "T"
    assert len(deck.slides) == 1
    assert deck.slides[0].layout == PP_LAYOUT_TITLE
    assert deck.slides[0].title == ""


def test_zero_slide_deck_valid():
    deck = parse_deck('{"title": "Empty", "slides": []}')
    assert deck.slides == []


def test_layout_by_number():
    deck = parse_deck('{"slides": [{"layout": 12}]}')
    assert deck.slides[0].layout == PP_LAYOUT_BLANK


def test_malformed_color_rejected():
    with pytest.raises(DeckError) as exc:
        parse_deck('{"slides": [{"layout": 1, "background": "#GGGGGG"}]}')
    assert "slides[1]" in str(exc.value)
    assert "color" in str(exc.value)


def test_unknown_layout_name():
    with pytest.raises(DeckError) as exc:
        parse_deck('{"slides": [{"layout": "ppLayoutWeird"}]}')
    assert "unknown layout" in str(exc.value)


def test_syntax_error_reports_line():
    with pytest.raises(DeckError) as exc:
        parse_deck('{"title": "x",\n  "slides": [}')
    assert "line 2" in str(exc.value)


def test_explicit_background():
    deck = parse_deck('{"slides": [{"layout": 1, "background": "#ff0000"}]}')
    assert deck.slides[0].effective_background == (255, 0, 0)


def test_default_background_per_layout():
    deck = parse_deck('{"slides": [{"layout": "ppLayoutBlank"}]}')
    assert deck.slides[0].effective_background == (0, 0, 0)


def test_blank_slide_helper():
    s = blank_slide(PP_LAYOUT_TITLE)
    assert s.title == "" and s.body == ""
    with pytest.raises(DeckError):
        blank_slide(99)


def test_load_deck_missing_file(tmp_path):
    with pytest.raises(DeckError):
        load_deck(tmp_path / "nope.deck")


def test_load_deck_names_file_in_error(tmp_path):
    bad = tmp_path / "bad.deck"
    bad.write_text("not json", encoding="utf-8")
    with pytest.raises(DeckError) as exc:
        load_deck(bad)
    assert "bad.deck" in str(exc.value)
