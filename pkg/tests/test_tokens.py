import random
import re

import pytest

from tokenrelay.words import (
    LABEL_RE,
    MAX_LABEL_LEN,
    LabelMaker,
    default_wordlist,
    is_valid_label,
    load_wordlist,
)


def test_default_wordlist_is_large_and_clean():
    words = default_wordlist()
    assert len(words) >= 2048
    assert len(set(words)) == len(words)
    for w in words:
        assert re.fullmatch(r"[a-z0-9]+", w), w


def test_labels_have_three_words_and_valid_shape():
    maker = LabelMaker(default_wordlist(), random.Random(1))
    words = set(default_wordlist())
    for _ in range(500):
        label = maker.make()
        assert is_valid_label(label)
        parts = label.split("-")
        assert len(parts) == 3
        assert all(p in words for p in parts)
        assert len(label) <= MAX_LABEL_LEN


def test_label_regex_rejects_bad_shapes():
    for bad in ["", "-leading", "trailing-", "double--hyphen", "UPPER-case-x", "dot.ted", "a_b"]:
        assert not is_valid_label(bad)
    assert not is_valid_label("x" * 64)
    assert is_valid_label("x" * 63)
    assert is_valid_label("bullseye-compare-citation")


def test_labelmaker_rejects_bad_wordlists():
    with pytest.raises(ValueError):
        LabelMaker([], random.Random(0))
    with pytest.raises(ValueError):
        LabelMaker(["ok", "Not-OK"], random.Random(0))
    with pytest.raises(ValueError):
        LabelMaker(["a" * 40], random.Random(0))


def test_load_wordlist_validates(tmp_path):
    p = tmp_path / "words.txt"
    p.write_text("alpha\nbeta\ngamma\n")
    assert load_wordlist(p) == ["alpha", "beta", "gamma"]
    p.write_text("alpha\nBETA\n")
    with pytest.raises(ValueError):
        load_wordlist(p)
