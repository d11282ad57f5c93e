"""Token labels: three random words from a wordlist, hyphen-joined.

The label doubles as the DNS subdomain for the mapped application, so it must
be a valid lowercase DNS label (max 63 chars). Three words from a >=2048-entry
list give at least 33 bits, which is the capability strength of a token.
"""
from __future__ import annotations

import importlib.resources
import re
from pathlib import Path

LABEL_RE = re.compile(r"^[a-z0-9]+(-[a-z0-9]+)*$")
WORD_RE = re.compile(r"^[a-z0-9]+$")
MAX_LABEL_LEN = 63
WORDS_PER_LABEL = 3


def default_wordlist() -> list[str]:
    text = importlib.resources.files("tokenrelay").joinpath("data/wordlist.txt").read_text("ascii")
    return text.split()


def load_wordlist(path: str | Path) -> list[str]:
    words = Path(path).read_text("utf-8").split()
    bad = [w for w in words if not WORD_RE.fullmatch(w)]
    if bad:
        raise ValueError(f"wordlist entries must match [a-z0-9]+; first bad entry: {bad[0]!r}")
    return words


def is_valid_label(label: str) -> bool:
    return 0 < len(label) <= MAX_LABEL_LEN and LABEL_RE.fullmatch(label) is not None


class LabelMaker:
    """Draws labels from a wordlist with a caller-supplied RNG.

    Production passes a ``random.SystemRandom``; tests and the simulated
    cluster pass a seeded ``random.Random`` for reproducible labels.
    """

    def __init__(self, wordlist, rng):
        words = list(wordlist)
        if not words:
            raise ValueError("wordlist is empty")
        bad = [w for w in words if not WORD_RE.fullmatch(w)]
        if bad:
            raise ValueError(f"wordlist entries must match [a-z0-9]+; first bad entry: {bad[0]!r}")
        too_long = [w for w in words if (len(w) + 1) * WORDS_PER_LABEL - 1 > MAX_LABEL_LEN]
        if too_long:
            raise ValueError(f"wordlist entry too long for a 3-word label: {too_long[0]!r}")
        self._words = words
        self._rng = rng

    def make(self) -> str:
        label = "-".join(self._rng.choice(self._words) for _ in range(WORDS_PER_LABEL))
        assert is_valid_label(label)
        return label
