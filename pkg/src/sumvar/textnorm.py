"""Deterministic text normalization, tokenization and n-gram counting.

Every metric in this package consumes token sequences produced here, so the
rules are fixed and total: Unicode NFC normalization, lowercasing, then any
character that is neither a letter, a digit, nor a word-internal apostrophe
acts as a separator. Hyphenated words split on the hyphen; "singapore's"
stays a single token. Degenerate inputs (empty strings, pure punctuation)
normalize to the empty sequence.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field

# Letters and digits per str.isalnum (\w minus underscore), with ASCII or
# typographic apostrophes allowed only between alphanumeric runs.
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*")

TokenSequence = tuple[str, ...]


def tokenize(text: str) -> TokenSequence:
    """Normalize *text* into an immutable lowercase token sequence.

    Total function: any Unicode string is accepted and the result is
    deterministic. May be empty (e.g. for inputs made of punctuation only).
    """
    normalized = unicodedata.normalize("NFC", text).lower()
    return tuple(_TOKEN_RE.findall(normalized))


@dataclass(frozen=True)
class NGramCounts:
    """Multiset of the contiguous n-grams of one token sequence."""

    order: int
    counts: Counter = field(default_factory=Counter)

    def total(self) -> int:
        return sum(self.counts.values())


def ngrams(seq: TokenSequence, order: int) -> NGramCounts:
    """Count all contiguous n-grams of length *order* in *seq*.

    Empty when the sequence is shorter than *order*; the total count always
    equals max(0, len(seq) - order + 1).
    """
    if order < 1:
        raise ValueError(f"n-gram order must be >= 1, got {order}")
    grams = Counter(tuple(seq[i : i + order]) for i in range(len(seq) - order + 1))
    return NGramCounts(order=order, counts=grams)
