"""Text normalization shared by index construction and query parsing.

Both sides of a match run through :func:`normalize`, so an annotation
keyword and the catalog text it should hit always see identical token
streams.  The pipeline:

1. split on any non-alphanumeric character (Unicode-aware, underscores
   split too);
2. expand compound tokens on case and letter/digit boundaries, keeping the
   whole token first and then each part of two or more characters
   ("ZigBee" -> zigbee, zig, bee; "STM32F4" -> stm32f4, stm, 32);
3. lowercase;
4. drop stop words;
5. Porter-stem what is left.

Compound expansion runs before lowercasing because it needs the case
boundaries.  Token positions are positions in the final emitted list and
are what phrase matching operates on.
"""

from __future__ import annotations

import re

from cybok.index.porter import stem
from cybok.index.stopwords import STOPWORDS

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

# Runs of the same "kind" of character: an acronym (uppercase not followed
# by lowercase), a capitalized word, a lowercase run, a digit run.
_PART_RE = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z]+|[a-z]+|[0-9]+")


def split_compound(token: str) -> list[str]:
    """Expand one raw token into the whole token plus its parts.

    Tokens without an internal case or letter/digit boundary come back
    as a single-element list.  Parts shorter than two characters are
    dropped (the leading "X" of "XBee" is noise), the whole token is
    always kept.
    """
    parts = _PART_RE.findall(token)
    if len(parts) <= 1:
        return [token]
    return [token] + [p for p in parts if len(p) >= 2]


def normalize(text: str) -> list[str]:
    """Normalize free text to the token stream used for matching."""
    out: list[str] = []
    for raw in _TOKEN_RE.findall(text):
        for part in split_compound(raw):
            low = part.lower()
            if low in STOPWORDS:
                continue
            out.append(stem(low))
    return out
