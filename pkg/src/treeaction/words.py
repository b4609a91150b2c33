"""Parsing of group words.

Grammar (whitespace allowed around tokens):

    word ::= "e" | term ("*" term)*
    term ::= ident ("^" int)?

Identifiers are generator names (letters, digits, underscores, not starting
with a digit) or the stable letter ``t`` of an HNN extension.  The parser
only tokenizes; binding identifiers to group generators happens in the
group-specific layer.
"""
from __future__ import annotations

import re
from typing import List, Tuple

from .errors import WordSyntaxError

Token = Tuple[str, int]

_TERM = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(-?\d+))?\s*")


def parse_word(text: str) -> List[Token]:
    """Tokenize a word into (identifier, exponent) pairs.

    ``e`` (alone) is the empty word.  Exponents default to 1 and may be any
    integer, including 0 and negatives.
    """
    if text.strip() == "e":
        return []
    tokens: List[Token] = []
    pos = 0
    expect_term = True
    while pos < len(text):
        if not expect_term:
            m = re.match(r"\s*\*", text[pos:])
            if not m:
                raise WordSyntaxError("expected '*' between terms", pos)
            pos += m.end()
            expect_term = True
            continue
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError("expected a generator term", pos)
        name, exp = m.group(1), m.group(2)
        tokens.append((name, 1 if exp is None else int(exp)))
        pos = m.end()
        expect_term = False
    if expect_term:
        raise WordSyntaxError("trailing '*' with no term", len(text))
    if not tokens:
        raise WordSyntaxError("empty word (use 'e' for the identity)", 0)
    return tokens


def render_word(tokens) -> str:
    parts = []
    for name, exp in tokens:
        if exp == 0:
            continue
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts) if parts else "e"
