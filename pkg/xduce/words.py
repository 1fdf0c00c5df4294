"""Symbols, words, longest common prefix and the prefix distance."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Sequence

from xduce.errors import WordSyntaxError

Symbol = str
Word = tuple[Symbol, ...]

EMPTY: Word = ()
EMPTY_TEXT = "_"
BLANK = "."
SEPARATOR = ";;"

_FORBIDDEN_CHARS = frozenset("#,;[]")


def check_symbol(token: str) -> Symbol:
    """Return token unchanged if it may be used as a symbol, else raise WordSyntaxError."""
    if not token:
        raise WordSyntaxError("empty symbol")
    if token in (BLANK, EMPTY_TEXT):
        raise WordSyntaxError(f"'{token}' is reserved and cannot be a symbol")
    if token == SEPARATOR:
        return token
    if any(ch.isspace() for ch in token):
        raise WordSyntaxError(f"symbol '{token}' contains whitespace")
    bad = sorted(set(token) & _FORBIDDEN_CHARS)
    if bad:
        raise WordSyntaxError(f"symbol '{token}' contains reserved character '{bad[0]}'")
    return token


def lcp(w1: Word, w2: Word) -> Word:
    n = 0
    for x, y in zip(w1, w2):
        if x != y:
            break
        n += 1
    return w1[:n]


def distance(w1: Word, w2: Word) -> int:
    return len(w1) + len(w2) - 2 * len(lcp(w1, w2))


def strip_prefix(p: Word, w: Word) -> Word | None:
    if len(p) > len(w) or w[: len(p)] != p:
        return None
    return w[len(p):]


def is_prefix(p: Word, w: Word) -> bool:
    return len(p) <= len(w) and w[: len(p)] == p


def single_char(alphabet: Iterable[Symbol]) -> bool:
    return all(len(s) == 1 for s in alphabet)


def parse_word(text: str, alphabet: Sequence[Symbol] | None = None) -> Word:
    """Parse `_`, a plain concatenation of one-character symbols, or `[tok,tok,...]`.

    With an alphabet every symbol must belong to it.
    """
    text = text.strip()
    if text == EMPTY_TEXT:
        word: Word = EMPTY
    elif text.startswith("["):
        if not text.endswith("]"):
            raise WordSyntaxError(f"unterminated bracketed word '{text}'")
        body = text[1:-1]
        if not body:
            word = EMPTY
        else:
            word = tuple(check_symbol(tok.strip()) for tok in body.split(","))
    elif not text:
        raise WordSyntaxError("empty word text (write '_' for the empty word)")
    else:
        word = tuple(check_symbol(ch) for ch in text)

    if alphabet is not None:
        known = set(alphabet)
        for sym in word:
            if sym not in known:
                raise WordSyntaxError(f"symbol '{sym}' is not in the alphabet {{{' '.join(alphabet)}}}")
    return word


def format_word(word: Word, alphabet: Iterable[Symbol] | None = None) -> str:
    if not word:
        return EMPTY_TEXT
    plain = single_char(word) and (alphabet is None or single_char(alphabet))
    if plain:
        return "".join(word)
    return "[" + ",".join(word) + "]"


def enumerate_words(alphabet: Sequence[Symbol], max_len: int) -> Iterator[Word]:
    """Yield every word up to max_len, by length and then by declared symbol order."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def word_key(word: Word, order: dict[Symbol, int]) -> tuple[int, tuple[int, ...]]:
    return len(word), tuple(order[s] for s in word)


def symbol_order(alphabet: Sequence[Symbol]) -> dict[Symbol, int]:
    return {s: i for i, s in enumerate(alphabet)}
