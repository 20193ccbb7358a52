"""Reduced words in a free group of finite rank.

A letter is a nonzero integer: ``+i`` stands for the generator a_i and ``-i``
for its inverse.  In the compact text form lowercase letters are generators
(``a`` = 1, ..., ``z`` = 26) and uppercase letters their inverses; the identity
is written ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def letter_order(rank: int) -> list[int]:
    """Letters in the fixed traversal order 1, -1, 2, -2, ..."""
    out = []
    for i in range(1, rank + 1):
        out += [i, -i]
    return out


@dataclass(frozen=True)
class Word:
    """Freely reduced word of the free group of the given rank.

    The letters are reduced on construction, so every instance satisfies the
    invariant.
    """

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError(f"negative rank {self.rank}")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) > self.rank:
                raise ValueError(f"letter {x} out of range for rank {self.rank}")
        object.__setattr__(self, "letters", reduce_letters(letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat_reduce(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else invert(self)
        return Word(self.rank, base.letters * abs(k))

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        try:
            return f"Word({self.rank}, {format_word(self)!r})"
        except ValueError:
            return f"Word({self.rank}, {list(self.letters)})"

    def is_identity(self) -> bool:
        return not self.letters


def identity(rank: int) -> Word:
    return Word(rank, ())


def generator(rank: int, i: int) -> Word:
    return Word(rank, (i,))


def parse_word(text: str, rank: int) -> Word:
    """Parse the compact text form, e.g. ``parse_word("abA", 2)``."""
    text = text.strip()
    if text == "1":
        return Word(rank, ())
    if not text:
        raise ValueError("empty word; write the identity as '1'")
    letters = []
    for ch in text:
        if not ch.isascii() or not ch.isalpha():
            raise ValueError(f"invalid character {ch!r} in word {text!r}")
        i = _ALPHABET.index(ch.lower()) + 1
        if i > rank:
            raise ValueError(f"letter {ch!r} exceeds rank {rank}")
        letters.append(i if ch.islower() else -i)
    return Word(rank, letters)


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    out = []
    for x in w.letters:
        if abs(x) > 26:
            raise ValueError("text form only covers letters up to 26; use the integer form")
        ch = _ALPHABET[abs(x) - 1]
        out.append(ch if x > 0 else ch.upper())
    return "".join(out)


def letter_name(x: int) -> str:
    if abs(x) <= 26:
        ch = _ALPHABET[abs(x) - 1]
        return ch if x > 0 else ch.upper()
    return f"a{abs(x)}" if x > 0 else f"a{abs(x)}^-1"


def concat_reduce(u: Word, v: Word) -> Word:
    if u.rank != v.rank:
        raise ValueError(f"rank mismatch: {u.rank} vs {v.rank}")
    return Word(u.rank, u.letters + v.letters)


def invert(u: Word) -> Word:
    return Word(u.rank, tuple(-x for x in reversed(u.letters)))


def product(rank: int, words: Iterable[Word]) -> Word:
    letters: list[int] = []
    for w in words:
        if w.rank != rank:
            raise ValueError(f"rank mismatch: {w.rank} vs {rank}")
        letters.extend(w.letters)
    return Word(rank, letters)


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u^-1 v^-1 u v."""
    return invert(u) * invert(v) * u * v


def exponent_vector(u: Word) -> tuple[int, ...]:
    vec = [0] * u.rank
    for x in u.letters:
        vec[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(vec)


def word_to_json(w: Word) -> list[int]:
    return list(w.letters)


def word_from_json(data: Sequence[int], rank: int) -> Word:
    if any(not isinstance(x, int) or isinstance(x, bool) for x in data):
        raise ValueError("JSON word must be an array of nonzero integers")
    return Word(rank, tuple(data))


def parse_word_list(text: str, rank: int) -> list[Word]:
    """Comma separated compact words; the empty string gives no words."""
    text = text.strip()
    if not text:
        return []
    return [parse_word(part, rank) for part in text.split(",")]
