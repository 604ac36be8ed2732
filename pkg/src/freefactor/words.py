"""Words in a finitely generated free group.

Letters are nonzero integers: ``+i`` is the ``i``-th generator and ``-i``
its inverse, ``1 <= i <= rank``.  Words are kept freely reduced at all
times; the empty word is the identity.

Two interchangeable text forms are accepted:

* compact -- one character per letter.  Generators are the lowercase
  letters ``x y z a b c ... w`` *in that order* (so ``x`` is generator 1,
  ``y`` is 2, ``z`` is 3, then ``a`` is 4 and so on up to ``w`` = 26);
  the uppercase letter is the inverse.  ``"xyX"`` reads x y x^-1.
* tokens -- whitespace-separated ``x<i>`` / ``X<i>``, e.g. ``"x1 X2 x1"``.

``"1"`` (or the empty string) denotes the identity.  Canonical output is
the compact form whenever the rank allows it.

All values are immutable after construction and every operation is pure,
so concurrent callers need no coordination.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .errors import (
    DomainError,
    NotCyclicallyReducedError,
    RankError,
    WordSyntaxError,
)

GENERATOR_CHARS = "xyzabcdefghijklmnopqrstuvw"
_CHAR_TO_INDEX = {c: i + 1 for i, c in enumerate(GENERATOR_CHARS)}
_TOKEN_RE = re.compile(r"^([xX])([0-9]+)$")


def letter_index(letter: int) -> int:
    """Generator index of a signed letter (1-based)."""
    return abs(letter)


def letter_sign(letter: int) -> int:
    """+1 for a generator, -1 for an inverse."""
    return 1 if letter > 0 else -1


def free_reduce(letters) -> tuple[int, ...]:
    """Freely reduce a letter sequence by stack cancellation.

    The result has no adjacent inverse pair and represents the same group
    element; its length is minimal among words equal to the input.
    """
    out: list[int] = []
    for letter in letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word over the rank-``rank`` alphabet."""

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        if self.rank < 2:
            raise RankError(f"rank must be at least 2, got {self.rank}")
        prev = 0
        for letter in self.letters:
            if not isinstance(letter, int) or letter == 0 or abs(letter) > self.rank:
                raise WordSyntaxError(
                    f"letter {letter!r} outside alphabet of rank {self.rank}"
                )
            if letter == -prev:
                raise DomainError("word is not freely reduced")
            prev = letter

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def from_letters(cls, letters, rank: int) -> "Word":
        """Build a word from an arbitrary letter sequence, reducing it."""
        return cls(free_reduce(letters), rank)

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def is_cyclically_reduced(self) -> bool:
        ls = self.letters
        return len(ls) < 2 or ls[0] != -ls[-1]

    def inverse(self) -> "Word":
        return Word(tuple(-l for l in reversed(self.letters)), self.rank)

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise RankError("cannot multiply words of different ranks")
        return Word.from_letters(self.letters + other.letters, self.rank)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word.from_letters(base.letters * abs(n), self.rank)

    def conjugated_by(self, g: "Word") -> "Word":
        """Return g * self * g^-1."""
        return g * self * g.inverse()

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r}, rank={self.rank})"


def parse_word(text: str, rank: int) -> Word:
    """Parse compact or token form; the result is freely reduced.

    >>> parse_word("xyX", 2).letters
    (1, 2, -1)
    >>> parse_word("xX", 2).letters
    ()
    >>> parse_word("x1 X2 x1", 3).letters
    (1, -2, 1)
    """
    if rank < 2:
        raise RankError(f"rank must be at least 2, got {rank}")
    text = text.strip()
    if text in ("", "1"):
        return Word.identity(rank)
    letters = []
    if any(ch.isspace() for ch in text) or any(ch.isdigit() for ch in text):
        for token in text.split():
            m = _TOKEN_RE.match(token)
            if not m:
                raise WordSyntaxError(f"unknown token {token!r}")
            index = int(m.group(2))
            if not 1 <= index <= rank:
                raise WordSyntaxError(
                    f"generator index {index} exceeds rank {rank}"
                )
            letters.append(index if m.group(1) == "x" else -index)
    else:
        for ch in text:
            index = _CHAR_TO_INDEX.get(ch.lower())
            if index is None:
                raise WordSyntaxError(f"unknown character {ch!r}")
            if index > rank:
                raise WordSyntaxError(
                    f"generator {ch.lower()!r} (index {index}) exceeds rank {rank}"
                )
            letters.append(-index if ch.isupper() else index)
    return Word.from_letters(letters, rank)


def format_word(w: Word) -> str:
    """Canonical text of a word: compact for rank <= 26, tokens otherwise."""
    if not w.letters:
        return "1"
    if w.rank <= 26:
        chars = []
        for letter in w.letters:
            c = GENERATOR_CHARS[abs(letter) - 1]
            chars.append(c.upper() if letter < 0 else c)
        return "".join(chars)
    return " ".join(
        ("x" if l > 0 else "X") + str(abs(l)) for l in w.letters
    )


@dataclass(frozen=True, slots=True)
class CyclicDecomposition:
    """w == conjugator * core * conjugator^-1 with the core cyclically reduced."""

    conjugator: Word
    core: Word


def cyclic_reduce(w: Word) -> CyclicDecomposition:
    """Peel matching end letters until the core is cyclically reduced.

    The conjugator is the longest possible, so the decomposition is unique.
    """
    ls = w.letters
    i, j = 0, len(ls)
    while j - i >= 2 and ls[i] == -ls[j - 1]:
        i += 1
        j -= 1
    return CyclicDecomposition(Word(ls[:i], w.rank), Word(ls[i:j], w.rank))


def cyclic_length(w: Word) -> int:
    return len(cyclic_reduce(w).core)


@dataclass(frozen=True, slots=True)
class BReducedDecomposition:
    """w == b^k * core * b^-k as reduced words, with |k| maximal."""

    k: int
    core: Word
    b: Word


def _leading_power(seq: tuple[int, ...], block: tuple[int, ...], cap: int) -> int:
    n, m = len(seq), len(block)
    count = 0
    while count < cap and seq[count * m : (count + 1) * m] == block:
        count += 1
    return count


def _trailing_power(seq: tuple[int, ...], block: tuple[int, ...], cap: int) -> int:
    n, m = len(seq), len(block)
    count = 0
    while count < cap and seq[n - (count + 1) * m : n - count * m] == block:
        count += 1
    return count


def b_reduced_decomposition(w: Word, b: Word) -> BReducedDecomposition:
    """Strip the maximal balanced b-power: w == b^k * core * b^-k, |k| maximal.

    Both junctions of the returned decomposition are reduced (the
    concatenation is letter-for-letter equal to ``w``).  A reduced word
    cannot begin with both ``b`` and ``b^-1``, so the maximizer is unique;
    positive and negative k are mutually exclusive.  The identity word gets
    k = 0 with an empty core.
    """
    if w.rank != b.rank:
        raise RankError("w and b must have the same rank")
    if b.is_identity():
        raise NotCyclicallyReducedError("b must be nonempty")
    if not b.is_cyclically_reduced():
        raise NotCyclicallyReducedError(f"b = {b} is not cyclically reduced")
    n, m = len(w), len(b)
    if n == 0:
        return BReducedDecomposition(0, w, b)
    # k copies in front and k in back need 2*k*m < n: an empty core would
    # force cancellation between b^k and b^-k.
    cap = (n - 1) // (2 * m)
    bl = b.letters
    binv = b.inverse().letters
    k = min(_leading_power(w.letters, bl, cap), _trailing_power(w.letters, binv, cap))
    if k == 0:
        k = -min(
            _leading_power(w.letters, binv, cap),
            _trailing_power(w.letters, bl, cap),
        )
    cut = abs(k) * m
    core = Word(w.letters[cut : n - cut], w.rank)
    return BReducedDecomposition(k, core, b)


def b_index(w: Word, b: Word) -> int:
    """The exponent k of the maximal balanced decomposition w == b^k core b^-k."""
    return b_reduced_decomposition(w, b).k


def ad(b: Word, w: Word, k: int = 1) -> Word:
    """Conjugate: the reduction of b^k * w * b^-k."""
    return (b**k) * w * (b**-k)


def apply_automorphism(chain, w: Word) -> Word:
    """Apply a sequence of automorphisms left to right.

    A chain ``[g1, g2]`` acts as the composite ``g2 o g1`` (g1 first).  Each
    element must expose ``rank`` and ``letter_image(letter) -> tuple``.
    """
    for phi in chain:
        if phi.rank != w.rank:
            raise RankError(
                f"automorphism of rank {phi.rank} applied to word of rank {w.rank}"
            )
        image: list[int] = []
        for letter in w.letters:
            image.extend(phi.letter_image(letter))
        w = Word.from_letters(image, w.rank)
    return w


def random_word(length: int, rank: int, seed) -> Word:
    """Uniformly random reduced word of exactly ``length`` letters.

    The first letter is uniform over the 2*rank letters, each later letter
    uniform over the 2*rank - 1 non-cancelling choices.  ``seed`` may be an
    int, a string, or a ``random.Random`` instance; fixed seeds reproduce.
    """
    if length < 0:
        raise DomainError("length must be nonnegative")
    if rank < 2:
        raise RankError(f"rank must be at least 2, got {rank}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    alphabet = [i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)]
    letters: list[int] = []
    for _ in range(length):
        choices = [l for l in alphabet if not letters or l != -letters[-1]]
        letters.append(rng.choice(choices))
    return Word(tuple(letters), rank)
