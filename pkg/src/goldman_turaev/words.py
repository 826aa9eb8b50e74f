"""Free group words over signed integer letters.

A letter is a nonzero int: ``k`` is the k-th generator and ``-k`` its
inverse.  Plain words are tuples of letters.  Everything here is pure and
does not know about surfaces; naming of generators lives in ``surface``.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

Word = Tuple[int, ...]


def letter_key(letter: int) -> int:
    # x1 < X1 < y1 < Y1 < ...
    return 2 * abs(letter) + (letter < 0)


def free_reduce(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(word))


def multiply(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for a in w:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
    return tuple(out)


def power(word: Sequence[int], k: int) -> Word:
    if k < 0:
        return power(inverse(word), -k)
    return free_reduce(tuple(word) * k)


def conjugate(word: Sequence[int], by: Sequence[int]) -> Word:
    """``by * word * by^-1``."""
    return multiply(by, word, inverse(by))


def cyclic_reduce(letters: Iterable[int]) -> Word:
    w = free_reduce(letters)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def least_rotation(word: Sequence[int]) -> Word:
    """Lexicographically least rotation under ``letter_key``."""
    w = tuple(word)
    if not w:
        return w
    keys = [letter_key(a) for a in w]
    n = len(w)
    best = 0
    for i in range(1, n):
        for k in range(n):
            a, b = keys[(i + k) % n], keys[(best + k) % n]
            if a != b:
                if a < b:
                    best = i
                break
    return w[best:] + w[:best]


def canonical_cyclic(letters: Iterable[int]) -> Word:
    return least_rotation(cyclic_reduce(letters))


def primitive_root(word: Sequence[int]) -> tuple[Word, int]:
    """Return ``(p, k)`` with ``word == p**k`` and ``k`` maximal (cyclic words)."""
    w = tuple(word)
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w == w[:d] * (n // d):
            return w[:d], n // d
    return w, 1


def exponent_sums(word: Sequence[int], rank: int) -> tuple[int, ...]:
    v = [0] * rank
    for a in word:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(v)


def substitute(word: Sequence[int], images: dict[int, Word]) -> Word:
    """Apply a homomorphism given by images of positive letters."""
    out: list[Word] = []
    for a in word:
        img = images.get(abs(a), (abs(a),))
        out.append(img if a > 0 else inverse(img))
    return multiply(*out)


def is_cyclic_conjugate(u: Sequence[int], v: Sequence[int]) -> bool:
    return canonical_cyclic(u) == canonical_cyclic(v)
