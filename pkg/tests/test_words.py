from hypothesis import given
from hypothesis import strategies as st

from goldman_turaev.words import (
    canonical_cyclic,
    conjugate,
    cyclic_reduce,
    exponent_sums,
    free_reduce,
    inverse,
    is_cyclic_conjugate,
    least_rotation,
    multiply,
    power,
    primitive_root,
    substitute,
)

letters = st.integers(1, 4).flatmap(lambda g: st.sampled_from((g, -g)))
words = st.lists(letters, max_size=12).map(tuple)


def test_free_reduce_examples():
    assert free_reduce((1, 2, -2, 1)) == (1, 1)
    assert free_reduce((1, -1)) == ()
    assert cyclic_reduce((1, 2, -1)) == (2,)


def test_power_and_conjugate():
    assert power((1, 2), 2) == (1, 2, 1, 2)
    assert power((1, 2), -1) == (-2, -1)
    assert power((1,), 0) == ()
    assert conjugate((2,), (1,)) == (1, 2, -1)


def test_primitive_root():
    assert primitive_root((1, 2, 1, 2, 1, 2)) == ((1, 2), 3)
    assert primitive_root((1, 1, 2)) == ((1, 1, 2), 1)


def test_substitute():
    assert substitute((1, 2, -1), {1: (1, 2), 2: (2,)}) == (1, 2, -1)
    assert substitute((1, 2), {1: (2, 1), 2: (2,)}) == (2, 1, 2)


@given(words)
def test_reduce_is_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(a != -b for a, b in zip(r, r[1:]))


@given(words, words)
def test_inverse_cancels(u, v):
    assert multiply(u, inverse(u)) == ()
    assert inverse(multiply(u, v)) == multiply(inverse(v), inverse(u))


@given(words, words)
def test_canonical_form_is_conjugation_invariant(w, c):
    assert canonical_cyclic(multiply(c, w, inverse(c))) == canonical_cyclic(w)


@given(words, st.integers(0, 11))
def test_least_rotation_ignores_start(w, k):
    w = cyclic_reduce(w)
    if w:
        k %= len(w)
        assert least_rotation(w[k:] + w[:k]) == least_rotation(w)
        assert is_cyclic_conjugate(w, w[k:] + w[:k])


@given(words)
def test_exponent_sums_are_additive(w):
    assert exponent_sums(free_reduce(w), 4) == exponent_sums(w, 4)
