import pytest

from errors import MalformedLetterError
from word import (
    Word,
    commutator,
    cyclic_key,
    cyclic_reduce,
    exponent_vector,
    free_reduce,
    invert,
    is_cyclically_reduced,
    least_rotation,
    substitute,
)


def test_free_reduce_cancels_adjacent_pairs():
    assert free_reduce([1, 2, -2, -1, 3]).letters == (3,)
    assert free_reduce([1, -1]) == Word.identity()
    assert free_reduce([2, 1, -1, 1]).letters == (2, 1)


def test_zero_letter_is_rejected():
    with pytest.raises(MalformedLetterError):
        Word([1, 0, 2])


def test_invert_and_product_give_identity(rng):
    for _ in range(50):
        w = Word(rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(rng.randint(0, 15)))
        assert not (w * invert(w))
        assert invert(invert(w)) == w


def test_concat_cancels_across_the_seam():
    assert (Word([1, 2]) * Word([-2, 3])).letters == (1, 3)
    assert (Word([1, 2]) * Word([-2, -1])) == Word.identity()


def test_powers():
    a = Word([1])
    assert (a ** 3).letters == (1, 1, 1)
    assert (a ** -2).letters == (-1, -1)
    assert (a ** 0) == Word.identity()
    conj = Word([2, 1, -2])
    assert (conj ** 2).letters == (2, 1, 1, -2)


def test_cyclic_reduce_returns_conjugator():
    w = Word([2, 1, 3, -2])
    core, conj = cyclic_reduce(w)
    assert core.letters == (1, 3)
    assert conj.letters == (2,)
    assert conj * core * invert(conj) == w
    assert is_cyclically_reduced(core)
    assert not is_cyclically_reduced(w)


def test_commutator_convention():
    a, b = Word([1]), Word([2])
    assert commutator(a, b).letters == (-1, -2, 1, 2)
    assert commutator(a, a) == Word.identity()


def test_exponent_vector():
    # c*d^2*c*d^2*c*d^2 in a, b, c, d
    w = Word([3, 4, 4, 3, 4, 4, 3, 4, 4])
    assert exponent_vector(w, 4) == (0, 0, 3, 6)
    with pytest.raises(MalformedLetterError):
        exponent_vector(w, 3)


def test_substitute_handles_inverse_occurrences():
    w = Word([1, -2, 1])
    out = substitute(w, {2: Word([3, 3])})
    assert out.letters == (1, -3, -3, 1)


def test_syllables():
    assert Word([3, 4, 4, -1, -1]).syllables() == [(3, 1), (4, 2), (1, -2)]


def test_least_rotation_matches_brute_force(rng):
    for _ in range(200):
        s = [rng.choice([1, -1, 2, -2, 3]) for _ in range(rng.randint(1, 12))]
        k = least_rotation(s)
        best = min(tuple(s[i:] + s[:i]) for i in range(len(s)))
        assert tuple(s[k:] + s[:k]) == best


def test_cyclic_key_identifies_rotations_and_inverses():
    w = Word([1, 2, -1, 3])
    rotated = Word([3, 1, 2, -1])
    assert cyclic_key(w) == cyclic_key(rotated)
    assert cyclic_key(w) == cyclic_key(invert(w))
    assert cyclic_key(w) != cyclic_key(Word([1, -2, -1, 3]))
    # a conjugate gets the key of its cyclic core
    assert cyclic_key(Word([-2, 1, 2, -1, 3, 2])) == cyclic_key(w)
