import pytest

from abelian import (
    PHom,
    abelian_invariants,
    betti_number,
    elementary_abelian_quotient,
    index_p_maps,
    relation_matrix,
)
from errors import NotPrimeError, VerificationFailure
from exactlinalg import smith_invariants
from fpres import Presentation, parse_presentation
from word import Word, invert


def test_gamma1_mod3_quotient(gamma1):
    h = elementary_abelian_quotient(gamma1, 3)
    assert h.r == 2
    assert h.images == ((0, 1), (2, 0), (1, 0), (0, 1))
    h.check(gamma1)


def test_gamma1_is_a_rational_homology_sphere(gamma1):
    inv = abelian_invariants(gamma1)
    assert inv.betti == 0
    assert betti_number(gamma1, 3) == (0, "mod-5")


def test_torsion_and_free_part():
    P = parse_presentation("< a, b, c | a^6, b^4, [a, b], [a, c], [b, c] >")
    inv = abelian_invariants(P)
    assert inv.betti == 1
    assert inv.torsion == (2, 12)
    assert str(inv) == "Z + Z/2 + Z/12"


def test_free_group_and_trivial_group():
    assert abelian_invariants(Presentation(["a", "b"])).betti == 2
    assert betti_number(Presentation(["a", "b"]), 3) == (2, "snf")
    trivial = parse_presentation("< a | a >")
    assert str(abelian_invariants(trivial)) == "0"
    assert elementary_abelian_quotient(trivial, 3).r == 0


def test_cyclic_group_of_order_nine():
    P = parse_presentation("< a | a^9 >")
    h = elementary_abelian_quotient(P, 3)
    assert (h.r, h.images) == (1, ((1,),))
    assert elementary_abelian_quotient(P, 5).r == 0


def test_rank_matches_snf_count(rng):
    from conftest import random_presentation

    for _ in range(40):
        P = random_presentation(rng)
        for p in (3, 5):
            h = elementary_abelian_quotient(P, p)
            diag = smith_invariants(relation_matrix(P))
            assert h.r == P.ngens - sum(1 for d in diag if d % p)
            h.check(P)


def test_betti_shortcut_skips_the_tower_prime():
    P = parse_presentation("< a | a^5 >")
    assert betti_number(P, 5) == (0, "mod-7")


def test_phom_matrix_shape(gamma1):
    h = elementary_abelian_quotient(gamma1, 3)
    Pi = h.matrix()
    assert Pi.shape == (4, 2)
    assert [tuple(int(x) for x in row) for row in Pi] == [(0, 1), (2, 0), (1, 0), (0, 1)]


def test_phom_check_rejects_bad_maps():
    P = parse_presentation("< a, b | a^3, b^3 >")
    with pytest.raises(VerificationFailure):
        PHom(3, 1, ((1,), (1,))).check(parse_presentation("< a, b | a*b >"))
    with pytest.raises(VerificationFailure):
        PHom(3, 2, ((1, 0), (2, 0))).check(P)
    assert PHom(3, 2, ((1, 0), (0, 1))).apply(Word([1, 1, -2])) == (2, 2)


@pytest.mark.parametrize("p", [2, 4, 1])
def test_rejects_bad_primes(gamma1, p):
    with pytest.raises(NotPrimeError):
        elementary_abelian_quotient(gamma1, p)


def test_index_p_maps_count_and_validity(gamma1, gamma2):
    maps = index_p_maps(gamma1, 3)
    assert len(maps) == 4
    for h in maps:
        assert h.r == 1
        h.check(gamma1)
    assert len(index_p_maps(gamma2, 3)) == 13
    assert index_p_maps(parse_presentation("< a | a >"), 3) == []


def _relabel(P, perm, flips):
    def letter(x):
        g = perm[abs(x) - 1] + 1
        s = -1 if flips[abs(x) - 1] else 1
        return g * s if x > 0 else -g * s

    return Presentation(P.names, [Word(letter(x) for x in r.letters) for r in P.relators])


def test_invariants_ignore_presentation_cosmetics(rng):
    from conftest import random_presentation

    for _ in range(60):
        P = random_presentation(rng)
        expected = abelian_invariants(P)
        rels = list(P.relators)
        rng.shuffle(rels)
        changed = []
        for r in rels:
            k = rng.randrange(len(r))
            rotated = Word(r.letters[k:] + r.letters[:k])
            changed.append(invert(rotated) if rng.random() < 0.5 else rotated)
        assert abelian_invariants(Presentation(P.names, changed)) == expected
        perm = list(range(P.ngens))
        rng.shuffle(perm)
        flips = [rng.random() < 0.5 for _ in perm]
        assert abelian_invariants(_relabel(P, perm, flips)) == expected
        for p in (3, 5):
            assert elementary_abelian_quotient(_relabel(P, perm, flips), p).r == elementary_abelian_quotient(P, p).r
