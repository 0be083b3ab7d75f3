import pytest

from baerq import (
    BaerElement,
    baer_eval,
    certify_expp_elementary,
    class2_expp_quotient,
    eval_relators,
    pair_index,
    wedge,
)
from errors import NotPrimeError
from fpres import Presentation, parse_presentation
from word import Word, commutator, exponent_vector


def _random_element(rng, n, p):
    return BaerElement(
        p,
        tuple(rng.randrange(p) for _ in range(n)),
        tuple(rng.randrange(p) for _ in range(n * (n - 1) // 2)),
    )


def test_group_axioms(rng):
    for p in (3, 5):
        n = 3
        e = BaerElement.identity(n, p)
        for _ in range(30):
            x, y, z = (_random_element(rng, n, p) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            assert (x * x.inverse()).is_identity()
            assert x * e == x
            assert (x ** p).is_identity()
            assert x ** (p + 1) == x
            assert x ** -1 == x.inverse()


def test_commutator_of_basis_is_the_wedge():
    n, p = 3, 3
    images = [BaerElement.basis(n, p, k) for k in range(1, n + 1)]
    c = baer_eval(commutator(Word([1]), Word([3])), images)
    assert c.v == (0, 0, 0)
    expected = [0] * 3
    expected[pair_index(0, 2, n)] = 1
    assert c.w == tuple(expected)
    assert wedge((1, 0, 0), (0, 0, 1), p) == tuple(expected)


def test_fast_evaluation_matches_the_group_law(rng):
    from conftest import random_presentation

    for _ in range(20):
        P = random_presentation(rng)
        for p in (3, 7):
            images = [BaerElement.basis(P.ngens, p, k) for k in range(1, P.ngens + 1)]
            slow = [baer_eval(r, images) for r in P.relators]
            assert eval_relators(P, p) == slow


def test_free_and_abelian_quotients():
    free = class2_expp_quotient(Presentation(["a", "b"]), 3)
    assert (free.dim_total, free.dim_linear, free.elementary_abelian) == (3, 2, False)
    assert free.class2_dim == 1
    ab = class2_expp_quotient(parse_presentation("< a, b | a^3, b^3, [a, b] >"), 3)
    assert ab.elementary_abelian and ab.dim_linear == 2
    assert certify_expp_elementary(parse_presentation("< a, b | [a, b] >"), 3) == (True, 2, False)
    assert certify_expp_elementary(Presentation(["a", "b"]), 3)[:2] == (False, 2)
    heis = parse_presentation("< a, b | a^3, b^3, [[a, b], a], [[a, b], b] >")
    assert class2_expp_quotient(heis, 3).class2_dim == 1


def test_reduced_and_direct_methods_agree(rng, gamma1):
    from conftest import random_presentation

    cases = [gamma1] + [random_presentation(rng) for _ in range(30)]
    for P in cases:
        for p in (3, 5):
            fast = class2_expp_quotient(P, p, method="reduced")
            slow = class2_expp_quotient(P, p, method="direct")
            assert (fast.dim_total, fast.dim_linear) == (slow.dim_total, slow.dim_linear)


def test_gamma2_exponent_three_quotient(gamma2):
    cert = certify_expp_elementary(gamma2, 3)
    assert cert == (True, 3, False)


def test_caveat_above_three(gamma1):
    assert class2_expp_quotient(gamma1, 5).caveat
    assert not class2_expp_quotient(gamma1, 3).caveat


def test_bad_inputs(gamma1):
    with pytest.raises(NotPrimeError):
        class2_expp_quotient(gamma1, 2)
    with pytest.raises(ValueError):
        class2_expp_quotient(gamma1, 3, method="magic")
    with pytest.raises(ValueError):
        BaerElement(3, (0, 0), (0, 0))


@pytest.mark.slow
def test_group_laws_on_many_elements(rng):
    for p in (3, 5):
        n = 4
        e = BaerElement.identity(n, p)
        for _ in range(1700):
            x, y, z = (_random_element(rng, n, p) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            assert x * x.inverse() == e == x.inverse() * x
            power = e
            for _ in range(p):
                power = power * x
            assert power.is_identity()


@pytest.mark.parametrize("p", [3, 5])
def test_free_quotient_dimensions(p):
    names = ["a", "b", "c", "d", "e", "f"]
    for n in range(1, 7):
        for method in ("reduced", "direct"):
            q = class2_expp_quotient(Presentation(names[:n]), p, method=method)
            assert q.dim_linear == n
            assert q.dim_total == n + n * (n - 1) // 2


def test_linear_part_is_the_exponent_vector(rng):
    letters = [1, -1, 2, -2, 3, -3]
    for p in (3, 5):
        images = [BaerElement.basis(3, p, k) for k in range(1, 4)]
        for _ in range(200):
            w = Word(rng.choice(letters) for _ in range(rng.randint(0, 15)))
            assert baer_eval(w, images).v == tuple(x % p for x in exponent_vector(w, 3))


def test_extra_relators_never_grow_the_quotient(rng):
    from conftest import random_presentation

    for _ in range(30):
        P = random_presentation(rng)
        Q = Presentation(P.names, list(P.relators) + list(random_presentation(rng, max_gens=1).relators))
        for p in (3, 5):
            big = class2_expp_quotient(P, p)
            small = class2_expp_quotient(Q, p)
            assert small.dim_total <= big.dim_total
            assert small.dim_linear <= big.dim_linear
