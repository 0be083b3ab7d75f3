import pytest

from abelian import abelian_invariants, elementary_abelian_quotient
from cosets import table_from_phom, todd_coxeter
from fpres import Presentation, parse_presentation
from rewrite import (
    expand_word,
    rewrite_subgroup,
    schreier_generators,
    schreier_transversal,
    tietze_simplify,
)
from word import invert


def _kernel_rewrite(P, p=3):
    h = elementary_abelian_quotient(P, p)
    return h, table_from_phom(P, h), rewrite_subgroup(P, table_from_phom(P, h))


def test_cyclic_group_kernel():
    P = parse_presentation("< a | a^9 >")
    h, table, rw = _kernel_rewrite(P)
    T = schreier_transversal(table)
    assert [w.letters for w in T.reps] == [(), (1,), (-1,)]
    assert rw.presentation.ngens == 1
    assert rw.presentation.nrelators == 3
    assert abelian_invariants(rw.presentation).torsion == (3,)


def test_gamma1_raw_kernel_counts(gamma1):
    h, table, rw = _kernel_rewrite(gamma1)
    T = schreier_transversal(table)
    assert len(T) == 9
    assert max(len(w) for w in T.reps) <= 2
    assert rw.presentation.ngens == 28
    assert rw.nrelators_raw == 54
    assert rw.presentation.nrelators <= 54
    assert rw.presentation.names[0].split("_")[0] in gamma1.names


def test_schreier_generators_lie_in_the_kernel(gamma1):
    h, table, rw = _kernel_rewrite(gamma1)
    for w in rw.words:
        assert h.apply(w) == (0, 0)


def test_rewritten_relators_expand_to_conjugates(gamma1):
    h, table, rw = _kernel_rewrite(gamma1)
    reps = schreier_transversal(table).reps
    ambient = list(rw.words)
    k = 0
    for rel in gamma1.relators:
        for c in range(table.n):
            expected = reps[c] * rel * invert(reps[c])
            assert expand_word(rw.presentation.relators[k], ambient) == expected
            k += 1


def test_free_group_kernel_rank():
    F2 = Presentation(["a", "b"])
    h, table, rw = _kernel_rewrite(F2)
    assert table.n == 9
    assert rw.presentation.ngens == 10
    assert abelian_invariants(rw.presentation).betti == 10


def test_schreier_generator_labels_skip_tree_edges():
    P = parse_presentation("< a, b | a^3, b^3, [a, b] >")
    table = todd_coxeter(P, [])
    gens = schreier_generators(table, schreier_transversal(table))
    assert len(gens) == table.n * (P.ngens - 1) + 1
    assert all(w for _, w in gens)


def test_tietze_eliminates_a_redundant_generator():
    P = parse_presentation("< a, b | a*b^-1, b^5 >")
    Q = tietze_simplify(P)
    assert Q.ngens == 1
    assert abelian_invariants(Q).torsion == (5,)


def test_tietze_preserves_homology(gamma1, rng):
    from conftest import random_presentation

    h, table, rw = _kernel_rewrite(gamma1)
    raw = rw.presentation
    simple = tietze_simplify(raw)
    assert simple.ngens < raw.ngens
    assert set(simple.names) <= set(raw.names)
    assert abelian_invariants(simple) == abelian_invariants(raw)
    for _ in range(30):
        P = random_presentation(rng)
        assert abelian_invariants(tietze_simplify(P)) == abelian_invariants(P)


def test_tietze_budget_zero_only_tidies():
    P = parse_presentation("< a, b | a*b^-1, b*a^-1, b^2*a*b^-2 >")
    Q = tietze_simplify(P, budget=0)
    assert Q.ngens == 2
    assert Q.nrelators == 2


@pytest.mark.slow
def test_rewrite_counts_and_tietze_on_random_presentations(rng):
    from conftest import random_presentation

    for _ in range(100):
        P = random_presentation(rng)
        h, table, rw = _kernel_rewrite(P)
        raw = rw.presentation
        assert raw.ngens == table.n * (P.ngens - 1) + 1
        assert rw.nrelators_raw == table.n * P.nrelators
        simple = tietze_simplify(raw)
        assert simple.ngens <= raw.ngens
        assert abelian_invariants(simple) == abelian_invariants(raw)
        for p in (3, 5):
            assert elementary_abelian_quotient(simple, p).r == elementary_abelian_quotient(raw, p).r
