import random

import pytest

from oracles import abelian_from_minors

from hurwitzkit.abelian import abelianization, relation_matrix
from hurwitzkit.kernels import derive_kernel
from hurwitzkit.presentations import (
    Presentation,
    free_hurwitz_presentation,
    parse_presentation,
    validate_c,
    validate_hurwitz,
)
from hurwitzkit.projective import (
    derive_projective_kernel,
    projective_quotient,
    simplify,
)
from hurwitzkit.schreier import CyclicCosets, expand
from hurwitzkit.words import Word, parse_word

DEG3 = """
< x1, x2, x3 |
  (x1^-1*x2)^2*x1*(x1^-1*x2)^-2 = x2,
  (x1*x2*x3)*x1 = x1*(x1*x2*x3),
  (x1*x2*x3)*x2 = x2*(x1*x2*x3),
  (x1*x2*x3)*x3 = x3*(x1*x2*x3) >
"""


def hurwitz(pres, degree):
    if isinstance(pres, str):
        pres = parse_presentation(pres)
    return validate_hurwitz(validate_c(pres), degree)


# -- quotient construction -----------------------------------------------------


def test_quotient_degree3_k1():
    pp = projective_quotient(hurwitz(DEG3, 3), 1)
    assert pp.modulus == 3
    assert pp.presentation.relators[-1] == parse_word("x1*x2*x3")
    assert len(pp.presentation.relators) == 5


def test_quotient_degree3_k2():
    pp = projective_quotient(hurwitz(DEG3, 3), 2)
    assert pp.modulus == 6
    assert pp.presentation.relators[-1] == parse_word("x1*x2*x3") ** 2


def test_quotient_degree1():
    pp = projective_quotient(hurwitz("< x | >", 1), 1)
    assert pp.modulus == 1
    assert pp.presentation.relators == (Word.gen("x"),)
    fk = derive_projective_kernel(pp)
    ab = abelianization(fk.presentation())
    assert (ab.free_rank, ab.torsion) == (0, ())


def test_quotient_rejects_bad_power():
    with pytest.raises(ValueError):
        projective_quotient(hurwitz(DEG3, 3), 0)


def test_quotient_abelianizations():
    # adding (x1 x2 x3)^k to the degree-3 group yields Z x Z/k
    for k in (1, 2, 3):
        pp = projective_quotient(hurwitz(DEG3, 3), k)
        ab = abelianization(pp.presentation)
        assert ab.free_rank == 1
        assert ab.torsion == (() if k == 1 else (k,))
        assert abelian_from_minors(relation_matrix(pp.presentation)) == \
            (ab.free_rank, ab.torsion)


# -- finite-index rewriting -------------------------------------------------------


def check_round_trip(pp, fk):
    """Every rewritten relator expands back to exactly t^c r t^-c."""
    gens = pp.presentation.generators
    weights = {g: 1 for g in gens}
    transversal = gens[-1]
    cosets = CyclicCosets(pp.modulus)
    t = Word.gen(transversal)
    by_name = fk.expansion
    for word, (ri, c) in zip(fk.relators, fk.provenance):
        expanded = Word(
            [pair for name, e in word.syllables
             for pair in (by_name[name] ** e).syllables])
        assert expanded == (t ** c) * pp.presentation.relators[ri] * (t ** -c)


def test_m2_free_kernel():
    pp = projective_quotient(hurwitz(free_hurwitz_presentation(2), 2), 1)
    fk = derive_projective_kernel(pp)
    assert fk.modulus == 2
    assert fk.generators == ("s0_x1", "s1_x1", "s1_x2")
    assert len(fk.generators) == 2 * (2 - 1) + 1
    check_round_trip(pp, fk)
    ab = abelianization(fk.presentation())
    assert (ab.free_rank, ab.torsion) == \
        abelian_from_minors(relation_matrix(fk.presentation()))
    assert fk.coset_table == ((1, 1), (0, 0))


def test_degree3_kernels_match_affine_kernel():
    # killing a power of the central element leaves the degree kernel
    # unchanged here, so all three presentations describe one group and
    # must abelianize identically
    hp = hurwitz(DEG3, 3)
    affine = abelianization(derive_kernel(hp).presentation())
    for k in (1, 2):
        pp = projective_quotient(hp, k)
        fk = derive_projective_kernel(pp)
        check_round_trip(pp, fk)
        assert len(fk.generators) == pp.modulus * 2 + 1
        assert len(fk.relators) <= pp.modulus * len(pp.presentation.relators)
        ab = abelianization(fk.presentation())
        assert (ab.free_rank, ab.torsion) == (affine.free_rank, affine.torsion)


def test_nielsen_schreier_rank_on_free_instances():
    # with no extra relators beyond the centralities the generator count
    # obeys index * rank - index + 1 along the transversal cycle
    for m, k in ((2, 1), (2, 2), (3, 1), (3, 2), (4, 1)):
        pp = projective_quotient(hurwitz(free_hurwitz_presentation(m), m), k)
        fk = derive_projective_kernel(pp)
        index = m * k
        assert len(fk.generators) == index * m - index + 1


def test_index_one_keeps_relators():
    pp = projective_quotient(hurwitz("< x | >", 1), 1)
    fk = derive_projective_kernel(pp)
    assert fk.modulus == 1
    assert fk.generators == ("s0_x",)
    assert [str(r) for r in fk.relators] == ["s0_x"]


def test_provenance_order_is_deterministic():
    pp = projective_quotient(hurwitz(DEG3, 3), 1)
    fk = derive_projective_kernel(pp)
    assert list(fk.provenance) == sorted(fk.provenance)


# -- simplification ------------------------------------------------------------------


def test_simplify_single_relator():
    # the later-declared generator is eliminated
    p = parse_presentation("< a, b | a*b^-1 >")
    assert simplify(p) == parse_presentation("< a | >")


def test_simplify_fixpoint():
    p = parse_presentation("< a, b | a*b*a^-1*b^-1, a^2, b^2 >")
    assert simplify(p) == p


def test_simplify_chain():
    p = parse_presentation("< a, b, c | c^-1*a*b, b^-1*a >")
    s = simplify(p)
    assert s == parse_presentation("< a | >")


def test_simplify_kills_generator_with_trivial_relator():
    p = parse_presentation("< a, b | b, a^3 >")
    assert simplify(p) == parse_presentation("< a | a^3 >")


def test_simplify_projective_output_shrinks():
    pp = projective_quotient(hurwitz(free_hurwitz_presentation(2), 2), 1)
    fk = derive_projective_kernel(pp)
    s = simplify(fk.presentation())
    assert len(s.generators) < len(fk.generators)
    ab_before = abelianization(fk.presentation())
    ab_after = abelianization(s)
    assert ab_before == ab_after


def random_presentation(rng):
    n = rng.randrange(1, 5)
    gens = [f"g{i}" for i in range(1, n + 1)]
    relators = []
    for _ in range(rng.randrange(0, 4)):
        letters = [(rng.choice(gens), rng.choice((1, -1)))
                   for _ in range(rng.randrange(1, 7))]
        w = Word(letters)
        if not w.is_identity():
            relators.append(w)
    return Presentation(gens, relators)


def test_simplify_preserves_abelianization():
    rng = random.Random(2718)
    for _ in range(100):
        p = random_presentation(rng)
        assert abelianization(simplify(p)) == abelianization(p)
