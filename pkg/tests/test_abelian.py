import random

from hurwitzkit.abelian import (
    AbelianDescription,
    IntMatrix,
    abelianization,
    is_irreducible_c,
    relation_matrix,
    smith_normal_form,
)
from hurwitzkit.presentations import (
    Presentation,
    parse_presentation,
    validate_c,
)
from hurwitzkit.words import parse_word


# -- oracles: see tests/oracles.py (kept independent of the library) --------

from oracles import det_oracle, factors_from_minors, minor_gcd_oracle


def check_snf(matrix, snf):
    assert snf.U @ matrix @ snf.V == snf.D
    assert abs(det_oracle([list(r) for r in snf.U.entries])) == 1
    assert abs(det_oracle([list(r) for r in snf.V.entries])) == 1
    diag = [snf.D.entries[i][i] for i in range(min(snf.D.rows, snf.D.cols))]
    for i in range(snf.D.rows):
        for j in range(snf.D.cols):
            if i != j:
                assert snf.D.entries[i][j] == 0
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert list(snf.invariant_factors) == nonzero
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    assert snf.invariant_factors == factors_from_minors(matrix)


# -- smith normal form --------------------------------------------------------


def test_snf_identity():
    snf = smith_normal_form(IntMatrix.identity(3))
    assert snf.D == IntMatrix.identity(3)
    assert snf.invariant_factors == (1, 1, 1)


def test_snf_diag_2_3():
    # gcd of entries is 1, gcd of 2x2 minors is 6, so the factors are (1, 6)
    m = IntMatrix([[2, 0], [0, 3]])
    snf = smith_normal_form(m)
    assert snf.invariant_factors == (1, 6)
    check_snf(m, snf)


def test_snf_zero_and_empty():
    snf = smith_normal_form(IntMatrix.zeros(2, 3))
    assert snf.invariant_factors == ()
    empty = IntMatrix((), cols=4)
    snf = smith_normal_form(empty)
    assert snf.invariant_factors == ()
    assert snf.D.cols == 4


def test_snf_random_4x4_against_minor_oracle():
    rng = random.Random(2024)
    for _ in range(50):
        m = IntMatrix([[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)])
        check_snf(m, smith_normal_form(m))


def test_snf_rectangular():
    rng = random.Random(77)
    for _ in range(30):
        r = rng.randint(1, 4)
        c = rng.randint(1, 4)
        m = IntMatrix([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        check_snf(m, smith_normal_form(m))


def test_matrix_dump():
    m = IntMatrix([[1, -2], [30, 4]])
    assert m.dump() == "1 -2\n30 4"


# -- relation matrices -----------------------------------------------------------


def test_relation_matrix_bs():
    p = parse_presentation("< a, t | t^-1*a^2*t = a^3 >")
    assert relation_matrix(p) == IntMatrix([[-1, 0]])


def test_relation_matrix_free():
    p = parse_presentation("< a, t | >")
    m = relation_matrix(p)
    assert (m.rows, m.cols) == (0, 2)


def test_relation_matrix_commutator_row_is_zero():
    p = Presentation(("x", "y"), [parse_word("x*y*x^-1*y^-1")])
    assert relation_matrix(p) == IntMatrix([[0, 0]])


# -- abelianization -----------------------------------------------------------------

PRES_C5 = """
< x1, x2, x3, x4, x5 |
  x3 = x2*x1*x2^-1,
  x3 = x1*x4*x1^-1,
  x5 = x2*x4*x2^-1,
  x5 = x1*x2*x1^-1 >
"""

DEG3 = """
< x1, x2, x3 |
  (x1^-1*x2)^2*x1*(x1^-1*x2)^-2 = x2,
  (x1*x2*x3)*x1 = x1*(x1*x2*x3),
  (x1*x2*x3)*x2 = x2*(x1*x2*x3),
  (x1*x2*x3)*x3 = x3*(x1*x2*x3) >
"""


def test_c5_abelianizes_to_z_and_is_irreducible():
    cp = validate_c(parse_presentation(PRES_C5))
    ab = abelianization(cp.base)
    assert ab == AbelianDescription(1, ())
    assert str(ab) == "Z"
    assert is_irreducible_c(cp)


def test_degree3_abelianizes_to_z2():
    p = parse_presentation(DEG3)
    ab = abelianization(p)
    assert ab == AbelianDescription(2, ())
    assert str(ab) == "Z^2"
    assert not is_irreducible_c(validate_c(p))


def test_degree3_quotient_abelianization():
    # adding the relator (x1*x2*x3)^k produces free rank 1 and torsion Z/k;
    # oracle: rows (1,-1,0), zeros, (k,k,k) have minor gcds 1, k
    for k in (1, 2, 3, 5):
        p = parse_presentation(DEG3)
        relators = list(p.relators) + [parse_word("x1*x2*x3") ** k]
        q = Presentation(p.generators, relators)
        assert factors_from_minors(relation_matrix(q)) == (1, k)
        ab = abelianization(q)
        expected_torsion = () if k == 1 else (k,)
        assert ab == AbelianDescription(1, expected_torsion)


def test_free_rank_two_direct_product():
    from hurwitzkit.presentations import direct_product
    prod, _ = direct_product(parse_presentation("< x | >"), parse_presentation("< y | >"))
    assert abelianization(prod) == AbelianDescription(2, ())


def test_trivial_group_description():
    p = Presentation(("x",), [parse_word("x")])
    ab = abelianization(p)
    assert ab == AbelianDescription(0, ())
    assert str(ab) == "0"
