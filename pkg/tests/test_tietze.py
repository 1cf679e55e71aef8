import pytest

from hurwitzkit.errors import TietzeCertificateError
from hurwitzkit.presentations import Presentation, parse_presentation
from hurwitzkit.tietze import (
    AddGenerator,
    AddRelator,
    CertificateEntry,
    RemoveGenerator,
    RemoveRelator,
    apply_tietze,
    certificate_product,
    commutator_certificate,
    conjugacy_certificate,
    invert_certificate,
    substitution_certificate,
)
from hurwitzkit.words import Word, parse_word, substitute

BS = parse_presentation("< a, t | t^-1*a^2*t = a^3 >")


def test_add_relator_identity_certificate():
    cert = (CertificateEntry(0, Word(), 1),)
    out = apply_tietze(BS, [AddRelator(BS.relators[0], cert)])
    assert out.presentation.relators == BS.relators + BS.relators


def test_add_relator_conjugate_certificate():
    target = parse_word("a^2*t*a^-3*t^-1")  # t * r * t^-1
    cert = (CertificateEntry(0, Word.gen("t"), 1),)
    out = apply_tietze(BS, [AddRelator(target, cert)])
    assert out.presentation.relators[-1] == target


def test_add_relator_bad_certificate():
    with pytest.raises(TietzeCertificateError, match="does not reduce"):
        apply_tietze(BS, [AddRelator(parse_word("a"),
                                     (CertificateEntry(0, Word(), 1),))])


def test_remove_relator_requires_other_relators():
    chain = [
        AddRelator(BS.relators[0], (CertificateEntry(0, Word(), 1),)),
        RemoveRelator(0, (CertificateEntry(1, Word(), 1),)),
    ]
    out = apply_tietze(BS, chain)
    assert out.presentation == BS
    with pytest.raises(TietzeCertificateError, match="being removed"):
        apply_tietze(BS, [RemoveRelator(0, (CertificateEntry(0, Word(), 1),))])


def test_add_generator_records_dictionary():
    out = apply_tietze(BS, [AddGenerator("x1", parse_word("t")),
                            AddGenerator("x2", parse_word("t*a"))])
    p = out.presentation
    assert p.generators == ("a", "t", "x1", "x2")
    assert parse_word("x1^-1*t") in p.relators
    assert parse_word("x2^-1*t*a") in p.relators
    assert out.backward["x2"] == parse_word("t*a")
    assert out.forward["a"] == Word.gen("a")


def test_add_generator_name_clash():
    with pytest.raises(TietzeCertificateError, match="already present"):
        apply_tietze(BS, [AddGenerator("a", parse_word("t"))])


def test_remove_generator_shape_check():
    pres = parse_presentation("< a, b | b^-1*a^2 >")
    out = apply_tietze(pres, [RemoveGenerator("b", 0)])
    assert out.presentation == parse_presentation("< a | >")
    assert out.forward["b"] == parse_word("a^2")
    with pytest.raises(TietzeCertificateError, match="not of the form"):
        apply_tietze(parse_presentation("< a, b | a^2*b^-1 >"),
                     [RemoveGenerator("b", 0)])


def test_remove_generator_substitutes_everywhere():
    pres = parse_presentation("< a, b, c | c^-1*a*b, c*b*c^-1*b^-1 >")
    out = apply_tietze(pres, [RemoveGenerator("c", 0)])
    assert out.presentation.generators == ("a", "b")
    assert out.presentation.relators == (parse_word("a*b*b*b^-1*a^-1*b^-1"),)


def test_chain_and_reverse_chain_restore_presentation():
    forward = [
        AddGenerator("x1", parse_word("t")),
        AddGenerator("x2", parse_word("t*a")),
        AddRelator(parse_word("a^2*t*a^-3*t^-1"),
                   (CertificateEntry(0, Word.gen("t"), 1),)),
        RemoveRelator(0, (CertificateEntry(3, Word.gen("t", -1), 1),)),
    ]
    mid = apply_tietze(BS, forward).presentation
    backward = [
        AddRelator(parse_word("t^-1*a^2*t*a^-3"),
                   (CertificateEntry(2, Word.gen("t", -1), 1),)),
        RemoveRelator(2, (CertificateEntry(3, Word.gen("t"), 1),)),
        RemoveGenerator("x2", 1),
        RemoveGenerator("x1", 0),
    ]
    assert apply_tietze(mid, backward).presentation == BS


# -- certificate helpers --------------------------------------------------------


def test_conjugacy_certificate_rotation_and_inverse():
    relators = [parse_word("x*y*z")]
    for target_text in ["y*z*x", "z^-1*y^-1*x^-1", "x^-1*z^-1*y^-1"]:
        target = parse_word(target_text)
        cert = conjugacy_certificate(target, relators, 0)
        assert cert is not None
        assert certificate_product(relators, cert) == target
    assert conjugacy_certificate(parse_word("x*y"), relators, 0) is None


def test_invert_certificate():
    relators = [parse_word("x*y*z"), parse_word("y*x")]
    cert = (CertificateEntry(0, Word.gen("y"), 1),
            CertificateEntry(1, parse_word("x*z"), -1))
    product = certificate_product(relators, cert)
    assert certificate_product(relators, invert_certificate(cert)) == product.inverse()


def test_substitution_certificate():
    # definitions x3 = y*x, x4 = x3^-1*y over base alphabet {x, y}
    relators = [parse_word("x3^-1*y*x"), parse_word("x4^-1*x3^-1*y")]
    definitions = {
        "x3": (parse_word("y*x"), 0),
        "x4": (parse_word("x3^-1*y"), 1),
    }
    word = parse_word("x4*x3*y^-1*x4^-1")
    base, cert = substitution_certificate(word, definitions)
    assert base.support() <= {"x", "y"}
    assert certificate_product(relators, cert) * base == word


def test_commutator_certificate():
    # relators [y, a] and [y, b]; derive [y, w] for a longer w
    relators = [parse_word("y*a*y^-1*a^-1"), parse_word("y*b*y^-1*b^-1")]
    base = {"a": 0, "b": 1}
    for text in ["a*b", "b^-1*a", "a^-1*b^-1*a*y", "y*a*y"]:
        w = parse_word(text)
        cert = commutator_certificate("y", w, base)
        expected = Word.gen("y") * w * Word.gen("y", -1) * w.inverse()
        assert certificate_product(relators, cert) == expected
