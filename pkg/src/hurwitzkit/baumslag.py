"""Britton's lemma for BS(m,n) and the machine-checked example ledger.

The group BS(2,3) = < a, t | t^-1 a^2 t = a^3 > is the classical
non-Hopfian group.  This module solves its word problem by pinch
reduction, exhibits the standard surjective-but-not-injective
endomorphism a -> a^2, t -> t with an explicit kernel witness, and
replays, as certified Tietze chains, the two presentation equivalences
that turn BS(2,3) into a five-generator conjugation presentation and
BS(2,3) x Z into a degree-3 Hurwitz presentation.

Every claim is re-derived at call time; nothing is trusted from a
constant except the candidate words themselves.
"""

from dataclasses import dataclass, field

from .errors import UnknownGeneratorError
from .presentations import (
    Presentation,
    direct_product,
    parse_presentation,
    validate_c,
    validate_hurwitz,
)
from .tietze import (
    AddGenerator,
    AddRelator,
    CertificateEntry,
    RemoveGenerator,
    RemoveRelator,
    TietzeCertificateError,
    apply_tietze,
    commutator_certificate,
    conjugacy_certificate,
    conjugate_certificate,
    invert_certificate,
    substitution_certificate,
)
from .words import (
    Word,
    exponent_sum,
    express_as_conjugate,
    parse_word,
    substitute,
    word_to_text,
)


@dataclass(frozen=True)
class BSParams:
    m: int
    n: int

    def __post_init__(self):
        if self.m == 0 or self.n == 0:
            raise ValueError("both exponents must be nonzero")


def bs_presentation(params=BSParams(2, 3)):
    relator = (Word.gen("t", -1) * Word.gen("a", params.m) * Word.gen("t")
               * Word.gen("a", -params.n))
    return Presentation(("a", "t"), [relator])


@dataclass(frozen=True)
class BrittonForm:
    """Pinch-free form a^{k_0} t^{e_1} a^{k_1} ... t^{e_l} a^{k_l}."""

    a_powers: tuple
    t_signs: tuple

    @property
    def t_length(self):
        return len(self.t_signs)

    def is_trivial(self):
        return not self.t_signs and self.a_powers == (0,)

    def to_word(self, a="a", t="t"):
        parts = [(a, self.a_powers[0])]
        for sign, power in zip(self.t_signs, self.a_powers[1:]):
            parts.append((t, sign))
            parts.append((a, power))
        return Word(parts)

    def __str__(self):
        return word_to_text(self.to_word())


def britton_reduce(word, params=BSParams(2, 3), a="a", t="t"):
    """Remove pinches t^-1 a^(m j) t -> a^(n j), t a^(n j) t^-1 -> a^(m j).

    The scan runs left to right and restarts after every rewrite; each
    rewrite removes two stable-letter occurrences, so it terminates.  The
    result represents the same group element, and it is trivial exactly
    when it has no stable letters and exponent zero.
    """
    a_powers = [0]
    t_signs = []
    for gen, exp in word.syllables:
        if gen == a:
            a_powers[-1] += exp
        elif gen == t:
            sign = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                t_signs.append(sign)
                a_powers.append(0)
        else:
            raise UnknownGeneratorError(gen, f"word over {{{a}, {t}}}")

    i = 0
    while i + 1 < len(t_signs):
        k = a_powers[i + 1]
        if t_signs[i] == -1 and t_signs[i + 1] == 1 and k % params.m == 0:
            merged = a_powers[i] + (k // params.m) * params.n + a_powers[i + 2]
        elif t_signs[i] == 1 and t_signs[i + 1] == -1 and k % params.n == 0:
            merged = a_powers[i] + (k // params.n) * params.m + a_powers[i + 2]
        else:
            i += 1
            continue
        a_powers[i:i + 3] = [merged]
        del t_signs[i:i + 2]
        i = 0
    return BrittonForm(tuple(a_powers), tuple(t_signs))


def is_trivial_bs(word, params=BSParams(2, 3), a="a", t="t"):
    return britton_reduce(word, params, a, t).is_trivial()


def bs_endomorphism(word):
    """The standard non-injective surjection of BS(2,3): a -> a^2, t -> t."""
    return substitute(word, {"a": Word.gen("a", 2), "t": Word.gen("t")})


# words whose properties the checks below re-derive; reconstructed from
# the standard treatment of BS(2,3), not computed here
PREIMAGE_OF_A = parse_word("t^-1*a*t*a^-1")
PREIMAGE_OF_T = parse_word("t")
KERNEL_WITNESS = parse_word("(t^-1*a*t)*a*(t^-1*a^-1*t)*a^-1")


# -- reports -----------------------------------------------------------------


@dataclass
class ClaimLine:
    label: str
    ok: bool
    detail: str


@dataclass
class VerificationReport:
    name: str
    lines: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, label, ok, detail=""):
        self.lines.append(ClaimLine(label, bool(ok), detail))
        return ok

    @property
    def ok(self):
        return all(line.ok for line in self.lines)

    def render(self):
        out = []
        for line in self.lines:
            status = "PASS" if line.ok else "FAIL"
            detail = f": {line.detail}" if line.detail else ""
            out.append(f"{status} [{self.name}] {line.label}{detail}")
        for note in self.notes:
            out.append(f"NOTE [{self.name}] {note}")
        return "\n".join(out)


def verify_non_hopfian(params=BSParams(2, 3), witness=None, preimage_of_a=None,
                       preimage_of_t=None):
    """Certify that a -> a^2, t -> t is onto BS(2,3) but not injective.

    Surjectivity: exhibited preimages of a and t map where claimed.
    Non-injectivity: the witness maps to the identity yet is itself
    pinch-free of positive stable length, hence nontrivial.
    """
    report = VerificationReport("non-hopfian")
    if (params.m, params.n) != (2, 3):
        report.add("scope", False,
                   f"not verified: only BS(2,3) is covered, got "
                   f"BS({params.m},{params.n}); no claim either way")
        return report
    witness = KERNEL_WITNESS if witness is None else witness
    preimage_of_a = PREIMAGE_OF_A if preimage_of_a is None else preimage_of_a
    preimage_of_t = PREIMAGE_OF_T if preimage_of_t is None else preimage_of_t

    image_a = bs_endomorphism(preimage_of_a)
    report.add("preimage of a", is_trivial_bs(image_a * Word.gen("a", -1), params),
               f"psi({word_to_text(preimage_of_a)}) = a")
    image_t = bs_endomorphism(preimage_of_t)
    report.add("preimage of t", is_trivial_bs(image_t * Word.gen("t", -1), params),
               f"psi({word_to_text(preimage_of_t)}) = t")
    report.add("witness image is trivial", is_trivial_bs(bs_endomorphism(witness), params),
               f"psi({word_to_text(witness)}) = 1")
    form = britton_reduce(witness, params)
    report.add("witness itself is nontrivial", not form.is_trivial(),
               f"pinch-free with {form.t_length} stable letters")
    if report.ok:
        report.notes.append(
            "a surjective endomorphism with nontrivial kernel: BS(2,3) is "
            "non-Hopfian, hence not residually finite")
    return report


# -- the five-generator conjugation presentation of BS(2,3) --------------------

C5_TEXT = """< x1, x2, x3, x4, x5 |
  x3 = x2*x1*x2^-1,
  x3 = x1*x4*x1^-1,
  x5 = x2*x4*x2^-1,
  x5 = x1*x2*x1^-1 >"""

DEGREE3_TEXT = """< x1, x2, x3 |
  (x1^-1*x2)^2*x1*(x1^-1*x2)^-2 = x2,
  (x1*x2*x3)*x1 = x1*(x1*x2*x3),
  (x1*x2*x3)*x2 = x2*(x1*x2*x3),
  (x1*x2*x3)*x3 = x3*(x1*x2*x3) >"""

BS_IN_X = parse_word("(x1^-1*x2)^2*x1*(x1^-1*x2)^-2*x2^-1")


class _ChainBuilder:
    """Constructs certified steps while mirroring the evolving presentation."""

    def __init__(self, presentation):
        self.current = presentation
        self.steps = []

    def push(self, step):
        self.steps.append(step)
        self.current = apply_tietze(self.current, [step]).presentation

    @property
    def relators(self):
        return self.current.relators

    def add_conjugate_relator(self, target, source_index):
        cert = conjugacy_certificate(target, self.relators, source_index)
        self.push(AddRelator(target, cert))

    def remove_relator_via(self, index, source_index):
        cert = conjugacy_certificate(self.relators[index], self.relators,
                                     source_index)
        self.push(RemoveRelator(index, cert))


def pres_chain():
    """Certified chain from BS(2,3) to the five-generator presentation."""
    start = bs_presentation()
    b = _ChainBuilder(start)

    # name t and t*a
    b.push(AddGenerator("x1", parse_word("t")))
    b.push(AddGenerator("x2", parse_word("t*a")))
    # conjugated form of the defining relator, then drop the original
    b.add_conjugate_relator(parse_word("a^2*t*a^-3*t^-1"), 0)
    b.remove_relator_via(0, 3)

    # eliminate t = x1
    b.add_conjugate_relator(parse_word("t^-1*x1"), 0)
    b.remove_relator_via(0, 3)
    b.push(RemoveGenerator("t", 2))
    # eliminate a = x1^-1 x2
    b.add_conjugate_relator(parse_word("a^-1*x1^-1*x2"), 0)
    b.remove_relator_via(0, 2)
    b.push(RemoveGenerator("a", 1))
    assert b.relators == (BS_IN_X,)

    # name the three conjugates
    b.push(AddGenerator("x3", parse_word("x2*x1*x2^-1")))
    b.push(AddGenerator("x4", parse_word("x1^-1*x3*x1")))
    b.push(AddGenerator("x5", parse_word("x1*x2*x1^-1")))
    definitions = {
        "x3": (parse_word("x2*x1*x2^-1"), 1),
        "x4": (parse_word("x1^-1*x3*x1"), 2),
        "x5": (parse_word("x1*x2*x1^-1"), 3),
    }
    targets = [parse_word(text) for text in (
        "x3*x2*x1^-1*x2^-1",
        "x3*x1*x4^-1*x1^-1",
        "x5*x2*x4^-1*x2^-1",
        "x5*x1*x2^-1*x1^-1",
    )]
    # rewriting the new relators through the definitions lands either on
    # the empty word or on a conjugate of the defining relator; the third
    # one carries the content
    residues = {}
    for target in targets:
        base, cert = substitution_certificate(target, definitions)
        if not base.is_identity():
            conj, sign = express_as_conjugate(base, BS_IN_X)
            residues[target] = (cert, conj, sign)
            cert = cert + (CertificateEntry(0, conj, sign),)
        b.push(AddRelator(target, cert))
    assert list(residues) == [targets[2]]

    # conversely the defining relator follows from the third new relator
    cert, conj, sign = residues[targets[2]]
    recovered = invert_certificate(cert) + (CertificateEntry(6, Word(), 1),)
    recovered = conjugate_certificate(recovered, conj.inverse())
    if sign == -1:
        recovered = invert_certificate(recovered)
    b.push(RemoveRelator(0, recovered))
    # each definition is a consequence of the matching conjugation relator
    b.remove_relator_via(0, 3)
    b.remove_relator_via(0, 3)
    b.remove_relator_via(0, 4)
    return start, b.steps, parse_presentation(C5_TEXT)


def verify_chain_pres():
    """Replay the chain to the five-generator presentation and audit it."""
    report = VerificationReport("presentation-chain")
    start, steps, expected = pres_chain()
    try:
        result = apply_tietze(start, steps)
    except TietzeCertificateError as exc:
        report.add("tietze chain applies", False, str(exc))
        return report
    report.add("tietze chain applies", True, f"{len(steps)} certified steps")
    final = result.presentation
    report.add("final presentation matches the fixture", final == expected,
               word_to_text(final.relators[0]) if final.relators else "")
    try:
        validate_c(final)
        report.add("final presentation is a conjugation presentation", True,
                   "4 relations on 5 generators")
    except Exception as exc:
        report.add("final presentation is a conjugation presentation", False, str(exc))

    backward = result.backward
    forward = result.forward
    for g in ("a", "t"):
        image = substitute(forward[g], backward)
        report.add(f"round trip fixes {g}", image == Word.gen(g),
                   f"{g} -> {word_to_text(forward[g])} -> {word_to_text(image)}")
    for name, relator in zip(("r1", "r2", "r3", "r4"), final.relators):
        image = substitute(relator, backward)
        report.add(f"relator {name} holds in BS(2,3)", is_trivial_bs(image),
                   f"{word_to_text(relator)} -> {word_to_text(image)}")
    for g in final.generators:
        composite = substitute(backward[g], forward)
        difference = substitute(composite * Word.gen(g, -1), backward)
        report.add(f"dictionary consistent on {g}", is_trivial_bs(difference),
                   f"{g} -> {word_to_text(backward[g])}")
    return report


# -- the degree-3 Hurwitz presentation of BS(2,3) x Z ---------------------------


def product_presentation():
    """BS(2,3) x Z on generators x1, x2, y with the two-generator relator."""
    core = Presentation(("x1", "x2"), [BS_IN_X])
    product, renames = direct_product(core, Presentation(("y",), []))
    assert not renames
    return product


def is_trivial_in_product(word):
    """Word problem for BS(2,3) x Z over x1, x2, y.

    The free factor is central, so a word is trivial exactly when its
    y-exponent vanishes and the word with y struck out dies in BS(2,3)
    under x1 -> t, x2 -> t*a.
    """
    if exponent_sum(word, "y") != 0:
        return False
    stripped = Word((g, e) for g, e in word.syllables if g != "y")
    image = substitute(stripped, {"x1": parse_word("t"), "x2": parse_word("t*a")})
    return is_trivial_bs(image)


def degree3_chain():
    """Certified chain from BS(2,3) x Z to the degree-3 Hurwitz presentation."""
    start = product_presentation()
    b = _ChainBuilder(start)
    y = Word.gen("y")

    b.push(AddGenerator("x3", parse_word("x2^-1*x1^-1*y")))  # relator index 3
    b.add_conjugate_relator(parse_word("y^-1*x1*x2*x3"), 3)  # index 4

    expected = parse_presentation(DEGREE3_TEXT)
    commutation = {1: "x1", 2: "x2"}
    for i, name in commutation.items():
        target = expected.relators[i]
        cert = (
            CertificateEntry(4, y, 1),
            CertificateEntry(4, y * Word.gen(name), -1),
            CertificateEntry(i - 1 + 1, Word(), 1),
        )
        b.push(AddRelator(target, cert))
    # centrality for x3 goes through its definition and the other two
    yx3 = y * Word.gen("x3") * y.inverse() * Word.gen("x3", -1)
    base, cert = substitution_certificate(
        yx3, {"x3": (parse_word("x2^-1*x1^-1*y"), 3)})
    cert_yx3 = cert + commutator_certificate(
        "y", parse_word("(x1*x2)^-1"), {"x1": 1, "x2": 2})
    target3 = expected.relators[3]
    cert3 = ((CertificateEntry(4, y, 1), CertificateEntry(4, y * Word.gen("x3"), -1))
             + cert_yx3)
    b.push(AddRelator(target3, cert3))

    # drop the two product commutators (each removal shifts the indices of
    # the relators behind it), then the definition, and finally y
    for index, e_index, cent_index in ((2, 4, 6), (1, 3, 4)):
        name = commutation[index]
        cert = (
            CertificateEntry(e_index, y * Word.gen(name), 1),
            CertificateEntry(e_index, y, -1),
            CertificateEntry(cent_index, Word(), 1),
        )
        b.push(RemoveRelator(index, cert))
    b.push(RemoveRelator(1, (CertificateEntry(2, Word(), -1),)))  # drop d via e
    b.push(RemoveGenerator("y", 1))
    return start, b.steps, expected


def verify_degree3_construction():
    """Replay the chain to the degree-3 Hurwitz presentation and audit it."""
    report = VerificationReport("degree3-chain")
    start, steps, expected = degree3_chain()
    try:
        result = apply_tietze(start, steps)
    except TietzeCertificateError as exc:
        report.add("tietze chain applies", False, str(exc))
        return report
    report.add("tietze chain applies", True, f"{len(steps)} certified steps")
    final = result.presentation
    report.add("final presentation matches the fixture", final == expected)
    try:
        hp = validate_hurwitz(validate_c(final), 3)
        report.add("final presentation is a degree-3 Hurwitz presentation",
                   hp.degree == 3, "x1*x2*x3 commutes with every generator")
    except Exception as exc:
        report.add("final presentation is a degree-3 Hurwitz presentation",
                   False, str(exc))

    backward = result.backward
    forward = result.forward
    for g in ("x1", "x2", "y"):
        image = substitute(forward[g], backward)
        report.add(f"round trip fixes {g}",
                   is_trivial_in_product(image * Word.gen(g, -1)),
                   f"{g} -> {word_to_text(forward[g])} -> {word_to_text(image)}")
    for idx, relator in enumerate(final.relators):
        image = substitute(relator, backward)
        report.add(f"relator {idx} holds in BS(2,3) x Z",
                   is_trivial_in_product(image),
                   f"{word_to_text(relator)} -> {word_to_text(image)}")
    for g in final.generators:
        composite = substitute(backward[g], forward)
        difference = substitute(composite * Word.gen(g, -1), backward)
        report.add(f"dictionary consistent on {g}",
                   is_trivial_in_product(difference),
                   f"{g} -> {word_to_text(backward[g])}")
    return report


# -- abelian and graph claims, and the quotient family ----------------------------


def verify_abelian_claims():
    from .abelian import AbelianDescription, abelianization, is_irreducible_c

    report = VerificationReport("abelianization")
    c5 = validate_c(parse_presentation(C5_TEXT))
    ab5 = abelianization(c5.base)
    report.add("five-generator presentation abelianizes to Z",
               ab5 == AbelianDescription(1, ()), str(ab5))
    report.add("five-generator presentation is an irreducible C-group",
               is_irreducible_c(c5))
    deg3 = parse_presentation(DEGREE3_TEXT)
    ab3 = abelianization(deg3)
    report.add("degree-3 presentation abelianizes to Z^2",
               ab3 == AbelianDescription(2, ()), str(ab3))
    return report


def verify_graph_claim():
    from .presentations import c_graph, is_tree

    report = VerificationReport("graph")
    c5 = validate_c(parse_presentation(C5_TEXT))
    graph = c_graph(c5)
    report.add("conjugation graph of the five-generator presentation is a tree",
               is_tree(graph),
               f"{graph.number_of_nodes()} vertices, {graph.number_of_edges()} edges")
    if report.ok:
        report.notes.append("a C-group with tree graph is a 2-knot group")
    return report


QUOTIENT_DISCREPANCY_NOTE = (
    "the quotient of the degree-3 example by (x1*x2*x3)^k is BS(2,3) x Z/k, "
    "since x1*x2*x3 equals the central free generator exactly; a description "
    "of this quotient as BS(2,3) x Z/3k would instead give abelianization "
    "Z x Z/3k, which disagrees with the computed Z x Z/k once k > 1; the "
    "computed value is reported")


def verify_quotient_claims():
    from .abelian import AbelianDescription, abelianization
    from .kernels import derive_kernel
    from .projective import derive_projective_kernel, projective_quotient

    report = VerificationReport("quotients")
    hp = validate_hurwitz(validate_c(parse_presentation(DEGREE3_TEXT)), 3)
    affine = derive_kernel(hp)
    affine_ab = abelianization(affine.presentation())
    report.add("affine degree kernel is finitely presented",
               len(affine.generators) == 4 and len(affine.relators) == 3,
               f"{len(affine.generators)} generators, {len(affine.relators)} relators, "
               f"abelianization {affine_ab}")
    for k in (1, 2):
        pp = projective_quotient(hp, k)
        ab = abelianization(pp.presentation)
        expected = AbelianDescription(1, () if k == 1 else (k,))
        report.add(f"quotient by power {k} abelianizes to {expected}",
                   ab == expected, str(ab))
        fk = derive_projective_kernel(pp)
        kab = abelianization(fk.presentation())
        report.add(f"degree kernel of the quotient (k={k}) is finitely presented",
                   len(fk.generators) == pp.modulus * 2 + 1,
                   f"{len(fk.generators)} generators, {len(fk.relators)} relators, "
                   f"abelianization {kab}")
        report.add(f"quotient kernel (k={k}) matches the affine kernel",
                   (kab.free_rank, kab.torsion) == (affine_ab.free_rank, affine_ab.torsion),
                   f"both abelianize to {affine_ab}")
    report.notes.append(QUOTIENT_DISCREPANCY_NOTE)
    return report


CLAIM_GROUPS = {
    "non-hopfian": verify_non_hopfian,
    "presentation-chain": verify_chain_pres,
    "degree3-chain": verify_degree3_construction,
    "abelianization": verify_abelian_claims,
    "graph": verify_graph_claim,
    "quotients": verify_quotient_claims,
}


def all_reports(groups=None):
    names = list(CLAIM_GROUPS) if groups in (None, "all") else list(groups)
    return [CLAIM_GROUPS[name]() for name in names]
