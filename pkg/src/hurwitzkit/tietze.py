"""Tietze transformations with machine-checked certificates.

A relator may be added or removed only together with a certificate: a
list of (relator index, conjugator, sign) entries whose product of
conjugates freely reduces to the relator in question.  Soundness of a
whole chain therefore rests on free-group reduction alone, never on the
caller's word.

Generator steps carry their own evidence: adding a generator introduces
its defining relator, and removing one requires a relator of the exact
shape g^-1 w with g absent from w.

`apply_tietze` also accumulates the generator dictionary of the chain:
words expressing the original generators in the final ones and vice
versa.
"""

from dataclasses import dataclass

from .errors import TietzeCertificateError
from .words import (
    Word,
    express_as_conjugate,
    identity_mapping,
    is_generator_name,
    substitute,
    word_to_text,
)
from .presentations import Presentation


@dataclass(frozen=True)
class CertificateEntry:
    relator_index: int
    conjugator: Word
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class AddGenerator:
    name: str
    definition: Word


@dataclass(frozen=True)
class RemoveGenerator:
    name: str
    relator_index: int


@dataclass(frozen=True)
class AddRelator:
    relator: Word
    certificate: tuple


@dataclass(frozen=True)
class RemoveRelator:
    relator_index: int
    certificate: tuple


@dataclass
class TietzeResult:
    presentation: Presentation
    forward: dict    # original generator -> word over final generators
    backward: dict   # final generator -> word over original generators


def certificate_product(relators, certificate):
    """Multiply out conj * r^sign * conj^-1 over the entries; freely reduced."""
    product = Word()
    for entry in certificate:
        r = relators[entry.relator_index]
        if entry.sign == -1:
            r = r.inverse()
        product = product * entry.conjugator * r * entry.conjugator.inverse()
    return product


def invert_certificate(certificate):
    return tuple(
        CertificateEntry(e.relator_index, e.conjugator, -e.sign)
        for e in reversed(certificate)
    )


def conjugate_certificate(certificate, by):
    return tuple(
        CertificateEntry(e.relator_index, by * e.conjugator, e.sign)
        for e in certificate
    )


def conjugacy_certificate(target, relators, source_index):
    """Certificate for a relator that is a cyclic permutation (or inverse
    of one) of an existing relator; None when it is not."""
    found = express_as_conjugate(target, relators[source_index])
    if found is None:
        return None
    conj, sign = found
    return (CertificateEntry(source_index, conj, sign),)


def substitution_certificate(word, definitions):
    """Rewrite defined generators away, logging the certificate.

    `definitions` maps a generator g to (w, index) where relator `index`
    is exactly g^-1 w.  Returns (base_word, certificate) with
    word = product(certificate) * base_word in the free group; base_word
    contains no defined generator.  Definitions must not be cyclic.
    """
    entries = []
    current = word
    guard = 0
    while True:
        target = None
        for pos, (gen, sign) in enumerate(current.letters()):
            if gen in definitions:
                target = (pos, gen, sign)
                break
        if target is None:
            return current, tuple(entries)
        guard += 1
        if guard > 10_000:
            raise TietzeCertificateError(-1, word, "cyclic generator definitions")
        pos, gen, sign = target
        letters = list(current.letters())
        prefix = Word(letters[:pos])
        suffix = Word(letters[pos + 1:])
        definition, index = definitions[gen]
        g = Word.gen(gen)
        if sign == 1:
            # u g v = (u g) d^-1 (u g)^-1 * (u w v)   with d = g^-1 w
            entries.append(CertificateEntry(index, prefix * g, -1))
            current = prefix * definition * suffix
        else:
            # u g^-1 v = (u w^-1 g) d (u w^-1 g)^-1 * (u w^-1 v)
            entries.append(
                CertificateEntry(index, prefix * definition.inverse() * g, 1))
            current = prefix * definition.inverse() * suffix


def commutator_certificate(left, word, base_indices):
    """Certificate for [left, word] = left word left^-1 word^-1.

    `base_indices[g]` must point at the relator left g left^-1 g^-1; the
    letter `left` itself commutes trivially and needs no relator.
    """
    entries = []
    letters = list(word.letters())

    def build(remaining, conjugator):
        if not remaining:
            return
        (gen, sign), rest = remaining[0], remaining[1:]
        g = Word.gen(gen, sign)
        if gen != left:
            if sign == 1:
                entries.append(CertificateEntry(base_indices[gen], conjugator, 1))
            else:
                entries.append(
                    CertificateEntry(base_indices[gen], conjugator * g, -1))
        build(rest, conjugator * g)

    build(letters, Word())
    return tuple(entries)


def _verify_certificate(step_index, step, relators, certificate, target,
                        excluded=None):
    for entry in certificate:
        if not 0 <= entry.relator_index < len(relators):
            raise TietzeCertificateError(
                step_index, step, f"certificate cites relator {entry.relator_index}, "
                f"but only {len(relators)} exist")
        if excluded is not None and entry.relator_index == excluded:
            raise TietzeCertificateError(
                step_index, step, "certificate cites the relator being removed")
    product = certificate_product(relators, certificate)
    if product != target:
        raise TietzeCertificateError(
            step_index, step,
            f"certificate product {word_to_text(product)} does not reduce to "
            f"{word_to_text(target)}")


def apply_tietze(pres, chain):
    """Apply a chain of certified steps; every certificate is re-checked."""
    generators = list(pres.generators)
    relators = list(pres.relators)
    forward = identity_mapping(generators)
    backward = identity_mapping(generators)

    for step_index, step in enumerate(chain):
        if isinstance(step, AddGenerator):
            if not is_generator_name(step.name):
                raise TietzeCertificateError(step_index, step,
                                             f"bad generator name {step.name!r}")
            if step.name in generators:
                raise TietzeCertificateError(step_index, step,
                                             f"generator {step.name!r} already present")
            if not step.definition.support() <= set(generators):
                raise TietzeCertificateError(step_index, step,
                                             "definition uses unknown generators")
            backward[step.name] = substitute(step.definition, backward)
            generators.append(step.name)
            relators.append(Word.gen(step.name, -1) * step.definition)

        elif isinstance(step, AddRelator):
            if step.relator.is_identity():
                raise TietzeCertificateError(step_index, step,
                                             "cannot add an empty relator")
            _verify_certificate(step_index, step, relators, step.certificate,
                                step.relator)
            relators.append(step.relator)

        elif isinstance(step, RemoveRelator):
            idx = step.relator_index
            if not 0 <= idx < len(relators):
                raise TietzeCertificateError(step_index, step,
                                             f"no relator {idx}")
            _verify_certificate(step_index, step, relators, step.certificate,
                                relators[idx], excluded=idx)
            del relators[idx]

        elif isinstance(step, RemoveGenerator):
            idx = step.relator_index
            if step.name not in generators:
                raise TietzeCertificateError(step_index, step,
                                             f"no generator {step.name!r}")
            if not 0 <= idx < len(relators):
                raise TietzeCertificateError(step_index, step, f"no relator {idx}")
            relator = relators[idx]
            syllables = relator.syllables
            if not syllables or syllables[0] != (step.name, -1):
                raise TietzeCertificateError(
                    step_index, step,
                    f"relator {word_to_text(relator)} is not of the form "
                    f"{step.name}^-1*w")
            replacement = Word(syllables[1:])
            if step.name in replacement.support():
                raise TietzeCertificateError(
                    step_index, step,
                    f"{step.name!r} still occurs in {word_to_text(replacement)}")
            mapping = identity_mapping(generators)
            mapping[step.name] = replacement
            relators = [substitute(r, mapping)
                        for pos, r in enumerate(relators) if pos != idx]
            relators = [r for r in relators if not r.is_identity()]
            generators.remove(step.name)
            forward = {g: substitute(w, mapping) for g, w in forward.items()}
            del backward[step.name]

        else:
            raise TietzeCertificateError(step_index, step, "unknown step type")

    return TietzeResult(Presentation(generators, relators), forward, backward)
