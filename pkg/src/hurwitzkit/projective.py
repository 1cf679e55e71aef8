"""Quotients by a power of the central element and their degree kernels.

Adding the relator (x_1..x_m)^k turns the degree map into a map onto the
integers mod m*k, so its kernel has finite index and the classical
rewriting applies verbatim: same scan as the infinite case, with coset
arithmetic mod m*k.  The transversal is again powers of the last
generator; the single non-tree coset edge contributes the extra
generator representing that generator's (m*k)-th power.

`simplify` is an optional cleanup for the rather redundant raw output:
it repeatedly eliminates generators that some relator pins to a word in
the others, each elimination running as a certified Tietze chain.
"""

from dataclasses import dataclass

from .errors import InternalInvariantError
from .presentations import HurwitzPresentation, Presentation
from .schreier import CyclicCosets, SchreierGenerator, expansion, rewrite
from .tietze import (
    AddRelator,
    RemoveGenerator,
    RemoveRelator,
    apply_tietze,
    conjugacy_certificate,
)
from .words import Word, total_degree, word_to_text


@dataclass
class ProjectivePresentation:
    """A Hurwitz presentation with the extra relator (x_1..x_m)^k."""

    hurwitz: HurwitzPresentation
    power: int
    modulus: int
    presentation: Presentation

    def to_json_dict(self):
        doc = self.presentation.to_json_dict()
        doc["power"] = self.power
        doc["modulus"] = self.modulus
        return doc


def projective_quotient(hp: HurwitzPresentation, power: int) -> ProjectivePresentation:
    """Quotient by (x_1..x_m)^power; the degree map survives mod m*power."""
    if power < 1:
        raise ValueError("power must be >= 1")
    m = hp.degree
    modulus = m * power
    central = hp.central_word()
    pres = hp.presentation
    extended = Presentation(pres.generators,
                            tuple(pres.relators) + (central ** power,))
    unit = {g: 1 for g in pres.generators}
    for r in extended.relators:
        if total_degree(r, unit) % modulus:
            raise InternalInvariantError(
                f"relator {word_to_text(r)} breaks the degree map mod {modulus}")
    return ProjectivePresentation(hp, power, modulus, extended)


@dataclass
class FiniteIndexKernelPresentation:
    modulus: int
    generators: tuple
    relators: tuple
    provenance: tuple      # (relator index, transversal power)
    expansion: dict        # generator name -> word over the input alphabet
    coset_table: tuple     # coset_table[c][g-index] = image coset of c under g

    def presentation(self):
        return Presentation(self.generators, self.relators)


def _schreier_name(sgen):
    return f"s{sgen.coset}_{sgen.source}"


def derive_projective_kernel(pp: ProjectivePresentation) -> FiniteIndexKernelPresentation:
    """Presentation of the kernel of the degree map onto Z/(m*k).

    Generators: S(c, g) for cosets c and generators g, minus the m*k - 1
    tree edges along the transversal; relators: every input relator
    conjugated by each transversal element, rewritten.  Each rewritten
    relator is checked to expand back to its conjugated source exactly.
    """
    pres = pp.presentation
    gens = pres.generators
    if pp.hurwitz.degree != len(gens):
        raise ValueError(
            "kernel derivation needs the central element to be the product of "
            f"all generators: degree {pp.hurwitz.degree} != {len(gens)} generators")
    modulus = pp.modulus
    weights = {g: 1 for g in gens}
    transversal = gens[-1]
    cosets = CyclicCosets(modulus)
    t = Word.gen(transversal)

    sgens = []
    for c in range(modulus):
        for g in gens:
            if g == transversal and cosets.transversal_step_is_tree_edge(c):
                continue
            sgens.append(SchreierGenerator(c, g))
    names = tuple(_schreier_name(s) for s in sgens)
    expansions = {_schreier_name(s): expansion(s, weights, transversal, cosets)
                  for s in sgens}

    relators = []
    provenance = []
    for ri, r in enumerate(pres.relators):
        for c in range(modulus):
            conjugated = (t ** c) * r * (t ** -c)
            rewritten = rewrite(conjugated, weights, transversal, cosets)
            named = Word((_schreier_name(s), e) for s, e in rewritten.syllables)
            if not named.is_identity():
                relators.append(named)
                provenance.append((ri, c))

    table = tuple(tuple(cosets.reduce(c + weights[g]) for g in gens)
                  for c in range(modulus))
    expected = modulus * (len(gens) - 1) + 1
    if len(names) != expected:
        raise InternalInvariantError("schreier generator count mismatch")
    return FiniteIndexKernelPresentation(
        modulus=modulus,
        generators=names,
        relators=tuple(relators),
        provenance=tuple(provenance),
        expansion=expansions,
        coset_table=table,
    )


# -- presentation cleanup ------------------------------------------------------


def _single_occurrence(relator, gen):
    """The (position, sign) of the only letter of `gen`, or None."""
    count = sum(abs(e) for g, e in relator.syllables if g == gen)
    if count != 1:
        return None
    for pos, (g, s) in enumerate(relator.letters()):
        if g == gen:
            return pos, s
    return None


def _elimination_steps(pres, gen, relator_index):
    """Certified steps removing `gen` via the relator at `relator_index`."""
    relator = pres.relators[relator_index]
    pos, sign = _single_occurrence(relator, gen)
    if sign == -1:
        letters = list(relator.letters())
        target = Word(letters[pos:] + letters[:pos])
    else:
        letters = list(relator.inverse().letters())
        pos = next(i for i, (g, s) in enumerate(letters) if g == gen)
        target = Word(letters[pos:] + letters[:pos])
    if target == relator:
        return [RemoveGenerator(gen, relator_index)]
    cert = conjugacy_certificate(target, pres.relators, relator_index)
    added_index = len(pres.relators)
    back = conjugacy_certificate(relator, list(pres.relators) + [target], added_index)
    return [
        AddRelator(target, cert),
        RemoveRelator(relator_index, back),
        RemoveGenerator(gen, added_index - 1),
    ]


def simplify(pres: Presentation) -> Presentation:
    """Eliminate pinned generators until none remain.

    A generator is pinned when some relator mentions it exactly once;
    that relator then defines it in terms of the rest.  The later a
    generator was declared, the sooner it is eliminated; among its
    pinning relators the shortest (then earliest) wins.  Every step is a
    certified Tietze move, so the presented group is unchanged.
    """
    current = pres
    while True:
        chosen = None
        for gi in reversed(range(len(current.generators))):
            g = current.generators[gi]
            pinning = [(r.letter_length(), idx)
                       for idx, r in enumerate(current.relators)
                       if _single_occurrence(r, g) is not None]
            if pinning:
                chosen = (g, min(pinning)[1])
                break
        if chosen is None:
            return current
        gen, idx = chosen
        current = apply_tietze(current, _elimination_steps(current, gen, idx)).presentation
