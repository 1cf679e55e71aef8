"""Subgroup rewriting along a transversal of powers of one generator.

The kernel of a weighted degree map admits the coset representatives
t^k, where t is a chosen generator of weight 1.  Scanning a kernel word
left to right while tracking the coset of the prefix turns each letter
into a subgroup generator

    S(k, g) = t^k g rep(k + weight(g))^-1,

and the letters coming from tree edges of the coset graph (steps along t
that do not wrap) are trivial and dropped.  The same scan serves both
coset spaces: the integers for the infinite-index case, the integers mod
some modulus for a finite quotient.  Expanding every emitted letter
through its definition telescopes, so the rewritten word expands back to
the input exactly; `rewrite` re-checks that round trip on every call.
"""

from dataclasses import dataclass

from .errors import DegreeError, InternalInvariantError, UnknownGeneratorError
from .words import Word, total_degree, word_to_text


@dataclass(frozen=True, order=True)
class SchreierGenerator:
    """Subgroup generator S(coset, source) over the transversal t^coset."""

    coset: int
    source: str

    def __str__(self):
        return f"S({self.coset},{self.source})"


class IntegerCosets:
    """Coset space Z: every step along the transversal letter is a tree edge."""

    modulus = None

    def reduce(self, k):
        return k

    def transversal_step_is_tree_edge(self, k):
        return True

    def representative_exponent(self, k):
        return k


class CyclicCosets:
    """Coset space Z/modulus; the step modulus-1 -> 0 closes the cycle."""

    def __init__(self, modulus):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.modulus = modulus

    def reduce(self, k):
        return k % self.modulus

    def transversal_step_is_tree_edge(self, k):
        return k != self.modulus - 1

    def representative_exponent(self, k):
        return k % self.modulus


def rewrite(word, weights, transversal, cosets):
    """Rewrite a kernel word into a word over SchreierGenerator letters.

    The word must have total weighted degree 0 (mod the modulus in the
    finite case); otherwise DegreeError reports the computed degree.
    """
    degree = total_degree(word, weights)
    if cosets.reduce(degree) != 0:
        raise DegreeError(degree, cosets.modulus)
    out = []
    k = 0
    for gen, sign in word.letters():
        if gen not in weights:
            raise UnknownGeneratorError(gen, "schreier rewriting")
        weight = weights[gen]
        if sign == 1:
            if not (gen == transversal and cosets.transversal_step_is_tree_edge(k)):
                out.append((SchreierGenerator(k, gen), 1))
            k = cosets.reduce(k + weight)
        else:
            prev = cosets.reduce(k - weight)
            if not (gen == transversal and cosets.transversal_step_is_tree_edge(prev)):
                out.append((SchreierGenerator(prev, gen), -1))
            k = prev
    result = Word(out)
    roundtrip = expand(result, weights, transversal, cosets)
    if roundtrip != word:
        raise InternalInvariantError(
            f"schreier rewriting of {word_to_text(word)} expands to "
            f"{word_to_text(roundtrip)}")
    return result


def expansion(sgen, weights, transversal, cosets):
    """The definition t^k g t^-r of a Schreier letter, freely reduced."""
    k = sgen.coset
    r = cosets.representative_exponent(k + weights[sgen.source])
    return Word([(transversal, k), (sgen.source, 1), (transversal, -r)])


def expand(word, weights, transversal, cosets):
    """Expand a word over SchreierGenerator letters back to the big group."""
    parts = []
    for sgen, exp in word.syllables:
        image = expansion(sgen, weights, transversal, cosets) ** exp
        parts.extend(image.syllables)
    return Word(parts)
