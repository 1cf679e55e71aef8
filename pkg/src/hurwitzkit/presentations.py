"""Presentation values, the file-format parser, and shape validation.

A presentation is an ordered generator list plus an ordered relator list.
Generator order is significant: the product of the first m generators is
the candidate central element of a Hurwitz presentation of degree m.

Relators are compared as cyclic words wherever a shape is being
recognised, because a relator only carries meaning up to cyclic
permutation and inversion.
"""

from dataclasses import dataclass

import networkx as nx

from .errors import CentralityError, CShapeError, ParseError, UnknownGeneratorError
from .words import (
    TokenStream,
    Word,
    cyclic_core,
    cyclic_rotations,
    cyclically_equal,
    is_generator_name,
    parse_word_tokens,
    tokenize,
    word_to_text,
)


class Presentation:
    """Generators and freely reduced relators; empty relators are dropped."""

    __slots__ = ("generators", "relators")

    def __init__(self, generators, relators=()):
        generators = tuple(generators)
        seen = set()
        for g in generators:
            if not is_generator_name(g):
                raise ParseError(f"invalid generator name {g!r}")
            if g in seen:
                raise ParseError(f"duplicate generator {g!r}")
            seen.add(g)
        kept = []
        for r in relators:
            if not isinstance(r, Word):
                raise TypeError(f"relator {r!r} is not a Word")
            for g in r.support():
                if g not in seen:
                    raise UnknownGeneratorError(g, "relator " + word_to_text(r))
            if not r.is_identity():
                kept.append(r)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "relators", tuple(kept))

    def __setattr__(self, name, value):
        raise AttributeError("Presentation is immutable")

    def __eq__(self, other):
        return (isinstance(other, Presentation)
                and self.generators == other.generators
                and self.relators == other.relators)

    def __hash__(self):
        return hash((self.generators, self.relators))

    def __repr__(self):
        return f"<Presentation {len(self.generators)} generators, {len(self.relators)} relators>"

    def __str__(self):
        return presentation_to_text(self)

    def generator_index(self, name):
        try:
            return self.generators.index(name)
        except ValueError:
            raise UnknownGeneratorError(name) from None

    def to_json_dict(self):
        return {
            "generators": list(self.generators),
            "relators": [word_to_text(r) for r in self.relators],
        }


def presentation_to_text(pres):
    gens = ", ".join(pres.generators)
    if not pres.relators:
        return f"< {gens} | >"
    rels = ",\n  ".join(word_to_text(r) for r in pres.relators)
    return f"< {gens} |\n  {rels} >"


# -- parsing -----------------------------------------------------------------

_RANGE_RE = None


def _split_numeric_suffix(name):
    import re
    m = re.match(r"([A-Za-z][A-Za-z0-9_]*?)(\d+)\Z", name)
    if m is None:
        return None
    return m.group(1), int(m.group(2))


def _expand_generator_list(entries):
    """Expand `x1, ..., x5` style ranges appearing in a generator list."""
    out = []
    i = 0
    while i < len(entries):
        entry = entries[i]
        if entry[0] != "...":
            out.append(entry)
            i += 1
            continue
        tok = entry[1]
        if not out or i + 1 >= len(entries) or entries[i + 1][0] == "...":
            raise ParseError("'...' needs a generator on both sides",
                             tok.line, tok.column)
        left = _split_numeric_suffix(out[-1][1].value)
        right = _split_numeric_suffix(entries[i + 1][1].value)
        if left is None or right is None or left[0] != right[0] or left[1] >= right[1]:
            raise ParseError("'...' requires endpoints like x1, ..., x5",
                             tok.line, tok.column)
        prefix, lo = left
        _, hi = right
        for k in range(lo + 1, hi):
            out.append(("name", tok._replace(kind="name", value=f"{prefix}{k}")))
        i += 1
    return out


def parse_presentation(text):
    """Parse `< gens | relators >`; a relator is a word or `word = word`."""
    stream = TokenStream(tokenize(text))
    stream.expect("<")
    entries = []
    while stream.peek().kind not in ("|", ">"):
        tok = stream.peek()
        if tok.kind == "name":
            entries.append(("name", stream.next()))
        elif tok.kind == "...":
            entries.append(("...", stream.next()))
        else:
            raise ParseError(f"expected a generator name, found {tok.value!r}",
                             tok.line, tok.column)
        if stream.peek().kind == ",":
            stream.next()
        elif stream.peek().kind not in ("|", ">"):
            tok = stream.peek()
            raise ParseError(f"expected ',' or '|', found {tok.value!r}",
                             tok.line, tok.column)
    generators = [tok.value for _, tok in _expand_generator_list(entries)]
    relators = []
    if stream.peek().kind == "|":
        stream.next()
        while stream.peek().kind != ">":
            lhs = parse_word_tokens(stream)
            if stream.peek().kind == "=":
                stream.next()
                rhs = parse_word_tokens(stream)
                relators.append(lhs * rhs.inverse())
            else:
                relators.append(lhs)
            if stream.peek().kind == ",":
                stream.next()
            elif stream.peek().kind != ">":
                tok = stream.peek()
                raise ParseError(f"expected ',' or '>', found {tok.value!r}",
                                 tok.line, tok.column)
    stream.expect(">")
    tok = stream.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input {tok.value!r}", tok.line, tok.column)
    try:
        return Presentation(generators, relators)
    except UnknownGeneratorError as exc:
        raise ParseError(str(exc)) from None


def parse_presentation_file(path):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_presentation(handle.read())


# -- C-shape validation --------------------------------------------------------


@dataclass(frozen=True)
class CRelation:
    """Relator content x_i = w^-1 x_j w; i and j are 0-based generator indices."""

    i: int
    j: int
    w: Word

    def shape_word(self, generators):
        xi = Word.gen(generators[self.i])
        xj = Word.gen(generators[self.j])
        return xi.inverse() * self.w.inverse() * xj * self.w


@dataclass(frozen=True)
class CPresentation:
    base: Presentation
    crelations: tuple

    @property
    def generators(self):
        return self.base.generators

    @property
    def relators(self):
        return self.base.relators

    def to_json_dict(self):
        doc = self.base.to_json_dict()
        doc["c_relations"] = [
            {"i": c.i, "j": c.j, "w": word_to_text(c.w)} for c in self.crelations
        ]
        return doc


def _match_c_shape(relator, generators):
    """Return the best CRelation reading of a relator, or None.

    Every factorisation of the relator as a cyclic word is tried; ties are
    broken by smallest i, then smallest j, then shortest w, then w itself.
    Matching up to rotation already covers inversion, because the inverse
    of a conjugation relator is again one with i and j exchanged.
    """
    index = {g: i for i, g in enumerate(generators)}
    _, core = cyclic_core(relator)
    letters = list(core.letters())
    length = len(letters)
    if length == 0 or length % 2:
        return None
    half = length // 2
    best = None
    best_key = None
    for s in range(length):
        rot = letters[s:] + letters[:s]
        g0, e0 = rot[0]
        gh, eh = rot[half]
        if e0 != -1 or eh != 1:
            continue
        if any(rot[p][0] != rot[length - p][0] or rot[p][1] != -rot[length - p][1]
               for p in range(1, half)):
            continue
        w = Word(rot[half + 1:])
        cand = CRelation(index[g0], index[gh], w)
        key = (cand.i, cand.j, w.letter_length(), tuple(w.letters()))
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return best


def validate_c(pres):
    """Check every relator against the conjugation shape x_i = w^-1 x_j w."""
    crelations = []
    failures = []
    for idx, relator in enumerate(pres.relators):
        match = _match_c_shape(relator, pres.generators)
        if match is None:
            failures.append(f"relator {idx}: {word_to_text(relator)}")
        else:
            crelations.append(match)
    if failures:
        raise CShapeError("not a C-presentation", failures)
    return CPresentation(pres, tuple(crelations))


# -- Hurwitz validation ---------------------------------------------------------


@dataclass(frozen=True)
class HurwitzPresentation:
    """A C-presentation whose first `degree` generators have central product."""

    base: CPresentation
    degree: int
    centrality_indices: tuple

    @property
    def presentation(self):
        return self.base.base

    @property
    def generators(self):
        return self.base.generators

    def central_word(self):
        return Word([(g, 1) for g in self.generators[:self.degree]])

    def extra_relator_indices(self):
        used = {i for i in self.centrality_indices if i is not None}
        return tuple(i for i in range(len(self.base.relators)) if i not in used)

    def to_json_dict(self):
        doc = self.base.to_json_dict()
        doc["degree"] = self.degree
        return doc


def centrality_word(generators, degree, i):
    """The relator x_i^-1 (x_1..x_m)^-1 x_i (x_1..x_m); empty when it is forced."""
    product = Word([(g, 1) for g in generators[:degree]])
    xi = Word.gen(generators[i])
    return xi.inverse() * product.inverse() * xi * product


def validate_hurwitz(cpres, degree):
    """Check that x_1..x_degree commutes with every x_i, as explicit relators.

    The check is syntactic: for each i a relator cyclically equal to the
    commutation relator (or its inverse) must be present.  A relator whose
    target reduces to the empty word (only possible for degree 1) is
    treated as present.
    """
    generators = cpres.generators
    if not 1 <= degree <= len(generators):
        raise ValueError(
            f"degree {degree} out of range for {len(generators)} generators")
    indices = []
    missing = []
    for i in range(degree):
        target = centrality_word(generators, degree, i)
        if target.is_identity():
            indices.append(None)
            continue
        inverse_target = target.inverse()
        matches = [idx for idx, relator in enumerate(cpres.relators)
                   if cyclically_equal(relator, target)
                   or cyclically_equal(relator, inverse_target)]
        if not matches:
            missing.append(f"no relator makes x_1..x_{degree} commute with "
                           f"{generators[i]} (need {word_to_text(target)})")
            continue
        # one relator may witness several centralities; prefer unclaimed ones
        unclaimed = [idx for idx in matches if idx not in indices]
        indices.append(unclaimed[0] if unclaimed else matches[0])
    if missing:
        raise CentralityError("not a Hurwitz presentation", missing)
    return HurwitzPresentation(cpres, degree, tuple(indices))


def free_hurwitz_presentation(n, prefix="x"):
    """The degree-n presentation whose only relations center x_1..x_n."""
    generators = [f"{prefix}{i}" for i in range(1, n + 1)]
    relators = [centrality_word(generators, n, i) for i in range(n)]
    return Presentation(generators, relators)


# -- presentation graph ----------------------------------------------------------


def c_graph(cpres):
    """One vertex per generator, one edge {i, j} per conjugation relation."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(cpres.generators)
    for c in cpres.crelations:
        graph.add_edge(cpres.generators[c.i], cpres.generators[c.j])
    return graph


def is_tree(graph):
    """Connected and acyclic; parallel edges and loops count as cycles."""
    if len(graph) == 0:
        return True
    return nx.is_tree(graph)


# -- combination and padding -------------------------------------------------------


def _fresh_name(base, taken):
    if base not in taken:
        return base
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def direct_product(p1, p2):
    """Presentation of the direct product, plus the rename map applied to p2.

    Relators: those of p1, those of p2, then one commutation relator
    g2 g1 g2^-1 g1^-1 per generator pair.  Clashing p2 generators are
    renamed deterministically and the renames are returned.
    """
    taken = set(p1.generators)
    renames = {}
    new_gens2 = []
    for g in p2.generators:
        fresh = _fresh_name(g, taken)
        taken.add(fresh)
        new_gens2.append(fresh)
        if fresh != g:
            renames[g] = fresh
    mapping = {g: Word.gen(new) for g, new in zip(p2.generators, new_gens2)}
    from .words import substitute
    relators = list(p1.relators)
    relators.extend(substitute(r, mapping) for r in p2.relators)
    for g2 in new_gens2:
        for g1 in p1.generators:
            relators.append(Word([(g2, 1), (g1, 1), (g2, -1), (g1, -1)]))
    return Presentation(tuple(p1.generators) + tuple(new_gens2), relators), renames


def pad_presentation(pres, copies):
    """Duplicate the generator list `copies`-fold, chaining x_i = x_{i+m}.

    Each block q >= 1 introduces one new generator per original one,
    identified with the previous block's copy; the group is unchanged.
    """
    if copies < 1:
        raise ValueError("copies must be >= 1")
    m = len(pres.generators)
    gens = list(pres.generators)
    relators = list(pres.relators)
    taken = set(gens)
    previous = list(pres.generators)
    for q in range(1, copies):
        block = []
        for g in pres.generators:
            fresh = _fresh_name(f"{g}_{q + 1}", taken)
            taken.add(fresh)
            block.append(fresh)
        for old, new in zip(previous, block):
            relators.append(Word([(old, -1), (new, 1)]))
        gens.extend(block)
        previous = block
    return Presentation(gens, relators)
