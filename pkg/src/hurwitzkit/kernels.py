"""Finite presentations for the kernel of the degree map of a Hurwitz group.

Pipeline, for a degree-n presentation whose central element is the
product of all n generators:

1. `hurwitz_normalize` trades the central product for a fresh generator
   y (a certified Tietze chain does the bookkeeping), eliminating x_1 and
   leaving generators x_2..x_n, y with y central and rewritten extra
   relators.  The degree map sends each x_j to 1 and y to n.
2. `schreier_rewrite` rewrites kernel words over the subgroup alphabet
   a_{k,j} = x_n^k x_j x_n^-(k+1) and a_{k,y} = x_n^k y x_n^-(k+n).
3. `normalize_indices` collapses the infinite alphabet onto the finite
   one: every a_{k,y} equals a0, and a_{i+kn,j} = a0^-k a_{i,j} a0^k.
   The commutation relators are absorbed completely by this collapse, so
   only the rewritten extra relators survive, conjugated by x_n^j for
   j = 0..n-1; higher conjugates are consequences and are dropped.

The resulting presentation has exactly (n-1)^2 generators; with no extra
relators the kernel is free of that rank.
"""

from dataclasses import dataclass

from .errors import InternalInvariantError
from .presentations import HurwitzPresentation, Presentation
from .schreier import IntegerCosets, expand, rewrite
from .tietze import (
    AddGenerator,
    AddRelator,
    CertificateEntry,
    RemoveGenerator,
    RemoveRelator,
    apply_tietze,
    commutator_certificate,
    conjugacy_certificate,
    conjugate_certificate,
    invert_certificate,
)
from .words import Word, express_as_conjugate, substitute, total_degree, word_to_text


@dataclass
class NormalizedHurwitz:
    """x_2..x_n plus a central y of weight n, with degree-0 relators."""

    n: int
    presentation: Presentation
    central: str
    transversal: str
    weights: dict
    positions: dict        # generator name -> original 1-based position
    centrality: tuple      # the n-1 relators [y, x_j]
    extras: tuple          # rewritten extra relators
    forward: dict          # original generator -> word over the new alphabet
    backward: dict         # new generator -> word over the original alphabet

    def __post_init__(self):
        for r in self.presentation.relators:
            if total_degree(r, self.weights) != 0:
                raise InternalInvariantError(
                    f"normalized relator {word_to_text(r)} has nonzero degree")


def _centrality_chain(hp, fresh):
    """Certified Tietze chain from a Hurwitz presentation to normalized form."""
    pres = hp.presentation
    gens = pres.generators
    n = hp.degree
    x = [Word.gen(g) for g in gens]
    p = hp.central_word()
    y = Word.gen(fresh)

    steps = []
    current = pres

    def push(step):
        nonlocal current
        steps.append(step)
        current = apply_tietze(current, [step]).presentation

    tags = [("orig", i) for i in range(len(pres.relators))]

    def index_of(tag):
        return tags.index(tag)

    # introduce y = x_1..x_n
    push(AddGenerator(fresh, p))
    tags.append(("ry",))

    # commutation of y with each generator, derived from the stored relators
    def add_commutation(j):
        idx_ry = index_of(("ry",))
        canonical = p * x[j] * p.inverse() * x[j].inverse()
        stored_cert = conjugacy_certificate(
            canonical, current.relators, hp.centrality_indices[j])
        if stored_cert is None:
            raise InternalInvariantError(
                f"centrality relator for {gens[j]} is not cyclically "
                "equal to its canonical form")
        cert = (
            (CertificateEntry(idx_ry, y, -1),)
            + stored_cert
            + (CertificateEntry(idx_ry, x[j] * y, 1),)
        )
        push(AddRelator(y * x[j] * y.inverse() * x[j].inverse(), cert))
        tags.append(("c", j))

    for j in list(range(1, n)) + [0]:
        add_commutation(j)

    # the stored centrality relators are now redundant
    for orig in sorted({i for i in hp.centrality_indices if i is not None},
                       reverse=True):
        idx = index_of(("orig", orig))
        j = hp.centrality_indices.index(orig)
        idx_ry = index_of(("ry",))
        idx_cj = index_of(("c", j))
        canonical_cert = (
            CertificateEntry(idx_ry, y, 1),
            CertificateEntry(idx_cj, Word(), 1),
            CertificateEntry(idx_ry, x[j] * y, -1),
        )
        canonical = p * x[j] * p.inverse() * x[j].inverse()
        conj, sign = express_as_conjugate(current.relators[idx], canonical)
        cert = canonical_cert if sign == 1 else invert_certificate(canonical_cert)
        cert = conjugate_certificate(cert, conj)
        push(RemoveRelator(idx, cert))
        del tags[idx]

    # move the surviving extra relators behind the commutation relators
    for orig in [t[1] for t in tags if t[0] == "orig"]:
        idx = index_of(("orig", orig))
        word = current.relators[idx]
        push(AddRelator(word, (CertificateEntry(idx, Word(), 1),)))
        tags.append(("extra", orig))
        push(RemoveRelator(idx, (CertificateEntry(len(tags) - 1, Word(), 1),)))
        del tags[idx]

    # eliminate x_1 = y (x_2..x_n)^-1
    tail = Word([(g, 1) for g in gens[1:]])
    definition = y * tail.inverse()
    d = x[0].inverse() * definition
    idx_ry = index_of(("ry",))
    push(AddRelator(d, conjugacy_certificate(d, current.relators, idx_ry)))
    tags.append(("d",))
    idx_d = index_of(("d",))
    push(RemoveRelator(idx_ry,
                       conjugacy_certificate(current.relators[idx_ry],
                                             current.relators, idx_d)))
    del tags[idx_ry]

    before = current.relators
    push(RemoveGenerator(gens[0], index_of(("d",))))
    # mirror the substitution to keep tags aligned (empty images are dropped)
    mapping = {g: Word.gen(g) for g in gens[1:]}
    mapping[fresh] = Word.gen(fresh)
    mapping[gens[0]] = definition
    survivors = []
    for pos, r in enumerate(before):
        if pos == index_of(("d",)):
            continue
        if not substitute(r, mapping).is_identity():
            survivors.append(tags[pos])
    tags = survivors

    # [y, x_1] became [y, y (x_2..x_n)^-1], a consequence of the others
    idx_c0 = index_of(("c", 0))
    base = {gens[j]: index_of(("c", j)) for j in range(1, n)}
    cert = conjugate_certificate(
        commutator_certificate(fresh, tail.inverse(), base), y)
    push(RemoveRelator(idx_c0, cert))
    del tags[idx_c0]

    expected = [("c", j) for j in range(1, n)] + [t for t in tags if t[0] == "extra"]
    if tags != expected:
        raise InternalInvariantError(f"normalization left relators {tags}")
    return steps


def hurwitz_normalize(hp: HurwitzPresentation) -> NormalizedHurwitz:
    """Run the certified normalization chain and package the result."""
    pres = hp.presentation
    n = hp.degree
    if n != len(pres.generators):
        raise ValueError(
            "kernel derivation needs the central element to be the product of "
            f"all generators: degree {n} != {len(pres.generators)} generators")
    if n < 2:
        raise ValueError("need at least 2 generators; the kernel is trivial below that")
    taken = set(pres.generators)
    fresh = "y"
    k = 0
    while fresh in taken:
        fresh = f"y{k}"
        k += 1

    steps = _centrality_chain(hp, fresh)
    result = apply_tietze(pres, steps)
    out = result.presentation

    weights = {g: 1 for g in pres.generators[1:]}
    weights[fresh] = n
    positions = {g: i + 1 for i, g in enumerate(pres.generators)}
    return NormalizedHurwitz(
        n=n,
        presentation=out,
        central=fresh,
        transversal=pres.generators[-1],
        weights=weights,
        positions=positions,
        centrality=out.relators[:n - 1],
        extras=out.relators[n - 1:],
        forward=result.forward,
        backward=result.backward,
    )


# -- rewriting ------------------------------------------------------------------


def schreier_rewrite(word, norm):
    """Rewrite a degree-0 word over x_2..x_n, y onto the subgroup alphabet."""
    return rewrite(word, norm.weights, norm.transversal, IntegerCosets())


def expand_schreier(word, norm):
    return expand(word, norm.weights, norm.transversal, IntegerCosets())


def kernel_generator_name(i, j):
    return f"a_{i}_{j}"


A0 = "a0"


def normalize_indices(word, norm):
    """Collapse coset indices onto representatives 0..n-1.

    Letters from the central generator all equal a0; a letter a_{k,j}
    with k = i + q*n (0 <= i < n) becomes a0^-q a_{i,j} a0^q.
    """
    n = norm.n
    parts = []
    for sgen, exp in word.syllables:
        if sgen.source == norm.central:
            parts.append((A0, exp))
            continue
        if sgen.source == norm.transversal:
            raise InternalInvariantError("transversal letter leaked into rewriting")
        j = norm.positions[sgen.source]
        i = sgen.coset % n
        q = sgen.coset // n
        if q:
            parts.append((A0, -q))
        parts.append((kernel_generator_name(i, j), exp))
        if q:
            parts.append((A0, q))
    return Word(parts)


# -- the derived presentation ------------------------------------------------------


@dataclass
class KernelPresentation:
    """Presentation of the kernel: (n-1)^2 generators, one relator per
    extra relator and conjugating power."""

    degree: int
    generators: tuple
    relators: tuple
    provenance: tuple      # (extra relator index, conjugating power)
    expansion: dict        # generator name -> word over the normalized alphabet
    notice: str | None = None
    normalized: NormalizedHurwitz | None = None

    def presentation(self):
        return Presentation(self.generators, self.relators)


def kernel_generators(n):
    return (A0,) + tuple(kernel_generator_name(i, j)
                         for i in range(n) for j in range(2, n))


def derive_kernel(hp: HurwitzPresentation, strict=False) -> KernelPresentation:
    """Finite presentation of the kernel of the degree map.

    With no extra relators the output is the free presentation on
    (n-1)^2 generators.  In strict mode the commutation relators are
    rewritten too and checked to collapse to nothing.
    """
    n = hp.degree
    if n == 1:
        return KernelPresentation(
            degree=1, generators=(), relators=(), provenance=(), expansion={},
            notice="degree 1: the degree map is injective, the kernel is trivial")
    norm = hurwitz_normalize(hp)
    t = Word.gen(norm.transversal)

    generators = kernel_generators(n)
    expansion = {A0: Word([(norm.central, 1), (norm.transversal, -n)])}
    for i in range(n):
        for j in range(2, n):
            expansion[kernel_generator_name(i, j)] = Word([
                (norm.transversal, i),
                (norm.presentation.generators[j - 2], 1),
                (norm.transversal, -(i + 1)),
            ])

    relators = []
    provenance = []
    for ri, r in enumerate(norm.extras):
        for j in range(n):
            conjugated = (t ** j) * r * (t ** -j)
            rewritten = schreier_rewrite(conjugated, norm)
            collapsed = normalize_indices(rewritten, norm)
            if not collapsed.is_identity():
                relators.append(collapsed)
                provenance.append((ri, j))
    if strict:
        for c in norm.centrality:
            for j in range(n):
                conjugated = (t ** j) * c * (t ** -j)
                collapsed = normalize_indices(schreier_rewrite(conjugated, norm), norm)
                if not collapsed.is_identity():
                    raise InternalInvariantError(
                        f"commutation relator survived collapse: {word_to_text(collapsed)}")

    out = KernelPresentation(
        degree=n,
        generators=generators,
        relators=tuple(relators),
        provenance=tuple(provenance),
        expansion=expansion,
        normalized=norm,
    )
    if len(out.generators) != (n - 1) ** 2:
        raise InternalInvariantError("kernel generator count is not (n-1)^2")
    return out
