"""Exact free-group arithmetic.

Words are kept in syllable (run-length) normal form: a tuple of
(generator, exponent) pairs with nonzero exponents and no two adjacent
pairs sharing a generator.  The empty tuple is the identity.  Generators
are compared by value; ordinary alphabets use identifier strings, but any
hashable value works (the subgroup rewriter uses richer letter objects).

All operations are pure and every returned word is freely reduced.
"""

import re
from collections import namedtuple

from .errors import ParseError, UnknownGeneratorError

GENERATOR_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def is_generator_name(name):
    return isinstance(name, str) and GENERATOR_NAME_RE.match(name) is not None


def _reduce(pairs):
    """Stack reduction of a (generator, exponent) stream; single linear pass."""
    stack = []
    for gen, exp in pairs:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + exp
            if merged == 0:
                stack.pop()
            else:
                stack[-1] = (gen, merged)
        else:
            stack.append((gen, exp))
    return tuple(stack)


class Word:
    """A freely reduced word; construction reduces any syllable/letter stream."""

    __slots__ = ("syllables",)

    def __init__(self, pairs=()):
        object.__setattr__(self, "syllables", _reduce(pairs))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def gen(cls, name, exp=1):
        return cls(((name, exp),))

    @classmethod
    def identity(cls):
        return cls()

    # -- queries ---------------------------------------------------------

    def is_identity(self):
        return not self.syllables

    def letters(self):
        """Yield single letters (generator, +1/-1), expanding powers."""
        for gen, exp in self.syllables:
            sign = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield (gen, sign)

    def letter_length(self):
        return sum(abs(e) for _, e in self.syllables)

    def support(self):
        return {g for g, _ in self.syllables}

    # -- arithmetic ------------------------------------------------------

    def inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.syllables + other.syllables)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        for _ in range(n):
            out = out * self
        return out

    # -- plumbing --------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def __len__(self):
        return len(self.syllables)

    def __repr__(self):
        return f"Word({word_to_text(self)!r})"

    def __str__(self):
        return word_to_text(self)


def free_reduce(pairs):
    """Freely reduce a stream of (generator, exponent) pairs into a Word."""
    return Word(pairs)


def multiply(u, v):
    return u * v


def invert(u):
    return u.inverse()


def conjugate(u, by):
    """Conjugation g.u.g^-1 (the convention x_i^{x_j} = x_j x_i x_j^-1)."""
    return by * u * by.inverse()


def commutator(u, v):
    """u v u^-1 v^-1; trivial iff u and v commute freely."""
    return u * v * u.inverse() * v.inverse()


def substitute(word, mapping):
    """Apply the homomorphism sending each generator g to mapping[g].

    The mapping must cover every generator occurring in the word; a missing
    generator raises UnknownGeneratorError.  Substitution distributes over
    multiplication and commutes with inversion.
    """
    parts = []
    for gen, exp in word.syllables:
        try:
            image = mapping[gen]
        except KeyError:
            raise UnknownGeneratorError(gen, "substitution map") from None
        parts.extend((image ** exp).syllables)
    return Word(parts)


def identity_mapping(generators):
    return {g: Word.gen(g) for g in generators}


def exponent_sum(word, gen):
    return sum(e for g, e in word.syllables if g == gen)


def total_degree(word, weights):
    """Weighted exponent sum; weights must cover the word's support."""
    total = 0
    for gen, exp in word.syllables:
        try:
            total += weights[gen] * exp
        except KeyError:
            raise UnknownGeneratorError(gen, "weight map") from None
    return total


def check_word_over(word, generators, context=""):
    """Raise UnknownGeneratorError unless the word uses only the given alphabet."""
    allowed = set(generators)
    for gen in word.support():
        if gen not in allowed:
            raise UnknownGeneratorError(gen, context)


# -- cyclic words ----------------------------------------------------------


def cyclic_core(word):
    """Split w = p * c * p^-1 with c cyclically reduced; returns (p, c)."""
    letters = list(word.letters())
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo][0] == letters[hi - 1][0] \
            and letters[lo][1] == -letters[hi - 1][1]:
        lo += 1
        hi -= 1
    return Word(letters[:lo]), Word(letters[lo:hi])


def cyclic_rotations(word):
    """Yield (rotation, prefix) with rotation = prefix^-1 * word * prefix."""
    letters = list(word.letters())
    for s in range(max(1, len(letters))):
        yield Word(letters[s:] + letters[:s]), Word(letters[:s])


def cyclically_equal(u, v):
    """True when u and v are equal as cyclic words (conjugate in the free group)."""
    _, cu = cyclic_core(u)
    _, cv = cyclic_core(v)
    if cu.letter_length() != cv.letter_length():
        return False
    return any(rot == cv for rot, _ in cyclic_rotations(cu))


def express_as_conjugate(target, source):
    """Find (c, sign) with c * source**sign * c^-1 freely equal to target.

    Only succeeds when target is a cyclic rotation of source or of its
    inverse (which is exactly conjugacy for these shapes); returns None
    otherwise.
    """
    pt, ct = cyclic_core(target)
    for sign in (1, -1):
        src = source if sign == 1 else source.inverse()
        ps, cs = cyclic_core(src)
        if cs.letter_length() != ct.letter_length():
            continue
        for rot, prefix in cyclic_rotations(cs):
            if rot == ct:
                # rot = prefix^-1 * cs * prefix and src = ps * cs * ps^-1
                conj = pt * prefix.inverse() * ps.inverse()
                return conj, sign
    return None


# -- text form --------------------------------------------------------------

Token = namedtuple("Token", ["kind", "value", "line", "column"])

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<name>[A-Za-z][A-Za-z0-9_]*)
      | (?P<int>-?\d+)
      | (?P<ellipsis>\.\.\.)
      | (?P<sym>[*^()<>|,=])
    """,
    re.VERBOSE,
)


def tokenize(text):
    """Lex word/presentation text into tokens; '#' starts a line comment."""
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "name":
            tokens.append(Token("name", value, line, col))
        elif kind == "int":
            tokens.append(Token("int", int(value), line, col))
        elif kind == "sym":
            tokens.append(Token(value, value, line, col))
        elif kind == "ellipsis":
            tokens.append(Token("...", value, line, col))
        # whitespace and comments are skipped, but update position info
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    tokens.append(Token("end", None, line, col))
    return tokens


class TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.value!r}",
                             tok.line, tok.column)
        return tok


_WORD_START = ("name", "(", "int")


def parse_word_tokens(stream):
    """word := atom+ with atom := (name | '1' | '(' word ')') ('^' int)?"""
    parts = []
    first = True
    while True:
        tok = stream.peek()
        if tok.kind not in _WORD_START:
            if first:
                raise ParseError(f"expected a word, found {tok.value!r}",
                                 tok.line, tok.column)
            break
        first = False
        tok = stream.next()
        if tok.kind == "name":
            atom = Word.gen(tok.value)
        elif tok.kind == "(":
            atom = parse_word_tokens(stream)
            stream.expect(")")
        else:  # integer literal: only 1 denotes the empty word
            if tok.value != 1:
                raise ParseError(f"unexpected integer {tok.value}",
                                 tok.line, tok.column)
            atom = Word()
        if stream.peek().kind == "^":
            stream.next()
            exp_tok = stream.expect("int")
            atom = atom ** exp_tok.value
        parts.extend(atom.syllables)
        if stream.peek().kind == "*":
            stream.next()
            tok = stream.peek()
            if tok.kind not in _WORD_START:
                raise ParseError(f"expected a word after '*', found {tok.value!r}",
                                 tok.line, tok.column)
    return Word(parts)


def parse_word(text):
    """Parse word syntax such as ``x1*x2^-2*(x1*x2)^3``; '*' is optional."""
    stream = TokenStream(tokenize(text))
    word = parse_word_tokens(stream)
    tok = stream.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input {tok.value!r}", tok.line, tok.column)
    return word


def word_to_text(word):
    if word.is_identity():
        return "1"
    chunks = []
    for gen, exp in word.syllables:
        name = gen if isinstance(gen, str) else str(gen)
        chunks.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(chunks)
