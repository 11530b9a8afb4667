"""Words over machine states with formal inverses.

Syntax accepted by ``GroupWord.parse``: whitespace-separated symbols, with
``x'`` or ``x^-1`` for inverses, integer exponents ``x^3``, conjugation
``x^y`` (meaning y^-1 x y), commutators ``[x,y]`` (meaning x^-1 y^-1 x y) and
parenthesized subwords. Juxtaposition without whitespace is a single symbol,
not a product: symbols may be several characters long (``s1``, ``3z+1``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FormatError

_SYMBOL_CHARS = set(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_+")


@dataclass(frozen=True)
class GroupWord:
    letters: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        parser = _Parser(text)
        word = parser.word(closers="")
        parser.skip_space()
        if not parser.done():
            raise FormatError("unexpected %r at position %d"
                              % (parser.peek(), parser.pos))
        return word

    @classmethod
    def single(cls, symbol: str, exp: int = 1) -> "GroupWord":
        if exp not in (1, -1):
            raise FormatError("letter exponent must be +1 or -1")
        return cls(((symbol, exp),))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((s, -e) for s, e in reversed(self.letters)))

    def power(self, k: int) -> "GroupWord":
        if k < 0:
            return self.inverse().power(-k)
        return GroupWord(self.letters * k)

    def free_reduce(self) -> "GroupWord":
        stack = []
        for s, e in self.letters:
            if stack and stack[-1][0] == s and stack[-1][1] == -e:
                stack.pop()
            else:
                stack.append((s, e))
        return GroupWord(tuple(stack))

    def symbols(self):
        return {s for s, _ in self.letters}

    def render(self) -> str:
        parts = []
        for s, e in self.letters:
            parts.append(s if e == 1 else s + "^-1")
        return " ".join(parts)

    def __str__(self):
        return self.render()


def commutator(x: GroupWord, y: GroupWord) -> GroupWord:
    return x.inverse() * y.inverse() * x * y


def conjugate(x: GroupWord, y: GroupWord) -> GroupWord:
    """x conjugated by y: y^-1 x y."""
    return y.inverse() * x * y


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def done(self):
        return self.pos >= len(self.text)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_space(self):
        while not self.done() and self.text[self.pos].isspace():
            self.pos += 1

    def word(self, closers: str) -> GroupWord:
        result = GroupWord()
        while True:
            self.skip_space()
            if self.done() or self.peek() in closers:
                return result
            result = result * self.term()

    def term(self) -> GroupWord:
        value = self.atom()
        while True:
            c = self.peek()
            if c == "'":
                self.pos += 1
                value = value.inverse()
            elif c == "^":
                self.pos += 1
                value = self.exponent_or_conjugate(value)
            else:
                return value

    def exponent_or_conjugate(self, value: GroupWord) -> GroupWord:
        c = self.peek()
        if c == "-" or c.isdigit():
            sign = 1
            if c == "-":
                sign = -1
                self.pos += 1
            start = self.pos
            while not self.done() and self.peek().isdigit():
                self.pos += 1
            if start == self.pos:
                raise FormatError("expected digits after '^-'")
            return value.power(sign * int(self.text[start:self.pos]))
        return conjugate(value, self.atom())

    def atom(self) -> GroupWord:
        self.skip_space()
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.word(closers=")")
            self.expect(")")
            return inner
        if c == "[":
            self.pos += 1
            left = self.word(closers=",")
            self.expect(",")
            right = self.word(closers="]")
            self.expect("]")
            return commutator(left, right)
        if c in _SYMBOL_CHARS:
            start = self.pos
            while not self.done() and self.peek() in _SYMBOL_CHARS:
                self.pos += 1
            return GroupWord.single(self.text[start:self.pos])
        raise FormatError("unexpected %r at position %d" % (c, self.pos))

    def expect(self, c):
        if self.peek() != c:
            raise FormatError("expected %r at position %d" % (c, self.pos))
        self.pos += 1


@dataclass(frozen=True)
class Endomorphism:
    """Substitution rules symbol -> word; unlisted symbols map to themselves."""

    rules: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, table) -> "Endomorphism":
        """Build from {symbol: word-text}."""
        return cls({s: GroupWord.parse(w) for s, w in table.items()})

    def substitute(self, w: GroupWord) -> GroupWord:
        result = GroupWord()
        for s, e in w:
            image = self.rules.get(s, GroupWord.single(s))
            if e == -1:
                image = image.inverse()
            result = result * image
        return result

    def iterate(self, w: GroupWord, k: int) -> GroupWord:
        for _ in range(k):
            w = self.substitute(w)
        return w


def relator_family(base, endo: Endomorphism, n_max: int):
    """All sigma^k(r) for r in base and 0 <= k <= n_max, freely reduced."""
    if n_max < 0:
        raise FormatError("n_max must be >= 0")
    if isinstance(base, GroupWord):
        base = [base]
    family = []
    current = list(base)
    for _ in range(n_max + 1):
        family.extend(r.free_reduce() for r in current)
        current = [endo.substitute(r) for r in current]
    return family
