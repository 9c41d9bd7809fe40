"""Formulas and sequents of the Lambek calculus, with a small text syntax.

Connectives print as ``/``, ``\\`` and ``*``.  The product binds tightest,
``/`` associates to the left, ``\\`` to the right, and the two slashes may
not be mixed at one level without parentheses::

    >>> print(parse_formula("s/(np\\\\s)"))
    s/(np\\s)
    >>> parse_sequent("np, np\\\\s |- s").antecedent
    (Atom('np'), Under(Atom('np'), Atom('s')))
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union

__all__ = [
    "Atom",
    "Over",
    "Under",
    "Prod",
    "Formula",
    "Polarity",
    "Sequent",
    "FormulaSyntaxError",
    "parse_formula",
    "parse_sequent",
    "atom_multiset",
    "balanced",
    "size",
]


class FormulaSyntaxError(ValueError):
    """Malformed formula or sequent text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not _ATOM_RE.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True)
class Over:
    """``left/right``: looks for ``right`` on its right to yield ``left``."""

    left: "Formula"
    right: "Formula"

    def __str__(self):
        return _show(self)

    def __repr__(self):
        return f"Over({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class Under:
    """``left\\right``: looks for ``left`` on its left to yield ``right``."""

    left: "Formula"
    right: "Formula"

    def __str__(self):
        return _show(self)

    def __repr__(self):
        return f"Under({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class Prod:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return _show(self)

    def __repr__(self):
        return f"Prod({self.left!r}, {self.right!r})"


Formula = Union[Atom, Over, Under, Prod]


class Polarity(Enum):
    POSITIVE = "suc"
    NEGATIVE = "ant"

    def __invert__(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE

    @property
    def sign(self) -> str:
        return "+" if self is Polarity.POSITIVE else "-"


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple
    succedent: Formula

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple(self.antecedent))

    def __str__(self):
        left = ", ".join(str(f) for f in self.antecedent)
        return f"{left} |- {self.succedent}" if left else f"|- {self.succedent}"


def size(formula: Formula) -> int:
    if isinstance(formula, Atom):
        return 1
    return 1 + size(formula.left) + size(formula.right)


# -- printing ---------------------------------------------------------------

def _show(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Prod):
        left = _show(f.left) if isinstance(f.left, (Atom, Prod)) else f"({_show(f.left)})"
        right = _show(f.right) if isinstance(f.right, Atom) else f"({_show(f.right)})"
        return f"{left}*{right}"
    if isinstance(f, Over):
        left = _show(f.left) if isinstance(f.left, (Atom, Prod, Over)) else f"({_show(f.left)})"
        right = _show(f.right) if isinstance(f.right, (Atom, Prod)) else f"({_show(f.right)})"
        return f"{left}/{right}"
    left = _show(f.left) if isinstance(f.left, (Atom, Prod)) else f"({_show(f.left)})"
    right = _show(f.right) if isinstance(f.right, (Atom, Prod, Under)) else f"({_show(f.right)})"
    return f"{left}\\{right}"


# -- parsing ----------------------------------------------------------------

_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*")
_TOKEN_RE = re.compile(r"\s*(?:(?P<atom>[a-z][a-z0-9_]*)|(?P<turnstile>\|-)|(?P<sym>[()/\\*,]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:]
            if not rest.strip():
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        raise FormulaSyntaxError(message, self.peek[2])

    def expect(self, value: str):
        if self.peek[1] != value or self.peek[0] == "atom":
            self.fail(f"expected {value!r}, found {self.peek[1] or 'end of input'!r}")
        self.advance()

    def primary(self) -> Formula:
        kind, value, _ = self.peek
        if kind == "atom":
            self.advance()
            return Atom(value)
        if value == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        self.fail(f"expected atom or '(', found {value or 'end of input'!r}")

    def prod(self) -> Formula:
        f = self.primary()
        while self.peek[1] == "*":
            self.advance()
            f = Prod(f, self.primary())
        return f

    def formula(self, under_only: bool = False) -> Formula:
        f = self.prod()
        if self.peek[1] == "/":
            if under_only:
                self.fail("cannot mix '/' and '\\' without parentheses")
            while self.peek[1] == "/":
                self.advance()
                f = Over(f, self.prod())
            if self.peek[1] == "\\":
                self.fail("cannot mix '/' and '\\' without parentheses")
        elif self.peek[1] == "\\":
            self.advance()
            f = Under(f, self.formula(under_only=True))
        return f


def parse_formula(text: str) -> Formula:
    if not text.strip():
        raise FormulaSyntaxError("empty formula", 0)
    p = _Parser(text)
    f = p.formula()
    if p.peek[0] != "end":
        p.fail(f"unexpected {p.peek[1]!r}")
    return f


def parse_sequent(text: str) -> Sequent:
    """Parse ``A1, ..., An |- C``; the antecedent may be empty."""
    p = _Parser(text)
    turnstiles = [t for t in p.tokens if t[0] == "turnstile"]
    if not turnstiles:
        raise FormulaSyntaxError("missing turnstile '|-'", len(text))
    if len(turnstiles) > 1:
        raise FormulaSyntaxError("more than one turnstile", turnstiles[1][2])
    antecedent = []
    if p.peek[0] != "turnstile":
        antecedent.append(p.formula())
        while p.peek[1] == ",":
            p.advance()
            antecedent.append(p.formula())
    if p.peek[0] != "turnstile":
        p.fail(f"expected ',' or '|-', found {p.peek[1] or 'end of input'!r}")
    p.advance()
    if p.peek[0] == "end":
        p.fail("empty succedent")
    succedent = p.formula()
    if p.peek[0] != "end":
        p.fail(f"unexpected {p.peek[1]!r}")
    return Sequent(tuple(antecedent), succedent)


# -- polarity bookkeeping ----------------------------------------------------

def polarized_atoms(f: Formula, pol: Polarity) -> Iterator[tuple[str, Polarity]]:
    """Atoms of ``f`` with the polarity they get when ``f`` is unfolded at ``pol``.

    The argument of an implication flips polarity; everything else keeps it.
    """
    if isinstance(f, Atom):
        yield f.name, pol
    elif isinstance(f, Prod):
        yield from polarized_atoms(f.left, pol)
        yield from polarized_atoms(f.right, pol)
    elif isinstance(f, Over):
        yield from polarized_atoms(f.left, pol)
        yield from polarized_atoms(f.right, ~pol)
    else:
        yield from polarized_atoms(f.left, ~pol)
        yield from polarized_atoms(f.right, pol)


def atom_multiset(sequent: Sequent) -> dict[str, tuple[int, int]]:
    """Map each atom name to its (negative, positive) occurrence counts."""
    counts: Counter = Counter()
    for f in sequent.antecedent:
        counts.update(polarized_atoms(f, Polarity.NEGATIVE))
    counts.update(polarized_atoms(sequent.succedent, Polarity.POSITIVE))
    names = dict.fromkeys(name for name, _ in counts)
    return {
        name: (counts[name, Polarity.NEGATIVE], counts[name, Polarity.POSITIVE])
        for name in names
    }


def balanced(multiset: dict[str, tuple[int, int]]) -> bool:
    return all(neg == pos for neg, pos in multiset.values())
