# fpres.py
"""
Finite presentations and the Magma-style text format (".fp" files).

Accepted grammar (whitespace and newlines are insignificant):

    [Name ":=" "Group"] "<" [gens] "|" [relators] ">" [";"]
    gens     := ident ("," ident)*
    relators := word ("," word)*
    word     := factor ("*" factor)*
    factor   := atom ["^" exponent]
    atom     := ident | "1" | "(" word ")" | "[" word "," word "]"
    exponent := ["-"] digits  |  "{" ["-"] digits "}"

so both "b^-1" and the typeset "b^{-1}" are read. The printer only ever
emits generator powers joined by "*", with "^-1" style exponents.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from config import get_settings
from errors import MalformedLetterError, PresentationParseError
from word import Word, commutator, concat

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, init=False)
class Presentation:
    names: Tuple[str, ...]
    relators: Tuple[Word, ...]

    def __init__(self, names: Sequence[str], relators: Sequence[Word] = ()):
        names = tuple(names)
        seen = set()
        for name in names:
            if not IDENT_RE.match(name):
                raise ValueError(f"bad generator name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            seen.add(name)
        n = len(names)
        kept = []
        for r in relators:
            r = r if isinstance(r, Word) else Word(r)
            if r.max_generator() > n:
                raise MalformedLetterError(f"relator {r} uses a letter outside 1..{n}")
            if r:
                kept.append(r)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "relators", tuple(kept))

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def nrelators(self) -> int:
        return len(self.relators)

    def word(self, text: str) -> Word:
        """Parse a single word over this presentation's generators."""
        parser = _Parser(text, get_settings().exponent_cap)
        parser.index = {name: i + 1 for i, name in enumerate(self.names)}
        w = parser.parse_word()
        parser.expect_end()
        return w

    def format_word(self, w: Word) -> str:
        return format_word(w, self.names)

    def fingerprint(self) -> str:
        return hashlib.sha256(print_presentation(self).encode("utf-8")).hexdigest()

    def __repr__(self) -> str:
        return f"Presentation({print_presentation(self)!r})"


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<assign>:=)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<int>\d+)"
    r"|(?P<sym>[<>|,*^(){}\[\];\-])"
)


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PresentationParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rfind("\n") + 1
        else:
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, exponent_cap: int):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.exponent_cap = exponent_cap
        self.index: Dict[str, int] = {}
        self.open_stack: List[_Token] = []

    # -- token helpers --------------------------------------------------------

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def _fail(self, msg: str, tok: Optional[_Token] = None, kind: str = "syntax"):
        tok = tok or self.tok
        raise PresentationParseError(msg, tok.line, tok.column, kind)

    def _is(self, text: str) -> bool:
        return self.tok.kind in ("sym", "assign") and self.tok.text == text

    def _take(self) -> _Token:
        tok = self.tok
        self.pos += 1
        return tok

    def _open(self, text: str) -> _Token:
        if not self._is(text):
            self._fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        tok = self._take()
        self.open_stack.append(tok)
        return tok

    def _close(self, text: str) -> None:
        opener = self.open_stack[-1]
        if not self._is(text):
            if self.tok.kind == "sym" and self.tok.text in (")", "]", "}", ">") or self.tok.kind == "eof":
                self._fail(
                    f"unbalanced {opener.text!r} opened here; found "
                    f"{self.tok.text or 'end of input'!r} instead of {text!r}",
                    opener,
                    "unbalanced-delimiter",
                )
            self._fail(f"expected {text!r}, found {self.tok.text!r}")
        self._take()
        self.open_stack.pop()

    def expect_end(self) -> None:
        if self.tok.kind != "eof":
            if self.tok.kind == "sym" and self.tok.text in (")", "]", "}", ">"):
                self._fail(f"unbalanced {self.tok.text!r}", kind="unbalanced-delimiter")
            self._fail(f"trailing input {self.tok.text!r}")

    # -- grammar --------------------------------------------------------------

    def parse_presentation(self) -> Presentation:
        if self.tok.kind == "ident" and self.tokens[self.pos + 1].kind == "assign":
            self._take()
            self._take()
            if not (self.tok.kind == "ident" and self.tok.text == "Group"):
                self._fail("expected 'Group' after ':='")
            self._take()
        self._open("<")
        names: List[str] = []
        if self.tok.kind == "ident":
            while True:
                tok = self._take()
                if tok.text in self.index:
                    self._fail(f"duplicate generator name {tok.text!r}", tok, "duplicate-generator")
                names.append(tok.text)
                self.index[tok.text] = len(names)
                if not self._is(","):
                    break
                self._take()
                if self.tok.kind != "ident":
                    self._fail("expected a generator name")
        if not self._is("|"):
            if self._is(">") or self.tok.kind == "eof":
                self._fail("expected '|' after the generator list")
            self._fail(f"expected a generator name or '|', found {self.tok.text!r}")
        self._take()
        relators: List[Word] = []
        if not self._is(">"):
            relators.append(self.parse_word())
            while self._is(","):
                self._take()
                relators.append(self.parse_word())
        self._close(">")
        if self._is(";"):
            self._take()
        self.expect_end()
        return Presentation(names, relators)

    def _bound(self, length: int, tok: _Token) -> None:
        # expanded words are materialized, so their length shares the exponent cap
        if length > self.exponent_cap:
            self._fail(f"word of length {length} exceeds the cap {self.exponent_cap}", tok, "malformed-exponent")

    def parse_word(self) -> Word:
        w = self.parse_factor()
        while self._is("*"):
            star = self._take()
            rhs = self.parse_factor()
            self._bound(len(w) + len(rhs), star)
            w = concat(w, rhs)
        return w

    def parse_factor(self) -> Word:
        base = self.parse_atom()
        if self._is("^"):
            self._take()
            start = self.tok
            e = self.parse_exponent()
            self._bound(len(base) * abs(e), start)
            base = base ** e
        return base

    def parse_atom(self) -> Word:
        tok = self.tok
        if tok.kind == "ident":
            self._take()
            g = self.index.get(tok.text)
            if g is None:
                self._fail(f"unknown generator {tok.text!r}", tok, "unknown-generator")
            return Word._trusted((g,))
        if tok.kind == "int" and tok.text == "1":
            self._take()
            return Word.identity()
        if self._is("("):
            self._open("(")
            w = self.parse_word()
            self._close(")")
            return w
        if self._is("["):
            self._open("[")
            u = self.parse_word()
            if not self._is(","):
                self._fail("expected ',' inside commutator brackets")
            self._take()
            v = self.parse_word()
            while self._is(","):
                # [u, v, w] = [[u, v], w]
                comma = self._take()
                self._bound(2 * (len(u) + len(v)), comma)
                u, v = commutator(u, v), self.parse_word()
            close = self.tok
            self._close("]")
            self._bound(2 * (len(u) + len(v)), close)
            return commutator(u, v)
        self._fail(f"expected a generator, found {tok.text or 'end of input'!r}")

    def parse_exponent(self) -> int:
        braced = self._is("{")
        if braced:
            self._open("{")
        start = self.tok
        sign = 1
        if self._is("-"):
            self._take()
            sign = -1
        if self.tok.kind != "int":
            self._fail(f"malformed exponent near {self.tok.text or 'end of input'!r}", start, "malformed-exponent")
        digits = self._take()
        e = sign * int(digits.text)
        if abs(e) > self.exponent_cap:
            self._fail(f"exponent {e} exceeds the cap {self.exponent_cap}", start, "malformed-exponent")
        if braced:
            self._close("}")
        return e


def parse_presentation(text: str) -> Presentation:
    return _Parser(text, get_settings().exponent_cap).parse_presentation()


def load_presentation(path) -> Presentation:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        column = exc.start - (data.rfind(b"\n", 0, exc.start) + 1) + 1
        raise PresentationParseError(
            f"invalid UTF-8 byte 0x{data[exc.start]:02x}", line, column
        ) from None
    return parse_presentation(text)


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    for g, e in w.syllables():
        parts.append(names[g - 1] if e == 1 else f"{names[g - 1]}^{e}")
    return "*".join(parts)


def print_presentation(P: Presentation) -> str:
    gens = ", ".join(P.names)
    rels = [format_word(r, P.names) for r in P.relators]
    head = "<" + (" " + gens if gens else "") + " |"
    one_line = head + (" " + ", ".join(rels) if rels else "") + " >"
    if len(one_line) <= 78 or not rels:
        return one_line
    return head + "\n    " + ",\n    ".join(rels) + " >"
