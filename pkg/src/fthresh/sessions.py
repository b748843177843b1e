"""Session-file parsing: ring declaration, relations and named ideals.

Grammar (UTF-8, line oriented, `#` starts a comment, `/` also separates
directives so one-line sessions work):

    char <prime>
    vars <name>+
    order grevlex|lex          (optional, default grevlex)
    rel <poly>                 (repeatable; must precede ideal lines)
    ideal <name> = <poly> (, <poly>)*

Polynomials use `^` for powers and `*` for products, with `*` optional
between factors; integer coefficients are reduced mod p.  Variable
references are lexed by longest match against the declared names, so with
`vars x y` the text `xy` means x*y.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SessionSyntaxError
from .poly import GREVLEX, Ideal, LEX, Polynomial, RingContext, quotient_ring


@dataclass
class Session:
    ring: RingContext
    ideals: dict[str, Ideal] = field(default_factory=dict)

    def ideal(self, name: str) -> Ideal:
        try:
            return self.ideals[name]
        except KeyError:
            raise SessionSyntaxError(f"unknown ideal name {name!r}", 0, 0) from None


class _PolyLexer:
    """Tokenizer with longest-match variable resolution."""

    def __init__(self, text: str, variables: tuple[str, ...], line: int, offset: int):
        self.text = text
        self.pos = 0
        self.line = line
        self.offset = offset
        # Longer names first so e.g. declared `xy` shadows `x` `y`.
        self.variables = sorted(variables, key=len, reverse=True)

    def error(self, message: str) -> SessionSyntaxError:
        return SessionSyntaxError(message, self.line, self.offset + self.pos + 1)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return ""
        return self.text[self.pos]

    def take_int(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def take_variable(self) -> str:
        for name in self.variables:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return name
        raise self.error(f"unknown variable starting at {self.text[self.pos:self.pos + 8]!r}")


def parse_polynomial(text: str, ring: RingContext, line: int = 1,
                     offset: int = 0) -> Polynomial:
    """Parse one polynomial expression into canonical form."""
    lx = _PolyLexer(text, ring.variables, line, offset)
    if not lx.peek():
        raise lx.error("empty polynomial")
    result = ring.zero()
    sign = 1
    first = True
    while True:
        ch = lx.peek()
        if not ch:
            break
        if ch in "+-":
            lx.pos += 1
            sign = 1 if ch == "+" else -1
            first = False
            if not lx.peek():
                raise lx.error("dangling sign")
        elif not first:
            raise lx.error(f"expected '+' or '-', found {ch!r}")
        result = result + _parse_term(lx, ring, sign)
        sign = 1
        first = False
    return result


def _parse_term(lx: _PolyLexer, ring: RingContext, sign: int) -> Polynomial:
    term = ring.constant(sign)
    saw_factor = False
    while True:
        ch = lx.peek()
        if not ch or ch in "+-":
            break
        if ch == "*":
            if not saw_factor:
                raise lx.error("'*' without a preceding factor")
            lx.pos += 1
            if not lx.peek():
                raise lx.error("dangling '*'")
            continue
        if ch.isdigit():
            term = term.scale(lx.take_int())
        else:
            name = lx.take_variable()
            exponent = 1
            if lx.peek() == "^":
                lx.pos += 1
                if not lx.peek().isdigit():
                    raise lx.error("expected integer exponent after '^'")
                exponent = lx.take_int()
            term = term * (ring.variable(name) ** exponent)
        saw_factor = True
    if not saw_factor:
        raise lx.error("empty term")
    return term


def _directives(text: str):
    """Yield (line_number, column_offset, directive_text) with comments gone."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        for chunk in line.split("/"):
            if chunk.strip():
                yield lineno, col + len(chunk) - len(chunk.lstrip()), chunk.strip()
            col += len(chunk) + 1


def parse_session(text: str) -> Session:
    p: int | None = None
    variables: tuple[str, ...] | None = None
    order = GREVLEX
    order_seen = False
    relation_texts: list[tuple[int, int, str]] = []
    ideal_texts: list[tuple[int, int, str, str]] = []

    for lineno, col, directive in _directives(text):
        head, _, rest = directive.partition(" ")
        rest = rest.strip()
        if head == "char":
            if p is not None:
                raise SessionSyntaxError("duplicate 'char' directive", lineno, col + 1)
            try:
                p = int(rest)
            except ValueError:
                raise SessionSyntaxError(f"bad characteristic {rest!r}", lineno, col + 1) from None
            try:
                from .exactnum import validate_prime
                validate_prime(p)
            except ValueError as exc:
                raise SessionSyntaxError(str(exc), lineno, col + 1) from None
        elif head == "vars":
            if variables is not None:
                raise SessionSyntaxError("duplicate 'vars' directive", lineno, col + 1)
            names = tuple(rest.split())
            if not names:
                raise SessionSyntaxError("'vars' needs at least one name", lineno, col + 1)
            for name in names:
                if not (name[0].isalpha() or name[0] == "_") or not all(
                        c.isalnum() or c == "_" for c in name):
                    raise SessionSyntaxError(f"bad variable name {name!r}", lineno, col + 1)
            variables = names
        elif head == "order":
            if order_seen:
                raise SessionSyntaxError("duplicate 'order' directive", lineno, col + 1)
            if rest not in (GREVLEX, LEX):
                raise SessionSyntaxError(f"unknown order {rest!r}", lineno, col + 1)
            order = rest
            order_seen = True
        elif head == "rel":
            if ideal_texts:
                raise SessionSyntaxError("'rel' must precede 'ideal' lines", lineno, col + 1)
            relation_texts.append((lineno, col, rest))
        elif head == "ideal":
            name, eq, body = rest.partition("=")
            name = name.strip()
            if not eq or not name:
                raise SessionSyntaxError("expected 'ideal <name> = <polys>'", lineno, col + 1)
            ideal_texts.append((lineno, col, name, body))
        else:
            raise SessionSyntaxError(f"unknown directive {head!r}", lineno, col + 1)

    if p is None:
        raise SessionSyntaxError("missing 'char' directive", 0, 0)
    if variables is None:
        raise SessionSyntaxError("missing 'vars' directive", 0, 0)

    try:
        base = RingContext(p, variables, order)
    except ValueError as exc:
        raise SessionSyntaxError(str(exc), 0, 0) from None

    relations = []
    for lineno, col, body in relation_texts:
        rel = parse_polynomial(body, base, lineno, col)
        if rel.is_zero:
            raise SessionSyntaxError("zero relation", lineno, col + 1)
        relations.append(rel)
    ring = quotient_ring(base, relations) if relations else base

    session = Session(ring=ring)
    for lineno, col, name, body in ideal_texts:
        if name in session.ideals:
            raise SessionSyntaxError(f"duplicate ideal name {name!r}", lineno, col + 1)
        gens = [parse_polynomial(part, ring, lineno, col)
                for part in body.split(",")]
        session.ideals[name] = Ideal(ring, gens)
    return session


def render_session(session: Session) -> str:
    """Canonical text whose parse yields identical objects."""
    ring = session.ring
    lines = [f"char {ring.p}", "vars " + " ".join(ring.variables), f"order {ring.order}"]
    for rel in ring.relations:
        lines.append(f"rel {rel}")
    for name, ideal in session.ideals.items():
        gens = ", ".join(str(g) for g in ideal.generators) or "0"
        lines.append(f"ideal {name} = {gens}")
    return "\n".join(lines) + "\n"
