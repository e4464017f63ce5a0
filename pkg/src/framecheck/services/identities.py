"""Parser for identity strings such as ``"t^8 = 4*t^2 + t^0"``.

Grammar (whitespace ignored)::

    identity := side "=" side
    side     := ["+" | "-"] term (("+" | "-") term)*
    term     := INT ["*"] atom | atom | INT
    atom     := "t" ["^" (INT | "{" INT "}")]

A bare integer ``n`` is ``n·t^0``; ``t`` alone is ``t^1``.
"""

import re

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<op>[-+*^={}])|(?P<t>t))")


class IdentityParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if not match:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise IdentityParseError(f"Unexpected character {text[start]!r}", text, start)
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            pos = match.end()
        self.index = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self, value: str | None = None, kind: str | None = None) -> tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise IdentityParseError("Unexpected end of input", self.text, len(self.text))
        if (value is not None and token[1] != value) or (kind is not None and token[0] != kind):
            expected = value or kind
            raise IdentityParseError(
                f"Expected {expected!r}, got {token[1]!r}", self.text, token[2]
            )
        self.index += 1
        return token

    def at(self, value: str) -> bool:
        token = self.peek()
        return token is not None and token[1] == value

    def exponent(self) -> int:
        if not self.at("^"):
            return 1
        self.take("^")
        braced = self.at("{")
        if braced:
            self.take("{")
        sign = -1 if self.at("-") else 1
        if sign < 0:
            self.take("-")
        value = int(self.take(kind="int")[1])
        if braced:
            self.take("}")
        return sign * value

    def term(self, side: dict[int, int], sign: int) -> None:
        token = self.peek()
        if token is None:
            raise IdentityParseError("Expected a term", self.text, len(self.text))
        coeff = 1
        if token[0] == "int":
            coeff = int(self.take(kind="int")[1])
            if self.at("*"):
                self.take("*")
            elif not (self.peek() and self.peek()[0] == "t"):
                side[0] = side.get(0, 0) + sign * coeff
                return
        self.take(kind="t")
        e = self.exponent()
        side[e] = side.get(e, 0) + sign * coeff

    def side(self) -> dict[int, int]:
        terms: dict[int, int] = {}
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
        self.term(terms, sign)
        while self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
            self.term(terms, sign)
        return terms


def parse_identity(text: str) -> dict[int, int]:
    """``lhs − rhs`` as a sparse ``{exponent: coefficient}`` combination."""
    parser = _Parser(text)
    lhs = parser.side()
    parser.take("=")
    rhs = parser.side()
    leftover = parser.peek()
    if leftover is not None:
        raise IdentityParseError(f"Unexpected {leftover[1]!r}", text, leftover[2])
    combined = dict(lhs)
    for e, c in rhs.items():
        combined[e] = combined.get(e, 0) - c
    return {e: c for e, c in sorted(combined.items()) if c}
