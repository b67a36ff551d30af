"""Text syntax for polynomials, rational functions, and places.

A polynomial is a sum of monomials `c*t^e`.  Coefficients can be written
as powers `g^j` of the field generator (the residue of the modulus
variable, packed value 2), as bit-strings `0b...` giving the packed
element, or as the digits 0 and 1.  A rational function is `num/den`
with exactly one top-level slash.  The infinite place is spelled `inf`.
"""

from __future__ import annotations

from .fields import GF
from .poly import Poly


class ParseError(ValueError):
    """Input rejection that names the offending token and its position."""

    def __init__(self, message: str, token: str, position: int):
        super().__init__(f"{message}: {token!r} at position {position}")
        self.token = token
        self.position = position


_OPS = "*^+/"


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("0b", i):
            j = i + 2
            while j < n and text[j] in "01":
                j += 1
            if j == i + 2:
                raise ParseError("malformed bit-string", text[i:j], i)
            tokens.append(("BITS", text[i:j], i))
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("NUM", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch in _OPS:
            tokens.append(("OP", ch, i))
            i += 1
            continue
        raise ParseError("unexpected character", ch, i)
    return tokens


class _Parser:
    def __init__(self, tokens, gf: GF, text_len: int):
        self.tokens = tokens
        self.gf = gf
        self.pos = 0
        self.text_len = text_len

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", "", self.text_len)
        self.pos += 1
        return tok

    def expect_exponent(self) -> int:
        tok = self.take()
        if tok[0] != "NUM":
            raise ParseError("exponent must be a decimal number", tok[1], tok[2])
        return int(tok[1])

    def factor(self) -> Poly:
        tok = self.take()
        kind, text, at = tok
        if kind == "BITS":
            value = int(text, 2)
            if value >= self.gf.order:
                raise ParseError("coefficient exceeds field size", text, at)
            return Poly.constant(self.gf, value)
        if kind == "NUM":
            value = int(text)
            if value >= self.gf.order:
                raise ParseError("coefficient exceeds field size", text, at)
            return Poly.constant(self.gf, value)
        if kind == "NAME" and text == "t":
            e = 1
            nxt = self.peek()
            if nxt is not None and nxt[:2] == ("OP", "^"):
                self.take()
                e = self.expect_exponent()
            return Poly.monomial(self.gf, 1, e)
        if kind == "NAME" and text == "g":
            if self.gf.k == 1:
                raise ParseError("generator syntax needs a field with k > 1", text, at)
            e = 1
            nxt = self.peek()
            if nxt is not None and nxt[:2] == ("OP", "^"):
                self.take()
                e = self.expect_exponent()
            return Poly.constant(self.gf, self.gf.pow(2, e))
        raise ParseError("expected a coefficient, t, or g", text, at)

    def monomial(self) -> Poly:
        acc = self.factor()
        while True:
            nxt = self.peek()
            if nxt is None or nxt[:2] != ("OP", "*"):
                return acc
            self.take()
            acc = acc * self.factor()

    def poly(self) -> Poly:
        acc = self.monomial()
        while True:
            nxt = self.peek()
            if nxt is None:
                return acc
            if nxt[:2] == ("OP", "+"):
                self.take()
                acc = acc + self.monomial()
                continue
            return acc


def parse_poly(text: str, gf: GF) -> Poly:
    tokens = tokenize(text)
    parser = _Parser(tokens, gf, len(text))
    p = parser.poly()
    left = parser.peek()
    if left is not None:
        raise ParseError("trailing input after polynomial", left[1], left[2])
    return p


def parse_ratfunc(text: str, gf: GF):
    from .ratfunc import RatFunc

    tokens = tokenize(text)
    slashes = [i for i, tok in enumerate(tokens) if tok[:2] == ("OP", "/")]
    if len(slashes) > 1:
        tok = tokens[slashes[1]]
        raise ParseError("more than one slash in rational function", tok[1], tok[2])
    if not slashes:
        parser = _Parser(tokens, gf, len(text))
        p = parser.poly()
        left = parser.peek()
        if left is not None:
            raise ParseError("trailing input after polynomial", left[1], left[2])
        return RatFunc.from_poly(p)
    cut = slashes[0]
    if cut == 0 or cut == len(tokens) - 1:
        tok = tokens[cut]
        raise ParseError("slash needs a numerator and a denominator", tok[1], tok[2])
    num_parser = _Parser(tokens[:cut], gf, tokens[cut][2])
    num = num_parser.poly()
    if num_parser.peek() is not None:
        left = num_parser.peek()
        raise ParseError("trailing input in numerator", left[1], left[2])
    den_parser = _Parser(tokens[cut + 1 :], gf, len(text))
    den = den_parser.poly()
    if den_parser.peek() is not None:
        left = den_parser.peek()
        raise ParseError("trailing input in denominator", left[1], left[2])
    if den.is_zero:
        tok = tokens[cut]
        raise ParseError("zero denominator", tok[1], tok[2])
    return RatFunc(num, den)


def parse_place(text: str, gf: GF):
    from .ratfunc import Place

    if text.strip() == "inf":
        return Place.infinite(gf)
    return Place.finite(parse_poly(text, gf))


def format_element(gf: GF, c: int) -> str:
    if gf.k == 1:
        return str(c)
    return format(c, "#b")


def format_poly(p: Poly) -> str:
    if p.is_zero:
        return "0"
    gf = p.gf
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeff(i)
        if not c:
            continue
        if i == 0:
            terms.append(format_element(gf, c))
        else:
            tpart = "t" if i == 1 else f"t^{i}"
            terms.append(tpart if c == 1 else f"{format_element(gf, c)}*{tpart}")
    return "+".join(terms)


def format_ratfunc(r) -> str:
    if r.den.is_one:
        return format_poly(r.num)
    return f"{format_poly(r.num)}/{format_poly(r.den)}"


def format_place(place) -> str:
    if place.is_infinite:
        return "inf"
    return format_poly(place.prime)
