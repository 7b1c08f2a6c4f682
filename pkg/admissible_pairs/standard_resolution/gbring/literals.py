# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Polynomial literal grammar.

	expr   := term (("+" | "-") term)*
	term   := factor ("*" factor)*
	factor := ("+" | "-") factor | power
	power  := atom ("^" INT)?
	atom   := INT ("/" INT)? | IDENT | "(" expr ")"

Identifiers match ``[A-Za-z][A-Za-z0-9_]*``; whitespace is insignificant.
"""

import logging
import re
from dataclasses import dataclass

from admissible_pairs.errors import PolynomialSyntaxError

# Configure logging
logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

_PUNCTUATION = {"+": "PLUS", "-": "MINUS", "*": "STAR", "^": "CARET", "/": "SLASH", "(": "LPAREN", ")": "RPAREN"}
_DISPLAY = {
	"PLUS": "'+'",
	"MINUS": "'-'",
	"STAR": "'*'",
	"CARET": "'^'",
	"SLASH": "'/'",
	"LPAREN": "'('",
	"RPAREN": "')'",
	"INT": "integer",
	"IDENT": "identifier",
	"EOF": "end of input",
}


@dataclass(frozen=True)
class Token:
	kind: str
	text: str
	line: int
	column: int


def tokenize(text):
	tokens = []
	line, column, i = 1, 1, 0
	while i < len(text):
		ch = text[i]
		if ch == "\n":
			line, column, i = line + 1, 1, i + 1
			continue
		if ch.isspace():
			column, i = column + 1, i + 1
			continue
		if ch.isdigit():
			j = i
			while j < len(text) and text[j].isdigit():
				j += 1
			tokens.append(Token("INT", text[i:j], line, column))
		elif ch.isascii() and ch.isalpha():
			j = i
			while j < len(text) and (text[j].isascii() and (text[j].isalnum() or text[j] == "_")):
				j += 1
			tokens.append(Token("IDENT", text[i:j], line, column))
		elif ch in _PUNCTUATION:
			j = i + 1
			tokens.append(Token(_PUNCTUATION[ch], ch, line, column))
		else:
			raise PolynomialSyntaxError(f"Unexpected character {ch!r}", line, column, expected=("integer", "identifier", "'('"))
		column += j - i
		i = j
	tokens.append(Token("EOF", "", line, column))
	return tokens


class _Parser:
	"""LL(1) recursive descent over the token stream, building ring elements directly."""

	def __init__(self, text, poly_ring):
		self.tokens = tokenize(text)
		self.position = 0
		self.ring = poly_ring
		self.names = {str(symbol): gen for symbol, gen in zip(poly_ring.symbols, poly_ring.gens)}

	@property
	def current(self):
		return self.tokens[self.position]

	def advance(self):
		token = self.current
		self.position += 1
		return token

	def fail(self, expected, message=None):
		token = self.current
		found = _DISPLAY["EOF"] if token.kind == "EOF" else repr(token.text)
		raise PolynomialSyntaxError(
			message or f"Unexpected {found}",
			token.line,
			token.column,
			expected=[_DISPLAY[kind] for kind in expected],
		)

	def expect(self, kind):
		if self.current.kind != kind:
			self.fail([kind])
		return self.advance()

	def parse(self):
		if self.current.kind == "EOF":
			self.fail(["INT", "IDENT", "LPAREN", "MINUS", "PLUS"], "Empty polynomial")
		value = self.expr()
		if self.current.kind != "EOF":
			self.fail(["PLUS", "MINUS", "STAR", "EOF"])
		return value

	def expr(self):
		value = self.term()
		while self.current.kind in ("PLUS", "MINUS"):
			sign = self.advance().kind
			rhs = self.term()
			value = value + rhs if sign == "PLUS" else value - rhs
		return value

	def term(self):
		value = self.factor()
		while self.current.kind == "STAR":
			self.advance()
			value = value * self.factor()
		return value

	def factor(self):
		if self.current.kind == "MINUS":
			self.advance()
			return -self.factor()
		if self.current.kind == "PLUS":
			self.advance()
			return self.factor()
		return self.power()

	def power(self):
		base = self.atom()
		if self.current.kind == "CARET":
			self.advance()
			exponent = self.expect("INT")
			return base ** int(exponent.text)
		return base

	def atom(self):
		token = self.current
		if token.kind == "INT":
			self.advance()
			numerator = int(token.text)
			if self.current.kind == "SLASH":
				self.advance()
				denominator = self.expect("INT")
				if int(denominator.text) == 0:
					raise PolynomialSyntaxError("Zero denominator", denominator.line, denominator.column)
				return self.ring.ground_new(self.ring.domain(numerator, int(denominator.text)))
			return self.ring.ground_new(self.ring.domain(numerator))
		if token.kind == "IDENT":
			self.advance()
			if token.text not in self.names:
				raise PolynomialSyntaxError(
					f"Unknown variable {token.text!r}", token.line, token.column, expected=sorted(self.names)
				)
			return self.names[token.text]
		if token.kind == "LPAREN":
			self.advance()
			value = self.expr()
			self.expect("RPAREN")
			return value
		self.fail(["INT", "IDENT", "LPAREN", "MINUS", "PLUS"])


def parse_polynomial(text, poly_ring):
	"""Parse ``text`` into an element of the sympy ``poly_ring``."""
	if not isinstance(text, str):
		raise PolynomialSyntaxError(f"Polynomial literal must be a string, got {type(text).__name__}")
	return _Parser(text, poly_ring).parse()


def _format_scalar(value):
	numerator, denominator = int(value.numerator), int(value.denominator)
	return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"


def _format_monomial(monomial, names):
	factors = []
	for name, exponent in zip(names, monomial):
		if exponent == 1:
			factors.append(name)
		elif exponent > 1:
			factors.append(f"{name}^{exponent}")
	return "*".join(factors)


def format_polynomial(poly):
	"""Canonical literal of ``poly``: terms in decreasing ring order."""
	if not poly:
		return "0"
	names = [str(symbol) for symbol in poly.ring.symbols]
	pieces = []
	for monomial, coefficient in poly.terms():
		negative = coefficient < 0
		magnitude = -coefficient if negative else coefficient
		body = _format_monomial(monomial, names)
		if not body:
			text = _format_scalar(magnitude)
		elif magnitude == 1:
			text = body
		else:
			text = f"{_format_scalar(magnitude)}*{body}"
		if not pieces:
			pieces.append(f"-{text}" if negative else text)
		else:
			pieces.append(f" - {text}" if negative else f" + {text}")
	return "".join(pieces)
