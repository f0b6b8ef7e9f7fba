"""Sparse multivariate polynomials over exact rationals in the variables
z, X1, X2, X3 (printed as z, E2, E4, E6) and Y_{u,v} (printed g[u,v]),
with the derivation D, the two weight gradings, exact division, evaluation
at the function tuple, and a text parser/printer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Union

from .forms import FunctionTuple, ak_polynomial, y_pairs
from .arith import bernoulli
from .series import TruncatedSeries

__all__ = [
    "SystemConfig",
    "Polynomial",
    "derive",
    "velocity",
    "evaluate",
    "parse",
    "format_polynomial",
    "ParseError",
]

Scalar = Union[int, Fraction]
Monomial = tuple[int, ...]  # exponents aligned with SystemConfig.names


@dataclass(frozen=True)
class SystemConfig:
    """Fixes the odd parameter m, hence the variable set and D."""

    m: int

    def __post_init__(self):
        if self.m < 1 or self.m % 2 == 0:
            raise ValueError("m must be a positive odd integer")

    @property
    def names(self) -> tuple[str, ...]:
        return _names(self.m)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return _name_index(self.m)[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} for m={self.m}") from None

    def phi_weights(self) -> tuple[int, ...]:
        """z -> 0, X1 -> 1, X2 -> 2, X3 -> 3, every Y -> 2m+2."""
        return (0, 1, 2, 3) + tuple(2 * self.m + 2 for _ in y_pairs(self.m))

    def phi2_weights(self) -> tuple[int, ...]:
        """z -> 0, X1 -> 1, X2 -> 2, X3 -> 3, Y_{u,v} -> 4(u-v)."""
        return (0, 1, 2, 3) + tuple(4 * (u - v) for u, v in y_pairs(self.m))


@lru_cache(maxsize=None)
def _names(m: int) -> tuple[str, ...]:
    return ("z", "E2", "E4", "E6") + tuple(f"g[{u},{v}]" for u, v in y_pairs(m))


@lru_cache(maxsize=None)
def _name_index(m: int) -> dict[str, int]:
    return {name: i for i, name in enumerate(_names(m))}


def monomial_key(mono: Monomial) -> tuple:
    """Graded-lex sort key (total degree first, then exponent tuple)."""
    return (sum(mono), mono)


class Polynomial:
    """Immutable sparse polynomial; term map from exponent tuple to Fraction."""

    __slots__ = ("config", "terms")

    def __init__(self, config: SystemConfig, terms: dict[Monomial, Fraction]):
        object.__setattr__(self, "config", config)
        object.__setattr__(
            self, "terms", {m: c for m, c in terms.items() if c != 0}
        )

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, config: SystemConfig) -> "Polynomial":
        return cls(config, {})

    @classmethod
    def constant(cls, c: Scalar, config: SystemConfig) -> "Polynomial":
        return cls(config, {(0,) * config.nvars: Fraction(c)})

    @classmethod
    def variable(cls, name: str, config: SystemConfig) -> "Polynomial":
        mono = [0] * config.nvars
        mono[config.index(name)] = 1
        return cls(config, {tuple(mono): Fraction(1)})

    @classmethod
    def from_monomial(
        cls, mono: Monomial, config: SystemConfig, coeff: Scalar = 1
    ) -> "Polynomial":
        return cls(config, {tuple(mono): Fraction(coeff)})

    # -- basic structure ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.config == other.config
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.config, frozenset(self.terms.items())))

    def _check(self, other: "Polynomial"):
        if self.config != other.config:
            raise ValueError("polynomials over different system configurations")

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.config)
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return Polynomial(self.config, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.config, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.config)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.config, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                terms[mono] = terms.get(mono, Fraction(0)) + c1 * c2
        return Polynomial(self.config, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        result = Polynomial.constant(1, self.config)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- degrees and weights ------------------------------------------

    def deg_x0(self) -> int:
        """Degree in z; -1 for the zero polynomial."""
        return max((m[0] for m in self.terms), default=-1)

    def deg_eg(self) -> int:
        """Total degree in all variables but z; -1 for zero."""
        return max((sum(m[1:]) for m in self.terms), default=-1)

    def total_deg(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def _weigh(self, weights: tuple[int, ...], mono: Monomial) -> int:
        return sum(w * e for w, e in zip(weights, mono))

    def phi(self) -> int:
        if self.is_zero():
            raise ValueError("phi of the zero polynomial is undefined")
        w = self.config.phi_weights()
        return max(self._weigh(w, m) for m in self.terms)

    def phi2(self) -> int:
        if self.is_zero():
            raise ValueError("phi2 of the zero polynomial is undefined")
        w = self.config.phi2_weights()
        return max(self._weigh(w, m) for m in self.terms)

    def weight_part(self, which: str = "min", weighting: str = "phi") -> "Polynomial":
        """Sub-polynomial of terms attaining the extreme weight."""
        if self.is_zero():
            raise ValueError("weight_part of the zero polynomial is undefined")
        if weighting not in ("phi", "phi2"):
            raise ValueError("weighting must be 'phi' or 'phi2'")
        if which not in ("min", "max"):
            raise ValueError("which must be 'min' or 'max'")
        w = self.config.phi_weights() if weighting == "phi" else self.config.phi2_weights()
        values = {m: self._weigh(w, m) for m in self.terms}
        extreme = min(values.values()) if which == "min" else max(values.values())
        return Polynomial(
            self.config,
            {m: c for m, c in self.terms.items() if values[m] == extreme},
        )

    # -- division -----------------------------------------------------

    def leading_term(self) -> tuple[Monomial, Fraction]:
        mono = max(self.terms, key=monomial_key)
        return mono, self.terms[mono]

    def exact_divide(self, q: "Polynomial") -> Optional["Polynomial"]:
        """self / q when the division is exact, else None."""
        self._check(q)
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Polynomial.zero(self.config)
        q_mono, q_coeff = q.leading_term()
        quotient: dict[Monomial, Fraction] = {}
        rem = self
        while not rem.is_zero():
            r_mono, r_coeff = rem.leading_term()
            diff = tuple(a - b for a, b in zip(r_mono, q_mono))
            if any(e < 0 for e in diff):
                return None
            c = r_coeff / q_coeff
            quotient[diff] = quotient.get(diff, Fraction(0)) + c
            rem = rem - q * Polynomial.from_monomial(diff, self.config, c)
        return Polynomial(self.config, quotient)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, m={self.config.m})"

    def __str__(self) -> str:
        return format_polynomial(self)


# -- the derivation D ---------------------------------------------------


def _ak_as_polynomial(k: int, cfg: SystemConfig) -> Polynomial:
    x2 = Polynomial.variable("E4", cfg)
    x3 = Polynomial.variable("E6", cfg)
    total = Polynomial.zero(cfg)
    for (a, b), c in ak_polynomial(k).coefficients.items():
        total = total + (x2**a * x3**b).scale(c)
    return total


@lru_cache(maxsize=None)
def _velocities(m: int) -> tuple[Polynomial, ...]:
    """D applied to each variable, in canonical variable order."""
    cfg = SystemConfig(m)
    z = Polynomial.variable("z", cfg)
    x1 = Polynomial.variable("E2", cfg)
    x2 = Polynomial.variable("E4", cfg)
    x3 = Polynomial.variable("E6", cfg)
    one = Polynomial.constant(1, cfg)
    vels = [
        z,
        (x1 * x1 - x2).scale(Fraction(1, 12)),
        (x1 * x2 - x3).scale(Fraction(1, 3)),
        (x1 * x3 - x2 * x2).scale(Fraction(1, 2)),
    ]
    for u, v in y_pairs(m):
        if u < v - 1:
            vels.append(Polynomial.variable(f"g[{u + 1},{v}]", cfg))
        else:
            # closing coefficient (B_{v+1}/(2v+2)) * (1 - E_{v+1}) with the
            # weight-(v+1) Eisenstein series written in the ring variables
            if v == 1:
                ehat = x1
            elif v == 3:
                ehat = x2
            elif v == 5:
                ehat = x3
            else:
                ehat = _ak_as_polynomial((v + 1) // 2, cfg)
            vels.append((one - ehat).scale(bernoulli(v + 1) / (2 * v + 2)))
    return tuple(vels)


def velocity(name: str, cfg: SystemConfig) -> Polynomial:
    """D applied to a single variable."""
    return _velocities(cfg.m)[cfg.index(name)]


def derive(p: Polynomial) -> Polynomial:
    """The derivation D = z d/dz + sum of coefficient polynomials times d/dx."""
    cfg = p.config
    vels = _velocities(cfg.m)
    result = Polynomial.zero(cfg)
    for mono, c in p.terms.items():
        for i, e in enumerate(mono):
            if e == 0:
                continue
            lowered = list(mono)
            lowered[i] -= 1
            partial = Polynomial.from_monomial(tuple(lowered), cfg, c * e)
            result = result + partial * vels[i]
    return result


# -- evaluation ----------------------------------------------------------


def evaluate(p: Polynomial, tup: FunctionTuple) -> TruncatedSeries:
    """Substitute the function tuple into p; exact truncated series."""
    if tup.m != p.config.m:
        raise ValueError("function tuple and polynomial have different m")
    precision = tup.precision
    pow_cache: dict[tuple[int, int], TruncatedSeries] = {}

    def power(i: int, e: int) -> TruncatedSeries:
        key = (i, e)
        if key not in pow_cache:
            pow_cache[key] = tup.series[i] ** e
        return pow_cache[key]

    total = TruncatedSeries.zero(precision)
    for mono, c in p.terms.items():
        term = TruncatedSeries.constant(c, precision)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


# -- printing ------------------------------------------------------------


def _fraction_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    """Canonical rendering; graded-lex descending, exact rationals."""
    if p.is_zero():
        return "0"
    names = p.config.names
    pieces: list[str] = []
    for idx, mono in enumerate(sorted(p.terms, key=monomial_key, reverse=True)):
        c = p.terms[mono]
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(names, mono)
            if e
        ]
        mag = abs(c)
        if not factors:
            body = _fraction_str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_fraction_str(mag)] + factors)
        if idx == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"{' + ' if c > 0 else ' - '}{body}")
    return "".join(pieces)


# -- parsing -------------------------------------------------------------


class ParseError(Exception):
    """Syntax or variable error in polynomial text, with position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class _Token:
    kind: str  # NUM, NAME, or a literal symbol
    text: str
    line: int
    col: int


_SYMBOLS = set("+-*^()[],/")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("NUM", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum()):
                j += 1
            tokens.append(_Token("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], cfg: SystemConfig):
        self.tokens = tokens
        self.pos = 0
        self.cfg = cfg

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return self.next()

    def parse_expression(self) -> Polynomial:
        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        elif self.peek().kind == "+":
            self.next()
        result = self.parse_term().scale(sign)
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            term = self.parse_term()
            result = result + term if op == "+" else result - term
        return result

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.peek().kind == "*":
            self.next()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Polynomial:
        base = self.parse_base()
        if self.peek().kind == "^":
            self.next()
            tok = self.expect("NUM")
            base = base ** int(tok.text)
        return base

    def parse_base(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "NUM":
            self.next()
            num = int(tok.text)
            if self.peek().kind == "/":
                self.next()
                den_tok = self.expect("NUM")
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError("zero denominator", den_tok.line, den_tok.col)
                return Polynomial.constant(Fraction(num, den), self.cfg)
            return Polynomial.constant(num, self.cfg)
        if tok.kind == "(":
            self.next()
            inner = self.parse_expression()
            self.expect(")")
            return inner
        if tok.kind == "NAME":
            self.next()
            return self.parse_variable(tok)
        raise ParseError(f"expected a number, variable or '(', found {tok.text or 'end of input'!r}", tok.line, tok.col)

    def parse_variable(self, tok: _Token) -> Polynomial:
        name = tok.text
        if name == "g":
            self.expect("[")
            u = int(self.expect("NUM").text)
            self.expect(",")
            v = int(self.expect("NUM").text)
            self.expect("]")
            if v % 2 == 0 or not 0 <= u < v or v > self.cfg.m:
                raise ParseError(
                    f"g[{u},{v}] is out of range for m={self.cfg.m}", tok.line, tok.col
                )
            return Polynomial.variable(f"g[{u},{v}]", self.cfg)
        if name in ("z", "E2", "E4", "E6"):
            return Polynomial.variable(name, self.cfg)
        raise ParseError(f"unknown variable {name!r}", tok.line, tok.col)


def parse(text: str, cfg: SystemConfig) -> Polynomial:
    """Parse polynomial text over the given configuration."""
    parser = _Parser(_tokenize(text), cfg)
    poly = parser.parse_expression()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.line, tok.col)
    return poly
