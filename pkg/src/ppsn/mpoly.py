"""Sparse multivariate polynomials over exact rationals.

Coefficients are `fractions.Fraction` (always in lowest terms, positive
denominator). A multi-index is a tuple of nonnegative ints of length n.
The fixed monomial order everywhere is graded: ascending total degree,
and within one degree descending lexicographic on the exponent tuple,
so for n=2 the basis starts 1, x1, x2, x1^2, x1*x2, x2^2, ...
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .errors import DimensionMismatchError, InputError, ParseError

MultiIndex = Tuple[int, ...]
Point = Tuple[Fraction, ...]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise InputError(f"cannot interpret {value!r} as an exact rational")


def as_point(coords: Sequence) -> Point:
    return tuple(as_fraction(c) for c in coords)


def monomial_key(alpha: MultiIndex):
    """Sort key realizing the fixed graded order."""
    return (sum(alpha), tuple(-e for e in alpha))


def monomials_of_degree(n: int, d: int) -> List[MultiIndex]:
    """All exponent tuples with |alpha| = d, in the fixed within-degree order."""
    if d < 0:
        return []
    out: List[MultiIndex] = []

    def rec(prefix: List[int], remaining: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], d, n)
    return out


class MonomialBasis:
    """Ordered basis of all n-variate monomials of total degree <= m."""

    def __init__(self, n: int, m: int):
        if n < 1:
            raise InputError("ambient dimension must be >= 1")
        self.n = n
        self.m = m
        mono: List[MultiIndex] = []
        for d in range(0, m + 1):
            mono.extend(monomials_of_degree(n, d))
        self.monomials: Tuple[MultiIndex, ...] = tuple(mono)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.monomials)

    def __getitem__(self, i: int) -> MultiIndex:
        return self.monomials[i]


def monomial_basis(n: int, m: int) -> MonomialBasis:
    basis = MonomialBasis(n, m)
    assert len(basis) == (math.comb(m + n, n) if m >= 0 else 0)
    return basis


class Polynomial:
    """Immutable sparse polynomial. `terms` maps multi-index -> nonzero Fraction."""

    __slots__ = ("n", "terms", "_degree", "_hash")

    def __init__(self, n: int, terms: Dict[MultiIndex, Fraction]):
        if n < 1:
            raise InputError("ambient dimension must be >= 1")
        clean: Dict[MultiIndex, Fraction] = {}
        for alpha, c in terms.items():
            c = as_fraction(c)
            if c == 0:
                continue
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != n or any(e < 0 for e in alpha):
                raise InputError(f"bad multi-index {alpha} for dimension {n}")
            clean[alpha] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_degree", max((sum(a) for a in clean), default=-1))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: as_fraction(c)})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        """The variable x_i, 1-based."""
        if not 1 <= i <= n:
            raise InputError(f"variable index {i} out of range 1..{n}")
        alpha = [0] * n
        alpha[i - 1] = 1
        return cls(n, {tuple(alpha): Fraction(1)})

    @classmethod
    def monomial(cls, alpha: MultiIndex, c=1) -> "Polynomial":
        return cls(len(alpha), {tuple(alpha): as_fraction(c)})

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree; -1 is the zero-polynomial sentinel."""
        return self._degree

    def is_zero(self) -> bool:
        return not self.terms

    def in_space(self, m: int) -> bool:
        """Membership in the space of polynomials of total degree <= m.

        Negative m denotes the zero space.
        """
        return self.is_zero() or self._degree <= m

    def coefficient(self, alpha: MultiIndex) -> Fraction:
        return self.terms.get(tuple(alpha), Fraction(0))

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.n, {a: c for a, c in self.terms.items() if sum(a) == d})

    def leading_form(self) -> "Polynomial":
        """Sum of all terms of top total degree."""
        if self.is_zero():
            raise InputError("zero polynomial has no leading form")
        return self.homogeneous_component(self._degree)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.n != other.n:
            raise DimensionMismatchError(
                f"polynomials in {self.n} and {other.n} variables"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, Fraction(0)) + c
        return Polynomial(self.n, terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {a: -c for a, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        terms: Dict[MultiIndex, Fraction] = {}
        for a1, c1 in self.terms.items():
            for a2, c2 in other.terms.items():
                a = tuple(e1 + e2 for e1, e2 in zip(a1, a2))
                terms[a] = terms.get(a, Fraction(0)) + c1 * c2
        return Polynomial(self.n, terms)

    def __rmul__(self, other) -> "Polynomial":
        return self.__mul__(other)

    def scale(self, c) -> "Polynomial":
        c = as_fraction(c)
        return Polynomial(self.n, {a: c * v for a, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.n, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- evaluation --------------------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        pt = as_point(point)
        if len(pt) != self.n:
            raise DimensionMismatchError(
                f"point of length {len(pt)} for a {self.n}-variate polynomial"
            )
        total = Fraction(0)
        for alpha, c in self.terms.items():
            v = c
            for x, e in zip(pt, alpha):
                if e:
                    v *= x**e
            total += v
        return total

    def __call__(self, point: Sequence) -> Fraction:
        return self.evaluate(point)

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces: List[str] = []
        for alpha in sorted(self.terms, key=monomial_key):
            c = self.terms[alpha]
            factors = [
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(alpha)
                if e > 0
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self.n}, {self})"


def evaluate(p: Polynomial, point: Sequence) -> Fraction:
    return p.evaluate(point)


def leading_form(p: Polynomial) -> Polynomial:
    return p.leading_form()


# -- parsing ---------------------------------------------------------------
#
# Grammar: terms joined by + / -; term = [rational][*]factor*... ;
# factor = x<k>[^e] with 1-based k; rational = int[/posint];
# whitespace ignored; '#' starts a comment running to end of line.


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: List[Tuple[str, str, int]] = []
        self._scan()
        self.i = 0

    def _scan(self):
        text, i = self.text, 0
        while i < len(text):
            ch = text[i]
            if ch == "#":
                while i < len(text) and text[i] != "\n":
                    i += 1
                continue
            if ch.isspace():
                i += 1
                continue
            if ch in "+-*/^":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", text[i:j], i))
                i = j
                continue
            if ch == "x":
                j = i + 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j == i + 1:
                    raise ParseError("variable must be x<k> with a numeric index", i)
                self.tokens.append(("var", text[i + 1 : j], i))
                i = j
                continue
            raise ParseError(f"unexpected character {ch!r}", i)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok


def parse_polynomial(text: str, n: int) -> Polynomial:
    """Parse an expression in the fixed grammar into a canonical polynomial."""
    tok = _Tokenizer(text)
    result = Polynomial.zero(n)
    first = True
    while True:
        kind, _, pos = tok.peek()
        if kind is None:
            if first:
                raise ParseError("empty expression", pos)
            break
        sign = 1
        if kind in ("+", "-"):
            if first and kind == "+":
                raise ParseError("expression may not start with '+'", pos)
            tok.next()
            if kind == "-":
                sign = -1
        elif not first:
            raise ParseError("expected '+' or '-' between terms", pos)
        result = result + _parse_term(tok, n).scale(sign)
        first = False
    return result


def _parse_term(tok: _Tokenizer, n: int) -> Polynomial:
    coeff = Fraction(1)
    factors: Dict[int, int] = {}
    expect_atom = True
    saw_atom = False
    while True:
        kind, value, pos = tok.peek()
        if kind == "int":
            tok.next()
            num = int(value)
            k2, v2, _ = tok.peek()
            if k2 == "/":
                tok.next()
                k3, v3, p3 = tok.next()
                if k3 != "int":
                    raise ParseError("expected a positive integer denominator", p3)
                den = int(v3)
                if den == 0:
                    raise ParseError("zero denominator", p3)
                coeff *= Fraction(num, den)
            else:
                coeff *= num
            saw_atom = True
        elif kind == "var":
            tok.next()
            idx = int(value)
            if not 1 <= idx <= n:
                raise ParseError(f"variable index {idx} out of range 1..{n}", pos)
            exp = 1
            k2, _, _ = tok.peek()
            if k2 == "^":
                tok.next()
                k3, v3, p3 = tok.next()
                if k3 != "int":
                    raise ParseError("expected an integer exponent", p3)
                exp = int(v3)
            factors[idx] = factors.get(idx, 0) + exp
            saw_atom = True
        else:
            if expect_atom and not saw_atom:
                raise ParseError("expected a coefficient or a variable", pos)
            break
        k2, _, _ = tok.peek()
        if k2 == "*":
            tok.next()
            expect_atom = True
        else:
            expect_atom = False
            if k2 not in ("int", "var"):
                break
    alpha = [0] * n
    for idx, exp in factors.items():
        alpha[idx - 1] = exp
    return Polynomial(n, {tuple(alpha): coeff})
