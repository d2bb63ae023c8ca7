"""Sparse multivariate polynomials with exact rational or Gaussian-rational coefficients.

A :class:`Ring` is an ordered tuple of generator names.  Polynomials store a
mapping from exponent tuples to nonzero coefficients.  Coefficients are
:class:`fractions.Fraction` values, or :class:`Gaussian` values when an
imaginary part is present; a Gaussian with zero imaginary part is always
collapsed back to a plain ``Fraction`` so equality stays structural.

Monomials are ordered graded-lexicographically (total degree first, then
lexicographic with the first generator largest).  That order drives printing
and division by a single polynomial.

Example:
    >>> R = Ring(("u1", "u2"))
    >>> f = R.parse("u2 + u1")
    >>> str(f)
    'u1 + u2'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

Monomial = Tuple[int, ...]


class RingMismatchError(ValueError):
    """Raised when values from different ambient rings are combined."""


class ParseError(ValueError):
    """Malformed expression text.  Carries the offending token and its offset."""

    def __init__(self, message: str, token: str, position: int):
        super().__init__(f"{message}: {token!r} at position {position}")
        self.token = token
        self.position = position


class Gaussian:
    """Exact complex rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, Gaussian):
            return Gaussian(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Gaussian):
            return Gaussian(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Gaussian):
            return Gaussian(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re / other, self.im / other)
        if isinstance(other, Gaussian):
            n = other.re * other.re + other.im * other.im
            return self * Gaussian(other.re / n, -other.im / n)
        return NotImplemented

    def __rtruediv__(self, other):
        return Gaussian(other) / self

    def conjugate(self):
        return Gaussian(self.re, -self.im)


Scalar = Union[Fraction, Gaussian]
I_UNIT = Gaussian(0, 1)


def normalize_scalar(c) -> Scalar:
    """Coerce ``c`` to a canonical exact scalar (Fraction unless truly complex)."""
    if isinstance(c, Gaussian):
        if c.im == 0:
            return c.re
        return c
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, complex):
        raise TypeError("floating complex numbers are not exact scalars")
    raise TypeError(f"not an exact scalar: {c!r}")


def _grlex_key(m: Monomial):
    return (sum(m), m)


def monomials_of_degree(n: int, d: int) -> List[Monomial]:
    """All exponent tuples of total degree ``d`` in ``n`` variables, descending lex."""
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class Ring:
    """Ambient polynomial ring: an ordered list of generator names over Q (or Q(i))."""

    names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")
        for name in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"invalid generator name {name!r}")

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a generator of {self.names}") from None

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = normalize_scalar(c)
        if not c:
            return self.zero
        return Polynomial(self, {(0,) * self.n: c})

    def gen(self, i: Union[int, str]) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        if not 0 <= i < self.n:
            raise IndexError(f"generator index {i} out of range for {self.n} generators")
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.gen(i) for i in range(self.n))

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        if len(exps) != self.n:
            raise ValueError("exponent tuple length does not match the ring")
        c = normalize_scalar(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def parse(self, text: str, gaussian: bool = False) -> "Polynomial":
        return parse_poly(text, self, gaussian=gaussian)


class Polynomial:
    """Immutable sparse polynomial over a :class:`Ring`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Dict[Monomial, Scalar]):
        self.ring = ring
        self.terms = terms

    @classmethod
    def from_terms(cls, ring: Ring, terms) -> "Polynomial":
        out: Dict[Monomial, Scalar] = {}
        for m, c in dict(terms).items():
            m = tuple(m)
            if len(m) != ring.n or any(e < 0 for e in m):
                raise ValueError(f"bad exponent tuple {m} for ring {ring.names}")
            c = normalize_scalar(c)
            if c:
                out[m] = c
        return cls(ring, out)

    # -- coercion -----------------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring {other.ring.names} != {self.ring.names}")
            return other
        return self.ring.const(other)

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction, Gaussian)):
            return NotImplemented
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for m, c in b.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = normalize_scalar(s + c)
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction, Gaussian)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            other = self._coerce(other)
            out: Dict[Monomial, Scalar] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    s = out.get(m)
                    out[m] = c1 * c2 if s is None else s + c1 * c2
            return Polynomial(self.ring, {m: normalize_scalar(c) for m, c in out.items()
                                          if c})
        if isinstance(other, (int, Fraction, Gaussian)):
            c = normalize_scalar(other)
            if not c:
                return self.ring.zero
            return Polynomial(self.ring, {m: normalize_scalar(v * c)
                                          for m, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Gaussian)):
            c = normalize_scalar(other)
            if not c:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / c if isinstance(c, Gaussian) else Fraction(1) / c)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison ---------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Gaussian)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"Polynomial({self.ring.names}, {str(self)!r})"

    def __str__(self):
        return print_canonical(self)

    # -- structure ----------------------------------------------------------------

    def monomials(self) -> List[Monomial]:
        """Monomials in descending graded-lex order."""
        return sorted(self.terms, key=_grlex_key, reverse=True)

    def coefficient(self, m: Monomial) -> Scalar:
        return self.terms.get(tuple(m), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Scalar:
        return self.terms.get((0,) * self.ring.n, Fraction(0))

    def is_real(self) -> bool:
        return all(not isinstance(c, Gaussian) for c in self.terms.values())

    def variables(self) -> List[int]:
        """Indices of generators that occur."""
        return [i for i in range(self.ring.n) if any(m[i] for m in self.terms)]

    def degree_in(self, indices: Iterable[int]) -> int:
        idx = list(indices)
        return max((sum(m[i] for i in idx) for m in self.terms), default=-1)

    def leading_term(self) -> Tuple[Monomial, Scalar]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def conjugate(self) -> "Polynomial":
        return Polynomial(self.ring, {m: normalize_scalar(c.conjugate()) if isinstance(c, Gaussian)
                                      else c for m, c in self.terms.items()})

    def real_part(self) -> "Polynomial":
        return Polynomial.from_terms(self.ring, {
            m: (c.re if isinstance(c, Gaussian) else c) for m, c in self.terms.items()})

    def imag_part(self) -> "Polynomial":
        return Polynomial.from_terms(self.ring, {
            m: (c.im if isinstance(c, Gaussian) else 0) for m, c in self.terms.items()})

    # -- calculus -----------------------------------------------------------------

    def diff(self, i: int) -> "Polynomial":
        return partial_derivative(self, i)

    def homogeneous_components(self) -> List[Tuple[int, "Polynomial"]]:
        return homogeneous_components(self)

    def divide_exact(self, g: "Polynomial") -> Optional["Polynomial"]:
        return divide_exact(self, g)

    def evaluate(self, values: Sequence) -> Scalar:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t = t * (v ** e)
            total = total + t
        return normalize_scalar(total)


# -- operations ---------------------------------------------------------------------


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    """Formal partial derivative with respect to generator ``i``."""
    if not 0 <= i < f.ring.n:
        raise IndexError(f"generator index {i} out of range for {f.ring.n} generators")
    out = {}
    for m, c in f.terms.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1:]] = normalize_scalar(c * e)
    return Polynomial(f.ring, out)


def homogeneous_components(f: Polynomial) -> List[Tuple[int, Polynomial]]:
    """Split ``f`` into homogeneous pieces, ascending total degree."""
    buckets: Dict[int, Dict[Monomial, Scalar]] = {}
    for m, c in f.terms.items():
        buckets.setdefault(sum(m), {})[m] = c
    return [(d, Polynomial(f.ring, buckets[d])) for d in sorted(buckets)]


def divmod_poly(f: Polynomial, g: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Division of ``f`` by the single polynomial ``g`` under graded-lex order.

    Returns ``(q, r)`` with ``f = q*g + r`` and no term of ``r`` divisible by the
    leading monomial of ``g``.  A single polynomial is a Groebner basis of the
    ideal it generates, so ``r`` is the normal form of ``f`` modulo ``(g)``.
    """
    g = f._coerce(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = g.leading_term()
    ring = f.ring
    p = dict(f.terms)
    q: Dict[Monomial, Scalar] = {}
    r: Dict[Monomial, Scalar] = {}
    g_terms = list(g.terms.items())
    while p:
        m = max(p, key=_grlex_key)
        c = p[m]
        if all(a >= b for a, b in zip(m, lm)):
            shift = tuple(a - b for a, b in zip(m, lm))
            factor = normalize_scalar(c / lc)
            q[shift] = normalize_scalar(q.get(shift, 0) + factor)
            for gm, gc in g_terms:
                mm = tuple(a + b for a, b in zip(gm, shift))
                v = normalize_scalar(p.get(mm, 0) - factor * gc)
                if v:
                    p[mm] = v
                else:
                    p.pop(mm, None)
        else:
            r[m] = c
            del p[m]
    return (Polynomial(ring, {m: c for m, c in q.items() if c}), Polynomial(ring, r))


def divide_exact(f: Polynomial, g: Polynomial) -> Optional[Polynomial]:
    """Return ``q`` with ``f == q*g`` if ``g`` divides ``f``, else ``None``."""
    q, r = divmod_poly(f, g)
    return q if r.is_zero() else None


# -- printing -----------------------------------------------------------------------


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(ring: Ring, m: Monomial) -> str:
    parts = []
    for name, e in zip(ring.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _signed_coefficient(c: Scalar) -> Tuple[int, str]:
    """(sign, magnitude text) for a coefficient; magnitude '1' means unit."""
    if isinstance(c, Gaussian):
        if c.re == 0:
            sign = -1 if c.im < 0 else 1
            mag = abs(c.im)
            return sign, "i" if mag == 1 else f"{_format_rational(mag)}*i"
        im_sign = "-" if c.im < 0 else "+"
        im_mag = abs(c.im)
        im_txt = "i" if im_mag == 1 else f"{_format_rational(im_mag)}*i"
        return 1, f"({_format_rational(c.re)} {im_sign} {im_txt})"
    sign = -1 if c < 0 else 1
    return sign, _format_rational(abs(c))


def print_canonical(f: Polynomial) -> str:
    """Deterministic text form; terms in descending graded-lex order."""
    if not f.terms:
        return "0"
    pieces = []
    for k, m in enumerate(f.monomials()):
        sign, mag = _signed_coefficient(f.terms[m])
        mono = _format_monomial(f.ring, m)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            pieces.append(("-" if sign < 0 else "") + body)
        else:
            pieces.append((" - " if sign < 0 else " + ") + body)
    return "".join(pieces)


# -- parsing ------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:  # only trailing whitespace left
            break
        if mt.group(1) is not None:
            tokens.append(("int", mt.group(1), mt.start(1)))
        elif mt.group(2) is not None:
            tokens.append(("name", mt.group(2), mt.start(2)))
        else:
            ch = mt.group(3)
            if ch not in "+-*/^()":
                raise ParseError("unexpected character", ch, mt.start(3))
            tokens.append((ch, ch, mt.start(3)))
        pos = mt.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # expr   := ['+'|'-'] term (('+'|'-') term)*
    # term   := unary (('*' unary) | ('/' INT))*
    # unary  := '-' unary | power
    # power  := atom ['^' INT]
    # atom   := INT | NAME | '(' expr ')'

    def __init__(self, text: str, ring: Ring, gaussian: bool):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring
        self.gaussian = gaussian

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}", tok[1] or "<end>", tok[2])
        return tok

    def parse(self) -> Polynomial:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("unexpected token", tok[1], tok[2])
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                result = result * self.unary()
            elif kind == "/":
                self.take()
                tok = self.take()
                if tok[0] != "int":
                    raise ParseError("division only by an integer literal", tok[1] or "<end>",
                                     tok[2])
                if int(tok[1]) == 0:
                    raise ParseError("division by zero", tok[1], tok[2])
                result = result * Fraction(1, int(tok[1]))
            elif kind in ("int", "name", "("):
                tok = self.peek()
                raise ParseError("implicit multiplication is not allowed", tok[1], tok[2])
            else:
                return result

    def unary(self) -> Polynomial:
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer", tok[1] or "<end>",
                                 tok[2])
            return base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        kind, value, at = self.take()
        if kind == "int":
            return self.ring.const(int(value))
        if kind == "name":
            if self.gaussian and value == "i":
                return Polynomial(self.ring, {(0,) * self.ring.n: I_UNIT})
            if value in self.ring.names:
                return self.ring.gen(self.ring.index(value))
            raise ParseError("unknown identifier", value, at)
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("malformed expression", value or "<end>", at)


def parse_poly(text: str, ring: Union[Ring, Sequence[str]], gaussian: bool = False) -> Polynomial:
    """Parse ``text`` into a polynomial over ``ring``.

    Grammar: integers, ``a/b`` rationals, generator names, ``+ - * ^`` and
    parentheses.  In Gaussian mode the name ``i`` is the imaginary unit.
    """
    if not isinstance(ring, Ring):
        ring = Ring(tuple(ring))
    if gaussian and "i" in ring.names:
        raise ValueError("'i' is reserved for the imaginary unit in Gaussian mode")
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    return _Parser(text, ring, gaussian).parse()


def iter_terms(f: Polynomial) -> Iterator[Tuple[Monomial, Scalar]]:
    for m in f.monomials():
        yield m, f.terms[m]
