"""Coefficient ring: exact rationals and sparse polynomials in the deformation parameters.

Rationals are plain :class:`fractions.Fraction` (``int`` is accepted wherever a
rational is).  Polynomials live in ``Q[q1_1..q1_n, q2_1..q2_n]`` and are stored
as a dict from exponent tuples of length ``2n`` to nonzero rationals; variable
``q1_j`` has index ``j-1`` and ``q2_j`` has index ``n+j-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "MPoly",
    "Params",
    "Coeff",
    "parse_rational",
    "parse_poly",
    "format_coeff",
    "evaluate",
]


class MPoly:
    """Sparse multivariate polynomial with rational coefficients.

    Instances are treated as immutable.  Arithmetic with ``int``/``Fraction``
    promotes the scalar to a constant polynomial; arithmetic between
    polynomials over different variable counts raises ``TypeError``.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], Rational] | None = None, nvars: int = 0):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c:
                    if len(exps) != nvars:
                        raise ValueError(f"exponent vector {exps} does not have length {nvars}")
                    if any(e < 0 for e in exps):
                        raise ValueError(f"negative exponent in {exps}")
                    clean[tuple(exps)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> MPoly:
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Rational, nvars: int) -> MPoly:
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff: Rational = 1) -> MPoly:
        exps = tuple(exps)
        return cls._raw({exps: coeff} if coeff else {}, len(exps))

    @classmethod
    def var(cls, i: int, j: int, n: int) -> MPoly:
        """The variable ``q{i}_{j}`` in the ring with ``n`` colors."""
        if i not in (1, 2) or not 1 <= j <= n:
            raise ValueError(f"no variable q{i}_{j} for {n} colors")
        exps = [0] * (2 * n)
        exps[(i - 1) * n + j - 1] = 1
        return cls._raw({tuple(exps): 1}, 2 * n)

    # ring plumbing

    def _coerce(self, other) -> MPoly | None:
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise TypeError(
                    f"mixed-ring operands: polynomials in {self.nvars} and {other.nvars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(other, self.nvars)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly._raw({}, self.nvars)
            return MPoly._raw({e: c * other for e, c in self.terms.items()}, self.nvars)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly._raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = MPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            c = self.constant_value()
            self._hash = hash(c) if c is not None else hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def constant_value(self) -> Rational | None:
        """The value if this polynomial is constant, else ``None``."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return c
        return None

    def evaluate(self, params: Params) -> Fraction:
        if params.symbolic:
            raise ValueError("cannot evaluate at symbolic parameters")
        if 2 * params.n != self.nvars:
            raise ValueError(f"arity mismatch: polynomial has {self.nvars} variables, params {2 * params.n}")
        values = params.q1 + params.q2
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, k in zip(values, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({format_poly(self)!r}, nvars={self.nvars})"


Coeff = Union[int, Fraction, MPoly]


def _var_name(idx: int, n: int) -> str:
    return f"q{1 + idx // n}_{1 + idx % n}"


def format_poly(p: MPoly) -> str:
    if not p.terms:
        return "0"
    n = p.nvars // 2
    # graded lex, highest total degree first
    order = sorted(p.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
    parts = []
    for e in order:
        c = p.terms[e]
        factors = [_var_name(i, n) + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
        mono = "*".join(factors)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def format_coeff(c: Coeff) -> str:
    if isinstance(c, MPoly):
        v = c.constant_value()
        if v is not None:
            return str(v)
        return format_poly(c)
    return str(c)


def evaluate(c: Coeff, params: Params) -> Fraction:
    if isinstance(c, MPoly):
        return c.evaluate(params)
    return Fraction(c)


_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational number: {text!r}")
    return Fraction(text)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>q([12])_(\d+))|(?P<op>[-+*/^()]))")


def parse_poly(text: str, n: int) -> MPoly:
    """Parse the polynomial text form (``c*q1_2^3*q2_1`` monomials joined by ``+``).

    The parser also accepts ``-``, parentheses and products of sums, so it reads
    back everything :func:`format_poly` writes.
    """
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad polynomial at position {pos}: {text[pos:]!r}")
        tokens.append((m.start(m.lastgroup), m))
        pos = m.end()
    nv = 2 * n
    idx = 0

    def peek(kind=None, value=None):
        if idx >= len(tokens):
            return False
        m = tokens[idx][1]
        if kind == "op":
            return m.group("op") == value
        return m.group(kind) is not None if kind else True

    def err(msg):
        p = tokens[idx][0] if idx < len(tokens) else len(text)
        raise ValueError(f"{msg} at position {p} in {text!r}")

    def expr():
        nonlocal idx
        result = term()
        while peek("op", "+") or peek("op", "-"):
            op = tokens[idx][1].group("op")
            idx += 1
            rhs = term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term():
        nonlocal idx
        result = factor()
        while peek("op", "*"):
            idx += 1
            result = result * factor()
        return result

    def factor():
        nonlocal idx
        if peek("op", "-"):
            idx += 1
            return -factor()
        base = atom()
        if peek("op", "^"):
            idx += 1
            if not peek("num"):
                err("expected exponent")
            k = int(tokens[idx][1].group("num"))
            idx += 1
            base = base ** k
        return base

    def atom():
        nonlocal idx
        if idx >= len(tokens):
            err("unexpected end")
        m = tokens[idx][1]
        if m.group("num") is not None:
            idx += 1
            num = int(m.group("num"))
            if peek("op", "/"):
                idx += 1
                if not peek("num"):
                    err("expected denominator")
                den = int(tokens[idx][1].group("num"))
                idx += 1
                if den == 0:
                    err("zero denominator")
                return MPoly.constant(Fraction(num, den), nv)
            return MPoly.constant(num, nv)
        if m.group("var") is not None:
            i, j = int(m.group(3)), int(m.group(4))
            if not 1 <= j <= n:
                err(f"variable q{i}_{j} out of range for {n} colors")
            idx += 1
            return MPoly.var(i, j, n)
        if m.group("op") == "(":
            idx += 1
            inner = expr()
            if not peek("op", ")"):
                err("expected ')'")
            idx += 1
            return inner
        err(f"unexpected token {m.group(0).strip()!r}")

    if not tokens:
        raise ValueError("empty polynomial")
    result = expr()
    if idx != len(tokens):
        err("trailing input")
    return result


@dataclass(frozen=True)
class Params:
    """The 2n deformation parameters, either concrete rationals or symbolic.

    ``q1`` and ``q2`` are ``None`` in symbolic mode.
    """

    n: int
    q1: tuple[Fraction, ...] | None = None
    q2: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one color")
        if (self.q1 is None) != (self.q2 is None):
            raise ValueError("q1 and q2 must both be given or both omitted")
        if self.q1 is not None:
            if len(self.q1) != self.n or len(self.q2) != self.n:
                raise ValueError(f"expected {self.n} values for each of q1 and q2")
            object.__setattr__(self, "q1", tuple(Fraction(x) for x in self.q1))
            object.__setattr__(self, "q2", tuple(Fraction(x) for x in self.q2))

    @classmethod
    def symbolic_params(cls, n: int) -> Params:
        return cls(n)

    @classmethod
    def concrete(cls, q1: Iterable, q2: Iterable) -> Params:
        q1, q2 = tuple(q1), tuple(q2)
        return cls(len(q1), q1, q2)

    @classmethod
    def connes_kreimer(cls) -> Params:
        return cls(1, (1,), (0,))

    @property
    def symbolic(self) -> bool:
        return self.q1 is None

    @property
    def nvars(self) -> int:
        return 2 * self.n

    def monomial(self, e1: Iterable[int], e2: Iterable[int]) -> Coeff:
        """``prod_j q1_j^e1[j] * q2_j^e2[j]`` with ``0^0 = 1``."""
        e1, e2 = tuple(e1), tuple(e2)
        if self.symbolic:
            return MPoly._raw({e1 + e2: 1}, self.nvars)
        c = Fraction(1)
        for v, k in zip(self.q1 + self.q2, e1 + e2):
            if k:
                c *= v ** k
                if not c:
                    return c
        return c

    def one(self) -> Coeff:
        return MPoly.constant(1, self.nvars) if self.symbolic else Fraction(1)

    def zero(self) -> Coeff:
        return MPoly.constant(0, self.nvars) if self.symbolic else Fraction(0)

    def __str__(self):
        if self.symbolic:
            return f"symbolic(n={self.n})"
        fmt = lambda xs: ",".join(str(x) for x in xs)
        return f"q1={fmt(self.q1)} q2={fmt(self.q2)}"
