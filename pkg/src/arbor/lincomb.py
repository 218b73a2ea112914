"""Finite linear combinations of basis keys, including tensor keys.

Basis keys are hashable objects exposing ``degree`` and a canonical ``str``
(:class:`~arbor.trees.Forest`, n-ary trees, labeled trees).  Tensor keys are
:class:`Tensor` tuples of basis keys.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

from .coefficients import Coeff, MPoly, format_coeff

__all__ = ["Tensor", "LinComb", "extend_linear", "extend_bilinear", "tensor", "sort_key", "parse_lincomb"]


class Tensor(tuple):
    """Pure tensor ``a (x) b (x) ...`` of basis keys."""

    __slots__ = ()

    @property
    def degree(self) -> int:
        return sum(k.degree for k in self)

    def __str__(self):
        return " (x) ".join(str(k) for k in self)

    def __repr__(self):
        return f"Tensor({str(self)!r})"


def sort_key(key) -> tuple:
    """Printing order: total degree, then each tensor factor by (degree, text)."""
    if isinstance(key, Tensor):
        return (key.degree, tuple((k.degree, str(k)) for k in key))
    return (key.degree, ((key.degree, str(key)),))


def _kind(key) -> tuple:
    if isinstance(key, Tensor):
        return (Tensor, len(key), type(key[0]) if key else None)
    return (type(key),)


class LinComb:
    """Immutable finite formal sum ``sum c_k * k`` with nonzero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Hashable, Coeff] | Iterable[tuple[Hashable, Coeff]] | None = None):
        out: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                s = out.get(k, 0) + c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        self.terms = out

    @classmethod
    def _raw(cls, terms: dict) -> LinComb:
        x = cls.__new__(cls)
        x.terms = terms
        return x

    @classmethod
    def basis(cls, key, coeff: Coeff = 1) -> LinComb:
        return cls._raw({key: coeff} if coeff else {})

    @classmethod
    def zero(cls) -> LinComb:
        return cls._raw({})

    def _check_kind(self, other: LinComb) -> None:
        if self.terms and other.terms:
            a = _kind(next(iter(self.terms)))
            b = _kind(next(iter(other.terms)))
            if a != b:
                raise TypeError(f"cannot combine linear combinations over different bases: {a} vs {b}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, LinComb):
            return NotImplemented
        self._check_kind(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LinComb._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LinComb._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Coeff) -> LinComb:
        if not c:
            return LinComb.zero()
        out = {}
        for k, v in self.terms.items():
            p = v * c
            if p:
                out[k] = p
        return LinComb._raw(out)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, MPoly)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.items())

    def items(self) -> list[tuple[Hashable, Coeff]]:
        """Terms in deterministic printing order."""
        return sorted(self.terms.items(), key=lambda kv: sort_key(kv[0]))

    def keys(self):
        return [k for k, _ in self.items()]

    def coefficient_of(self, key) -> Coeff:
        return self.terms.get(key, 0)

    def graded_part(self, d: int) -> LinComb:
        return LinComb._raw({k: c for k, c in self.terms.items() if k.degree == d})

    def degrees(self) -> set[int]:
        return {k.degree for k in self.terms}

    def map_coefficients(self, f: Callable[[Coeff], Coeff]) -> LinComb:
        return LinComb(((k, f(c)) for k, c in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.items():
            text = str(k)
            cs = format_coeff(c)
            if cs == "1":
                parts.append(text)
            elif cs.startswith("-") and _bare(cs[1:]):
                parts.append("-" + (text if cs == "-1" else f"{cs[1:]} {text}"))
            elif _bare(cs):
                parts.append(f"{cs} {text}")
            else:
                parts.append(f"({cs}) {text}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LinComb({str(self)!r})"


def _bare(cs: str) -> bool:
    return " " not in cs and not cs.startswith("-")


def tensor(*xs: LinComb) -> LinComb:
    """Tensor product of linear combinations; nested tensors are flattened."""
    out: dict = {(): 1}
    for x in xs:
        nxt: dict = {}
        for k1, c1 in out.items():
            for k2, c2 in x.terms.items():
                parts = tuple(k2) if isinstance(k2, Tensor) else (k2,)
                key = k1 + parts
                s = nxt.get(key, 0) + c1 * c2
                if s:
                    nxt[key] = s
                else:
                    nxt.pop(key, None)
        out = nxt
    return LinComb._raw({Tensor(k): c for k, c in out.items()})


def extend_linear(f: Callable[[Hashable], LinComb], x: LinComb) -> LinComb:
    """Linear extension of ``f`` defined on basis keys."""
    out: dict = {}
    for k, c in x.terms.items():
        for k2, c2 in f(k).terms.items():
            s = out.get(k2, 0) + c * c2
            if s:
                out[k2] = s
            else:
                out.pop(k2, None)
    return LinComb._raw(out)


def extend_bilinear(g: Callable[[Hashable, Hashable], LinComb], x: LinComb, y: LinComb | None = None) -> LinComb:
    """Bilinear extension of ``g``, applied to ``x (x) y`` (or to a rank-2 tensor ``x``)."""
    pairs = tensor(x, y) if y is not None else x
    out: dict = {}
    for k, c in pairs.terms.items():
        if not isinstance(k, Tensor) or len(k) != 2:
            raise TypeError("extend_bilinear needs rank-2 tensor input")
        for k2, c2 in g(k[0], k[1]).terms.items():
            s = out.get(k2, 0) + c * c2
            if s:
                out[k2] = s
            else:
                out.pop(k2, None)
    return LinComb._raw(out)


def apply_at(x: LinComb, pos: int, f: Callable[[Hashable], LinComb]) -> LinComb:
    """Apply a linear map to tensor factor ``pos``, flattening the result into the tensor."""
    out: dict = {}
    for k, c in x.terms.items():
        parts = tuple(k) if isinstance(k, Tensor) else (k,)
        left, right = parts[:pos], parts[pos + 1 :]
        for k2, c2 in f(parts[pos]).terms.items():
            mid = tuple(k2) if isinstance(k2, Tensor) else (k2,)
            key = left + mid + right
            key = Tensor(key) if len(key) > 1 else key[0]
            s = out.get(key, 0) + c * c2
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return LinComb._raw(out)


def contract_at(x: LinComb, pos: int, f: Callable[[Hashable], Coeff]) -> LinComb:
    """Apply a linear functional to tensor factor ``pos``, dropping that factor."""
    out: dict = {}
    for k, c in x.terms.items():
        parts = tuple(k)
        v = f(parts[pos])
        if not v:
            continue
        rest = parts[:pos] + parts[pos + 1 :]
        key = Tensor(rest) if len(rest) > 1 else rest[0]
        s = out.get(key, 0) + c * v
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return LinComb._raw(out)


def _top_level_split(text: str, sep: str) -> list[tuple[int, str]]:
    """Split on ``sep`` outside brackets and parentheses; keep start offsets."""
    out = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            out.append((start, text[start:i]))
            i += len(sep)
            start = i
            continue
        i += 1
    out.append((start, text[start:]))
    return out


def parse_lincomb(text: str, parse_key: Callable[[str], Hashable], nvars: int = 0) -> LinComb:
    """Inverse of ``str(LinComb)``: terms ``[-][coeff ]key`` joined by `` + ``,
    tensor keys joined by `` (x) ``.  ``coeff`` is a rational, a monomial, or a
    parenthesized polynomial in ``q1_j``/``q2_j`` (``nvars = 2n``)."""
    from .coefficients import parse_poly, parse_rational
    from .trees import ParseError

    def coeff(chunk: str):
        inner = chunk[1:-1] if chunk.startswith("(") and chunk.endswith(")") else chunk
        try:
            return parse_rational(inner)
        except (ValueError, ZeroDivisionError):
            pass
        if nvars == 0:
            raise ValueError("polynomial coefficient without parameters")
        return parse_poly(inner, nvars // 2)

    text = text.strip()
    if text == "0":
        return LinComb.zero()
    out = LinComb.zero()
    for offset, term in _top_level_split(text, " + "):
        body = term.strip()
        sign = 1
        if body.startswith("-"):
            sign, body = -1, body[1:]
        c = 1
        pieces = _top_level_split(body, " ")
        if len(pieces) > 1 and pieces[1][1] != "(x)":
            head = pieces[0][1]
            try:
                c = coeff(head)
            except (ValueError, ZeroDivisionError):
                c = None
            if c is not None:
                body = body[len(head) + 1 :]
            else:
                c = 1
        factors = _top_level_split(body, " (x) ")
        try:
            keys = [parse_key(f.strip()) for _, f in factors]
        except ParseError as e:
            raise ParseError(e.msg, text, offset + (e.pos or 0)) from None
        key = keys[0] if len(keys) == 1 else Tensor(keys)
        out = out + LinComb.basis(key, c * sign)
    return out
