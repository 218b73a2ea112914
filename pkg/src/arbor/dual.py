"""Primitive part of the graded dual: star product, brackets, pre-Lie structures.

A dual element ``sum c_t D_t`` is a :class:`~arbor.lincomb.LinComb` over
single-tree :class:`~arbor.trees.Forest` keys.  ``D_s * D_t`` pairs the dual
basis against the coproduct: the coefficient of ``D_w`` is the coefficient of
``s (x) t`` in ``Delta(w)``.
"""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Iterable

from .coefficients import Params
from .hopf import HopfContext, coproduct_basis
from .lincomb import LinComb, Tensor, extend_bilinear
from .trees import (
    Forest,
    ParseError,
    RigidTree,
    admissible_cuts,
    aut_count,
    cut_split,
    enumerate_trees,
    graft,
    p_component,
    tree_size,
)

__all__ = [
    "DEFAULT_MAX_DEGREE",
    "max_degree",
    "dual_star",
    "star",
    "lie_bracket",
    "bracket",
    "cut_count_n",
    "ck_bracket",
    "prelie_star",
    "prelie",
    "grafting_star",
    "grafting",
    "phi",
    "LabeledTree",
    "parse_labeled",
    "embed_free_prelie",
    "free_prelie_product",
]

DEFAULT_MAX_DEGREE = 7


def max_degree() -> int:
    """Global degree cap, overridable with ``ARBOR_MAX_DEGREE``."""
    raw = os.environ.get("ARBOR_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"ARBOR_MAX_DEGREE must be an integer, got {raw!r}") from None


def _guard(d: int, cap: int | None) -> None:
    cap = max_degree() if cap is None else cap
    if d > cap:
        raise ValueError(f"degree {d} exceeds the cap {cap}")


def _single(t: Forest) -> Forest:
    if len(t) != 1:
        raise ValueError(f"expected a single nonempty tree, got {t}")
    return t


@lru_cache(maxsize=None)
def _star_table(d: int, ctx: HopfContext) -> dict:
    """``(s, t) -> {w: coefficient of s (x) t in Delta(w)}`` over trees ``w`` of degree ``d``."""
    table: dict = {}
    for w in enumerate_trees(ctx.flavor, ctx.n, d):
        for key, c in coproduct_basis(w, ctx).terms.items():
            a, b = key
            if len(a) == 1 and len(b) == 1:
                table.setdefault((a, b), {})[w] = c
    return table


def dual_star(s: Forest, t: Forest, ctx: HopfContext, cap: int | None = None) -> LinComb:
    """``D_s * D_t`` as a combination of ``D_w`` over trees of degree ``|s|+|t|``."""
    _single(s)
    _single(t)
    d = s.degree + t.degree
    _guard(d, cap)
    return LinComb(_star_table(d, ctx).get((s, t), {}))


def star(x: LinComb, y: LinComb, ctx: HopfContext, cap: int | None = None) -> LinComb:
    return extend_bilinear(lambda a, b: dual_star(a, b, ctx, cap), x, y)


def lie_bracket(s: Forest, t: Forest, ctx: HopfContext, cap: int | None = None) -> LinComb:
    return dual_star(s, t, ctx, cap) - dual_star(t, s, ctx, cap)


def bracket(x: LinComb, y: LinComb, ctx: HopfContext, cap: int | None = None) -> LinComb:
    return extend_bilinear(lambda a, b: lie_bracket(a, b, ctx, cap), x, y)


def cut_count_n(t: Forest, s: Forest, u: Forest) -> int:
    """Admissible cuts ``c`` of ``u`` with ``P^c(u) = t`` and ``R^c(u) = s``."""
    if t.degree + s.degree != u.degree:
        return 0
    rt = RigidTree.from_forest(_single(u))
    return sum(1 for c in admissible_cuts(rt) if cut_split(rt, c) == (t, s))


def ck_bracket(t: Forest, s: Forest, cap: int | None = None) -> LinComb:
    """``[D_t, D_s] = sum_u (n(t,s,u) - n(s,t,u)) D_u`` for one color."""
    d = t.degree + s.degree
    _guard(d, cap)
    out = {}
    for u in enumerate_trees("unordered", 1, d):
        c = cut_count_n(t, s, u) - cut_count_n(s, t, u)
        if c:
            out[u] = c
    return LinComb(out)


def prelie_params(colors: Iterable[int], n: int) -> Params:
    """``q1_j = 1`` on the chosen colors, ``0`` elsewhere; ``q2 = 0``."""
    colors = set(colors)
    return Params.concrete([1 if j in colors else 0 for j in range(1, n + 1)], [0] * n)


def prelie_star(s: Forest, t: Forest, colors: Iterable[int], n: int, cap: int | None = None) -> LinComb:
    """Pre-Lie product for characteristic-function parameters, by counting cuts.

    The coefficient of ``D_u`` counts single-edge cuts of ``u`` whose edge has a
    color in ``colors``, whose upper vertex lies in the ``colors``-connected
    component, and which prune ``s`` off leaving ``t``.
    """
    _single(s)
    _single(t)
    colors = frozenset(colors)
    d = s.degree + t.degree
    _guard(d, cap)
    out = {}
    for u in enumerate_trees("unordered", n, d):
        rt = RigidTree.from_forest(u)
        comp = p_component(rt, colors)
        count = 0
        for v in rt.vertices:
            if rt.parent[v] == -1 or rt.color[v] not in colors or v not in comp:
                continue
            if cut_split(rt, {v}) == (s, t):
                count += 1
        if count:
            out[u] = count
    return LinComb(out)


def prelie(x: LinComb, y: LinComb, colors: Iterable[int], n: int, cap: int | None = None) -> LinComb:
    colors = frozenset(colors)
    return extend_bilinear(lambda a, b: prelie_star(a, b, colors, n, cap), x, y)


def grafting_star(s: Forest, t: Forest, colors: Iterable[int]) -> LinComb:
    """``sum_{v in t} sum_{p} D_{s grafted on v by color p}``."""
    _single(s)
    _single(t)
    out: dict = {}
    for v in range(t.degree):
        for p in sorted(set(colors)):
            u = graft(s, t, v, p)
            out[u] = out.get(u, 0) + 1
    return LinComb(out)


def grafting(x: LinComb, y: LinComb, colors: Iterable[int]) -> LinComb:
    colors = frozenset(colors)
    return extend_bilinear(lambda a, b: grafting_star(a, b, colors), x, y)


def phi(x: LinComb) -> LinComb:
    """Rescale each ``D_t`` by the automorphism count ``a_t``."""
    return LinComb({k: c * aut_count(k) for k, c in x.terms.items()})


# vertex-labeled trees (free pre-Lie algebra)


@lru_cache(maxsize=None)
def _labeled_str(t: tuple) -> str:
    label, kids = t
    return f"[{label}|" + " ".join(_labeled_str(k) for k in kids) + "]"


@lru_cache(maxsize=None)
def _labeled_size(t: tuple) -> int:
    return 1 + sum(_labeled_size(k) for k in t[1])


def _labeled_canon(label: int, kids: Iterable[tuple]) -> tuple:
    return (label, tuple(sorted(kids, key=_labeled_str)))


class LabeledTree(tuple):
    """Canonical vertex-labeled unordered tree ``(label, (child, ...))``."""

    __slots__ = ()

    @property
    def degree(self) -> int:
        return _labeled_size(tuple(self))

    def __str__(self):
        return _labeled_str(tuple(self))

    def __repr__(self):
        return f"LabeledTree({str(self)!r})"


def parse_labeled(text: str, n: int | None = None) -> LabeledTree:
    """Parse ``[label|child child ...]``."""
    pos = 0
    L = len(text)

    def skip():
        nonlocal pos
        while pos < L and text[pos].isspace():
            pos += 1

    def node():
        nonlocal pos
        skip()
        if pos >= L or text[pos] != "[":
            raise ParseError("expected '['", text, pos)
        pos += 1
        skip()
        start = pos
        while pos < L and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise ParseError("expected a label", text, pos)
        label = int(text[start:pos])
        if label < 1 or (n is not None and label > n):
            raise ParseError(f"label {label} out of range", text, start)
        skip()
        if pos >= L or text[pos] != "|":
            raise ParseError("expected '|'", text, pos)
        pos += 1
        kids = []
        while True:
            skip()
            if pos < L and text[pos] == "]":
                pos += 1
                return _labeled_canon(label, kids)
            kids.append(node())

    t = node()
    skip()
    if pos != L:
        raise ParseError("trailing input", text, pos)
    return LabeledTree(t)


def embed_free_prelie(t: Forest, n: int) -> LinComb:
    """Label each vertex by the color of its incoming edge; sum over root labels."""
    (tree,) = _single(t)

    def relabel(sub, label):
        return _labeled_canon(label, (relabel(s, c) for c, s in sub))

    return LinComb({LabeledTree(relabel(tree, i)): 1 for i in range(1, n + 1)})


def _labeled_graft(x: tuple, y: tuple) -> list[tuple]:
    """All trees obtained by attaching the root of ``x`` to one vertex of ``y``."""
    label, kids = y
    out = [_labeled_canon(label, kids + (x,))]
    for i, k in enumerate(kids):
        for g in _labeled_graft(x, k):
            out.append(_labeled_canon(label, kids[:i] + (g,) + kids[i + 1 :]))
    return out


def free_prelie_product(x: LinComb, y: LinComb) -> LinComb:
    """Label-preserving grafting of ``x`` onto every vertex of ``y``, bilinear."""

    def basis(a, b):
        out: dict = {}
        for g in _labeled_graft(tuple(a), tuple(b)):
            key = LabeledTree(g)
            out[key] = out.get(key, 0) + 1
        return LinComb(out)

    return extend_bilinear(basis, x, y)
