"""Planar n-ary trees, dendriform products, Loday-Ronco and pruning coproducts.

An :class:`NaryTree` is the empty tuple for the leaf ``L`` and an n-tuple of
subtrees for an internal node.  Its degree is the number of internal nodes.
The bijection :func:`xi` sends a node to a root whose color-``i`` child is the
image of the ``i``-th subtree (leaves contribute nothing).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .lincomb import LinComb, Tensor, extend_bilinear
from .trees import Forest, ParseError, is_k_tree

__all__ = [
    "NaryTree",
    "LEAF",
    "node",
    "parse_nary",
    "enumerate_nary",
    "xi",
    "xi_inverse",
    "DendCtx",
    "dstar",
    "dleft",
    "dright",
    "star",
    "left",
    "right",
    "lr_coproduct",
    "lr_product",
    "pruning_P",
    "delta_pruning",
]


class NaryTree(tuple):
    """Planar n-ary tree: ``()`` is the leaf, otherwise a tuple of n subtrees."""

    __slots__ = ()

    @property
    def degree(self) -> int:
        return _internal(self)

    @property
    def is_leaf(self) -> bool:
        return not self

    def __str__(self):
        return _nary_str(self)

    def __repr__(self):
        return f"NaryTree({str(self)!r})"


LEAF = NaryTree(())


def node(*children: NaryTree) -> NaryTree:
    return NaryTree(tuple(NaryTree(c) for c in children))


@lru_cache(maxsize=None)
def _internal(t: tuple) -> int:
    return 0 if not t else 1 + sum(_internal(c) for c in t)


@lru_cache(maxsize=None)
def _nary_str(t: tuple) -> str:
    return "L" if not t else "(" + ",".join(_nary_str(c) for c in t) + ")"


def parse_nary(text: str, n: int | None = None) -> NaryTree:
    """Parse ``L`` / ``(t_1,...,t_n)``; whitespace is ignored."""
    src = text
    pos = 0
    L = len(src)
    arity = n

    def skip():
        nonlocal pos
        while pos < L and src[pos].isspace():
            pos += 1

    def tree():
        nonlocal pos, arity
        skip()
        if pos < L and src[pos] == "L":
            pos += 1
            return LEAF
        if pos >= L or src[pos] != "(":
            raise ParseError("expected 'L' or '('", src, pos)
        open_pos = pos
        pos += 1
        kids = [tree()]
        skip()
        while pos < L and src[pos] == ",":
            pos += 1
            kids.append(tree())
            skip()
        if pos >= L or src[pos] != ")":
            raise ParseError("expected ',' or ')'", src, pos)
        pos += 1
        if arity is None:
            arity = len(kids)
        elif len(kids) != arity:
            raise ParseError(f"node has {len(kids)} children, expected {arity}", src, open_pos)
        return NaryTree(tuple(kids))

    t = tree()
    skip()
    if pos != L:
        raise ParseError("trailing input", src, pos)
    return t


@lru_cache(maxsize=None)
def enumerate_nary(n: int, m: int) -> tuple[NaryTree, ...]:
    """All planar n-ary trees with ``m`` internal nodes, in canonical text order."""
    if m == 0:
        return (LEAF,)

    def splits(k, total):
        if k == 1:
            yield (total,)
            return
        for i in range(total + 1):
            for rest in splits(k - 1, total - i):
                yield (i,) + rest

    out = []
    for sizes in splits(n, m - 1):
        def build(i, acc):
            if i == n:
                out.append(NaryTree(tuple(acc)))
                return
            for c in enumerate_nary(n, sizes[i]):
                build(i + 1, acc + [c])

        build(0, [])
    return tuple(sorted(out, key=str))


def xi(t: NaryTree) -> Forest:
    """n-ary tree -> color-unique tree (``L`` -> empty tree)."""

    def conv(x):
        return tuple((i + 1, conv(c)) for i, c in enumerate(x) if c)

    return Forest(()) if not t else Forest((conv(t),))


def xi_inverse(f: Forest, n: int) -> NaryTree:
    if len(f) > 1:
        raise ValueError("only single trees correspond to n-ary trees")
    if not f:
        return LEAF

    def conv(tree):
        if not is_k_tree(tree):
            raise ValueError("tree repeats a color at some vertex")
        slots = [LEAF] * n
        for c, sub in tree:
            if not 1 <= c <= n:
                raise ValueError(f"color {c} out of range 1..{n}")
            slots[c - 1] = conv(sub)
        return NaryTree(tuple(slots))

    return conv(f[0])


@dataclass(frozen=True)
class DendCtx:
    """Arity ``n`` and the distinguished colors ``k`` (for q1) and ``l`` (for q2)."""

    n: int
    k: int
    l: int

    def __post_init__(self):
        if self.n < 1 or not (1 <= self.k <= self.n and 1 <= self.l <= self.n):
            raise ValueError(f"need 1 <= k, l <= n, got n={self.n} k={self.k} l={self.l}")


def _check(t: NaryTree, ctx: DendCtx) -> None:
    if t and len(t) != ctx.n:
        raise ValueError(f"tree {t} is not {ctx.n}-ary")


def _replace(t: NaryTree, i: int, x: LinComb) -> LinComb:
    """Substitute the combination ``x`` into slot ``i`` (0-based) of ``t``."""
    return LinComb({NaryTree(t[:i] + (k,) + t[i + 1 :]): c for k, c in x.terms.items()})


@lru_cache(maxsize=None)
def dstar(s: NaryTree, t: NaryTree, ctx: DendCtx) -> LinComb:
    """Associative product with unit ``L``:
    ``s*t = lambda(s_1,..,s_k*t,..,s_n) + lambda(t_1,..,s*t_l,..,t_n)``."""
    _check(s, ctx)
    _check(t, ctx)
    if not s:
        return LinComb.basis(t)
    if not t:
        return LinComb.basis(s)
    return dleft(s, t, ctx) + dright(s, t, ctx)


@lru_cache(maxsize=None)
def dleft(s: NaryTree, t: NaryTree, ctx: DendCtx) -> LinComb:
    """``s < t = lambda(s_1,..,s_k*t,..,s_n)``; both arguments non-leaf."""
    if not s or not t:
        raise ValueError("the dendriform operations are defined on the augmentation ideal")
    i = ctx.k - 1
    return _replace(s, i, dstar(s[i], t, ctx))


@lru_cache(maxsize=None)
def dright(s: NaryTree, t: NaryTree, ctx: DendCtx) -> LinComb:
    """``s > t = lambda(t_1,..,s*t_l,..,t_n)``; both arguments non-leaf."""
    if not s or not t:
        raise ValueError("the dendriform operations are defined on the augmentation ideal")
    i = ctx.l - 1
    return _replace(t, i, dstar(s, t[i], ctx))


def star(x: LinComb, y: LinComb, ctx: DendCtx) -> LinComb:
    return extend_bilinear(lambda a, b: dstar(a, b, ctx), x, y)


def left(x: LinComb, y: LinComb, ctx: DendCtx) -> LinComb:
    return extend_bilinear(lambda a, b: dleft(a, b, ctx), x, y)


def right(x: LinComb, y: LinComb, ctx: DendCtx) -> LinComb:
    return extend_bilinear(lambda a, b: dright(a, b, ctx), x, y)


def _star_many(parts, ctx: DendCtx) -> LinComb:
    acc = LinComb.basis(LEAF)
    for p in parts:
        acc = star(acc, p, ctx)
    return acc


@lru_cache(maxsize=None)
def lr_coproduct(t: NaryTree, ctx: DendCtx) -> LinComb:
    """``Delta(L) = L (x) L``;
    ``Delta(lambda(a)) = sum (a_1' * ... * a_n') (x) lambda(a_1'',..,a_n'') + lambda(a) (x) L``."""
    _check(t, ctx)
    if not t:
        return LinComb.basis(Tensor((LEAF, LEAF)))
    # accumulate over the children: (product of left factors, tuple of right factors)
    partial: dict = {(LEAF, ()): 1}
    for child in t:
        nxt: dict = {}
        for (lft, rgt), c in partial.items():
            for (a1, a2), c2 in lr_coproduct(child, ctx).terms.items():
                for p, c3 in dstar(lft, a1, ctx).terms.items():
                    key = (p, rgt + (a2,))
                    v = nxt.get(key, 0) + c * c2 * c3
                    if v:
                        nxt[key] = v
                    else:
                        nxt.pop(key, None)
        partial = nxt
    out: dict = {}
    for (lft, rgt), c in partial.items():
        key = Tensor((lft, NaryTree(rgt)))
        out[key] = out.get(key, 0) + c
    key = Tensor((t, LEAF))
    out[key] = out.get(key, 0) + 1
    return LinComb(out)


def lr_product(t: NaryTree, s: NaryTree) -> LinComb:
    """Binary-tree product ``T*S = lambda(T_1, T_2*S) + lambda(T*S_1, S_2)``, unit ``L``."""
    return _lr_product(t, s)


@lru_cache(maxsize=None)
def _lr_product(t: NaryTree, s: NaryTree) -> LinComb:
    if not t:
        return LinComb.basis(s)
    if not s:
        return LinComb.basis(t)
    if len(t) != 2 or len(s) != 2:
        raise ValueError("the Loday-Ronco product is on binary trees")
    out = LinComb({NaryTree((t[0], k)): c for k, c in _lr_product(t[1], s).terms.items()})
    return out + LinComb({NaryTree((k, s[1])): c for k, c in _lr_product(t, s[0]).terms.items()})


@lru_cache(maxsize=None)
def pruning_P(t: NaryTree) -> LinComb:
    """Pruning operator: ``P(lambda(T,L)) = 0``,
    ``P(lambda(T,S)) = sum lambda(T,S') (x) S'' + lambda(T,L) (x) S``."""
    if t and len(t) != 2:
        raise ValueError("the pruning operator is defined on binary trees")
    if not t:
        raise ValueError("the pruning operator is defined on non-leaf trees")
    T, S = t
    if not S:
        return LinComb.zero()
    out: dict = {}
    for (s1, s2), c in pruning_P(S).terms.items():
        key = Tensor((NaryTree((T, s1)), s2))
        out[key] = out.get(key, 0) + c
    key = Tensor((NaryTree((T, LEAF)), S))
    out[key] = out.get(key, 0) + 1
    return LinComb(out)


def delta_pruning(t: NaryTree) -> LinComb:
    """``Delta^P(L) = L (x) L``; ``Delta^P(T) = L (x) T + P(T) + T (x) L``."""
    if not t:
        return LinComb.basis(Tensor((LEAF, LEAF)))
    return LinComb({Tensor((LEAF, t)): 1, Tensor((t, LEAF)): 1}) + pruning_P(t)
