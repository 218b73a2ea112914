"""Colored rooted trees and forests in three flavors.

``unordered``
    edge-colored rooted trees (basis of the commutative algebra ``C_n``)
``planar``
    additionally a linear order on the children of each vertex extending the
    order on colors (basis of the associative algebra ``A_n``)
``k``
    unordered trees with at most one child of each color at every vertex

Canonical keys are nested tuples.  A tree is a tuple of ``(color, subtree)``
pairs, one per child of the root; the one-vertex tree is ``()``.  A
:class:`Forest` is a tuple of trees; the empty forest is the unit ``1``.
Unordered children are sorted by ``(color, text encoding)``, unordered forests
by text encoding; planar children are stably sorted by color.

:class:`RigidTree` is the indexed working representation used for subforests,
cuts and paths.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

from .coefficients import Coeff, Params

__all__ = [
    "FLAVORS",
    "ParseError",
    "Forest",
    "RigidTree",
    "parse",
    "parse_key",
    "format_key",
    "canonicalize",
    "enumerate_trees",
    "enumerate_forests",
    "enumerate_trees_bruteforce",
    "subforests",
    "induce",
    "restrict",
    "p_count",
    "q_exponents",
    "q_coeff",
    "admissible_cuts",
    "cut_split",
    "graft",
    "aut_count",
    "aut_count_bruteforce",
    "p_component",
    "forest_product",
    "tree_size",
    "is_k_tree",
]

FLAVORS = ("unordered", "planar", "k")


class ParseError(ValueError):
    """Malformed input text; ``pos`` is the offending character offset."""

    def __init__(self, msg: str, text: str = "", pos: int | None = None):
        self.msg = msg
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}" + (f" in {text!r}" if text else ""))


def _check_flavor(flavor: str) -> None:
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")


@lru_cache(maxsize=None)
def tree_str(tree: tuple) -> str:
    return "[" + " ".join(f"{c}:{tree_str(sub)}" for c, sub in tree) + "]"


@lru_cache(maxsize=None)
def tree_size(tree: tuple) -> int:
    return 1 + sum(tree_size(sub) for _, sub in tree)


def _child_sort_key(child: tuple) -> tuple:
    return (child[0], tree_str(child[1]))


class Forest(tuple):
    """Canonical key of a colored forest: a tuple of canonical trees."""

    __slots__ = ()

    @property
    def degree(self) -> int:
        return sum(tree_size(t) for t in self)

    def is_tree(self) -> bool:
        return len(self) == 1

    def __str__(self):
        return "*".join(tree_str(t) for t in self) if self else "1"

    def __repr__(self):
        return f"Forest({str(self)!r})"


def format_key(key) -> str:
    """Canonical text of a key or rigid tree."""
    if isinstance(key, RigidTree):
        key = canonicalize(key)
    return str(key)


def is_k_tree(tree: tuple) -> bool:
    colors = [c for c, _ in tree]
    return len(colors) == len(set(colors)) and all(is_k_tree(sub) for _, sub in tree)


def _canon_tree(children: Iterable[tuple], flavor: str) -> tuple:
    children = list(children)
    if flavor == "planar":
        children.sort(key=lambda ch: ch[0])
    else:
        children.sort(key=_child_sort_key)
        if flavor == "k":
            colors = [c for c, _ in children]
            if len(colors) != len(set(colors)):
                raise ValueError("k-flavor tree has two children of the same color at a vertex")
    return tuple(children)


def _canon_forest(trees: Iterable[tuple], flavor: str) -> Forest:
    trees = list(trees)
    if flavor != "planar":
        trees.sort(key=tree_str)
    return Forest(trees)


def forest_product(a: Forest, b: Forest, flavor: str) -> Forest:
    """Forest union (unordered) or concatenation (planar)."""
    if not a:
        return b
    if not b:
        return a
    if flavor == "planar":
        return Forest(a + b)
    return Forest(sorted(a + b, key=tree_str))


@dataclass(frozen=True)
class RigidTree:
    """A concrete colored forest with vertices ``0..m-1``.

    ``parent[v]`` is ``-1`` for roots; ``color[v]`` is the color of the edge
    from ``v`` to its parent (``0`` for roots).  ``children[v]`` and ``roots``
    give the planar order; they are ignored up to isomorphism for the
    unordered flavors.
    """

    parent: tuple[int, ...]
    color: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    roots: tuple[int, ...]
    flavor: str = "unordered"

    @classmethod
    def from_parents(
        cls,
        parent: Sequence[int],
        color: Sequence[int],
        flavor: str = "unordered",
        child_order: Sequence[Sequence[int]] | None = None,
        root_order: Sequence[int] | None = None,
    ) -> RigidTree:
        _check_flavor(flavor)
        m = len(parent)
        if len(color) != m:
            raise ValueError("parent and color arrays differ in length")
        if child_order is None:
            kids: list[list[int]] = [[] for _ in range(m)]
            for v, p in enumerate(parent):
                if p != -1:
                    kids[p].append(v)
        else:
            kids = [list(c) for c in child_order]
        roots = list(root_order) if root_order is not None else [v for v in range(m) if parent[v] == -1]
        # acyclicity: every vertex reaches a root
        for v in range(m):
            seen = 0
            x = v
            while parent[x] != -1:
                x = parent[x]
                seen += 1
                if seen > m:
                    raise ValueError("parent relation has a cycle")
            if parent[v] != -1 and color[v] < 1:
                raise ValueError(f"vertex {v} has invalid edge color {color[v]}")
        return cls(tuple(parent), tuple(color), tuple(tuple(k) for k in kids), tuple(roots), flavor)

    @classmethod
    def from_forest(cls, forest: Sequence[tuple], flavor: str = "unordered") -> RigidTree:
        """Rigid copy of a canonical forest, vertices numbered in pre-order."""
        parent: list[int] = []
        color: list[int] = []
        kids: list[list[int]] = []
        roots: list[int] = []

        def walk(tree, p, c):
            v = len(parent)
            parent.append(p)
            color.append(c)
            kids.append([])
            if p != -1:
                kids[p].append(v)
            for cc, sub in tree:
                walk(sub, v, cc)
            return v

        for t in forest:
            roots.append(walk(t, -1, 0))
        return cls(tuple(parent), tuple(color), tuple(tuple(k) for k in kids), tuple(roots), flavor)

    def __len__(self):
        return len(self.parent)

    @property
    def vertices(self) -> range:
        return range(len(self.parent))

    @cached_property
    def preorder(self) -> tuple[int, ...]:
        """Pre-order rank of each vertex (children visited in planar order)."""
        rank = [0] * len(self.parent)
        counter = 0
        stack = list(reversed(self.roots))
        while stack:
            v = stack.pop()
            rank[v] = counter
            counter += 1
            stack.extend(reversed(self.children[v]))
        return tuple(rank)

    @cached_property
    def paths(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each vertex, the edges on its path to the root as ``(lower vertex, color)``."""
        out = []
        for v in self.vertices:
            path = []
            x = v
            while self.parent[x] != -1:
                path.append((self.parent[x], self.color[x]))
                x = self.parent[x]
            out.append(tuple(path))
        return tuple(out)

    def root_of(self, v: int) -> int:
        while self.parent[v] != -1:
            v = self.parent[v]
        return v

    def is_tree(self) -> bool:
        return len(self.roots) == 1

    def relabel(self, perm: Sequence[int]) -> RigidTree:
        """Copy with vertex ``v`` renamed ``perm[v]``; planar orders carried along."""
        m = len(self)
        inv = [0] * m
        for v, w in enumerate(perm):
            inv[w] = v
        parent = [-1] * m
        color = [0] * m
        kids = [()] * m
        for v in range(m):
            w = perm[v]
            p = self.parent[v]
            parent[w] = perm[p] if p != -1 else -1
            color[w] = self.color[v]
            kids[w] = tuple(perm[c] for c in self.children[v])
        return RigidTree(tuple(parent), tuple(color), tuple(kids), tuple(perm[r] for r in self.roots), self.flavor)


def _validate_colors(rt: RigidTree, n: int | None) -> None:
    if n is None:
        return
    for v in rt.vertices:
        if rt.parent[v] != -1 and not 1 <= rt.color[v] <= n:
            raise ValueError(f"color {rt.color[v]} out of range 1..{n}")


def canonicalize(rt: RigidTree, flavor: str | None = None) -> Forest:
    """Canonical key of the isomorphism class of ``rt``."""
    flavor = flavor or rt.flavor
    _check_flavor(flavor)

    def build(v):
        return _canon_tree(((rt.color[c], build(c)) for c in rt.children[v]), flavor)

    return _canon_forest((build(r) for r in rt.roots), flavor)


# text form


def parse(text: str, flavor: str = "unordered", n: int | None = None) -> RigidTree:
    """Parse the tree grammar into a rigid forest (input order kept as planar order).

    Grammar: ``1`` is the empty forest; a tree is ``[`` (color ``:`` tree)* ``]``
    with space-separated children; a forest is trees joined by ``*``.
    """
    _check_flavor(flavor)
    parent: list[int] = []
    color: list[int] = []
    kids: list[list[int]] = []
    roots: list[int] = []
    pos = 0
    L = len(text)

    def skip():
        nonlocal pos
        while pos < L and text[pos].isspace():
            pos += 1

    def expect(ch):
        nonlocal pos
        skip()
        if pos >= L or text[pos] != ch:
            got = repr(text[pos]) if pos < L else "end of input"
            raise ParseError(f"expected {ch!r}, got {got}", text, pos)
        pos += 1

    def tree(p, c):
        nonlocal pos
        expect("[")
        v = len(parent)
        parent.append(p)
        color.append(c)
        kids.append([])
        if p != -1:
            kids[p].append(v)
        seen_colors = set()
        while True:
            skip()
            if pos < L and text[pos] == "]":
                pos += 1
                return v
            start = pos
            while pos < L and text[pos].isdigit():
                pos += 1
            if start == pos:
                got = repr(text[pos]) if pos < L else "end of input"
                raise ParseError(f"expected a color or ']', got {got}", text, pos)
            col = int(text[start:pos])
            if col < 1 or (n is not None and col > n):
                rng = f"1..{n}" if n is not None else ">= 1"
                raise ParseError(f"color {col} out of range {rng}", text, start)
            if flavor == "k":
                if col in seen_colors:
                    raise ParseError(f"k-flavor vertex has two children of color {col}", text, start)
                seen_colors.add(col)
            expect(":")
            tree(v, col)

    skip()
    if text[pos:].strip() == "1":
        return RigidTree((), (), (), (), flavor)
    while True:
        roots.append(tree(-1, 0))
        skip()
        if pos >= L:
            break
        if text[pos] != "*":
            raise ParseError(f"expected '*' or end of input, got {text[pos]!r}", text, pos)
        pos += 1
    if flavor == "k" and len(roots) > 1:
        raise ParseError("k-flavor elements are single trees, not forests", text, 0)
    return RigidTree(tuple(parent), tuple(color), tuple(tuple(k) for k in kids), tuple(roots), flavor)


def parse_key(text: str, flavor: str = "unordered", n: int | None = None) -> Forest:
    return canonicalize(parse(text, flavor, n), flavor)


# enumeration


@lru_cache(maxsize=None)
def enumerate_trees(flavor: str, n: int, m: int) -> tuple[Forest, ...]:
    """All isomorphism classes of single trees with ``m`` vertices (``m=0``: the empty tree).

    Sorted by canonical text.
    """
    _check_flavor(flavor)
    if m == 0:
        return (Forest(()),)
    return tuple(Forest((t,)) for t in sorted(_trees(flavor, n, m), key=tree_str))


@lru_cache(maxsize=None)
def _trees(flavor: str, n: int, m: int) -> tuple[tuple, ...]:
    if m < 1:
        return ()
    if m == 1:
        return ((),)
    out = []
    if flavor == "unordered":
        cands = [
            (tree_size(t), (c, t))
            for size in range(1, m)
            for c in range(1, n + 1)
            for t in sorted(_trees(flavor, n, size), key=tree_str)
        ]

        def pick(start, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for i in range(start, len(cands)):
                size, ch = cands[i]
                if size <= remaining:
                    acc.append(ch)
                    pick(i, remaining - size, acc)
                    acc.pop()

        pick(0, m - 1, [])
        return tuple(_canon_tree(ch, flavor) for ch in out)
    if flavor == "planar":

        def seqs(min_color, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for c in range(min_color, n + 1):
                for size in range(1, remaining + 1):
                    for t in _trees(flavor, n, size):
                        acc.append((c, t))
                        seqs(c, remaining - size, acc)
                        acc.pop()

        seqs(1, m - 1, [])
        return tuple(out)
    # k flavor: each color used at most once
    def slots(c, remaining, acc):
        if c > n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        slots(c + 1, remaining, acc)
        for size in range(1, remaining + 1):
            for t in _trees(flavor, n, size):
                acc.append((c, t))
                slots(c + 1, remaining - size, acc)
                acc.pop()

    slots(1, m - 1, [])
    return tuple(out)


def enumerate_trees_bruteforce(flavor: str, n: int, m: int) -> list[Forest]:
    """Independent generator: canonicalize every recursive labeled colored tree.

    Planar children follow the label order, which reaches every planar shape.
    """
    _check_flavor(flavor)
    if m == 0:
        return [Forest(())]
    found = set()
    for parents in itertools.product(*[range(i) for i in range(1, m)]):
        for colors in itertools.product(range(1, n + 1), repeat=m - 1):
            parent = (-1,) + parents
            color = (0,) + colors
            if flavor == "k":
                pairs = list(zip(parents, colors))
                if len(pairs) != len(set(pairs)):
                    continue
            rt = RigidTree.from_parents(parent, color, flavor)
            found.add(canonicalize(rt))
    return sorted(found, key=str)


@lru_cache(maxsize=None)
def enumerate_forests(flavor: str, n: int, m: int) -> tuple[Forest, ...]:
    """All forests with ``m`` vertices in total, sorted by canonical text.

    For the ``k`` flavor the basis consists of single trees only.
    """
    _check_flavor(flavor)
    if flavor == "k":
        return enumerate_trees(flavor, n, m)
    if m == 0:
        return (Forest(()),)
    out = set()

    def build(remaining, acc, min_key):
        if remaining == 0:
            out.add(_canon_forest(acc, flavor))
            return
        for size in range(1, remaining + 1):
            for t in _trees(flavor, n, size):
                k = tree_str(t)
                if flavor == "unordered" and k < min_key:
                    continue
                acc.append(t)
                build(remaining - size, acc, k if flavor == "unordered" else "")
                acc.pop()

    build(m, [], "")
    return tuple(sorted(out, key=str))


# subforests and the deformation weights


def subforests(t: RigidTree) -> Iterator[frozenset[int]]:
    """All ``2^|t|`` vertex subsets, by increasing bitmask."""
    m = len(t)
    for mask in range(1 << m):
        yield frozenset(v for v in range(m) if mask >> v & 1)


def _restrict_structure(t: RigidTree, s: Iterable[int]):
    """Induced parent and color of each vertex of ``s`` (vertices sorted by pre-order)."""
    s = set(s)
    rank = t.preorder
    members = sorted(s, key=rank.__getitem__)
    ipar = {}
    icol = {}
    for v in members:
        prev, cur = v, t.parent[v]
        while cur != -1 and cur not in s:
            prev, cur = cur, t.parent[cur]
        ipar[v] = cur
        icol[v] = t.color[prev] if cur != -1 else 0
    return members, ipar, icol


def restrict(t: RigidTree, s: Iterable[int]) -> tuple[RigidTree, list[int]]:
    """The induced colored subforest on ``s`` as a new rigid forest.

    An edge ``w < v`` exists when ``w`` is the highest element of ``s`` strictly
    below ``v``; it takes the color of the lowest ambient edge on the path from
    ``v`` down to ``w``.  Siblings and components are ordered by ambient
    pre-order.  Returns the forest and the list mapping new vertex -> old vertex.
    """
    members, ipar, icol = _restrict_structure(t, s)
    new = {v: i for i, v in enumerate(members)}
    parent = [new[ipar[v]] if ipar[v] != -1 else -1 for v in members]
    color = [icol[v] for v in members]
    kids: list[list[int]] = [[] for _ in members]
    roots = []
    for i, v in enumerate(members):
        if parent[i] == -1:
            roots.append(i)
        else:
            kids[parent[i]].append(i)
    rt = RigidTree(tuple(parent), tuple(color), tuple(tuple(k) for k in kids), tuple(roots), t.flavor)
    return rt, members


def induce(t: RigidTree, s: Iterable[int], flavor: str | None = None) -> Forest:
    """Canonical key of the induced colored subforest on ``s``."""
    members, ipar, icol = _restrict_structure(t, s)
    flavor = flavor or t.flavor
    kids: dict[int, list[int]] = {v: [] for v in members}
    roots = []
    for v in members:
        (roots if ipar[v] == -1 else kids[ipar[v]]).append(v)

    def build(v):
        return _canon_tree(((icol[c], build(c)) for c in kids[v]), flavor)

    return _canon_forest((build(r) for r in roots), flavor)


def p_count(t: RigidTree, v: int, s: Iterable[int], k: int) -> int:
    """Edges of color ``k`` on the path from ``v`` to its root whose lower vertex is outside ``s``."""
    s = set(s)
    return sum(1 for low, c in t.paths[v] if c == k and low not in s)


def q_exponents(
    t: RigidTree, s: Iterable[int], n: int, within: Iterable[int] | None = None
) -> tuple[list[int], list[int]]:
    """Exponent vectors of ``q1`` and ``q2`` in the weight of ``s``.

    With ``within`` given, the weight is computed in the induced subforest on
    ``within`` (which must contain ``s``) without materializing it.
    """
    s = set(s)
    u = set(t.vertices) if within is None else set(within)
    e1 = [0] * n
    e2 = [0] * n
    for v in u:
        inside = v in s
        for low, c in t.paths[v]:
            if low in u and (low in s) != inside:
                if inside:
                    e1[c - 1] += 1
                else:
                    e2[c - 1] += 1
    return e1, e2


def q_coeff(t: RigidTree, s: Iterable[int], params: Params, within: Iterable[int] | None = None) -> Coeff:
    e1, e2 = q_exponents(t, s, params.n, within)
    return params.monomial(e1, e2)


# cuts and grafting


def _edges(t: RigidTree) -> list[int]:
    """Edges named by their upper vertex."""
    return [v for v in t.vertices if t.parent[v] != -1]


def admissible_cuts(t: RigidTree) -> list[frozenset[int]]:
    """All admissible cuts of a single tree, edges named by their upper vertex.

    A cut is admissible iff no cut edge lies below another, i.e. the upper
    vertices form an antichain.  The empty cut is included.
    """
    if not t.is_tree():
        raise ValueError("admissible cuts are defined for a single tree")
    edges = _edges(t)
    ancestors = {v: {low for low, _ in t.paths[v]} for v in edges}
    cuts: list[frozenset[int]] = [frozenset()]

    def extend(start, acc):
        for i in range(start, len(edges)):
            e = edges[i]
            if all(e not in ancestors[f] and f not in ancestors[e] for f in acc):
                acc.append(e)
                cuts.append(frozenset(acc))
                extend(i + 1, acc)
                acc.pop()

    extend(0, [])
    return sorted(cuts, key=lambda c: (len(c), sorted(c)))


def _is_admissible(t: RigidTree, cut: frozenset[int]) -> bool:
    """Literal check: each leaf-to-root path meets the cut at most once."""
    for v in t.vertices:
        if t.children[v]:
            continue
        chain = {v} | {low for low, _ in t.paths[v]}
        if len(chain & cut) > 1:
            return False
    return True


def cut_split(t: RigidTree, cut: Iterable[int], flavor: str | None = None) -> tuple[Forest, Forest]:
    """``(P^c, R^c)``: the pruned forest and the root component."""
    cut = frozenset(cut)
    if not t.is_tree():
        raise ValueError("cuts are defined for a single tree")
    if any(t.parent[e] == -1 or e not in t.vertices for e in cut):
        raise ValueError("cut contains a non-edge")
    if not _is_admissible(t, cut):
        raise ValueError("cut is not admissible")
    root = t.roots[0]
    comp = {}
    for v in sorted(t.vertices, key=t.preorder.__getitem__):
        p = t.parent[v]
        comp[v] = v if (p == -1 or v in cut) else comp[p]
    pruned = [v for v in t.vertices if comp[v] != root]
    kept = [v for v in t.vertices if comp[v] == root]
    # both parts are unions of connected pieces, so induced edges are original edges
    return induce(t, pruned, flavor), induce(t, kept, flavor)


def graft(s: Forest, t: Forest, v: int, color: int, flavor: str = "unordered") -> Forest:
    """Graft the tree ``s`` onto vertex ``v`` of ``t`` (pre-order index) by an edge of ``color``.

    Planar flavor: the new child becomes the last child of its color class.
    """
    if len(s) != 1 or len(t) != 1:
        raise ValueError("grafting needs two nonempty single trees")
    rt = RigidTree.from_forest(t, flavor)
    if not 0 <= v < len(rt):
        raise ValueError(f"vertex {v} not in tree with {len(rt)} vertices")
    if color < 1:
        raise ValueError("colors are positive")
    rs = RigidTree.from_forest(s, flavor)
    off = len(rt)
    parent = list(rt.parent) + [p + off if p != -1 else v for p in rs.parent]
    col = list(rt.color) + [c if rs.parent[i] != -1 else color for i, c in enumerate(rs.color)]
    kids = [list(k) for k in rt.children] + [[c + off for c in k] for k in rs.children]
    kids[v].append(off)
    g = RigidTree(tuple(parent), tuple(col), tuple(tuple(k) for k in kids), rt.roots, flavor)
    return canonicalize(g, flavor)


def aut_count(key: Forest) -> int:
    """Order of the color-preserving automorphism group of an unordered forest."""

    @lru_cache(maxsize=None)
    def tree_aut(tree):
        a = 1
        for (c, sub), mult in Counter(tree).items():
            a *= factorial(mult) * tree_aut(sub) ** mult
        return a

    a = 1
    for t, mult in Counter(key).items():
        a *= factorial(mult) * tree_aut(t) ** mult
    return a


def aut_count_bruteforce(t: RigidTree) -> int:
    """Count vertex permutations preserving parents and edge colors."""
    m = len(t)
    count = 0
    for perm in itertools.permutations(range(m)):
        if all(
            (t.parent[v] == -1 and t.parent[perm[v]] == -1)
            or (t.parent[v] != -1 and t.parent[perm[v]] == perm[t.parent[v]] and t.color[perm[v]] == t.color[v])
            for v in range(m)
        ):
            count += 1
    return count


def p_component(t: RigidTree, colors: Iterable[int]) -> frozenset[int]:
    """Vertices joined to the root by a path using only the given colors."""
    if not t.is_tree():
        raise ValueError("p-connected components are defined for a single tree")
    colors = set(colors)
    out = set()
    stack = [t.roots[0]]
    while stack:
        v = stack.pop()
        out.add(v)
        stack.extend(c for c in t.children[v] if t.color[c] in colors)
    return frozenset(out)
