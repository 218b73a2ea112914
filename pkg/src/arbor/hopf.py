"""The 2n-parameter Hopf algebras on colored forests.

For a forest ``t`` the coproduct is the sum over all vertex subsets ``s``
of ``q(s, t) * s (x) s^c`` where ``s`` and ``s^c`` carry the induced colored
forest structure and ``q`` is the monomial built from path counts
(:func:`arbor.trees.q_exponents`).  The same formula serves the planar flavor;
the ``k`` flavor is the image under :func:`project_k`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .coefficients import Coeff, Params
from .lincomb import LinComb, Tensor, apply_at, contract_at
from .trees import (
    Forest,
    RigidTree,
    admissible_cuts,
    cut_split,
    forest_product,
    induce,
    is_k_tree,
    q_coeff,
)

__all__ = [
    "HopfContext",
    "multiply",
    "coproduct",
    "coproduct_basis",
    "counit",
    "reduced_coproduct",
    "antipode_series",
    "antipode_partitions",
    "convolve",
    "ck_coproduct",
    "project_k",
    "unit",
    "identity",
    "unit_counit",
]


@dataclass(frozen=True)
class HopfContext:
    """Flavor, number of colors and deformation parameters."""

    flavor: str
    n: int
    params: Params

    def __post_init__(self):
        if self.flavor not in ("unordered", "planar", "k"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.params.n != self.n:
            raise ValueError(f"params are for {self.params.n} colors, context for {self.n}")
        if self.flavor == "k":
            if self.params.symbolic:
                raise ValueError("the k flavor needs concrete parameters")
            for name, row in (("q1", self.params.q1), ("q2", self.params.q2)):
                if sum(1 for x in row if x) > 1:
                    raise ValueError(f"the k flavor allows at most one nonzero entry in {name}")

    @property
    def ambient(self) -> str:
        """Flavor in which forests are multiplied and cut."""
        return "unordered" if self.flavor == "k" else self.flavor

    def one(self) -> Coeff:
        return self.params.one()


def unit() -> LinComb:
    return LinComb.basis(Forest(()))


def multiply(a: LinComb, b: LinComb, ctx: HopfContext) -> LinComb:
    """Bilinear forest product; tensors are multiplied factorwise."""
    if ctx.flavor == "k":
        raise ValueError("k_n has no internal product")
    flavor = ctx.flavor
    out: dict = {}
    for k1, c1 in a.terms.items():
        for k2, c2 in b.terms.items():
            if isinstance(k1, Tensor):
                if not isinstance(k2, Tensor) or len(k1) != len(k2):
                    raise TypeError("tensor ranks differ")
                key = Tensor(forest_product(x, y, flavor) for x, y in zip(k1, k2))
            else:
                key = forest_product(k1, k2, flavor)
            s = out.get(key, 0) + c1 * c2
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return LinComb._raw(out)


def _mu(key: Tensor, flavor: str) -> Forest:
    out = Forest(())
    for f in key:
        out = forest_product(out, f, flavor)
    return out


@lru_cache(maxsize=None)
def coproduct_basis(t: Forest, ctx: HopfContext) -> LinComb:
    """Deformed coproduct of one basis forest, by enumeration of all vertex subsets."""
    flavor = ctx.ambient
    rt = RigidTree.from_forest(t, flavor)
    m = len(rt)
    full = frozenset(range(m))
    out: dict = {}
    for mask in range(1 << m):
        s = frozenset(v for v in range(m) if mask >> v & 1)
        c = q_coeff(rt, s, ctx.params)
        if not c:
            continue
        key = Tensor((induce(rt, s, flavor), induce(rt, full - s, flavor)))
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    result = LinComb._raw(out)
    if ctx.flavor == "k":
        result = project_k(result, ctx)
    return result


def coproduct(x: LinComb, ctx: HopfContext) -> LinComb:
    out: dict = {}
    for k, c in x.terms.items():
        for k2, c2 in coproduct_basis(k, ctx).terms.items():
            s = out.get(k2, 0) + c * c2
            if s:
                out[k2] = s
            else:
                out.pop(k2, None)
    return LinComb._raw(out)


def counit(x: LinComb) -> Coeff:
    """Coefficient of the empty forest."""
    return x.coefficient_of(Forest(()))


def _counit_basis(k: Forest) -> int:
    return 1 if not k else 0


def reduced_coproduct(x: LinComb, ctx: HopfContext) -> LinComb:
    """``Delta(x) - x (x) 1 - 1 (x) x`` for ``x`` without a degree-0 part."""
    if x.coefficient_of(Forest(())):
        raise ValueError("reduced coproduct needs an element of the augmentation ideal")
    one = Forest(())
    out = dict(coproduct(x, ctx).terms)
    for k, c in x.terms.items():
        for key in (Tensor((k, one)), Tensor((one, k))):
            s = out.get(key, 0) - c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return LinComb._raw(out)


def _reduced_basis(k: Forest, ctx: HopfContext) -> LinComb:
    return reduced_coproduct(LinComb.basis(k), ctx)


@lru_cache(maxsize=None)
def _antipode_series_basis(t: Forest, ctx: HopfContext) -> LinComb:
    if not t:
        return LinComb.basis(t)
    flavor = ctx.flavor
    # S(t) = -t + mu Dbar(t) - mu^(2) Dbar^(2)(t) + ...
    result = LinComb.basis(t, -1)
    cur = LinComb.basis(t)
    for k in range(1, t.degree):
        cur = apply_at(cur, k - 1, lambda f: _reduced_basis(f, ctx))
        if not cur:
            break
        prod: dict = {}
        for key, c in cur.terms.items():
            f = _mu(key, flavor)
            s = prod.get(f, 0) + c
            if s:
                prod[f] = s
            else:
                prod.pop(f, None)
        result = result + LinComb._raw(prod).scale((-1) ** (k + 1))
    return result


def antipode_series(x: LinComb, ctx: HopfContext) -> LinComb:
    """Antipode from the geometric series in the reduced coproduct."""
    if ctx.flavor == "k":
        raise ValueError("the antipode is defined on the unordered and planar flavors")
    out = LinComb.zero()
    for k, c in x.terms.items():
        out = out + _antipode_series_basis(k, ctx).scale(c)
    return out


@lru_cache(maxsize=None)
def _antipode_partitions_basis(t: Forest, ctx: HopfContext) -> LinComb:
    flavor = ctx.flavor
    rt = RigidTree.from_forest(t, flavor)
    m = len(rt)

    @lru_cache(maxsize=None)
    def blocks(u: frozenset) -> dict:
        # signed sum over ordered partitions of u into nonempty blocks
        if not u:
            return {Forest(()): 1}
        members = sorted(u)
        out: dict = {}
        for mask in range(1, 1 << len(members)):
            s = frozenset(members[i] for i in range(len(members)) if mask >> i & 1)
            c = q_coeff(rt, s, ctx.params, within=u)
            if not c:
                continue
            head = induce(rt, s, flavor)
            for tail, c2 in blocks(u - s).items():
                key = forest_product(head, tail, flavor)
                v = out.get(key, 0) - c * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    return LinComb._raw(dict(blocks(frozenset(range(m)))))


def antipode_partitions(x: LinComb, ctx: HopfContext) -> LinComb:
    """Antipode as a signed sum over ordered partitions into nonempty subforests.

    Block ``s_j`` is weighted by ``q`` of ``s_j`` inside the subforest induced on
    ``s_j u ... u s_k``.
    """
    if ctx.flavor == "k":
        raise ValueError("the antipode is defined on the unordered and planar flavors")
    out = LinComb.zero()
    for k, c in x.terms.items():
        out = out + _antipode_partitions_basis(k, ctx).scale(c)
    return out


LinearMap = Callable[[Forest], LinComb]


def identity(k: Forest) -> LinComb:
    return LinComb.basis(k)


def unit_counit(k: Forest) -> LinComb:
    return LinComb.basis(Forest(())) if not k else LinComb.zero()


def convolve(f: LinearMap, g: LinearMap, x: LinComb, ctx: HopfContext) -> LinComb:
    """``(f * g)(x) = mu (f (x) g) Delta(x)``."""
    out = LinComb.zero()
    for key, c in coproduct(x, ctx).terms.items():
        out = out + multiply(f(key[0]), g(key[1]), ctx).scale(c)
    return out


@lru_cache(maxsize=None)
def _ck_tree(tree: tuple) -> LinComb:
    rt = RigidTree.from_forest((tree,))
    out: dict = {}
    whole = Forest((tree,))
    out[Tensor((whole, Forest(())))] = 1
    for cut in admissible_cuts(rt):
        key = Tensor(cut_split(rt, cut))
        out[key] = out.get(key, 0) + 1
    return LinComb._raw(out)


def ck_coproduct(x: LinComb, n: int = 1) -> LinComb:
    """Connes-Kreimer coproduct by admissible cuts, extended multiplicatively.

    Besides the admissible edge cuts, each tree contributes ``t (x) 1`` (the
    cut below the root).
    """
    if n != 1:
        raise ValueError("the admissible-cut coproduct is implemented for one color")
    ctx = HopfContext("unordered", 1, Params.connes_kreimer())
    out = LinComb.zero()
    for k, c in x.terms.items():
        if any(col != 1 for col in _colors(k)):
            raise ValueError("the admissible-cut coproduct is implemented for one color")
        acc = LinComb.basis(Tensor((Forest(()), Forest(()))))
        for tree in k:
            acc = multiply(acc, _ck_tree(tree), ctx)
        out = out + acc.scale(c)
    return out


def _colors(forest):
    stack = list(forest)
    while stack:
        t = stack.pop()
        for c, sub in t:
            yield c
            stack.append(sub)


def _in_k(f: Forest) -> bool:
    return len(f) <= 1 and all(is_k_tree(t) for t in f)


def project_k(x: LinComb, ctx: HopfContext | None = None) -> LinComb:
    """Drop terms outside ``k_n``: multi-tree forests or repeated child colors."""
    if ctx is not None and ctx.flavor != "k":
        HopfContext("k", ctx.n, ctx.params)  # validates the parameter condition
    out = {}
    for key, c in x.terms.items():
        parts = key if isinstance(key, Tensor) else (key,)
        if all(_in_k(p) for p in parts):
            out[key] = c
    return LinComb._raw(out)
