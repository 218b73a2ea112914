from __future__ import annotations

from fractions import Fraction

import pytest

from arbor import checks
from arbor.coefficients import MPoly, Params
from arbor.hopf import (
    HopfContext,
    antipode_partitions,
    antipode_series,
    ck_coproduct,
    convolve,
    coproduct,
    counit,
    identity,
    multiply,
    project_k,
    reduced_coproduct,
    unit_counit,
)
from arbor.lincomb import LinComb, Tensor
from arbor.trees import Forest, enumerate_forests, enumerate_trees, parse_key

import oracles
from conftest import as_oracle

ONE = Forest(())
SYM2 = HopfContext("unordered", 2, Params.symbolic_params(2))
CK = HopfContext("unordered", 1, Params.connes_kreimer())


def K(text, flavor="unordered", n=2):
    return parse_key(text, flavor, n)


def B(text, flavor="unordered", n=2):
    return LinComb.basis(K(text, flavor, n))


def T(a, b, n=2):
    return Tensor((K(a, n=n), K(b, n=n)))


def q(i, j):
    return MPoly.var(i, j, 2)


def test_multiply_examples():
    assert multiply(LinComb.basis(ONE), B("[1:[]]"), SYM2) == B("[1:[]]")
    assert multiply(B("[]"), B("[]"), SYM2) == B("[]*[]")
    planar = HopfContext("planar", 2, Params.symbolic_params(2))
    s, t = B("[1:[]]", "planar"), B("[]", "planar")
    assert multiply(s, t, planar) != multiply(t, s, planar)
    with pytest.raises(ValueError):
        multiply(B("[]"), B("[]"), HopfContext("k", 2, Params.concrete([0, 1], [0, 0])))


def test_coproduct_small_examples():
    assert coproduct(LinComb.basis(ONE), SYM2) == LinComb.basis(Tensor((ONE, ONE)))
    assert coproduct(B("[]"), SYM2) == LinComb({T("[]", "1"): 1, T("1", "[]"): 1})
    for j in (1, 2):
        e = f"[{j}:[]]"
        want = LinComb({T(e, "1"): 1, T("1", e): 1, T("[]", "[]"): q(1, j) + q(2, j)})
        assert coproduct(B(e), SYM2) == want


def test_coproduct_matches_oracle_symbolic():
    for m in range(5):
        for t in enumerate_forests("unordered", 2, m):
            got = as_oracle(coproduct(LinComb.basis(t), SYM2), 4)
            want = {k: dict(v) for k, v in oracles.coproduct(t, 2).items()}
            want = {k: {e: c for e, c in v.items() if c} for k, v in want.items()}
            assert got == want, str(t)


def test_coproduct_matches_oracle_concrete():
    vals = [Fraction(1, 2), Fraction(-3), Fraction(2, 3), Fraction(5)]
    ctx = HopfContext("unordered", 2, Params.concrete(vals[:2], vals[2:]))
    for t in enumerate_forests("unordered", 2, 4):
        got = {(str(a), str(b)): c for (a, b), c in coproduct(LinComb.basis(t), ctx).terms.items()}
        assert got == oracles.specialize(oracles.coproduct(t, 2), vals)


def test_counit_examples():
    assert counit(LinComb.basis(ONE)) == 1
    for m in range(1, 4):
        for t in enumerate_forests("unordered", 2, m):
            assert counit(LinComb.basis(t)) == 0
    assert counit(LinComb({ONE: 3, K("[]"): 5})) == 3


def test_reduced_coproduct_examples():
    assert reduced_coproduct(B("[]"), SYM2) == LinComb.zero()
    for j in (1, 2):
        assert reduced_coproduct(B(f"[{j}:[]]"), SYM2) == LinComb({T("[]", "[]"): q(1, j) + q(2, j)})
    # multiples of a primitive are primitive
    x = B("[]").scale(3)
    assert reduced_coproduct(x, SYM2) == LinComb.zero()
    with pytest.raises(ValueError):
        reduced_coproduct(LinComb.basis(ONE), SYM2)


def test_antipode_examples():
    assert antipode_series(LinComb.basis(ONE), SYM2) == LinComb.basis(ONE)
    assert antipode_series(B("[]"), SYM2) == -B("[]")
    assert antipode_partitions(B("[]"), SYM2) == -B("[]")
    ck = LinComb({K("[1:[]]", n=1): -1, K("[]*[]", n=1): 1})
    assert antipode_series(B("[1:[]]", n=1), CK) == ck
    assert antipode_partitions(B("[1:[]]", n=1), CK) == ck
    for j in (1, 2):
        want = LinComb({K(f"[{j}:[]]"): -1, K("[]*[]"): q(1, j) + q(2, j)})
        assert antipode_series(B(f"[{j}:[]]"), SYM2) == want
        assert antipode_partitions(B(f"[{j}:[]]"), SYM2) == want


def test_antipode_ck_ladder_three():
    # S(l3) = -l3 + 2 [] l2 - []^3 for the Connes-Kreimer algebra
    want = LinComb({K("[1:[1:[]]]", n=1): -1, K("[]*[1:[]]", n=1): 2, K("[]*[]*[]", n=1): -1})
    assert antipode_series(B("[1:[1:[]]]", n=1), CK) == want


def test_convolution_examples():
    x = LinComb({ONE: 2, K("[1:[]]"): 1})
    assert convolve(unit_counit, unit_counit, x, SYM2) == LinComb.basis(ONE, 2)

    def S(k):
        return antipode_series(LinComb.basis(k), SYM2)

    for m in range(4):
        for t in enumerate_forests("unordered", 2, m):
            want = LinComb.basis(ONE, counit(LinComb.basis(t)))
            assert convolve(S, identity, LinComb.basis(t), SYM2) == want
            assert convolve(identity, S, LinComb.basis(t), SYM2) == want


def test_ck_coproduct_examples():
    dot, l2 = K("[]", n=1), K("[1:[]]", n=1)
    cherry, dots = K("[1:[] 1:[]]", n=1), K("[]*[]", n=1)
    assert ck_coproduct(LinComb.basis(dot)) == LinComb({Tensor((dot, ONE)): 1, Tensor((ONE, dot)): 1})
    assert ck_coproduct(LinComb.basis(l2)) == LinComb(
        {Tensor((l2, ONE)): 1, Tensor((ONE, l2)): 1, Tensor((dot, dot)): 1}
    )
    assert ck_coproduct(LinComb.basis(cherry)) == LinComb(
        {Tensor((cherry, ONE)): 1, Tensor((ONE, cherry)): 1, Tensor((dot, l2)): 2, Tensor((dots, dot)): 1}
    )
    with pytest.raises(ValueError):
        ck_coproduct(B("[2:[]]"))


def test_ck_coproduct_against_oracle_cuts():
    for m in range(1, 7):
        for t in enumerate_trees("unordered", 1, m):
            got = {(str(a), str(b)): c for (a, b), c in ck_coproduct(LinComb.basis(t)).terms.items()}
            want = dict(oracles.ck_cuts(t))
            want[(str(t), "1")] = want.get((str(t), "1"), 0) + 1
            assert got == want


def test_ck_specialization_equals_cuts():
    for m in range(7):
        for t in enumerate_forests("unordered", 1, m):
            assert coproduct(LinComb.basis(t), CK) == ck_coproduct(LinComb.basis(t))


def test_project_k_examples():
    ctx = HopfContext("k", 2, Params.concrete([0, 1], [0, 0]))
    assert project_k(B("[]*[]"), ctx) == LinComb.zero()
    amb = HopfContext("unordered", 2, Params.concrete([0, 1], [0, 0]))
    got = project_k(coproduct(B("[2:[]]"), amb), ctx)
    assert got == LinComb({T("[2:[]]", "1"): 1, T("1", "[2:[]]"): 1, T("[]", "[]"): 1})
    assert project_k(got, ctx) == got
    with pytest.raises(ValueError):
        project_k(got, HopfContext("unordered", 2, Params.concrete([1, 1], [0, 0])))


def test_project_k_is_idempotent_and_drops_repeats():
    x = LinComb({K("[1:[] 1:[]]"): 1, K("[1:[] 2:[]]"): 2, K("[]*[]"): 3})
    y = project_k(x)
    assert y == LinComb({K("[1:[] 2:[]]"): 2})
    assert project_k(y) == y


def test_k_context_validation():
    with pytest.raises(ValueError):
        HopfContext("k", 2, Params.symbolic_params(2))
    with pytest.raises(ValueError):
        HopfContext("k", 2, Params.concrete([1, 1], [0, 0]))
    with pytest.raises(ValueError):
        HopfContext("unordered", 3, Params.symbolic_params(2))


def test_k_projection_drop_clause_is_vacuous():
    # observed: only the multi-component clause ever removes a term
    for q1, q2 in checks._k_param_patterns(2):
        stats = checks.k_projection_drops(2, 5, q1, q2)
        assert stats["repeated_color"] == 0
        assert stats["multi_component"] == 0


def test_grading_of_coproduct_and_antipode():
    for m in range(4):
        for t in enumerate_forests("unordered", 2, m):
            assert coproduct(LinComb.basis(t), SYM2).degrees() <= {m}
            assert antipode_series(LinComb.basis(t), SYM2).degrees() <= {m}


@pytest.mark.parametrize("suite", ["coassoc", "counit", "bialgebra", "antipode"])
def test_suites_small_unordered(suite):
    assert checks.run_suite(suite, "unordered", 2, None, 3).passed


@pytest.mark.parametrize("suite", ["coassoc", "counit", "bialgebra", "antipode"])
def test_suites_small_planar(suite):
    assert checks.run_suite(suite, "planar", 2, None, 3).passed


def test_k_flavor_coassociativity_all_patterns():
    r = checks.run_suite("coassoc", "k", 2, None, 5)
    assert r.passed, r


def test_ck_suite_small():
    assert checks.check_ck_equal(4, 4).passed


def test_pk_lemma_small():
    assert checks.check_pk_lemma(2, 4).passed


def test_failing_check_reports_witness():
    # the runner keeps the first failure
    r = checks._Runner("demo")
    r.check(True, lambda: "unused")
    r.check(False, lambda: "first")
    r.check(False, lambda: "second")
    rep = r.report()
    assert not rep.passed and rep.witness == "first" and rep.checked == 3
    assert str(rep).splitlines()[0] == "demo: FAIL (3 checked)"
