import random
from fractions import Fraction

import pytest

from betanbc.arrangement import projective_closure
from betanbc.resonance import (WeightVector, check_nonresonance, check_yuzvinsky,
                               dense_at_infinity, dense_flats_affine, dense_report,
                               is_nonnegative_integer, localization_connected,
                               nonresonance_conditions, random_weights)

from conftest import E_WEIGHTS, FIXTURES, load, random_corpus

ids = lambda A: "n%d_l%d" % (A.n, A.dimension)

PAPER_NINE = [[1], [2], [3], [4], [5], [2, 4, 5], [1, 3, 5], [1, 2, "inf"], [3, 4, "inf"]]


def same(a, b):
    return sorted(map(str, a)) == sorted(map(str, b))


def test_weight_vector():
    w = WeightVector(["1/2", "1/3"])
    assert w.infinity == Fraction(-5, 6)
    assert w.flat_sum((1, "inf")) == Fraction(-1, 3)
    assert w.to_json() == ["1/2", "1/3"]


def test_dense_affine_examples(E):
    assert [X.support for X in dense_flats_affine(E)] == [(1,), (2,), (3,), (4,), (5,), (1, 3, 5), (2, 4, 5)]
    assert [X.support for X in dense_flats_affine(load("N2"))] == [(1,), (2,)]
    assert [X.support for X in dense_flats_affine(load("GP"))] == [(1,), (2,), (3,)]


def test_dense_at_infinity_E(E):
    sup = [projective_closure(E).labelled_support(X) for X in dense_at_infinity(projective_closure(E))]
    assert [1, 2, "inf"] in sup and [3, 4, "inf"] in sup and ["inf"] in sup


def test_dense_at_infinity_GP():
    PC = projective_closure(load("GP"))
    assert all(len(X.support) == 1 for X in dense_at_infinity(PC))


def test_dense_at_infinity_P3():
    PC = projective_closure(load("P3"))
    assert same([PC.labelled_support(X) for X in dense_at_infinity(PC)], [[1], [2], [3], ["inf"]])


def test_nine_conditions_compat(E):
    PC = projective_closure(E)
    assert same(nonresonance_conditions(PC, True), PAPER_NINE)
    assert same(nonresonance_conditions(PC), PAPER_NINE + [["inf"]])


def test_yuzvinsky_examples(E):
    assert check_yuzvinsky(E, E_WEIGHTS).ok
    rep = check_yuzvinsky(E, [1, 1, 1, 1, -2])
    # 1 + 1 - 2 vanishes on both triple points
    assert not rep.ok and rep.violations == [[1, 3, 5], [2, 4, 5]]
    assert not check_yuzvinsky(E, [0, 1, 1, 1, 1]).ok


def test_nonresonance_examples(E):
    assert check_nonresonance(E, E_WEIGHTS).ok
    rep = check_nonresonance(E, ["2", "1/3", "1/5", "1/7", "1/11"])
    assert not rep.ok and rep.violations == [[1]]
    # lambda1 + lambda2 + lambda_inf = -(l3 + l4 + l5) = 0
    rep = check_nonresonance(E, ["1/2", "1/3", "1/5", "1/7", "-12/35"])
    assert [1, 2, "inf"] in rep.violations


def test_lambda_inf_alone(E):
    # weights summing to -1 make lambda_inf = 1: flagged only without the compat flag
    w = ["1/2", "1/3", "1/5", "1/7", str(-1 - Fraction(1, 2) - Fraction(1, 3) - Fraction(1, 5) - Fraction(1, 7))]
    PC = projective_closure(E)
    assert ["inf"] in check_nonresonance(PC, w).violations
    assert ["inf"] not in check_nonresonance(PC, w, paper_example_compat=True).violations


def test_weight_length_checked(E):
    with pytest.raises(ValueError):
        check_yuzvinsky(E, [1, 2])
    with pytest.raises(ValueError):
        check_nonresonance(E, [1, 2])


@pytest.mark.parametrize("x, expected", [("0", True), ("3", True), ("-1", False), ("1/2", False), ("4/2", True)])
def test_nonnegative_integer(x, expected):
    assert is_nonnegative_integer(Fraction(x)) is expected


@pytest.mark.parametrize("A", random_corpus(30, 61), ids=ids)
def test_nonresonance_implies_yuzvinsky(A):
    rng = random.Random(A.n)
    PC = projective_closure(A)
    for _ in range(20):
        # small integers make both outcomes common
        w = [Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2))) for _ in range(A.n)]
        if check_nonresonance(PC, w).ok:
            assert check_yuzvinsky(A, w).ok


@pytest.mark.parametrize("A", [A for A in random_corpus(40, 63) if A.rank >= 2], ids=ids)
def test_rank2_dense_iff_three(A):
    for X in A.lattice.of_codim(2):
        assert localization_connected(A, X.support) == (len(X.support) >= 3)


@pytest.mark.parametrize("name", FIXTURES)
def test_affine_dense_embed_at_infinity(name):
    A = load(name)
    PC = projective_closure(A)
    at_inf = {X.support for X in dense_at_infinity(PC)}
    for X in dense_flats_affine(A):
        assert X.support in at_inf
    # every singleton is dense
    assert all((i,) in at_inf for i in A.indices)


def test_dense_report_shape(E):
    rep = dense_report(E, with_infinity=True)
    assert {"support": ["inf"], "at_infinity": True} in rep["infinity"]
    assert "infinity" not in dense_report(E)


def test_random_weights_nonzero():
    rng = random.Random(0)
    w = random_weights(rng, 50)
    assert all(v != 0 for v in w)
