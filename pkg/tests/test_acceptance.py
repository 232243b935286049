"""
Acceptance criteria, one test each. Every test prints a single
``PASS criterion N: ...`` or ``FAIL criterion N: ...`` line and then
asserts; failures list the offending sub-checks.
"""

import random
from fractions import Fraction
from itertools import combinations

from betanbc.arrangement import projective_closure, random_arrangement
from betanbc.bases import (admissible_congruence_chain, betanbc_basis, mixed_bases,
                           monomial_basis_check, nbc_flag_forms_basis, transition_matrix)
from betanbc.complexes import (broken_circuit_complex, check_lex_shelling, folkman_complex,
                               reduced_betti_numbers, verify_flag_basis)
from betanbc.matroid import (beta_count_check, betanbc_direct, betanbc_recursive, nbc_bases,
                             nbc_sets, supersolvable_betanbc)
from betanbc.osalgebra import OSAlgebra, aomoto_cohomology, flag_expansion, flag_form
from betanbc.resonance import check_yuzvinsky, nonresonance_conditions, sample_weights

from conftest import load, random_corpus, weighted_corpus
from oracles import brute_lattice, in_ideal, os_dimension, os_quotient, reduced_betti_smith

FIXED = ("E", "GP", "N2", "P3")
PAPER_NINE = [[1], [2], [3], [4], [5], [2, 4, 5], [1, 3, 5], [1, 2, "inf"], [3, 4, "inf"]]


def weighted():
    rng = random.Random(7)
    fixed = [(name, load(name)) for name in FIXED]
    out = [(name, A, sample_weights(rng, A)) for name, A in fixed]
    for k, (A, w) in enumerate(weighted_corpus(50, 2024)):
        out.append(("random%d" % k, A, w))
    return out


def unweighted():
    return [(name, load(name)) for name in FIXED] + [
        ("random%d" % k, A) for k, A in enumerate(random_corpus(50, 2024))]


def report(capsys, n, what, failures):
    with capsys.disabled():
        print("\n%s criterion %d: %s%s" % ("FAIL" if failures else "PASS", n, what,
                                         "" if not failures else " | " + "; ".join(failures[:5])))
    assert not failures


def test_criterion_1_example_fixture(capsys):
    E = load("E")
    bad = []
    if nbc_bases(E) != [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]:
        bad.append("nbc(E) = %s" % nbc_bases(E))
    if betanbc_direct(E) != [(2, 4), (2, 5)]:
        bad.append("betanbc(E) = %s" % betanbc_direct(E))
    deleted = E.subarrangement((1, 2, 3, 4))
    got = betanbc_direct(deleted)
    if got != [(3, 4)]:
        bad.append("betanbc(A') = %s, expected [(3, 4)]" % got)
    nu = E.flat((2, 5)).support[0]
    if nu != 2:
        bad.append("nu(H2 & H5) = H%d" % nu)
    report(capsys, 1, "nbc, betanbc, betanbc(A') and nu on E", bad)


def test_criterion_2_flag_expansions_and_conditions(capsys):
    E = load("E")
    alg = OSAlgebra(E)
    rng = random.Random(2)
    bad = []
    for _ in range(5):
        w = sample_weights(rng, E, "nonresonance")
        l1, l2, l3, l4, l5 = (Fraction(x) for x in w)
        expected = {(2, 4): {(2, 4): l2 * l4, (4, 5): -l4 * l5},
                    (2, 5): {(2, 5): l2 * l5, (4, 5): l4 * l5}}
        for B, terms in expected.items():
            x = flag_expansion(E, w, B)
            if x.terms != terms:
                bad.append("Xi%s at %s: %s" % (B, w, x.terms))
            # the unreduced expansion reduces to the flag form
            acc = None
            for m, c in x.terms.items():
                term = alg.reduce_monomial(m).scale(c)
                acc = term if acc is None else acc + term
            if acc != flag_form(alg, w, B):
                bad.append("reduced Xi%s mismatch" % (B,))
    got = sorted(map(str, nonresonance_conditions(projective_closure(E), True)))
    if got != sorted(map(str, PAPER_NINE)):
        bad.append("conditions %s" % got)
    report(capsys, 2, "unreduced flag expansions at 5 weight samples, nine conditions", bad)


def test_criterion_3_vanishing_and_dimension(capsys):
    bad = []
    for name, A, w in weighted():
        if not check_yuzvinsky(A, w).ok:
            bad.append("%s: weights fail the dense-flat condition" % name)
            continue
        beta = betanbc_direct(A)
        dims = aomoto_cohomology(A, w)
        if dims != [0] * A.rank + [len(beta)]:
            bad.append("%s: H^* = %s" % (name, dims))
        if len(beta) != beta_count_check(A):
            bad.append("%s: |betanbc| != (-1)^r chi(1)" % name)
    report(capsys, 3, "H^q = 0 below r, dim H^r = |betanbc| = (-1)^r chi(1), 54 instances", bad)


def test_criterion_4_basis_certificate(capsys):
    bad = []
    for name, A, w in weighted():
        basis = betanbc_basis(A, w)
        cert = basis.certificate
        if not (cert.independent and cert.spans and len(basis) == cert.h_top):
            bad.append("%s: certificate %s" % (name, cert.to_json()))
        if not nbc_flag_forms_basis(A, w):
            bad.append("%s: nbc flag forms not a basis of A^r" % name)
    report(capsys, 4, "betanbc flag forms certify H^r, nbc flag forms span A^r, 54 instances", bad)


def test_criterion_5_topology(capsys):
    bad = []
    for name, A in unweighted():
        beta = betanbc_direct(A)
        shell = check_lex_shelling(A)
        if not shell.is_shelling or shell.homology_facets != beta:
            bad.append("%s: shelling %s" % (name, shell.homology_facets))
        bBC = reduced_betti_numbers(broken_circuit_complex(A))
        bF = reduced_betti_numbers(folkman_complex(A))
        if bBC != bF:
            bad.append("%s: Betti BC %s vs F %s" % (name, bBC, bF))
        if bF[A.rank] != len(beta):  # index 0 is degree -1
            bad.append("%s: top Betti of F %d" % (name, bF[A.rank]))
        flags = verify_flag_basis(A)
        if not flags.ok:
            bad.append("%s: flag duals dependent" % name)
    report(capsys, 5, "lex shelling, Betti agreement, flag classes independent, 54 instances", bad)


def test_criterion_6_two_routes(capsys):
    bad = []
    for name, A in unweighted():
        if betanbc_direct(A) != betanbc_recursive(A):
            bad.append(name)
    A = load("E_prime")
    if supersolvable_betanbc(A, [[1, 2], [3, 4, 5]]) != betanbc_direct(A):
        bad.append("supersolvable product formula")
    report(capsys, 6, "direct and deletion-restriction betanbc agree, supersolvable formula", bad)


ORDERS = {"E": [(5, 4, 3, 2, 1), (2, 1, 3, 4, 5), (3, 1, 2, 4, 5)],
          "GP": [(3, 2, 1), (2, 3, 1), (1, 3, 2)]}


def test_criterion_7_transition(capsys):
    bad = []
    for name, orders in ORDERS.items():
        A = load(name)
        rng = random.Random(name)
        ws = [sample_weights(rng, A, "nonresonance") for _ in range(3)]
        for order in orders:
            T = transition_matrix(A, order, ws)
            if not T.is_integral or abs(T.determinant) != 1:
                bad.append("%s %s: %s" % (name, order, T.matrix))
            if len({s["hash"] for s in T.samples}) != 1:
                bad.append("%s %s: weight dependent" % (name, order))
        T = transition_matrix(A, A.indices, ws)
        size = len(betanbc_direct(A))
        if T.matrix != [[int(i == j) for j in range(size)] for i in range(size)]:
            bad.append("%s identity order" % name)
    report(capsys, 7, "transition matrices integral, unimodular, weight independent", bad)


def test_criterion_8_monomial(capsys):
    bad = []
    for name in ("E", "GP", "N2", "GI"):
        A = load(name)
        w = sample_weights(random.Random(name), A, "nonresonance")
        rep = monomial_basis_check(A, w)
        if not rep.holds or "unmixed" not in rep.sufficient:
            bad.append("%s: %s" % (name, rep.to_json()))
    A = load("ADM")
    rng = random.Random(8)
    for _ in range(3):
        w = sample_weights(rng, A, "nonresonance")
        rep = monomial_basis_check(A, w)
        if not rep.holds or "admissible" not in rep.sufficient:
            bad.append("ADM: %s" % rep.to_json())
        if not mixed_bases(A):
            bad.append("ADM: no mixed base to replay")
        for B in mixed_bases(A):
            failed = [step for step, ok in admissible_congruence_chain(A, w, B) if not ok]
            if failed:
                bad.append("ADM %s: %s" % (B, failed))
    report(capsys, 8, "monomial bases for unmixed fixtures, admissible fixture with congruence chain", bad)


def test_criterion_9_oracles(capsys):
    bad = []
    rng = random.Random(9)
    lattices = random_corpus(10, 7, max_n=8) + [random_arrangement(rng, 12, 2, span=2)]
    for A in lattices:
        if {X.support: X.codim for X in A.lattice} != brute_lattice(A):
            bad.append("lattice n=%d" % A.n)
    for A in random_corpus(8, 77, max_n=6):
        alg = OSAlgebra(A)
        for p in range(A.rank + 1):
            if os_dimension(A, p) != len(nbc_sets(A, p)):
                bad.append("OS dim n=%d p=%d" % (A.n, p))
        for p in range(1, A.rank + 1):
            quot = os_quotient(A, p)
            for T in combinations(A.indices, p):
                diff = {T: Fraction(1)}
                for m, v in alg.reduce_monomial(T).terms.items():
                    diff[m] = diff.get(m, 0) - v
                if not in_ideal(A, p, {k: v for k, v in diff.items() if v}, quot):
                    bad.append("normal form of %s" % (T,))
    for A in random_corpus(10, 41):
        BC, F = broken_circuit_complex(A), folkman_complex(A)
        if reduced_betti_numbers(BC) != reduced_betti_smith({q: [BC.labelled(s) for s in BC[q]] for q in BC.simplices}):
            bad.append("Smith BC n=%d" % A.n)
        if reduced_betti_numbers(F) != reduced_betti_smith({q: list(F[q]) for q in F.simplices}):
            bad.append("Smith F n=%d" % A.n)
    report(capsys, 9, "lattice, OS normal form and simplicial ranks against brute-force oracles", bad)
