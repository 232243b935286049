"""
Cross-check suite shared by ``betanbc verify`` and the acceptance tests.

Every check returns ``(status, detail)`` with status in pass/fail/skip; a
skip means the check's hypotheses (usually a weight condition) do not hold.
"""

import random
from fractions import Fraction
from itertools import combinations

from .arrangement import Arrangement, projective_closure
from .bases import (betanbc_basis, image_echelon, monomial_basis_check,
                    nbc_flag_forms_basis, transition_matrix)
from .complexes import (broken_circuit_complex, check_lex_shelling, coboundary_images,
                        flag_of_base, flag_simplex, folkman_complex, pi_map,
                        reduced_betti_numbers, verify_flag_basis)
from .matroid import (beta_count_check, betanbc_direct, betanbc_recursive, circuits,
                      is_nbc, nbc_bases, nbc_sets)
from .osalgebra import OSAlgebra, aomoto, upsilon
from .resonance import WeightVector, check_nonresonance, check_yuzvinsky

PASS, FAIL, SKIP = "pass", "fail", "skip"


def _status(ok):
    return PASS if ok else FAIL


class Context:
    """Lazily shared intermediate results for one (arrangement, weights) pair."""

    def __init__(self, A: Arrangement, weights=None, seed=0):
        self.A = A
        self.weights = WeightVector(weights) if weights is not None else None
        self.seed = seed
        self.alg = OSAlgebra(A)
        self._F = self._BC = None

    @property
    def F(self):
        if self._F is None:
            self._F = folkman_complex(self.A)
        return self._F

    @property
    def BC(self):
        if self._BC is None:
            self._BC = broken_circuit_complex(self.A)
        return self._BC

    @property
    def yuzvinsky(self):
        return self.weights is not None and check_yuzvinsky(self.A, self.weights).ok

    @property
    def nonresonant(self):
        return self.weights is not None and check_nonresonance(projective_closure(self.A), self.weights).ok


def check_lattice(ctx):
    A = ctx.A
    L = A.lattice
    maximal = [X for X in L if not any(set(X.support) < set(Y.support) for Y in L)]
    ok = all(X.codim == L.rank for X in maximal)
    ok &= all(len(X.support) >= X.codim for X in L)
    ok &= projective_closure(A).lattice.rank == L.rank + 1
    return _status(ok), {"flats": len(L), "rank": L.rank}


def check_circuits(ctx):
    A = ctx.A
    ok = True
    for C in circuits(A):
        ok &= A.is_dependent(C)
        ok &= all(A.is_independent(S) for S in combinations(C, len(C) - 1))
        ok &= A.is_independent(C[1:])
    ok &= all(is_nbc(ctx.A, B) for B in nbc_bases(A))
    return _status(ok), {"circuits": len(circuits(A))}


def check_betanbc_routes(ctx):
    direct = betanbc_direct(ctx.A)
    rec = betanbc_recursive(ctx.A)
    shell = check_lex_shelling(ctx.A)
    ok = direct == rec and shell.is_shelling and shell.homology_facets == direct
    ok &= set(direct) <= set(nbc_bases(ctx.A))
    return _status(ok), {"betanbc": [list(B) for B in direct]}


def check_beta_invariant(ctx):
    beta = beta_count_check(ctx.A)
    return _status(beta == len(betanbc_direct(ctx.A))), {"beta": beta}


def check_os_dims(ctx):
    dims = ctx.alg.dims()
    ok = dims[-1] == len(nbc_bases(ctx.A)) and all(
        dims[p] == len(nbc_sets(ctx.A, p)) for p in range(len(dims)))
    # graded commutativity and associativity on a few random monomial triples
    rng = random.Random(ctx.seed)
    alg = ctx.alg
    gens = [alg.generator(i) for i in ctx.A.indices]
    for _ in range(10):
        a, b, c = (rng.choice(gens) for _ in range(3))
        ab = alg.multiply(a, b)
        ok &= ab == -alg.multiply(b, a)
        ok &= alg.multiply(ab, c) == alg.multiply(a, alg.multiply(b, c))
    return _status(ok), {"dims": dims}


def check_topology(ctx):
    bF = reduced_betti_numbers(ctx.F)
    bBC = reduced_betti_numbers(ctx.BC)
    r = ctx.A.rank
    beta = len(betanbc_direct(ctx.A))
    expected = [0] * r + [beta]
    ok = bF == bBC == expected
    return _status(ok), {"folkman": bF, "broken_circuit": bBC}


def check_flag_basis(ctx):
    rep = verify_flag_basis(ctx.A, ctx.F)
    return _status(rep.ok), {"count": rep.count, "dimension": rep.dimension}


def check_pi_pullback(ctx):
    A = ctx.A
    pm = pi_map(A, ctx.F, ctx.BC)
    top = A.rank - 1
    bpos = {v: k for k, v in enumerate(ctx.BC.vertices)}
    ok = True
    for B in nbc_bases(A):
        t = tuple(bpos[i] for i in B)
        s = flag_simplex(ctx.F, flag_of_base(A, B))
        ok &= pm.pullback.get(t) == {s: 1}
    ok &= all(len(k) == top + 1 for k in pm.pullback)
    return _status(ok), {}


def check_aomoto(ctx):
    if ctx.weights is None:
        return SKIP, {"reason": "no weights"}
    A, w = ctx.A, ctx.weights
    cx = aomoto(A, w, ctx.alg)
    ok = True
    for p in range(len(cx.differential) - 1):
        # compose omega ^ twice through the sparse rows
        first, second = cx.differential[p], cx.differential[p + 1]
        for c in range(len(cx.basis[p])):
            col = {k: row[c] for k, row in enumerate(first) if c in row}
            for row in second:
                if sum(v * col.get(k, 0) for k, v in row.items()) != 0:
                    ok = False
    dims = cx.cohomology()
    detail = {"dims": dims}
    if ctx.yuzvinsky:
        ok &= dims == [0] * A.rank + [len(betanbc_direct(A))]
    return _status(ok), detail


def check_xi_basis(ctx):
    if not ctx.yuzvinsky:
        return SKIP, {"reason": "weights fail the dense-flat condition"}
    basis = betanbc_basis(ctx.A, ctx.weights, ctx.alg)
    ok = basis.certificate.holds and len(basis) == basis.certificate.h_top
    ok &= nbc_flag_forms_basis(ctx.A, ctx.weights, ctx.alg)
    return _status(ok), {"predicate": basis.predicate, **basis.certificate.to_json()}


def check_upsilon(ctx):
    if not ctx.yuzvinsky:
        return SKIP, {"reason": "weights fail the dense-flat condition"}
    A, F = ctx.A, ctx.F
    top = A.rank - 1
    image = image_echelon(ctx.alg, ctx.weights)
    cells = F[top]
    ok = True
    for vec in coboundary_images(F, top - 1):
        cochain = {tuple(X.support for X in F.labelled(cells[k])): c for k, c in vec.items()}
        x = upsilon(ctx.alg, ctx.weights, cochain)
        ok &= x.is_zero() or image.contains(ctx.alg.vector(x))
    return _status(ok), {}


def check_transition_identity(ctx):
    if not ctx.yuzvinsky:
        return SKIP, {"reason": "weights fail the dense-flat condition"}
    T = transition_matrix(ctx.A, ctx.A.indices, [ctx.weights], alg=ctx.alg)
    k = len(T.matrix)
    ok = T.matrix == [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    return _status(ok), {}


def check_monomial(ctx):
    if not ctx.nonresonant:
        return SKIP, {"reason": "weights are resonant"}
    rep = monomial_basis_check(ctx.A, ctx.weights, ctx.alg)
    ok = rep.holds or not rep.sufficient
    return _status(ok), {"holds": rep.holds, "sufficient_conditions": rep.sufficient}


def check_conditions(ctx):
    if ctx.weights is None:
        return SKIP, {"reason": "no weights"}
    ok = ctx.yuzvinsky or not ctx.nonresonant
    return _status(ok), {"yuzvinsky": ctx.yuzvinsky, "nonresonance": ctx.nonresonant}


CHECKS = [
    ("lattice", check_lattice),
    ("circuits", check_circuits),
    ("betanbc_routes", check_betanbc_routes),
    ("beta_invariant", check_beta_invariant),
    ("os_algebra", check_os_dims),
    ("topology", check_topology),
    ("flag_basis", check_flag_basis),
    ("pi_pullback", check_pi_pullback),
    ("weight_conditions", check_conditions),
    ("aomoto", check_aomoto),
    ("xi_basis", check_xi_basis),
    ("upsilon", check_upsilon),
    ("transition_identity", check_transition_identity),
    ("monomial", check_monomial),
]


def run_checks(A: Arrangement, weights=None, seed=0):
    ctx = Context(A, weights, seed)
    results = []
    for name, fn in CHECKS:
        try:
            status, detail = fn(ctx)
        except Exception as e:  # a crash inside a check is a failed check
            status, detail = FAIL, {"error": "%s: %s" % (type(e).__name__, e)}
        results.append({"name": name, "status": status, "detail": detail})
    return {"ok": all(r["status"] != FAIL for r in results), "checks": results}
