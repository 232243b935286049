"""
Dense flats (affine and at infinity) and the two weight conditions.

A flat is dense when the matroid of its localization is connected: any two
of its hyperplanes lie on a common circuit of the localization.
"""

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement, ProjectiveClosure, projective_closure
from .linalg import fstr


@dataclass(frozen=True)
class WeightVector:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    @property
    def infinity(self):
        return -sum(self.values)

    def flat_sum(self, support, infinity_index=None):
        total = Fraction(0)
        for i in support:
            total += self.infinity if i in ("inf", infinity_index) else self.values[i - 1]
        return total

    def to_json(self):
        return [fstr(v) for v in self.values]


def _weights(weights):
    return weights if isinstance(weights, WeightVector) else WeightVector(weights)


def localization_connected(A: Arrangement, support):
    """Connectivity of the matroid on ``support`` (all through one flat)."""
    support = tuple(support)
    if len(support) <= 1:
        return True
    parent = {i: i for i in support}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # every subset of support meets, so dependence is just codim < size;
    # circuits are enumerated by size on top of independent sets
    indep = [()]
    for k in range(1, len(support) + 1):
        nxt = []
        prev = set(indep)
        for S in indep:
            start = support.index(S[-1]) + 1 if S else 0
            for e in support[start:]:
                T = S + (e,)
                if any(T[:j] + T[j + 1:] not in prev for j in range(k - 1)):
                    continue
                if A.meet(T).codim == k:
                    nxt.append(T)
                else:
                    roots = {find(x) for x in T}
                    root = roots.pop()
                    for x in roots:
                        parent[x] = root
        if len({find(i) for i in support}) == 1:
            return True
        if not nxt:
            break
        indep = nxt
    return len({find(i) for i in support}) == 1


def dense_flats_affine(A: Arrangement):
    return [X for X in A.lattice if X.codim > 0 and localization_connected(A, X.support)]


def dense_at_infinity(PC: ProjectiveClosure):
    """Cone flats (other than the ambient space and the origin) that are dense."""
    return [X for X in PC.elements() if localization_connected(PC.cone, X.support)]


@dataclass
class ConditionReport:
    ok: bool
    violations: list          # supports (with "inf" for the hyperplane at infinity)
    conditions: list          # every support that was checked


def check_yuzvinsky(A: Arrangement, weights) -> ConditionReport:
    """lambda(X) != 0 for every dense X in L - {V}."""
    w = _weights(weights)
    if len(w) != A.n:
        raise ValueError("expected %d weights, got %d" % (A.n, len(w)))
    conds, bad = [], []
    for X in dense_flats_affine(A):
        conds.append(list(X.support))
        if w.flat_sum(X.support) == 0:
            bad.append(list(X.support))
    return ConditionReport(not bad, bad, conds)


def is_nonnegative_integer(x):
    x = Fraction(x)
    return x.denominator == 1 and x >= 0


def nonresonance_conditions(PC: ProjectiveClosure, paper_example_compat=False):
    """Labelled supports of the dense elements of L(A_inf) - {P^l}."""
    out = []
    for X in dense_at_infinity(PC):
        if paper_example_compat and X.support == (PC.infinity_index,):
            continue
        out.append(PC.labelled_support(X))
    return out


def check_nonresonance(PC, weights, paper_example_compat=False) -> ConditionReport:
    """No lambda(X) is a nonnegative integer over dense elements at infinity."""
    if isinstance(PC, Arrangement):
        PC = projective_closure(PC)
    w = _weights(weights)
    if len(w) != PC.arrangement.n:
        raise ValueError("expected %d weights, got %d" % (PC.arrangement.n, len(w)))
    conds = nonresonance_conditions(PC, paper_example_compat)
    bad = [s for s in conds if is_nonnegative_integer(w.flat_sum(s))]
    return ConditionReport(not bad, bad, conds)


def dense_report(A: Arrangement, with_infinity=False, paper_example_compat=False):
    report = {"affine": [{"support": list(X.support), "codim": X.codim} for X in dense_flats_affine(A)]}
    if with_infinity:
        PC = projective_closure(A)
        items = []
        for X in dense_at_infinity(PC):
            if paper_example_compat and X.support == (PC.infinity_index,):
                continue
            items.append({"support": PC.labelled_support(X), "at_infinity": PC.at_infinity(X)})
        report["infinity"] = items
    return report


def random_weights(rng, n, denominators=(7, 11, 13, 17, 19, 23), span=40):
    vals = []
    for _ in range(n):
        num = 0
        while num == 0:
            num = rng.randint(-span, span)
        vals.append(Fraction(num, rng.choice(denominators)))
    return WeightVector(vals)


def sample_weights(rng, A, condition="yuzvinsky", tries=200):
    """Draw random weights until the requested condition holds."""
    PC = projective_closure(A) if condition == "nonresonance" else None
    for _ in range(tries):
        w = random_weights(rng, A.n)
        if condition == "nonresonance":
            if check_nonresonance(PC, w).ok:
                return w
        elif check_yuzvinsky(A, w).ok:
            return w
    raise RuntimeError("no admissible weights found")
