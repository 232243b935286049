"""
The affine matroid of an arrangement: circuits, broken circuits, nbc and
beta-nbc bases, characteristic polynomial, and the order predicates
(unmixed, admissible, supersolvable).

All set-valued results are sorted tuples of ascending hyperplane indices,
listed lexicographically.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .arrangement import Arrangement, is_separator, triple


@dataclass(frozen=True)
class OrderedBase:
    indices: tuple
    flag: tuple        # flats X_p = meet of indices[p:], p = 0..r-1

    @property
    def is_standard(self):
        return all(a < b for a, b in zip(self.indices, self.indices[1:]))


@dataclass(frozen=True)
class CharPoly:
    """chi(t) = sum_X mu(V, X) t^dim X; ``coefficients[k]`` multiplies t^k."""

    coefficients: tuple

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, t):
        return sum(c * t ** k for k, c in enumerate(self.coefficients))

    def descending(self):
        return list(reversed(self.coefficients))

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c:
                mono = "" if k == 0 else ("t" if k == 1 else "t^%d" % k)
                coef = str(c) if (abs(c) != 1 or k == 0) else ("-" if c < 0 else "")
                terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _cache(A, name, fn):
    # results are pure functions of A; memoize on the (immutable) instance
    store = A.__dict__.setdefault("_matroid_cache", {})
    if name not in store:
        store[name] = fn()
    return store[name]


def independent_sets(A: Arrangement):
    """Independent sets by size: ``result[k]`` lists the k-sets."""
    def compute():
        levels = [[()]]
        circ = []
        for k in range(1, A.rank + 2):
            prev = set(levels[-1])
            nxt, found = [], []
            for S in levels[-1]:
                start = S[-1] + 1 if S else 1
                for e in range(start, A.n + 1):
                    T = S + (e,)
                    if any(T[:j] + T[j + 1:] not in prev for j in range(k - 1)):
                        continue
                    sub = A.meet(T)
                    if sub is None:
                        continue
                    if sub.codim == k:
                        nxt.append(T)
                    else:
                        found.append(T)
            circ.extend(found)
            if not nxt:
                levels.append([])
                break
            levels.append(nxt)
        while levels and not levels[-1]:
            levels.pop()
        return levels, sorted(circ)
    return _cache(A, "independent", compute)


def circuits(A: Arrangement):
    """Minimal dependent sets, found level by level from independent sets."""
    return independent_sets(A)[1]


def broken_circuits(A: Arrangement):
    return sorted({C[1:] for C in circuits(A)})


def _min_support(A, S):
    return A.flat(S).support[0]


def is_nbc(A: Arrangement, S):
    """Independent with no broken circuit, tested by the flag criterion.

    For ascending S = (s_1, ..., s_p), S is nbc iff s_k is the smallest
    hyperplane through meet(s_k, ..., s_p) for every k.
    """
    S = tuple(sorted(S))
    if not A.is_independent(S):
        return False
    return all(_min_support(A, S[k:]) == S[k] for k in range(len(S)))


def nbc_sets(A: Arrangement, p=None):
    """nbc sets by size (all sizes if p is None)."""
    def compute():
        bc = [frozenset(b) for b in broken_circuits(A)]
        levels = []
        for k, level in enumerate(independent_sets(A)[0]):
            levels.append([S for S in level if not any(b <= set(S) for b in bc)])
        return levels
    levels = _cache(A, "nbc", compute)
    if p is None:
        return levels
    return levels[p] if p < len(levels) else []


def nbc_bases(A: Arrangement):
    return nbc_sets(A, A.rank)


def ordered_base(A, indices):
    indices = tuple(indices)
    if not A.is_base(indices):
        raise ValueError("%r is not a base" % (indices,))
    flag = tuple(A.flat(indices[p:]) for p in range(len(indices)))
    return OrderedBase(indices, flag)


def _exchangeable(A, B, h):
    rest = [x for x in B if x != h]
    return any(A.is_base(rest + [g]) for g in range(1, h) if g not in B)


def betanbc_direct(A: Arrangement):
    """nbc bases in which every element can be exchanged for a smaller one."""
    return _cache(A, "betanbc", lambda: [
        B for B in nbc_bases(A) if all(_exchangeable(A, B, h) for h in B)])


def betanbc_direct_nbc_variant(A: Arrangement):
    """Same filter, but the exchanged set must itself be an nbc base."""
    nbc = set(nbc_bases(A))

    def ok(B, h):
        rest = [x for x in B if x != h]
        return any(tuple(sorted(rest + [g])) in nbc for g in range(1, h) if g not in B)
    return [B for B in nbc_bases(A) if all(ok(B, h) for h in B)]


def betanbc_recursive(A: Arrangement):
    """beta-nbc by deletion-restriction on the last hyperplane."""
    r = A.rank
    if A.n == 0:
        return [()]
    if r == 1:
        return [(i,) for i in A.indices[1:]]
    if is_separator(A, A.n):
        return []
    t = triple(A, A.n)
    out = [tuple(t.deleted_map[k - 1] for k in B) for B in betanbc_recursive(t.deleted)]
    for B2 in betanbc_recursive(t.restricted):
        out.append(tuple(t.nu[k - 1] for k in B2) + (A.n,))
    return sorted(out)


def mobius(A: Arrangement):
    """mu(V, X) for every flat, keyed by flat id."""
    def compute():
        L = A.lattice
        mu = {}
        for X in L:
            if X.codim == 0:
                mu[X.id] = 1
            else:
                mu[X.id] = -sum(mu[Y.id] for Y in L.below(X))
        return mu
    return _cache(A, "mobius", compute)


def char_poly(A: Arrangement) -> CharPoly:
    coeffs = [0] * (A.dimension + 1)
    mu = mobius(A)
    for X in A.lattice:
        coeffs[A.dimension - X.codim] += mu[X.id]
    return CharPoly(tuple(coeffs))


def beta_count_check(A: Arrangement):
    """(-1)^r chi_A(1); equals the number of beta-nbc bases."""
    return (-1) ** A.rank * char_poly(A)(1)


def nbc_by_flat(A: Arrangement):
    """nbc bases grouped by their intersection (a maximal flat)."""
    groups = {X.id: [] for X in A.lattice.maximal()}
    for B in nbc_bases(A):
        groups[A.flat(B).id].append(B)
    return groups


def is_unmixed_order(A: Arrangement):
    """Returns (unmixed, report) with one report entry per maximal flat."""
    beta = set(betanbc_direct(A))
    report = []
    ok = True
    for X in A.lattice.maximal():
        nbcX = nbc_by_flat(A)[X.id]
        inside = [B for B in nbcX if B in beta]
        if len(inside) == len(nbcX):
            kind = "contained"
        elif not inside:
            kind = "disjoint"
        else:
            kind = "mixed"
            ok = False
        report.append({"flat": X.support, "nbc": nbcX, "class": kind})
    return ok, report


def admissible_nu(A: Arrangement):
    """The integer nu with: H_i parallel to H_1 iff 1 <= i < nu; None otherwise."""
    if A.n == 0:
        return None
    flags = [A.parallel(1, i) for i in A.indices]
    nu = 1
    while nu <= A.n and flags[nu - 1]:
        nu += 1
    if any(flags[nu - 1:]):
        return None
    return nu


def admissible_prediction(A: Arrangement):
    """Predicted beta-nbc for an admissible rank-2 order, or None."""
    nu = admissible_nu(A)
    if nu is None or A.rank != 2:
        return None
    return [B for B in nbc_bases(A) if 1 < B[0] < B[1] != nu]


class FiltrationError(ValueError):
    pass


def validate_supersolvable(A: Arrangement, blocks):
    blocks = [tuple(sorted(b)) for b in blocks]
    flat = [i for b in blocks for i in b]
    if sorted(flat) != list(A.indices):
        raise FiltrationError("blocks must partition 1..%d" % A.n)
    for p in range(1, len(blocks)):
        if max(blocks[p - 1]) > min(blocks[p]):
            raise FiltrationError("block %d must precede block %d in the order" % (p, p + 1))
    if len(blocks) != A.rank:
        raise FiltrationError("need exactly r = %d blocks" % A.rank)
    level = {i: p for p, b in enumerate(blocks, 1) for i in b}
    acc = []
    for p, b in enumerate(blocks, 1):
        acc.extend(b)
        sub = A.subarrangement(acc)
        if sub.rank != p:
            raise FiltrationError("A_%d has rank %d, expected %d" % (p, sub.rank, p))
        for h, g in combinations(acc, 2):
            X = A.meet([h, g])
            if X is None:
                continue
            witness = [k for k in A.indices if level[k] < p and A.contains(k, X)]
            if not witness:
                raise FiltrationError("no hyperplane of A_%d contains H%d & H%d" % (p - 1, h, g))
    return blocks


def supersolvable_betanbc(A: Arrangement, blocks):
    """Product formula: one element of each block, never the block minimum."""
    blocks = validate_supersolvable(A, blocks)
    choices = [b[1:] for b in blocks]
    return sorted(tuple(B) for B in product(*choices))
