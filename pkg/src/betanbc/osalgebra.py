"""
Orlik-Solomon algebra in the nbc monomial basis, the Aomoto complex
(A, omega_lambda ^), and flag forms.

An element is a map from ascending nbc tuples to rationals. Arbitrary
monomials are straightened by repeatedly rewriting a broken circuit through
its circuit relation; each rewrite swaps one index for a strictly smaller
one, so the process terminates.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import Arrangement
from .complexes import flag_of_base
from .linalg import Echelon, fstr
from .matroid import nbc_sets


@dataclass(frozen=True)
class OSElement:
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: Fraction(v) for k, v in self.terms.items() if v != 0})

    def __add__(self, other):
        if not other.terms:
            return self
        if not self.terms:
            return other
        if other.degree != self.degree:
            raise ValueError("degree mismatch: %d vs %d" % (self.degree, other.degree))
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return OSElement(self.degree, t)

    def __neg__(self):
        return OSElement(self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return OSElement(self.degree, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, OSElement) and self.terms == other.terms and (
            self.degree == other.degree or not self.terms)

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%s*w%s" % (fstr(v), "".join(map(str, k)) or "1") for k, v in sorted(self.terms.items()))

    def to_json(self):
        return {
            "degree": self.degree,
            "terms": [{"monomial": list(k), "coeff": fstr(v)} for k, v in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["degree"], {tuple(t["monomial"]): Fraction(t["coeff"]) for t in data["terms"]})


def sort_sign(seq):
    """(ascending tuple, sign of sorting permutation); sign 0 on repeats."""
    seq = list(seq)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    if any(a == b for a, b in zip(seq, seq[1:])):
        return tuple(seq), 0
    return tuple(seq), sign


class OSAlgebra:
    """The Orlik-Solomon algebra A(A) of an ordered arrangement."""

    def __init__(self, A: Arrangement):
        self.arrangement = A
        self._nf = {}

    @property
    def rank(self):
        return self.arrangement.rank

    def basis(self, p):
        return nbc_sets(self.arrangement, p)

    def dims(self):
        return [len(self.basis(p)) for p in range(self.rank + 1)]

    def one(self):
        return OSElement(0, {(): 1})

    def generator(self, i):
        self.arrangement[i]
        return OSElement(1, {(i,): 1})

    def normal_form(self, T):
        """Normal form of the monomial on an ascending tuple ``T`` (int coefficients)."""
        try:
            return self._nf[T]
        except KeyError:
            pass
        A = self.arrangement
        X = A.meet(T)
        if X is None or X.codim < len(T):
            out = {}
        else:
            out = None
            for k in range(len(T) - 1, -1, -1):
                h = A.flat(T[k:]).support[0]
                if h != T[k]:
                    out = self._rewrite(T, k, h)
                    break
            if out is None:
                out = {T: 1}
        self._nf[T] = out
        return out

    def _rewrite(self, T, k, h):
        A = self.arrangement
        tail = T[k:]
        # fundamental circuit of h in the independent set tail
        C = (h,) + tuple(e for e in tail if A.is_independent([h] + [x for x in tail if x != e]))
        S = C[1:]
        R = tuple(x for x in T if x not in S)
        _, sign = sort_sign(S + R)
        # 0 = sum_j (-1)^j e_{C - C[j]}  =>  e_S = -sum_{j>=1} (-1)^j e_{C - C[j]}
        out = {}
        for j in range(1, len(C)):
            coeff = -((-1) ** j) * sign
            mono, s2 = sort_sign(C[:j] + C[j + 1:] + R)
            if s2 == 0:
                continue
            for m, v in self.normal_form(mono).items():
                w = out.get(m, 0) + coeff * s2 * v
                if w:
                    out[m] = w
                else:
                    out.pop(m, None)
        return out

    def reduce_monomial(self, indices) -> OSElement:
        """omega_{i_1} ... omega_{i_p} for any sequence of indices."""
        for i in indices:
            self.arrangement[i]
        T, sign = sort_sign(indices)
        if sign == 0:
            return OSElement(len(indices))
        return OSElement(len(indices), {m: sign * v for m, v in self.normal_form(T).items()})

    def multiply(self, a: OSElement, b: OSElement) -> OSElement:
        out = {}
        for ka, va in a.terms.items():
            for kb, vb in b.terms.items():
                T, sign = sort_sign(ka + kb)
                if sign == 0:
                    continue
                for m, v in self.normal_form(T).items():
                    out[m] = out.get(m, 0) + sign * va * vb * v
        return OSElement(a.degree + b.degree, out)

    def product(self, factors):
        acc = self.one()
        for f in factors:
            acc = self.multiply(acc, f)
        return acc

    def vector(self, x: OSElement):
        idx = {m: k for k, m in enumerate(self.basis(x.degree))}
        return {idx[m]: v for m, v in x.terms.items()}

    def element(self, p, vec):
        B = self.basis(p)
        return OSElement(p, {B[k]: v for k, v in vec.items()})


def weight_form(A: Arrangement, weights, support=None) -> OSElement:
    support = A.indices if support is None else support
    return OSElement(1, {(i,): Fraction(weights[i - 1]) for i in support})


def omega_lambda_flat(A: Arrangement, weights, X) -> OSElement:
    """sum of lambda_i omega_i over hyperplanes through X."""
    X = A.lattice.get(X)
    return weight_form(A, weights, X.support)


@dataclass
class AomotoComplex:
    basis: list              # degree p -> list of nbc tuples
    differential: list       # degree p -> sparse rows of omega ^ : A^p -> A^{p+1}, one row per target basis element

    def cohomology(self):
        ranks = [Echelon(rows).rank if rows else 0 for rows in self.differential]
        dims = []
        for p in range(len(self.basis)):
            into = ranks[p - 1] if p > 0 else 0
            out = ranks[p] if p < len(ranks) else 0
            dims.append(len(self.basis[p]) - out - into)
        return dims


def differential_images(alg: OSAlgebra, weights, p):
    """omega_lambda ^ e for each basis monomial e of A^p, as vectors in A^{p+1}."""
    A = alg.arrangement
    idx = {m: k for k, m in enumerate(alg.basis(p + 1))}
    cols = []
    for m in alg.basis(p):
        vec = {}
        for i in A.indices:
            lam = Fraction(weights[i - 1])
            if not lam:
                continue
            T, sign = sort_sign((i,) + m)
            if sign == 0:
                continue
            for t, v in alg.normal_form(T).items():
                k = idx[t]
                w = vec.get(k, 0) + lam * sign * v
                if w:
                    vec[k] = w
                else:
                    vec.pop(k)
        cols.append(vec)
    return cols


def aomoto(A: Arrangement, weights, alg=None) -> AomotoComplex:
    alg = alg or OSAlgebra(A)
    r = A.rank
    basis = [alg.basis(p) for p in range(r + 1)]
    diffs = []
    for p in range(r):
        cols = differential_images(alg, weights, p)
        rows = [dict() for _ in basis[p + 1]]
        for c, vec in enumerate(cols):
            for k, v in vec.items():
                rows[k][c] = v
        diffs.append(rows)
    return AomotoComplex(basis, diffs)


def aomoto_cohomology(A: Arrangement, weights, alg=None):
    return aomoto(A, weights, alg).cohomology()


def flag_product(alg: OSAlgebra, weights, supports) -> OSElement:
    """prod_p omega_lambda(X_p) for a chain given by the supports of its flats."""
    A = alg.arrangement
    return alg.product(weight_form(A, weights, s) for s in supports)


def upsilon(alg: OSAlgebra, weights, cochain) -> OSElement:
    """Linear extension of xi* -> omega_lambda(X_1)...omega_lambda(X_r).

    ``cochain`` maps chains (tuples of flat supports, top first) to
    coefficients.
    """
    out = OSElement(alg.rank)
    for chain, c in cochain.items():
        if c:
            out = out + flag_product(alg, weights, chain).scale(Fraction(c))
    return out


def flag_form(alg: OSAlgebra, weights, B) -> OSElement:
    """Xi(B): the flag form of the standard flag of the base B."""
    flag = flag_of_base(alg.arrangement, B)
    return flag_product(alg, weights, flag.supports)


def exterior_product(factors):
    """Product of degree-1 forms in the exterior algebra, without OS relations.

    Factors are ``{i: coeff}``; result maps ascending tuples to coefficients.
    """
    acc = {(): Fraction(1)}
    for f in factors:
        nxt = {}
        for m, v in acc.items():
            for i, c in f.items():
                T, sign = sort_sign(m + (i,))
                if sign == 0 or c == 0:
                    continue
                nxt[T] = nxt.get(T, 0) + sign * v * Fraction(c)
        acc = {k: v for k, v in nxt.items() if v != 0}
    return acc


def flag_expansion(A: Arrangement, weights, B):
    """Unreduced expansion of Xi(B) in exterior monomials omega_S."""
    flag = flag_of_base(A, B)
    factors = [{i: Fraction(weights[i - 1]) for i in X.support} for X in flag.flats]
    return OSElement(len(B), exterior_product(factors))


def isomorphism_sign(r):
    """(-1)^{r(r+1)/2}: the sign relating upsilon to the inverse of the
    isomorphism H^r(A, omega_lambda ^) -> H^{r-1}(F). Not part of Xi(B)."""
    return -1 if (r * (r + 1) // 2) % 2 else 1


def phi_inverse(alg: OSAlgebra, weights, cochain) -> OSElement:
    return upsilon(alg, weights, cochain).scale(isomorphism_sign(alg.rank))
