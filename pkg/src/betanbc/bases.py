"""
Bases of the top Aomoto cohomology H^r(A, omega_lambda ^).

Classes are compared modulo the image I = omega_lambda ^ A^{r-1}: a family
is a basis of H^r when, together with I, it spans A^r and adds exactly its
own size to rank(I).
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import Arrangement, projective_closure
from .complexes import flag_of_base
from .linalg import Echelon, det, fstr, solve_columns
from .matroid import (admissible_nu, betanbc_direct,
                      is_unmixed_order, nbc_bases)
from .osalgebra import (OSAlgebra, OSElement, differential_images, flag_expansion,
                        flag_form, flag_product, weight_form)
from .resonance import WeightVector, check_nonresonance, check_yuzvinsky


class InconsistencyError(RuntimeError):
    """A computation contradicts a theorem whose hypotheses were verified."""


def gating_predicate(A, weights):
    """Strongest weight condition that holds: 'nonresonance', 'yuzvinsky' or 'none'."""
    if check_nonresonance(projective_closure(A), weights).ok:
        return "nonresonance"
    if check_yuzvinsky(A, weights).ok:
        return "yuzvinsky"
    return "none"


def image_echelon(alg: OSAlgebra, weights):
    r = alg.rank
    return Echelon(differential_images(alg, weights, r - 1))


@dataclass
class Certificate:
    dim_top: int          # dim A^r
    rank_image: int       # rank of omega ^ : A^{r-1} -> A^r
    rank_total: int       # rank of image together with the candidate family
    size: int             # size of the candidate family

    @property
    def h_top(self):
        return self.dim_top - self.rank_image

    @property
    def independent(self):
        return self.rank_total - self.rank_image == self.size

    @property
    def spans(self):
        return self.rank_total == self.dim_top

    @property
    def holds(self):
        return self.independent and self.spans

    def to_json(self):
        return {"dim_top": self.dim_top, "rank_image": self.rank_image, "rank_total": self.rank_total,
                "size": self.size, "h_top": self.h_top, "independent": self.independent,
                "spans": self.spans}


def certify(alg: OSAlgebra, weights, family, image=None):
    """Rank certificate for ``family`` (OSElements of degree r) as a basis of H^r."""
    image = image or image_echelon(alg, weights)
    e = image.copy()
    for x in family:
        e.add(alg.vector(x))
    return Certificate(len(alg.basis(alg.rank)), image.rank, e.rank, len(family))


@dataclass
class CohomologyBasis:
    weights: WeightVector
    predicate: str
    elements: list        # (B, Xi(B) reduced, Xi(B) unreduced)
    certificate: Certificate

    def __len__(self):
        return len(self.elements)

    def to_json(self):
        return {
            "weights": self.weights.to_json(),
            "predicate": self.predicate,
            "basis": [{"base": list(B), "form": x.to_json(), "flag_expansion": u.to_json()}
                      for B, x, u in self.elements],
            "certificate": self.certificate.to_json(),
        }


def betanbc_basis(A: Arrangement, weights, alg=None) -> CohomologyBasis:
    """Flag forms Xi(B), B in beta-nbc, with an exact basis certificate."""
    w = WeightVector(weights)
    alg = alg or OSAlgebra(A)
    predicate = gating_predicate(A, w)
    elements = [(B, flag_form(alg, w, B), flag_expansion(A, w, B)) for B in betanbc_direct(A)]
    cert = certify(alg, w, [x for _, x, _ in elements])
    if predicate != "none" and not cert.holds:
        raise InconsistencyError("flag forms fail to be a basis of H^r under the %s condition" % predicate)
    return CohomologyBasis(w, predicate, elements, cert)


def nbc_flag_forms_basis(A: Arrangement, weights, alg=None):
    """Whether {Xi(B) | B in nbc} is a basis of A^r (exact rank)."""
    alg = alg or OSAlgebra(A)
    e = Echelon(alg.vector(flag_form(alg, weights, B)) for B in nbc_bases(A))
    return e.rank == len(alg.basis(alg.rank)) == len(nbc_bases(A))


def flag_forms_for_order(A: Arrangement, alg: OSAlgebra, weights, order):
    """beta-nbc of the reordered arrangement and their Xi forms in A's algebra.

    Bases are reported with A's labels, listed in the order's sense.
    """
    order = tuple(order)
    A2 = A.reordered(order)
    out = []
    for B2 in betanbc_direct(A2):
        flag = flag_of_base(A2, B2)
        supports = [tuple(sorted(order[k - 1] for k in X.support)) for X in flag.flats]
        out.append((tuple(order[k - 1] for k in B2), flag_product(alg, weights, supports)))
    return out


@dataclass
class TransitionMatrix:
    source_order: tuple
    target_order: tuple
    source_bases: list
    target_bases: list
    matrix: list                   # rows: target bases, columns: source bases
    determinant: Fraction
    samples: list = field(default_factory=list)

    @property
    def is_integral(self):
        return all(Fraction(x).denominator == 1 for row in self.matrix for x in row)

    def to_json(self):
        return {
            "source_order": list(self.source_order),
            "target_order": list(self.target_order),
            "source_bases": [list(B) for B in self.source_bases],
            "target_bases": [list(B) for B in self.target_bases],
            "matrix": [[fstr(x) for x in row] for row in self.matrix],
            "determinant": fstr(self.determinant),
            "samples": self.samples,
        }


def _change_of_basis(alg, weights, source, target):
    image = image_echelon(alg, weights)
    gens = [alg.vector(x) for _, x in source] + list(image.rows.values())
    nrows = len(alg.basis(alg.rank))
    T = []
    for B, x in target:
        c = solve_columns(gens, alg.vector(x), nrows)
        if c is None:
            raise InconsistencyError("Xi(%r) is not in the span of the source basis modulo the image" % (B,))
        T.append(c[:len(source)])
    return T


def _matrix_hash(M):
    blob = json.dumps([[fstr(x) for x in row] for row in M]).encode()
    return hashlib.sha256(blob).hexdigest()


def transition_matrix(A: Arrangement, target_order, samples, source_order=None, alg=None) -> TransitionMatrix:
    """Express the Xi-basis of ``target_order`` in that of ``source_order``.

    The matrix is recomputed at every weight sample and must come out the
    same, integral and unimodular each time.
    """
    alg = alg or OSAlgebra(A)
    source_order = tuple(source_order or A.indices)
    target_order = tuple(target_order)
    if not samples:
        raise ValueError("at least one weight sample is required")
    result, records = None, []
    for w in samples:
        w = WeightVector(w)
        predicate = gating_predicate(A, w)
        if predicate == "none":
            raise ValueError("weights %s fail the gating condition" % w.to_json())
        src = flag_forms_for_order(A, alg, w, source_order)
        tgt = flag_forms_for_order(A, alg, w, target_order)
        if len(src) != len(tgt):
            raise InconsistencyError("orders give beta-nbc sets of different sizes")
        M = _change_of_basis(alg, w, src, tgt)
        records.append({"weights": w.to_json(), "predicate": predicate, "hash": _matrix_hash(M)})
        if result is None:
            result = (src, tgt, M)
        elif M != result[2]:
            raise InconsistencyError("transition matrix depends on the weights")
    src, tgt, M = result
    T = TransitionMatrix(source_order, target_order, [B for B, _ in src], [B for B, _ in tgt],
                         M, det(M) if M else Fraction(1), records)
    if not T.is_integral or abs(T.determinant) != 1:
        raise InconsistencyError("transition matrix is not integral unimodular")
    return T


@dataclass
class MonomialReport:
    holds: bool
    unmixed: bool
    admissible_nu: object
    sufficient: list
    certificate: Certificate

    def to_json(self):
        return {"holds": self.holds, "unmixed": self.unmixed, "admissible_nu": self.admissible_nu,
                "sufficient_conditions": self.sufficient, "certificate": self.certificate.to_json()}


def monomial_basis_check(A: Arrangement, weights, alg=None) -> MonomialReport:
    """Test whether {omega_B | B in beta-nbc} is a basis of H^r."""
    alg = alg or OSAlgebra(A)
    w = WeightVector(weights)
    family = [OSElement(A.rank, {B: 1}) for B in betanbc_direct(A)]
    cert = certify(alg, w, family)
    unmixed, _ = is_unmixed_order(A)
    nu = admissible_nu(A) if A.rank == 2 else None
    sufficient = []
    if unmixed:
        sufficient.append("unmixed")
    if nu is not None:
        sufficient.append("admissible")
    if sufficient and gating_predicate(A, w) == "nonresonance" and not cert.holds:
        raise InconsistencyError("monomials fail although %s applies" % " and ".join(sufficient))
    return MonomialReport(cert.holds, unmixed, nu, sufficient, cert)


def flag_form_flats(A: Arrangement, alg: OSAlgebra, weights, B):
    """Intersections of the nbc monomials occurring in reduced Xi(B)."""
    x = flag_form(alg, weights, B)
    return {A.flat(m).support for m in x.terms}


def admissible_congruence_chain(A: Arrangement, weights, B, alg=None):
    """Replay, for a mixed beta-nbc base B = (i, j) of an admissible rank-2
    order, the chain Xi(B) = w(X) l_j w_j == l_nu l_j w_nu w_j
    = l_nu l_j (w_ij - w_i,nu) == -l_nu l_j w_i,nu == l_j d(w_i) == 0
    modulo N = span{omega_B' : B' in beta-nbc} + d(A^1).

    Returns a list of (step, holds) pairs.
    """
    alg = alg or OSAlgebra(A)
    w = WeightVector(weights)
    nu = admissible_nu(A)
    if A.rank != 2 or nu is None:
        raise ValueError("needs an admissible order of rank 2")
    i, j = B
    if B not in mixed_bases(A):
        raise ValueError("%r is not a beta-nbc base on a mixed flat" % (B,))
    N = image_echelon(alg, w)
    for B2 in betanbc_direct(A):
        N.add(alg.vector(OSElement(2, {B2: 1})))

    def in_N(x):
        return x.is_zero() or N.contains(alg.vector(x))

    lj, lnu = w[j - 1], w[nu - 1]
    red = alg.reduce_monomial
    s0 = flag_form(alg, w, B)
    s1 = red((nu, j)).scale(lnu * lj)
    s2 = (red((i, j)) - red((i, nu))).scale(lnu * lj)
    s3 = red((i, nu)).scale(-lnu * lj)
    s4 = alg.multiply(weight_form(A, w), alg.generator(i)).scale(lj)
    X = A.flat(B)
    return [
        ("Xi(B) == l_nu l_j w_nu w_j", in_N(s0 - s1)),
        ("w_nu w_j == w_ij - w_i,nu", s1 == s2),
        ("l_nu l_j (w_ij - w_i,nu) == -l_nu l_j w_i,nu", in_N(s2 - s3)),
        ("-l_nu l_j w_i,nu == l_j d(w_i)", in_N(s3 - s4)),
        ("l_j d(w_i) == 0", in_N(s4)),
        ("X = H_i & H_nu = H_i & H_j", A.flat((i, nu)) == X),
    ]


def mixed_bases(A: Arrangement):
    """beta-nbc bases of an admissible rank-2 order whose flat is mixed.

    These are exactly the bases the congruence chain is about; each has the
    form (i, j) with 1 < i < nu < j.
    """
    nu = admissible_nu(A)
    if A.rank != 2 or nu is None:
        return []
    _, report = is_unmixed_order(A)
    mixed = {tuple(x["flat"]) for x in report if x["class"] == "mixed"}
    return [B for B in betanbc_direct(A) if A.flat(B).support in mixed]
