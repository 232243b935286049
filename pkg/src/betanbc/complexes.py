"""
Broken circuit complex BC, Folkman complex F, and their rational cochains.

Simplices are tuples of vertex positions, ascending in the complex's fixed
vertex order; the empty simplex () sits in degree -1 so that the augmented
(reduced) cochain complex needs no special casing.
"""

from dataclasses import dataclass
from itertools import combinations

from .arrangement import Arrangement, Flat
from .linalg import Echelon, nullspace
from .matroid import betanbc_direct, nbc_bases, nbc_sets


@dataclass
class SimplicialComplex:
    vertices: tuple          # labels, in the fixed vertex order
    simplices: dict          # q -> sorted list of position tuples, q >= -1

    @property
    def dimension(self):
        return max(self.simplices)

    def __getitem__(self, q):
        return self.simplices.get(q, [])

    def index(self, q):
        return {s: k for k, s in enumerate(self[q])}

    def facets(self):
        out = []
        for q in sorted(self.simplices, reverse=True):
            for s in self.simplices[q]:
                if not any(set(s) < set(t) for t in out):
                    out.append(s)
        return sorted(out)

    def is_pure(self):
        return len({len(s) for s in self.facets()}) <= 1

    def labelled(self, s):
        return tuple(self.vertices[v] for v in s)

    def to_json(self, label=lambda v: v):
        return {
            "vertices": [label(v) for v in self.vertices],
            "facets": [list(s) for s in self.facets()],
        }


def from_facets(vertices, facets):
    """Downward closure of ``facets`` (given as position tuples)."""
    simplices = {-1: {()}}
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            simplices.setdefault(k - 1, set()).update(combinations(f, k))
    return SimplicialComplex(tuple(vertices), {q: sorted(s) for q, s in simplices.items()})


@dataclass(frozen=True)
class Flag:
    """A strictly decreasing chain X_1 > ... > X_k of flats other than V."""

    flats: tuple

    @property
    def supports(self):
        return tuple(X.support for X in self.flats)


def broken_circuit_complex(A: Arrangement) -> SimplicialComplex:
    vertices = A.indices
    pos = {v: k for k, v in enumerate(vertices)}
    simplices = {}
    for p, level in enumerate(nbc_sets(A)):
        simplices[p - 1] = sorted(tuple(pos[i] for i in S) for S in level)
    return SimplicialComplex(vertices, simplices)


def folkman_vertices(A: Arrangement):
    """Flats other than V, ordered by codim descending then support."""
    return tuple(sorted((X for X in A.lattice if X.codim > 0), key=lambda X: (-X.codim, X.support)))


def folkman_complex(A: Arrangement) -> SimplicialComplex:
    """Order complex of L - {V}; a simplex lists its chain from the top down."""
    verts = folkman_vertices(A)
    pos = {X.id: k for k, X in enumerate(verts)}
    below = {X.id: [Y for Y in A.lattice.below(X) if Y.codim > 0] for X in verts}
    simplices = {-1: [()]}

    def extend(chain, X):
        simplices.setdefault(len(chain) - 1, []).append(tuple(pos[Y.id] for Y in chain))
        for Y in below[X.id]:
            extend(chain + [Y], Y)

    for X in verts:
        extend([X], X)
    for q in simplices:
        simplices[q] = sorted(simplices[q])
    return SimplicialComplex(verts, simplices)


def coboundary_rows(K: SimplicialComplex, q):
    """delta_q : C^q -> C^{q+1} as sparse rows indexed by (q+1)-simplices."""
    idx = K.index(q)
    rows = []
    for s in K[q + 1]:
        row = {}
        for i in range(len(s)):
            row[idx[s[:i] + s[i + 1:]]] = (-1) ** i
        rows.append(row)
    return rows


def coboundary_images(K: SimplicialComplex, q):
    """delta(tau*) for each q-simplex tau, as sparse vectors on (q+1)-simplices."""
    cols = [dict() for _ in K[q]]
    for r, row in enumerate(coboundary_rows(K, q)):
        for c, v in row.items():
            cols[c][r] = v
    return cols


def coboundary_rank(K, q):
    if not K[q] or not K[q + 1]:
        return 0
    return Echelon(coboundary_rows(K, q)).rank


def reduced_betti(K: SimplicialComplex, q):
    return len(K[q]) - coboundary_rank(K, q) - coboundary_rank(K, q - 1)


def reduced_betti_numbers(K: SimplicialComplex):
    return [reduced_betti(K, q) for q in range(-1, K.dimension + 1)]


def reduced_cohomology(K: SimplicialComplex, q):
    """(dim H~^q, representative cocycles as sparse dicts on q-simplices)."""
    rows = coboundary_rows(K, q)
    m = len(K[q])
    if rows:
        kernel = nullspace([[row.get(c, 0) for c in range(m)] for row in rows], m)
    else:
        kernel = [tuple(1 if c == k else 0 for c in range(m)) for k in range(m)]
    image = Echelon(coboundary_images(K, q - 1)) if q >= 0 else Echelon()
    reps = []
    for v in kernel:
        vec = {c: x for c, x in enumerate(v) if x != 0}
        if image.add(vec):
            reps.append(vec)
    return len(reps), reps


@dataclass
class ShellingReport:
    is_shelling: bool
    homology_facets: list
    violation: object = None


def check_lex_shelling(A: Arrangement) -> ShellingReport:
    """Verify that lexicographic order on nbc bases is a shelling of BC."""
    facets = [frozenset(B) for B in nbc_bases(A)]
    homology = []
    for k, sigma in enumerate(facets):
        if k == 0:
            continue
        meets = {sigma & tau for tau in facets[:k]}
        ridges = {m for m in meets if len(m) == len(sigma) - 1}
        if not ridges or any(not any(m <= f for f in ridges) for m in meets):
            return ShellingReport(False, homology, tuple(sorted(sigma)))
        if len(ridges) == len(sigma):
            homology.append(tuple(sorted(sigma)))
    return ShellingReport(True, homology)


def flag_of_base(A: Arrangement, B) -> Flag:
    B = tuple(B)
    if not A.is_base(B):
        raise ValueError("%r is not a base of the arrangement" % (B,))
    return Flag(tuple(A.flat(B[p:]) for p in range(len(B))))


def pi_vertex(X: Flat):
    return X.support[0]


@dataclass
class PiMap:
    vertex_map: dict       # Folkman vertex position -> BC vertex position
    simplex_map: dict      # F simplex -> (BC simplex, sign); degenerate images omitted
    pullback: dict         # top BC simplex -> {top F simplex: coeff}


def _sort_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
            elif seq[i] == seq[j]:
                return tuple(sorted(seq)), 0
    return tuple(sorted(seq)), sign


def pi_map(A: Arrangement, F=None, BC=None) -> PiMap:
    """X -> min(A_X) from F to BC, and the pullback of top cochains."""
    F = F or folkman_complex(A)
    BC = BC or broken_circuit_complex(A)
    bpos = {v: k for k, v in enumerate(BC.vertices)}
    vmap = {k: bpos[pi_vertex(X)] for k, X in enumerate(F.vertices)}
    bc_simplices = {q: set(BC[q]) for q in BC.simplices}
    smap = {}
    for q, simplices in F.simplices.items():
        for s in simplices:
            image = {vmap[v] for v in s}
            t = tuple(sorted(image))
            if t not in bc_simplices.get(len(t) - 1, ()):
                raise AssertionError("pi is not simplicial at %r" % (F.labelled(s),))
            if len(t) == len(s):
                smap[s] = _sort_sign(vmap[v] for v in s)
    top = A.rank - 1
    pullback = {B: {} for B in BC[top]}
    for s in F[top]:
        if s in smap:
            t, sign = smap[s]
            pullback[t][s] = pullback[t].get(s, 0) + sign
    return PiMap(vmap, smap, pullback)


def flag_simplex(F: SimplicialComplex, flag: Flag):
    pos = {X.id: k for k, X in enumerate(F.vertices)}
    return tuple(pos[X.id] for X in flag.flats)


@dataclass
class FlagBasisReport:
    ok: bool
    count: int
    dimension: int
    independent: bool


def verify_flag_basis(A: Arrangement, F=None) -> FlagBasisReport:
    """Classes [xi(B)*], B in beta-nbc, form a basis of H~^{r-1}(F)."""
    F = F or folkman_complex(A)
    r = A.rank
    top = r - 1
    idx = F.index(top)
    image = Echelon(coboundary_images(F, top - 1))
    base_rank = image.rank
    independent = True
    for B in betanbc_direct(A):
        s = flag_simplex(F, flag_of_base(A, B))
        if not image.add({idx[s]: 1}):
            independent = False
    dim = reduced_betti(F, top)
    count = len(betanbc_direct(A))
    ok = independent and count == dim and image.rank - base_rank == count
    return FlagBasisReport(ok, count, dim, independent)
