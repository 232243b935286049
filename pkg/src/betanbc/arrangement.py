"""
Affine hyperplane arrangements over Q.

Hyperplanes carry a fixed linear order (1-based ``index``). All geometry is
exact; a flat is identified by the reduced row echelon form of its defining
system ``[coeffs | -constant]``.
"""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional

from .linalg import as_fraction, fstr, nullspace, rref


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    """Zero locus of ``coeffs . x + constant``."""

    index: int
    coeffs: tuple
    constant: Fraction
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))
        object.__setattr__(self, "constant", as_fraction(self.constant))
        if not any(self.coeffs):
            raise ArrangementError("hyperplane %s has zero coefficient vector" % (self.label or self.index))

    def __call__(self, x):
        return sum(a * b for a, b in zip(self.coeffs, x)) + self.constant

    @property
    def row(self):
        return self.coeffs + (-self.constant,)

    def projective_key(self):
        form = self.coeffs + (self.constant,)
        lead = next(c for c in form if c != 0)
        return tuple(c / lead for c in form)

    def direction_key(self):
        lead = next(c for c in self.coeffs if c != 0)
        return tuple(c / lead for c in self.coeffs)

    def is_parallel(self, other):
        return self.direction_key() == other.direction_key()


@dataclass(frozen=True)
class Subspace:
    """A nonempty affine subspace cut out by some hyperplanes."""

    key: tuple
    codim: int
    point: tuple
    directions: tuple


def _on(h, sub):
    if h(sub.point) != 0:
        return False
    return all(sum(a * d for a, d in zip(h.coeffs, v)) == 0 for v in sub.directions)


def _subspace(rows, dim):
    R, pivots = rref(rows, dim + 1)
    if dim in pivots:
        return None
    point = [Fraction(0)] * dim
    for row, pc in zip(R, pivots):
        point[pc] = row[dim]
    dirs = nullspace([row[:dim] for row in R], dim)
    return Subspace(tuple(R), len(R), tuple(point), tuple(dirs))


@dataclass(frozen=True)
class Flat:
    id: int
    support: tuple
    codim: int
    point: tuple
    directions: tuple
    key: tuple = field(repr=False)

    def __contains__(self, i):
        return i in self.support


class FlatLattice:
    """The intersection poset L(A), ordered by reverse inclusion."""

    def __init__(self, dimension, flats):
        self.dimension = dimension
        self.flats = tuple(flats)
        self.by_support = {X.support: X for X in self.flats}
        self.by_key = {X.key: X for X in self.flats}
        self.rank = max(X.codim for X in self.flats)

    def __len__(self):
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    def __getitem__(self, i):
        return self.flats[i]

    @property
    def bottom(self):
        return self.flats[0]

    def leq(self, Y, X):
        return set(Y.support) <= set(X.support)

    def below(self, X):
        s = set(X.support)
        return [Y for Y in self.flats if set(Y.support) < s]

    def maximal(self):
        return [X for X in self.flats if X.codim == self.rank]

    def of_codim(self, k):
        return [X for X in self.flats if X.codim == k]

    def get(self, handle):
        if isinstance(handle, Flat):
            handle = handle.id
        if isinstance(handle, int):
            if 0 <= handle < len(self.flats):
                return self.flats[handle]
        else:
            X = self.by_support.get(tuple(handle))
            if X is not None:
                return X
        raise KeyError("unknown flat %r" % (handle,))


class Arrangement:
    """An ordered affine arrangement in Q^dimension.

    Treated as immutable; geometric queries are memoized on the instance.
    """

    def __init__(self, dimension, hyperplanes):
        if dimension < 0:
            raise ArrangementError("dimension must be nonnegative")
        hs = []
        seen = {}
        for k, h in enumerate(hyperplanes, 1):
            if not isinstance(h, Hyperplane):
                coeffs, constant = h[:-1], h[-1]
                h = Hyperplane(k, coeffs, constant, "H%d" % k)
            elif h.index != k:
                h = Hyperplane(k, h.coeffs, h.constant, h.label)
            if len(h.coeffs) != dimension:
                raise ArrangementError(
                    "hyperplane %s has %d coefficients, expected %d" % (h.label or k, len(h.coeffs), dimension))
            pk = h.projective_key()
            if pk in seen:
                raise ArrangementError("duplicate hyperplane: %d and %d coincide" % (seen[pk], k))
            seen[pk] = k
            hs.append(h)
        self.dimension = dimension
        self.hyperplanes = tuple(hs)
        self._meets = {}

    @classmethod
    def from_rows(cls, rows, labels=None):
        """Build from rows ``(a_1, ..., a_l, c)`` meaning ``a.x + c = 0``."""
        rows = [tuple(as_fraction(x) for x in row) for row in rows]
        if not rows:
            raise ArrangementError("empty arrangement needs an explicit dimension")
        dim = len(rows[0]) - 1
        hs = [Hyperplane(k, row[:-1], row[-1], labels[k - 1] if labels else "H%d" % k)
              for k, row in enumerate(rows, 1)]
        return cls(dim, hs)

    def __len__(self):
        return len(self.hyperplanes)

    @property
    def n(self):
        return len(self.hyperplanes)

    def __getitem__(self, i):
        if not 1 <= i <= len(self.hyperplanes):
            raise IndexError("hyperplane index %r out of range 1..%d" % (i, len(self.hyperplanes)))
        return self.hyperplanes[i - 1]

    def __repr__(self):
        return "Arrangement(dim=%d, n=%d)" % (self.dimension, self.n)

    @property
    def indices(self):
        return tuple(range(1, self.n + 1))

    # -- geometry ---------------------------------------------------------

    def meet(self, indices) -> Optional[Subspace]:
        """H_I as a Subspace, or None when the intersection is empty."""
        I = frozenset(indices)
        try:
            return self._meets[I]
        except KeyError:
            pass
        for i in I:
            self[i]
        sub = _subspace([self[i].row for i in sorted(I)], self.dimension)
        self._meets[I] = sub
        return sub

    def flat(self, indices) -> Optional[Flat]:
        sub = self.meet(indices)
        if sub is None:
            return None
        return self.lattice.by_key[sub.key]

    def contains(self, i, sub):
        return _on(self[i], sub)

    @cached_property
    def lattice(self):
        return build_lattice(self)

    @property
    def rank(self):
        return self.lattice.rank

    def is_independent(self, S):
        sub = self.meet(S)
        return sub is not None and sub.codim == len(set(S))

    def is_dependent(self, S):
        sub = self.meet(S)
        return sub is not None and sub.codim < len(set(S))

    def is_base(self, S):
        return len(set(S)) == self.rank and self.is_independent(S)

    def parallel(self, i, j):
        return self[i].is_parallel(self[j])

    # -- derived arrangements ----------------------------------------------

    def subarrangement(self, indices):
        """The hyperplanes ``indices`` (in the given order) as a new arrangement."""
        return Arrangement(self.dimension, [self[i] for i in indices])

    def reordered(self, order):
        """New arrangement whose k-th hyperplane is the old ``order[k-1]``."""
        order = tuple(order)
        if sorted(order) != list(self.indices):
            raise ArrangementError("order %r is not a permutation of 1..%d" % (order, self.n))
        return self.subarrangement(order)

    def to_json(self):
        return {
            "dimension": self.dimension,
            "hyperplanes": [
                {"label": h.label, "coeffs": [fstr(c) for c in h.coeffs], "constant": fstr(h.constant)}
                for h in self.hyperplanes
            ],
        }


def parse_arrangement(text):
    """Parse the JSON arrangement format; file order fixes the linear order."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ArrangementError("invalid JSON: %s" % e) from None
    if not isinstance(data, dict) or "dimension" not in data or "hyperplanes" not in data:
        raise ArrangementError("arrangement needs 'dimension' and 'hyperplanes'")
    dim = data["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ArrangementError("dimension must be a positive integer")
    entries = data["hyperplanes"]
    if not isinstance(entries, list) or not entries:
        raise ArrangementError("at least one hyperplane is required")
    hs = []
    for k, entry in enumerate(entries, 1):
        try:
            coeffs = [_rational(c) for c in entry["coeffs"]]
            constant = _rational(entry.get("constant", "0"))
        except (KeyError, TypeError) as e:
            raise ArrangementError("hyperplane %d: missing field %s" % (k, e)) from None
        if len(coeffs) != dim:
            raise ArrangementError("hyperplane %d has %d coefficients, expected %d" % (k, len(coeffs), dim))
        hs.append(Hyperplane(k, coeffs, constant, entry.get("label", "H%d" % k)))
    return Arrangement(dim, hs)


def _rational(s):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ArrangementError("rational must be a string 'p/q' or 'p', got %r" % (s,))
    try:
        return Fraction(s) if isinstance(s, int) else Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise ArrangementError("malformed rational %r" % (s,)) from None


def load_arrangement(path):
    with open(path, encoding="utf-8") as f:
        return parse_arrangement(f.read())


def build_lattice(A: Arrangement) -> FlatLattice:
    """Intersection poset, built by intersecting known flats with each new hyperplane."""
    dim = A.dimension
    ambient = _subspace([], dim)
    subs = {ambient.key: ambient}
    for h in A.hyperplanes:
        for sub in list(subs.values()):
            if _on(h, sub):
                continue
            new = _subspace(list(sub.key) + [h.row], dim)
            if new is not None and new.key not in subs:
                subs[new.key] = new
    flats = []
    for sub in subs.values():
        support = tuple(h.index for h in A.hyperplanes if _on(h, sub))
        flats.append((sub.codim, support, sub))
    flats.sort(key=lambda t: (t[0], t[1]))
    out = [Flat(k, support, codim, sub.point, sub.directions, sub.key)
           for k, (codim, support, sub) in enumerate(flats)]
    return FlatLattice(dim, out)


def rank(A):
    return A.rank


def localization(L: FlatLattice, X):
    """The ordered index list of A_X."""
    return list(L.get(X).support)


class Triple(NamedTuple):
    deleted: Arrangement      # A' = A - {H}, inherited order
    deleted_map: tuple        # A' index k -> A index
    restricted: Arrangement   # A'' inside H, ordered by nu
    nu: tuple                 # A'' index k -> smallest hyperplane of A' containing it


def triple(A: Arrangement, i) -> Triple:
    """Deletion-restriction triple with respect to hyperplane ``i``.

    The restriction is realized in coordinates t on H = {p + D t}. Each
    hyperplane of A'' is a codim-2 flat Y lying on H, and nu(Y) is the
    smallest other hyperplane containing Y.
    """
    A[i]
    keep = tuple(j for j in A.indices if j != i)
    deleted = A.subarrangement(keep)
    H = A.meet([i])
    p, D = H.point, H.directions
    rows = []
    for Y in A.lattice.of_codim(2):
        if i not in Y.support:
            continue
        others = [j for j in Y.support if j != i]
        K = A[others[0]]
        coeffs = tuple(sum(a * d for a, d in zip(K.coeffs, v)) for v in D)
        const = K(p)
        rows.append((min(others), coeffs, const))
    rows.sort(key=lambda t: t[0])
    nu = tuple(t[0] for t in rows)
    hs = [Hyperplane(k, coeffs, const, "H%d|H%d" % (m, i)) for k, (m, coeffs, const) in enumerate(rows, 1)]
    restricted = Arrangement(A.dimension - 1, hs)
    return Triple(deleted, keep, restricted, nu)


def is_separator(A: Arrangement, i):
    keep = [j for j in A.indices if j != i]
    if not keep:
        return A.rank > 0
    return A.subarrangement(keep).rank < A.rank


@dataclass
class ProjectiveClosure:
    """The cone over A together with the hyperplane at infinity z = 0."""

    arrangement: Arrangement
    cone: Arrangement

    @property
    def infinity_index(self):
        return self.cone.n

    @property
    def lattice(self):
        return self.cone.lattice

    def elements(self):
        """Cone flats standing for elements of L(A_inf) - {P^l}."""
        return [X for X in self.lattice if X.support and X.directions]

    def label(self, i):
        return "inf" if i == self.infinity_index else i

    def labelled_support(self, X):
        return [self.label(i) for i in X.support]

    def at_infinity(self, X):
        return self.infinity_index in X.support

    def affine_flat(self, X):
        """The flat of A whose closure is X, or None if X lies at infinity."""
        if self.at_infinity(X):
            return None
        return self.arrangement.lattice.by_support.get(X.support)


def projective_closure(A: Arrangement) -> ProjectiveClosure:
    hs = [Hyperplane(h.index, h.coeffs + (h.constant,), 0, h.label) for h in A.hyperplanes]
    inf = Hyperplane(A.n + 1, (0,) * A.dimension + (1,), 0, "inf")
    return ProjectiveClosure(A, Arrangement(A.dimension + 1, hs + [inf]))


def random_arrangement(rng: random.Random, n, dimension, span=2, denominators=(1,), max_tries=1000):
    """Random arrangement with small rational coefficients.

    Coefficients are drawn from {-span..span}/d; zero forms and duplicates are
    rejected and redrawn.
    """
    rows, keys = [], set()
    tries = 0
    while len(rows) < n:
        tries += 1
        if tries > max_tries:
            raise ArrangementError("could not draw %d distinct hyperplanes" % n)
        row = tuple(Fraction(rng.randint(-span, span), rng.choice(denominators)) for _ in range(dimension + 1))
        if not any(row[:-1]):
            continue
        h = Hyperplane(1, row[:-1], row[-1])
        k = h.projective_key()
        if k in keys:
            continue
        keys.add(k)
        rows.append(row)
    return Arrangement.from_rows(rows)
