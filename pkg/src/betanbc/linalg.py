"""
Exact linear algebra over the rationals.

Two flavours live here:

* dense Gauss-Jordan on short ``Fraction`` rows, used for the geometry of
  flats (a handful of columns);
* sparse fraction-free elimination on integer rows stored as ``{col: int}``,
  used for the Orlik-Solomon / cochain matrices, which are large and very
  sparse.
"""

from fractions import Fraction
from math import gcd, lcm


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fstr(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


# ---------------------------------------------------------------------------
# dense

def rref(rows, ncols):
    """Reduced row echelon form of ``rows`` (lists of Fractions).

    Returns ``(reduced_rows, pivots)``; zero rows are dropped.
    """
    M = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(M)):
            if M[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        if piv != 1:
            M[r] = [x / piv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return [tuple(row) for row in M[:r]], tuple(pivots)


def nullspace(rows, ncols):
    """Basis of {x : row . x = 0 for all rows}, one vector per free column."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def solve_columns(columns, target, nrows):
    """Find coefficients c with sum_k c[k] * columns[k] == target.

    ``columns`` and ``target`` are sparse dicts ``{row: value}``. Returns a
    list of Fractions (free variables set to zero), or None if inconsistent.
    """
    k = len(columns)
    rows = []
    for i in range(nrows):
        rows.append([Fraction(col.get(i, 0)) for col in columns] + [Fraction(target.get(i, 0))])
    R, pivots = rref(rows, k + 1)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for row, pc in zip(R, pivots):
        x[pc] = row[k]
    return x


def det(matrix):
    """Exact determinant of a square matrix of rationals."""
    M = [[Fraction(x) for x in row] for row in matrix]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


# ---------------------------------------------------------------------------
# sparse, fraction-free

def primitive(row):
    """Scale a sparse rational row to coprime integers, leading entry positive."""
    row = {c: Fraction(v) for c, v in row.items() if v != 0}
    if not row:
        return {}
    m = lcm(*(v.denominator for v in row.values()))
    ints = {c: int(v * m) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    return {c: v // g for c, v in ints.items()}


class Echelon:
    """Incrementally built row echelon basis with primitive integer rows.

    Rows are keyed by their leading (smallest) column. Elimination is
    ``row <- p*row - a*basis_row`` followed by content removal, so no
    fractions are ever formed.
    """

    def __init__(self, rows=()):
        self.rows = {}
        for row in rows:
            self.add(row)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, row):
        row = primitive(row)
        while row:
            c = min(row)
            b = self.rows.get(c)
            if b is None:
                break
            p, a = b[c], row[c]
            new = {}
            for col, v in row.items():
                new[col] = p * v
            for col, v in b.items():
                w = new.get(col, 0) - a * v
                if w:
                    new[col] = w
                else:
                    new.pop(col, None)
            row = primitive(new)
        return row

    def add(self, row):
        """Insert ``row``; return True if it raised the rank."""
        row = self.reduce(row)
        if not row:
            return False
        self.rows[min(row)] = row
        return True

    def contains(self, row):
        return not self.reduce(row)

    def copy(self):
        e = Echelon()
        e.rows = dict(self.rows)
        return e


def rank(rows):
    return Echelon(rows).rank


def dense_to_sparse(vec):
    return {i: v for i, v in enumerate(vec) if v != 0}
