"""Exact dense linear algebra over the rationals.

Row reduction, rank, kernels, inverses, Moore-Penrose pseudoinverses and
orthogonal projections for the small matrices arising from exterior
algebras (at most a few dozen rows).  Pivots are chosen by smallest
numerator/denominator bit length, which keeps intermediate entries small;
any exact pivoting rule would be correct.
"""

from .rationals import Rat, ZERO, ONE


class Mat:
    """Dense exact-rational matrix with explicit shape (rows may be empty)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [[ZERO] * ncols for _ in range(nrows)]
        self.rows = rows

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.rows[i][i] = ONE
        return m

    def copy(self):
        return Mat(self.nrows, self.ncols, [list(r) for r in self.rows])

    def transpose(self):
        rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return Mat(self.ncols, self.nrows, rows)

    def col(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def apply(self, vec):
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        out = []
        for row in self.rows:
            s = ZERO
            for a, x in zip(row, vec):
                if a and x:
                    s += a * x
            out.append(s)
        return out

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        out = Mat(self.nrows, other.ncols)
        for i in range(self.nrows):
            arow = self.rows[i]
            orow = out.rows[i]
            for k in range(self.ncols):
                a = arow[k]
                if not a:
                    continue
                brow = other.rows[k]
                for j in range(other.ncols):
                    b = brow[j]
                    if b:
                        orow[j] += a * b
        return out

    def __add__(self, other):
        self._same_shape(other)
        return Mat(self.nrows, self.ncols,
                   [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._same_shape(other)
        return Mat(self.nrows, self.ncols,
                   [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, c):
        return Mat(self.nrows, self.ncols, [[c * a for a in r] for r in self.rows])

    def _same_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")

    def is_zero(self):
        return all(not a for row in self.rows for a in row)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.nrows == other.nrows and self.ncols == other.ncols
                and all(a == b for r1, r2 in zip(self.rows, other.rows)
                        for a, b in zip(r1, r2)))

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols})"


def vstack(a, b):
    if a.ncols != b.ncols:
        raise ValueError("column mismatch")
    return Mat(a.nrows + b.nrows, a.ncols, [list(r) for r in a.rows] + [list(r) for r in b.rows])


def _pivot_size(x):
    return x.numerator.bit_length() + x.denominator.bit_length()


def rref(a):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    m = a.copy()
    rows, cols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        best = -1
        best_size = None
        for i in range(r, rows):
            x = m.rows[i][c]
            if x:
                size = _pivot_size(x)
                if best_size is None or size < best_size:
                    best, best_size = i, size
        if best < 0:
            continue
        m.rows[r], m.rows[best] = m.rows[best], m.rows[r]
        piv = m.rows[r][c]
        if piv != ONE:
            inv = ONE / piv
            m.rows[r] = [x * inv for x in m.rows[r]]
        for i in range(rows):
            if i == r:
                continue
            f = m.rows[i][c]
            if f:
                ri, rr = m.rows[i], m.rows[r]
                for j in range(c, cols):
                    if rr[j]:
                        ri[j] -= f * rr[j]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a):
    return len(rref(a)[1])


def nullspace(a):
    """Basis of the right kernel, one vector per free column (ascending)."""
    r, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for j in range(a.ncols):
        if j in pivot_set:
            continue
        v = [ZERO] * a.ncols
        v[j] = ONE
        for i, pc in enumerate(pivots):
            if r.rows[i][j]:
                v[pc] = -r.rows[i][j]
        basis.append(v)
    return basis


def invert(a):
    if a.nrows != a.ncols:
        raise ValueError("not square")
    n = a.nrows
    aug = Mat(n, 2 * n, [list(r) + [ONE if i == j else ZERO for j in range(n)]
                         for i, r in enumerate(a.rows)])
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat(n, n, [row[n:] for row in r.rows])


def pseudoinverse(a):
    """Moore-Penrose pseudoinverse, exact over the rationals.

    Uses the rank factorization a = C R (C = pivot columns of a, R = the
    nonzero rows of rref(a)); then a+ = R^T (R R^T)^-1 (C^T C)^-1 C^T.
    """
    r, pivots = rref(a)
    k = len(pivots)
    if k == 0:
        return Mat(a.ncols, a.nrows)
    c = Mat(a.nrows, k, [[row[j] for j in pivots] for row in a.rows])
    rr = Mat(k, a.ncols, [list(r.rows[i]) for i in range(k)])
    m1 = invert(rr @ rr.transpose())
    m2 = invert(c.transpose() @ c)
    return rr.transpose() @ m1 @ m2 @ c.transpose()


def dot(u, v):
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def gram_schmidt(vectors):
    """Orthogonalize (no normalization, stays rational); drops dependents."""
    ortho = []
    for v in vectors:
        w = list(v)
        for u in ortho:
            c = dot(w, u) / dot(u, u)
            if c:
                w = [a - c * b for a, b in zip(w, u)]
        if any(w):
            ortho.append(w)
    return ortho


def projector(vectors, dim):
    """Orthogonal projection matrix onto the span of `vectors` in Q^dim."""
    p = Mat(dim, dim)
    for u in gram_schmidt(vectors):
        uu = dot(u, u)
        for i in range(dim):
            if not u[i]:
                continue
            row = p.rows[i]
            ci = u[i] / uu
            for j in range(dim):
                if u[j]:
                    row[j] += ci * u[j]
    return p
