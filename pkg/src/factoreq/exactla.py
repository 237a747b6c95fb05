"""Exact linear algebra over Z and Q.

Everything here is arbitrary-precision: matrices hold Python ints, rational
results are `fractions.Fraction`. No floating point is used anywhere, so all
equalities downstream are exact.
"""

from fractions import Fraction
from operator import index as _as_int


class ExactLinAlgError(ValueError):
    """Raised when a lattice/matrix precondition is violated."""


class IntMatrix:
    """Immutable dense integer matrix.

    Rows and columns may be zero; the empty 0x0 matrix has determinant 1.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data, cols=None):
        data = tuple(tuple(_as_int(x) for x in row) for row in data)
        if data:
            ncols = len(data[0])
            if any(len(row) != ncols for row in data):
                raise ExactLinAlgError("ragged rows")
            if cols is not None and cols != ncols:
                raise ExactLinAlgError("cols mismatch")
        else:
            if cols is None:
                raise ExactLinAlgError("empty matrix needs explicit cols")
            ncols = cols
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def zeros(cls, rows, cols):
        return cls(((0,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def identity(cls, n):
        return cls(
            (tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
            cols=n,
        )

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [tuple(col) for col in columns]
        if columns:
            return cls(zip(*columns), cols=len(columns)) if columns[0] else cls(
                [], cols=len(columns)
            )
        if rows is None:
            raise ExactLinAlgError("empty column list needs explicit rows")
        return cls(((),) * rows if rows else [], cols=0)

    def __getitem__(self, pos):
        i, j = pos
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(r[j] for r in self._data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def tolist(self):
        return [list(r) for r in self._data]

    def transpose(self):
        if self.rows == 0 or self.cols == 0:
            return IntMatrix.zeros(self.cols, self.rows)
        return IntMatrix(zip(*self._data), cols=self.rows)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ExactLinAlgError("row count mismatch in hstack")
        return IntMatrix(
            (a + b for a, b in zip(self._data, other._data)),
            cols=self.cols + other.cols,
        ) if self.rows else IntMatrix([], cols=self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise ExactLinAlgError("column count mismatch in vstack")
        return IntMatrix(self._data + other._data, cols=self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.rows, self.cols, self._data))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ExactLinAlgError("shape mismatch")
        return IntMatrix(
            (tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._data, other._data)),
            cols=self.cols,
        )

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ExactLinAlgError("shape mismatch")
        return IntMatrix(
            (tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._data, other._data)),
            cols=self.cols,
        )

    def __neg__(self):
        return IntMatrix((tuple(-x for x in r) for r in self._data), cols=self.cols)

    def __mul__(self, scalar):
        c = _as_int(scalar)
        return IntMatrix((tuple(c * x for x in r) for r in self._data), cols=self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ExactLinAlgError("shape mismatch in product")
        if self.rows == 0 or other.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        bt = list(zip(*other._data)) if other.rows else []
        return IntMatrix(
            (
                tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                if bt
                else (0,) * other.cols
                for row in self._data
            ),
            cols=other.cols,
        )

    def apply(self, vector):
        """Matrix-vector product; `vector` is a length-`cols` sequence."""
        vector = tuple(vector)
        if len(vector) != self.cols:
            raise ExactLinAlgError("vector length mismatch")
        return tuple(sum(x * y for x, y in zip(row, vector)) for row in self._data)

    def is_zero(self):
        return all(x == 0 for r in self._data for x in r)

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"


def _snf_engine(a, want_u, want_v):
    """Diagonalize by unimodular row/column operations.

    Returns (u_rows, diag_matrix, v_rows) where the tracked transforms satisfy
    U @ A @ V == D. Pivoting is on minimal absolute value; after each pivot is
    isolated a divisibility sweep folds any violating entry back in, so the
    final diagonal is a divisor chain d1 | d2 | ... with di >= 0.
    """
    m, n = a.rows, a.cols
    d = [list(r) for r in a._data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if want_u else None
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if want_v else None

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        if u is not None:
            u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, c):
        for row in d:
            row[i] += c * row[j]
        if v is not None:
            for row in v:
                row[i] += c * row[j]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    for t in range(min(m, n)):
        # Find the minimal-absolute-value nonzero entry of the trailing block.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            if d[t][t] < 0:
                negate_row(t)
            p = d[t][t]
            # Clear column t; any nonzero remainder becomes a smaller pivot.
            smaller = None
            for i in range(m):
                if i != t and d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    if d[i][t]:
                        smaller = i
            if smaller is not None:
                swap_rows(t, smaller)
                continue
            # Clear row t (column ops touch only row t now).
            smaller = None
            for j in range(n):
                if j != t and d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    if d[t][j]:
                        smaller = j
            if smaller is not None:
                swap_cols(t, smaller)
                continue
            # Divisibility sweep over the untouched block.
            viol = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % p:
                        viol = i
                        break
                if viol is not None:
                    break
            if viol is None:
                break
            add_row(t, viol, 1)
    diag = IntMatrix(d, cols=n)
    return u, diag, v


def smith_normal_form(a):
    """Smith normal form with transforms.

    Returns (U, D, V) with U (rows x rows) and V (cols x cols) unimodular,
    U @ A @ V == D diagonal, diagonal entries nonnegative and each dividing
    the next.
    """
    u, d, v = _snf_engine(a, want_u=True, want_v=True)
    return IntMatrix(u, cols=a.rows), d, IntMatrix(v, cols=a.cols)


def invariant_factors(a):
    """Nonzero diagonal of the Smith form, as a tuple d1 | d2 | ..."""
    _, d, _ = _snf_engine(a, want_u=False, want_v=False)
    return tuple(d[i, i] for i in range(min(a.rows, a.cols)) if d[i, i])


def rank(a):
    return len(invariant_factors(a))


def integer_kernel(a):
    """Basis of {x in Z^cols : A x = 0} as matrix columns.

    The returned basis spans a saturated sublattice: any integer kernel vector
    is an integer combination of the columns.
    """
    _, d, v = _snf_engine(a, want_u=False, want_v=True)
    r = sum(1 for i in range(min(a.rows, a.cols)) if d[i, i])
    cols = [tuple(v[i][j] for i in range(a.cols)) for j in range(r, a.cols)]
    return IntMatrix.from_columns(cols, rows=a.cols)


def determinant(a):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise ExactLinAlgError("determinant of non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(r) for r in a._data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_positive_definite(a):
    """Sylvester test: all leading principal minors positive."""
    if a.rows != a.cols:
        return False
    n = a.rows
    if n == 0:
        return True
    m = [list(r) for r in a._data]
    prev = 1
    for k in range(n):
        if m[k][k] <= 0:
            # Bareiss pivot k equals the k+1st leading principal minor.
            return False
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return True


def rational_solve(a, b):
    """Solve A X = B over Q columnwise; None if inconsistent.

    B may be an IntMatrix or a matrix of Fractions (list of rows). Returns the
    solution as a list of rows of Fractions (cols(A) x cols(B)), with free
    variables set to zero.
    """
    m, n = a.rows, a.cols
    brows = b.tolist() if isinstance(b, IntMatrix) else [list(r) for r in b]
    k = len(brows[0]) if brows else (b.cols if isinstance(b, IntMatrix) else 0)
    if len(brows) != m:
        raise ExactLinAlgError("right-hand side row count mismatch")
    aug = [
        [Fraction(x) for x in a._data[i]] + [Fraction(x) for x in brows[i]]
        for i in range(m)
    ]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for i in range(m):
            if i != row and aug[i][col]:
                c = aug[i][col]
                aug[i] = [x - c * y for x, y in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if any(aug[i][n:]):
            return None
    x = [[Fraction(0)] * k for _ in range(n)]
    for r, col in enumerate(pivots):
        x[col] = aug[r][n:]
    return x


def invert_unimodular(u):
    """Inverse of a matrix with determinant +-1, over Z."""
    sol = rational_solve(u, IntMatrix.identity(u.rows))
    if sol is None or any(x.denominator != 1 for r in sol for x in r):
        raise ExactLinAlgError("matrix is not unimodular")
    return IntMatrix(((x.numerator for x in r) for r in sol), cols=u.rows)


class ImageSolver:
    """Repeated solving of A x = b over Z against a fixed A.

    Factors A once (U A V = D) and answers membership of columns in the
    integer column span.
    """

    def __init__(self, a):
        self.a = a
        u, d, v = smith_normal_form(a)
        self._u, self._d, self._v = u, d, v
        self._r = sum(1 for i in range(min(a.rows, a.cols)) if d[i, i])

    def solve(self, b):
        """Integer X with A X = B, or None if no integral solution exists."""
        if b.rows != self.a.rows:
            raise ExactLinAlgError("right-hand side row count mismatch")
        c = self._u @ b
        y = []
        for i in range(self.a.cols):
            if i < min(self.a.rows, self.a.cols) and self._d[i, i]:
                di = self._d[i, i]
                roww = []
                for j in range(b.cols):
                    q, rem = divmod(c[i, j], di)
                    if rem:
                        return None
                    roww.append(q)
                y.append(tuple(roww))
            else:
                y.append((0,) * b.cols)
        for i in range(self._r, self.a.rows):
            if any(c[i, j] for j in range(b.cols)):
                return None
        return self._v @ IntMatrix(y, cols=b.cols)


def integer_solve(a, b):
    """Integer solution X of A X = B, or None."""
    return ImageSolver(a).solve(b)


def column_lattice_basis(a):
    """Canonical basis (as matrix columns) of the lattice spanned by A's columns.

    Computed as the row Hermite form of the transpose; the result has full
    column rank and spans exactly the integer column span of A.
    """
    rows = [list(r) for r in a.transpose()._data]
    m = len(rows)
    n = a.rows
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if rows[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(rows[i][c]), i))
            rows[r], rows[i0] = rows[i0], rows[r]
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            clean = True
            for i in range(r + 1, m):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        clean = False
            if clean:
                break
        if rows[r][c]:
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            r += 1
    return IntMatrix.from_columns([tuple(rows[i]) for i in range(r)], rows=n)


def lattice_index(sub, sup):
    """Index [L_sup : L_sub] of one lattice in another, given by basis columns.

    Both arguments are matrices whose columns span the respective lattices
    inside a common ambient Z^n. Requires equal rational column spans (else
    the index is infinite) and integral containment of sub in sup.
    """
    if sub.rows != sup.rows:
        raise ExactLinAlgError("lattices live in different ambient spaces")
    sb = column_lattice_basis(sub)
    pb = column_lattice_basis(sup)
    if sb.cols != pb.cols:
        raise ExactLinAlgError("infinite index: ranks differ")
    if pb.cols == 0:
        return 1
    coords = rational_solve(pb, sb)
    if coords is None:
        raise ExactLinAlgError("infinite index: spans differ")
    if any(x.denominator != 1 for r in coords for x in r):
        raise ExactLinAlgError("not a sublattice")
    c = IntMatrix(((x.numerator for x in r) for r in coords), cols=sb.cols)
    det = determinant(c)
    if det == 0:
        raise ExactLinAlgError("infinite index: ranks differ")
    return abs(det)


def gram_determinant(pairing, basis, scale=1):
    """det(scale * B^T P B) as an exact Fraction.

    `pairing` is a symmetric integer matrix on the ambient space, `basis` a
    matrix whose columns are the vectors to pair, `scale` a rational applied
    entrywise to the Gram matrix before taking the determinant.
    """
    if pairing.rows != pairing.cols:
        raise ExactLinAlgError("pairing matrix must be square")
    if pairing != pairing.transpose():
        raise ExactLinAlgError("pairing matrix must be symmetric")
    if basis.rows != pairing.rows:
        raise ExactLinAlgError("basis/pairing dimension mismatch")
    g = basis.transpose() @ pairing @ basis
    return Fraction(scale) ** g.rows * determinant(g)
