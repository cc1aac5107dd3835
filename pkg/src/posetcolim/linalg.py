"""
Exact dense matrices over the integers and the rationals.

Everything in the package bottoms out in :func:`smith`, which brings a
matrix to Smith normal form with unimodular row and column transforms.
Linear systems, integer kernels and invariant factors are all read off a
:class:`SmithDecomposition`.

>>> S = smith(Matrix([[2, -3]]))
>>> S.diagonal
[1]
>>> S.U @ Matrix([[2, -3]]) @ S.V == S.D
True
"""

from __future__ import annotations

from fractions import Fraction


def xgcd(a, b):
    # Maintain the invariants:
    #          x * a +      y * b ==      g
    #     next_x * a + next_y * b == next_g
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class Matrix:
    """Dense matrix stored as a list of rows.

    The shape is kept explicitly so that 0 x n and n x 0 matrices behave.
    Entries are Python ints or Fractions; nothing is ever rounded.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    # construction -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n):
        M = cls.zeros(n, n)
        for i in range(n):
            M.rows[i][i] = 1
        return M

    @classmethod
    def from_columns(cls, columns, nrows):
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != nrows:
                raise ValueError("column length mismatch")
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @classmethod
    def diagonal_matrix(cls, entries):
        M = cls.zeros(len(entries), len(entries))
        for i, d in enumerate(entries):
            M.rows[i][i] = d
        return M

    @classmethod
    def block_diagonal(cls, blocks):
        nrows = sum(b.nrows for b in blocks)
        ncols = sum(b.ncols for b in blocks)
        M = cls.zeros(nrows, ncols)
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                M.rows[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return M

    def hstack(self, *others):
        ncols = self.ncols + sum(o.ncols for o in others)
        rows = [list(r) for r in self.rows]
        for o in others:
            if o.nrows != self.nrows:
                raise ValueError("hstack row mismatch")
            for r, extra in zip(rows, o.rows):
                r.extend(extra)
        return Matrix(rows, ncols)

    def vstack(self, *others):
        rows = [list(r) for r in self.rows]
        for o in others:
            if o.ncols != self.ncols:
                raise ValueError("vstack column mismatch")
            rows.extend(list(r) for r in o.rows)
        return Matrix(rows, self.ncols)

    # access -----------------------------------------------------------

    @property
    def shape(self):
        return self.nrows, self.ncols

    def col(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    def submatrix(self, row_idx, col_idx):
        col_idx = list(col_idx)
        return Matrix([[self.rows[i][j] for j in col_idx] for i in row_idx], len(col_idx))

    @property
    def T(self):
        return Matrix.from_columns(self.rows, self.ncols)

    def tolist(self):
        return [list(r) for r in self.rows]

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    # arithmetic -------------------------------------------------------

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.ncols
            orows = other.rows
            out = []
            for r in self.rows:
                acc = [0] * ocols
                for k, a in enumerate(r):
                    if a:
                        ok = orows[k]
                        for j in range(ocols):
                            b = ok[j]
                            if b:
                                acc[j] += a * b
                out.append(acc)
            return Matrix(out, ocols)
        # matrix times vector
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(r, vec) if a and b) for r in self.rows]

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(map(tuple, self.rows))))

    def __repr__(self):
        return f"Matrix({self.rows!r}, ncols={self.ncols})"


def _is_unit(x, field):
    return x != 0 if field else x in (1, -1)


class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` invertible over the base ring.

    ``diagonal`` lists the nonzero diagonal entries ``d_1 | d_2 | ...``
    (positive over the integers, all equal to 1 over a field).
    """

    def __init__(self, A, U, D, V, Uinv, diagonal, field):
        self.A = A
        self.U = U
        self.D = D
        self.V = V
        self.Uinv = Uinv
        self.diagonal = diagonal
        self.rank = len(diagonal)
        self.field = field

    def invariant_factors(self):
        """Full list of cokernel orders: one per row, 0 meaning free."""
        m = self.A.nrows
        return self.diagonal + [0] * (m - self.rank)

    def kernel_basis(self):
        """Columns of ``V`` beyond the rank span the kernel of ``A``."""
        V = self.V
        return [V.col(j) for j in range(self.rank, V.ncols)]

    def solve(self, b):
        """A particular solution of ``A x = b``, or None.

        Solutions are deterministic: free coordinates are set to zero.
        """
        y = self.U @ b
        n = self.A.ncols
        z = [0] * n
        for i, d in enumerate(self.diagonal):
            yi = y[i]
            if self.field:
                z[i] = Fraction(yi) / d
            else:
                if yi % d:
                    return None
                z[i] = yi // d
        for i in range(self.rank, len(y)):
            if y[i]:
                return None
        return self.V @ z


def smith(A, field=False, inverse=False):
    """Smith normal form of ``A`` with transforms.

    Pivots are chosen of minimal absolute value to contain coefficient
    growth.  With ``inverse=True`` the inverse of ``U`` is tracked too.

    >>> S = smith(Matrix([[2, 0], [0, 4]]).hstack(Matrix([[0], [0]])))
    >>> S.diagonal, S.rank
    ([2, 4], 2)
    >>> smith(Matrix([[4, 0], [0, 6]])).diagonal
    [2, 12]
    """
    m, n = A.nrows, A.ncols
    if field:
        D = [[Fraction(x) for x in r] for r in A.rows]
    else:
        D = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)] if inverse else None

    def size(x):
        return 1 if field else abs(x)

    def swap_rows(a, b):
        if a == b:
            return
        D[a], D[b] = D[b], D[a]
        U[a], U[b] = U[b], U[a]
        if Ui is not None:
            for r in Ui:
                r[a], r[b] = r[b], r[a]

    def swap_cols(a, b):
        if a == b:
            return
        for r in D:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]

    def add_row(dst, src, q, t):
        # row_dst += q * row_src
        rd, rs = D[dst], D[src]
        for j in range(t, n):
            if rs[j]:
                rd[j] += q * rs[j]
        ud, us = U[dst], U[src]
        for j in range(m):
            if us[j]:
                ud[j] += q * us[j]
        if Ui is not None:
            for r in Ui:
                if r[dst]:
                    r[src] -= q * r[dst]

    def add_col(dst, src, q, t):
        # col_dst += q * col_src
        for i in range(t, m):
            r = D[i]
            if r[src]:
                r[dst] += q * r[src]
        for r in V:
            if r[src]:
                r[dst] += q * r[src]

    def scale_row(i, c):
        # c is a unit
        D[i] = [c * x for x in D[i]]
        U[i] = [c * x for x in U[i]]
        if Ui is not None:
            inv = 1 / c if field else c
            for r in Ui:
                r[i] = r[i] * inv

    def quotient(b, a):
        return b / a if field else b // a

    diagonal = []
    t = 0
    while t < min(m, n):
        best = None
        piv = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or size(v) < best):
                    best, piv = size(v), (i, j)
                    if _is_unit(v, field):
                        break
            if best is not None and best == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                b = D[i][t]
                if b:
                    add_row(i, t, -quotient(b, p), t)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                b = D[t][j]
                if b:
                    add_col(j, t, -quotient(b, p), t)
                    if D[t][j]:
                        clean = False
            if not clean:
                # a smaller remainder appeared in row or column t
                best, piv = size(p), None
                for i in range(t + 1, m):
                    v = D[i][t]
                    if v and size(v) < best:
                        best, piv = size(v), ("r", i)
                for j in range(t + 1, n):
                    v = D[t][j]
                    if v and size(v) < best:
                        best, piv = size(v), ("c", j)
                if piv is not None:
                    if piv[0] == "r":
                        swap_rows(t, piv[1])
                    else:
                        swap_cols(t, piv[1])
                continue
            if field:
                break
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1, t)
        if field:
            scale_row(t, 1 / D[t][t])
        elif D[t][t] < 0:
            scale_row(t, -1)
        diagonal.append(D[t][t])
        t += 1

    return SmithDecomposition(
        A,
        Matrix(U, m),
        Matrix(D, n),
        Matrix(V, n),
        Matrix(Ui, m) if Ui is not None else None,
        diagonal,
        field,
    )


def integer_kernel(A, field=False):
    """Basis (as a list of vectors) of the kernel of ``A``."""
    return smith(A, field).kernel_basis()


def solve(A, b, field=False):
    """One solution of ``A x = b`` or None."""
    return smith(A, field).solve(b)


def determinant(A):
    """Exact determinant by elimination over the rationals."""
    n = A.nrows
    if n != A.ncols:
        raise ValueError("square matrix required")
    M = [[Fraction(x) for x in r] for r in A.rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return int(det) if det.denominator == 1 else det
