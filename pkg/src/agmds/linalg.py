"""Dense exact linear algebra over a FieldSpec.

Matrices store element codes (plain ints) row-major in lists.  Pivoting is
deterministic (first nonzero entry in column order), so reduced forms,
kernels and solution bases are reproducible across runs.
"""

from __future__ import annotations

from .field import FieldSpec


class FFMatrix:
    """A rows x cols matrix of field element codes."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, data, cols: int | None = None):
        data = [list(row) for row in data]
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged rows")
        else:
            width = 0 if cols is None else cols
        self.field = field
        self.rows = len(data)
        self.cols = width if data else (cols or 0)
        self.data = data

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> "FFMatrix":
        return cls(field, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "FFMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def copy(self) -> "FFMatrix":
        return FFMatrix(self.field, self.data, self.cols)

    def transpose(self) -> "FFMatrix":
        return FFMatrix(
            self.field,
            [[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)],
            self.rows,
        )

    def stack(self, other: "FFMatrix") -> "FFMatrix":
        if other.cols != self.cols:
            raise ValueError("column count mismatch")
        return FFMatrix(self.field, self.data + other.data, self.cols)

    def mul(self, other: "FFMatrix") -> "FFMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        F = self.field
        add, mul = F.add, F.mul
        ot = other.transpose().data
        out = []
        for row in self.data:
            out_row = []
            for col in ot:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc = add(acc, mul(a, b))
                out_row.append(acc)
            out.append(out_row)
        return FFMatrix(F, out, other.cols)

    def scale_columns(self, diag) -> "FFMatrix":
        """Right-multiply by diag(v)."""
        F = self.field
        mul = F.mul
        diag = list(diag)
        if len(diag) != self.cols:
            raise ValueError("diagonal length mismatch")
        return FFMatrix(
            F, [[mul(v, d) for v, d in zip(row, diag)] for row in self.data], self.cols
        )

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.data for v in row)

    def __eq__(self, other):
        return (
            isinstance(other, FFMatrix)
            and self.field == other.field
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"FFMatrix({self.rows}x{self.cols} over {self.field.spec_text()})"


def rref_rank(M: FFMatrix) -> tuple[FFMatrix, int, list[int]]:
    """Gauss-Jordan reduced row echelon form.

    Returns (RREF matrix, rank, pivot column list).  Pivot choice is the
    first nonzero entry scanning rows top-down within each column.
    """
    F = M.field
    mul, sub, inv = F.mul, F.sub, F.inv
    R = [row[:] for row in M.data]
    nrows, ncols = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if R[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            R[r], R[pr] = R[pr], R[r]
        pv = R[r][c]
        if pv != 1:
            ipv = inv(pv)
            R[r] = [mul(ipv, v) for v in R[r]]
        Rr = R[r]
        for i in range(nrows):
            if i != r and R[i][c]:
                f = R[i][c]
                Ri = R[i]
                R[i] = [sub(Ri[j], mul(f, Rr[j])) for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return FFMatrix(F, R, ncols), r, pivots


def rank(M: FFMatrix) -> int:
    """Row echelon rank (forward elimination only; cheaper than rref_rank)."""
    F = M.field
    mul, sub, inv = F.mul, F.sub, F.inv
    R = [row[:] for row in M.data]
    nrows, ncols = M.rows, M.cols
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if R[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            R[r], R[pr] = R[pr], R[r]
        ipv = inv(R[r][c])
        Rr = R[r]
        for i in range(r + 1, nrows):
            fi = R[i][c]
            if fi:
                f = mul(fi, ipv)
                Ri = R[i]
                # rows below the pivot are already zero left of column c
                for j in range(c, ncols):
                    v = Rr[j]
                    if v:
                        Ri[j] = sub(Ri[j], mul(f, v))
        r += 1
        if r == nrows:
            break
    return r


def has_full_column_rank_square(field: FieldSpec, cols_data: list[list[int]]) -> bool:
    """Whether a k x k matrix given as columns is invertible; early-exits."""
    k = len(cols_data)
    R = [list(col) for col in cols_data]  # work on the transpose; rank is equal
    mul, sub, inv = field.mul, field.sub, field.inv
    for c in range(k):
        pr = None
        for i in range(c, k):
            if R[i][c]:
                pr = i
                break
        if pr is None:
            return False
        if pr != c:
            R[c], R[pr] = R[pr], R[c]
        ipv = inv(R[c][c])
        Rc = R[c]
        for i in range(c + 1, k):
            if R[i][c]:
                f = mul(R[i][c], ipv)
                Ri = R[i]
                for j in range(c, k):
                    Ri[j] = sub(Ri[j], mul(f, Rc[j]))
    return True


def kernel_basis(M: FFMatrix) -> FFMatrix:
    """Basis rows of the right null space {v : M v^T = 0}.

    Returns a (cols - rank) x cols matrix; with no free columns the result
    has zero rows.  Basis vectors are in free-column order with a 1 in
    their own free position, so the output is deterministic.
    """
    F = M.field
    R, r, pivots = rref_rank(M)
    free = [c for c in range(M.cols) if c not in pivots]
    neg = F.neg
    basis = []
    for fc in free:
        v = [0] * M.cols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            coeff = R.data[i][fc]
            if coeff:
                v[pc] = neg(coeff)
        basis.append(v)
    return FFMatrix(F, basis, M.cols)


def diagonal_bilinear_solve(G: FFMatrix) -> FFMatrix:
    """Basis of {v : G diag(v) G^T = 0}.

    The k(k+1)/2 equations sum_i v_i G[a][i] G[b][i] = 0 (a <= b) are
    linear in v, so the solution space is the kernel of the stacked
    coefficient matrix.  Callers hunting for an all-nonzero v combine the
    returned basis rows themselves.
    """
    F = G.field
    mul = F.mul
    k, n = G.rows, G.cols
    eqs = []
    for a in range(k):
        ga = G.data[a]
        for b in range(a, k):
            gb = G.data[b]
            eqs.append([mul(ga[i], gb[i]) for i in range(n)])
    if not eqs:
        return FFMatrix.identity(F, n)
    return kernel_basis(FFMatrix(F, eqs, n))
