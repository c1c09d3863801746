"""Square matrices over an arbitrary commutative coefficient ring.

Entries only need +, -, unary - and *; that covers rationals, prime-field
residues, binary forms and truncated Laurent series alike.  Adjugates are
computed division-free by expanding maximal minors with a memoized subset
dynamic program, which is exact over non-field rings and cheap for the sizes
used here (n <= 8).
"""

from __future__ import annotations

from itertools import combinations

from .errors import SingularSeries

ADJUGATE_MAX_SIZE = 8


def mat_adjugate(rows: list) -> list:
    """Adjugate of a square matrix given as nested lists of ring elements.

    Satisfies M * adj(M) = det(M) * I; entry (i, j) of the result is the
    (j, i)-cofactor of M.
    """
    n = len(rows)
    if n > ADJUGATE_MAX_SIZE:
        raise ValueError(f"adjugate supported up to size {ADJUGATE_MAX_SIZE}")
    if n == 1:
        raise ValueError("adjugate needs size >= 2")
    adj = [[None] * n for _ in range(n)]
    cols = tuple(range(n))
    for di in range(n):
        minors = _maximal_minors_excluding_row(rows, di)
        for dj in range(n):
            m = minors[dj]
            adj[dj][di] = -m if (di + dj) % 2 else m
    return adj


def _maximal_minors_excluding_row(rows: list, di: int) -> list:
    """All (n-1)x(n-1) minors of M with row di deleted, indexed by deleted column."""
    n = len(rows)
    use_rows = [r for r in range(n) if r != di]
    cols = tuple(range(n))
    # build k-column minors of the last k rows of the submatrix, bottom-up
    last = use_rows[-1]
    minors = {(c,): rows[last][c] for c in cols}
    for level in range(2, n):
        r = use_rows[-level]
        row = rows[r]
        new = {}
        for sub in combinations(cols, level):
            acc = None
            for t, c in enumerate(sub):
                term = row[c] * minors[sub[:t] + sub[t + 1:]]
                if t % 2:
                    term = -term
                acc = term if acc is None else acc + term
            new[sub] = acc
        minors = new
    out = []
    for dj in range(n):
        sub = cols[:dj] + cols[dj + 1:]
        out.append(minors[sub])
    return out


def mat_det(rows: list):
    """Determinant by expansion along the first row, reusing the minor DP."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    minors = _maximal_minors_excluding_row(rows, 0)
    acc = None
    for j in range(n):
        term = rows[0][j] * minors[j]
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def mat_mul(a: list, b: list) -> list:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = a[i][0] * b[0][j]
            for k in range(1, n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_transpose(a: list) -> list:
    n = len(a)
    return [[a[j][i] for j in range(n)] for i in range(n)]


def mat_is_symmetric(a: list) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


class RingMatrix:
    """Thin immutable wrapper used where a named matrix type reads better."""

    __slots__ = ("n", "rows", "symmetric")

    def __init__(self, rows, symmetric: bool | None = None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.n = n
        self.rows = rows
        self.symmetric = mat_is_symmetric(rows) if symmetric is None else symmetric

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def adjugate(self) -> "RingMatrix":
        return RingMatrix(mat_adjugate(self.rows))

    def det(self):
        return mat_det(self.rows)

    def __mul__(self, other: "RingMatrix") -> "RingMatrix":
        return RingMatrix(mat_mul(self.rows, other.rows))

    def transpose(self) -> "RingMatrix":
        return RingMatrix(mat_transpose(self.rows))

    def __eq__(self, other):
        return isinstance(other, RingMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"RingMatrix(n={self.n})"


def series_mat_invert(rows: list, prec: int) -> list:
    """Inverse of a matrix of Laurent series, entries exact to their windows.

    Raises SingularSeries when the determinant vanishes to precision; the
    caller may rebuild the inputs at a higher precision and retry.
    """
    det = mat_det(rows)
    if det.is_zero():
        raise SingularSeries("determinant vanishes to working precision")
    adj = mat_adjugate(rows)
    dinv = det.invert().truncate(prec)
    return [[(e * dinv).truncate(prec) for e in row] for row in adj]
