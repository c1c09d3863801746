"""The projectivized symmetric-matrix space and the reciprocal-inverse map.

The map sends a matrix to the inverse of its entrywise reciprocal.  Its
homogeneous coordinate form has one component per upper-triangle position
and degree q^2 - q + 1; `khat` realizes that lift division-free, while
`k_eval` evaluates the map on concrete rational points.  Evaluation-style
operations run on the full q x q grid so the same code path serves the
symmetric space, the full matrix space and the circulant subspaces; symmetry
of the output is an enforced postcondition, not an input assumption.

Rows and columns are 0-indexed throughout.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce
from math import gcd as int_gcd

from .errors import DegenerateSample, ResourceBound, SingularJ, ZeroEntry
from .multipoly import MultiPoly, mp_gcd_list
from .ringmat import mat_adjugate, mat_det

MAX_SAMPLE_RETRIES = 20


def sym_positions(q: int) -> list:
    """Upper-triangle positions (i, j), i <= j, in row-major order."""
    return [(i, j) for i in range(q) for j in range(i, q)]


def position_index(q: int) -> dict:
    """Map from every grid cell to its upper-triangle slot number."""
    idx = {}
    for k, (i, j) in enumerate(sym_positions(q)):
        idx[(i, j)] = k
        idx[(j, i)] = k
    return idx


class SymPoint:
    """A projective point of the symmetric space: one coordinate per i <= j."""

    __slots__ = ("q", "coords")

    def __init__(self, q: int, coords):
        coords = tuple(coords)
        if q < 3:
            raise ValueError("q must be at least 3")
        if len(coords) != q * (q + 1) // 2:
            raise ValueError("wrong number of coordinates")
        self.q = q
        self.coords = coords

    @classmethod
    def from_grid(cls, grid) -> "SymPoint":
        q = len(grid)
        for i in range(q):
            for j in range(i + 1, q):
                if grid[i][j] != grid[j][i]:
                    raise ValueError(f"grid is not symmetric at ({i}, {j})")
        return cls(q, [grid[i][j] for (i, j) in sym_positions(q)])

    def to_grid(self) -> list:
        idx = position_index(self.q)
        return [[self.coords[idx[(i, j)]] for j in range(self.q)]
                for i in range(self.q)]

    def __eq__(self, other):
        return (isinstance(other, SymPoint) and self.q == other.q
                and self.coords == other.coords)

    def __repr__(self):
        return f"SymPoint(q={self.q}, {self.coords[:3]}...)"


# ---------------------------------------------------------------------------
# projective normalization and comparison over the rationals

def normalize_grid(grid) -> list:
    """Canonical integer representative: coprime entries, first nonzero > 0."""
    flat = [Fraction(x) for row in grid for x in row]
    if all(x == 0 for x in flat):
        raise ValueError("zero grid is not a projective point")
    den = reduce(lambda a, b: a * b // int_gcd(a, b),
                 (x.denominator for x in flat), 1)
    ints = [int(x * den) for x in flat]
    g = reduce(int_gcd, (abs(v) for v in ints))
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    n = len(grid)
    return [[Fraction(ints[i * n + j]) for j in range(n)] for i in range(n)]


def grids_proj_equal(a, b) -> bool:
    n = len(a)
    ref = None
    for i in range(n):
        for j in range(n):
            if a[i][j] != 0 or b[i][j] != 0:
                if (a[i][j] == 0) != (b[i][j] == 0):
                    return False
                if ref is None and a[i][j] != 0:
                    ref = (i, j)
    if ref is None:
        return False
    ri, rj = ref
    ar, br = a[ri][rj], b[ri][rj]
    return all(a[i][j] * br == b[i][j] * ar for i in range(n) for j in range(n))


# ---------------------------------------------------------------------------
# the map

def k_eval_grid(grid) -> list:
    """Apply the map to a rational grid; canonical normalized output.

    Raises ZeroEntry when some entry vanishes (the point lies on a
    coordinate hypersurface) and SingularJ when the reciprocal matrix is
    singular (the point lies on the reciprocal image of the corank locus).
    """
    n = len(grid)
    for i in range(n):
        for j in range(n):
            if grid[i][j] == 0:
                raise ZeroEntry(i, j)
    recip = [[1 / Fraction(grid[i][j]) for j in range(n)] for i in range(n)]
    if mat_det(recip) == 0:
        raise SingularJ("reciprocal matrix is singular")
    return normalize_grid(mat_adjugate(recip))


def k_eval(x: SymPoint) -> SymPoint:
    out = k_eval_grid(x.to_grid())
    return SymPoint.from_grid(out)


def j_grid(grid) -> list:
    n = len(grid)
    for i in range(n):
        for j in range(n):
            if grid[i][j] == 0:
                raise ZeroEntry(i, j)
    return [[1 / Fraction(grid[i][j]) for j in range(n)] for i in range(n)]


def i_grid(grid) -> list:
    """Exact matrix inverse (not projectivized)."""
    n = len(grid)
    det = mat_det(grid)
    if det == 0:
        raise SingularJ("matrix is singular")
    adj = mat_adjugate(grid)
    return [[adj[i][j] / det for j in range(n)] for i in range(n)]


def khat(x: SymPoint) -> SymPoint:
    """The primitive homogeneous lift, division-free in the coordinate ring.

    With P the product of all q^2 grid entries and Q the matrix whose (k, l)
    entry is the product of every grid entry except (k, l), the lift equals
    adjugate(Q) / P^(q-2) componentwise; each division is exact, and a
    failure indicates an implementation bug, not bad input.
    """
    q = x.q
    grid = x.to_grid()
    cells = [grid[i][j] for i in range(q) for j in range(q)]
    m = len(cells)
    # prefix/suffix products give every "all but one cell" product
    pre = [None] * (m + 1)
    pre[0] = None
    for k in range(m):
        pre[k + 1] = cells[k] if pre[k] is None else pre[k] * cells[k]
    suf = [None] * (m + 1)
    for k in range(m - 1, -1, -1):
        suf[k] = cells[k] if suf[k + 1] is None else cells[k] * suf[k + 1]
    total = pre[m]

    def all_but(k):
        if k == 0:
            return suf[1]
        if k == m - 1:
            return pre[m - 1]
        return pre[k] * suf[k + 1]

    qmat = [[all_but(i * q + j) for j in range(q)] for i in range(q)]
    adj = mat_adjugate(qmat)
    denom = total
    for _ in range(q - 3):
        denom = denom * total
    coords = [_exact_div(adj[i][j], denom) for (i, j) in sym_positions(q)]
    return SymPoint(q, coords)


def _exact_div(a, b):
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    return a / b


# ---------------------------------------------------------------------------
# symbolic checks (small q)

def _symbolic_point(q: int) -> SymPoint:
    n = q * (q + 1) // 2
    return SymPoint(q, [MultiPoly.var(n, k) for k in range(n)])


def primitivity_check(q: int) -> bool:
    """Whether the lift's components have constant gcd, checked symbolically.

    The multivariate gcd runs over indeterminate coordinates, so the answer
    is a statement about the map itself, not about a sample point.
    """
    if q not in (3, 4):
        raise ResourceBound("symbolic gcd supported for q in {3, 4}; "
                            "use factorization_check for q = 5")
    comps = khat(_symbolic_point(q)).coords
    return mp_gcd_list(comps).is_constant()


def factorization_check(q: int, i: int) -> bool:
    """Diagonal component splits off exactly the row/column-i monomial.

    Verifies khat_ii = D * E with E the product of all grid entries in row i
    or column i, and D not divisible by any coordinate.
    """
    if q not in (3, 4, 5):
        raise ResourceBound("symbolic factorization supported for q <= 5")
    if not 0 <= i < q:
        raise ValueError("row index out of range")
    x = _symbolic_point(q)
    idx = position_index(q)
    nv = len(x.coords)
    comp = khat(x).coords[idx[(i, i)]]
    expo = [0] * nv
    for k in range(q):
        for l in range(q):
            if k == i or l == i:
                expo[idx[(k, l)]] += 1
    e_mono = MultiPoly(nv, {tuple(expo): 1})
    if not comp.divisible_by(e_mono):
        return False
    d_part = comp.exact_div(e_mono)
    for v in range(nv):
        if d_part.divisible_by(MultiPoly.var(nv, v)):
            return False
    return True


# ---------------------------------------------------------------------------
# exact rank

def rank_of(matrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination on a cleared copy."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    work = []
    for row in rows:
        den = reduce(lambda a, b: a * b // int_gcd(a, b),
                     (x.denominator for x in row), 1)
        work.append([int(x * den) for x in row])
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((r for r in range(rank, m) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for r in range(rank + 1, m):
            for c in range(col + 1, n):
                work[r][c] = (work[rank][col] * work[r][c]
                              - work[r][col] * work[rank][c]) // prev
            work[r][col] = 0
        prev = work[rank][col]
        rank += 1
        if rank == m:
            break
    return rank


# ---------------------------------------------------------------------------
# symmetry operations and scaling identities

def rho_conjugate(l: int, m: int, x: SymPoint) -> SymPoint:
    """Interchange rows l, m and then columns l, m (an involution)."""
    grid = x.to_grid()
    grid[l], grid[m] = grid[m], grid[l]
    for row in grid:
        row[l], row[m] = row[m], row[l]
    return SymPoint.from_grid(grid)


def block_scale(grid, t, block: int) -> list:
    """Scale the leading block pattern: t^2 on the block, t on its rows/cols.

    block=1 scales entry (0,0) by t^2 and the rest of row/column 0 by t;
    block=2 does the same with the leading 2x2 block and rows/columns 0, 1.
    """
    if block not in (1, 2):
        raise ValueError("block must be 1 or 2")
    t = Fraction(t)
    n = len(grid)
    out = [row[:] for row in grid]
    for i in range(n):
        for j in range(n):
            inside = (i < block) + (j < block)
            if inside == 2:
                out[i][j] = grid[i][j] * t * t
            elif inside == 1:
                out[i][j] = grid[i][j] * t
    return out


def homogeneity_check(x: SymPoint, t, block: int = 1) -> bool:
    """Map-then-scale agrees with scale-then-map, projectively and exactly."""
    if Fraction(t) == 0:
        raise ValueError("t must be nonzero")
    lhs = k_eval_grid(block_scale(x.to_grid(), t, block))
    rhs = block_scale(k_eval_grid(x.to_grid()), t, block)
    return grids_proj_equal(lhs, rhs)


# ---------------------------------------------------------------------------
# invariant subspaces

class SubspaceSpec:
    """A named family of matrices closed under the map.

    `grid_classes` partitions the q x q grid into independent coordinate
    slots; two cells in the same class always carry equal values.  The
    rational basis realizes the family as a linear subspace for sampling
    and membership checks.
    """

    NAMES = ("sym", "full", "circulant", "sym_circulant")

    def __init__(self, name: str, q: int):
        if name not in self.NAMES:
            raise ValueError(f"unknown subspace {name!r}")
        self.name = name
        self.q = q

    def grid_classes(self) -> tuple:
        """(class id per cell, one representative cell per class)."""
        q = self.q
        cls = {}
        if self.name == "sym":
            for i in range(q):
                for j in range(q):
                    cls[(i, j)] = (min(i, j), max(i, j))
        elif self.name == "full":
            for i in range(q):
                for j in range(q):
                    cls[(i, j)] = (i, j)
        elif self.name == "circulant":
            for i in range(q):
                for j in range(q):
                    cls[(i, j)] = (j - i) % q
        else:
            for i in range(q):
                for j in range(q):
                    d = (j - i) % q
                    cls[(i, j)] = min(d, q - d)
        reps = []
        seen = set()
        for i in range(q):
            for j in range(q):
                c = cls[(i, j)]
                if c not in seen:
                    seen.add(c)
                    reps.append((i, j))
        return cls, reps

    @property
    def coordinate_count(self) -> int:
        return len(self.grid_classes()[1])

    def basis(self) -> list:
        """One 0/1 grid per coordinate class."""
        q = self.q
        cls, reps = self.grid_classes()
        out = []
        for c_rep in reps:
            c = cls[c_rep]
            out.append([[Fraction(1 if cls[(i, j)] == c else 0)
                         for j in range(q)] for i in range(q)])
        return out

    def contains(self, grid) -> bool:
        cls, reps = self.grid_classes()
        ref = {}
        for i in range(self.q):
            for j in range(self.q):
                c = cls[(i, j)]
                if c in ref:
                    if grid[i][j] != ref[c]:
                        return False
                else:
                    ref[c] = grid[i][j]
        return True

    def random_grid(self, rng: random.Random) -> list:
        cls, reps = self.grid_classes()
        vals = {cls[r]: random_rational(rng) for r in reps}
        return [[vals[cls[(i, j)]] for j in range(self.q)] for i in range(self.q)]

    def check_invariant(self, seed: int, trials: int = 10) -> bool:
        """Probabilistic closure check: map random members, test membership."""
        rng = random.Random(seed)
        done = 0
        attempts = 0
        while done < trials:
            if attempts > MAX_SAMPLE_RETRIES * trials:
                raise DegenerateSample("could not sample enough generic points")
            attempts += 1
            grid = self.random_grid(rng)
            try:
                img = k_eval_grid(grid)
            except (ZeroEntry, SingularJ):
                continue
            if not self.contains(img):
                return False
            done += 1
        return True


def random_rational(rng: random.Random, bound: int = 10_000) -> Fraction:
    num = rng.randint(1, bound) * rng.choice((1, -1))
    den = rng.randint(1, bound)
    return Fraction(num, den)


def random_sym_point(q: int, rng: random.Random) -> SymPoint:
    return SymPoint(q, [random_rational(rng) for _ in sym_positions(q)])


def random_generic_sym_point(q: int, rng: random.Random) -> SymPoint:
    """A random point where the map is defined; retries degenerate draws."""
    for _ in range(MAX_SAMPLE_RETRIES):
        x = random_sym_point(q, rng)
        try:
            k_eval(x)
        except (ZeroEntry, SingularJ):
            continue
        return x
    raise DegenerateSample("no generic point found")
