"""Blowup local charts and exact one-parameter limit verification.

Each chart parametrizes a family of symmetric matrices approaching an
exceptional configuration as the chart parameter s (or t) goes to 0:

  R1      nu (x) nu + s * (lower block v)          center: rank-one matrices
  A12     rows/cols 1, 2 scaled by s               center: those rows/cols zero
  A11     row/col 1 scaled by s                    center: that row/col zero
  B11_1   (1,1) = t^2 xi, row/col 1 = t zeta       first chart over A11 cap {x_11 = 0}
  B11_2   (1,1) = t^2 xi, row/col 1 = t xi zeta    covers xi = infinity in B11_1
  C12     (1,1), (2,2) = t^2 xi, rows 1-2 = t zeta
  D12_1   2x2 block = t^2 xi, rows 1-2 = t zeta
  D12_2   block = t^2 lam^2/lam xi, rows = t lam zeta   covers xi_12 = infinity

(indices above are 1-based as in the chart names; code is 0-based).  The
normalized coordinate of each chart is the lexicographically first
admissible slot.  Applying the map along such a path and reading off exact
entry valuations and leading coefficients verifies where each exceptional
hypersurface is sent, at first order along the path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegenerateSample,
    InadmissibleParams,
    PrecisionExhausted,
    SingularJ,
    ZeroEntry,
)
from .laurent import LaurentSeries
from .ringmat import mat_adjugate, mat_det
from .symspace import i_grid, k_eval_grid, rank_of, sym_positions

CHART_TAGS = ("R1", "A12", "A11", "B11_1", "B11_2", "C12", "D12_1", "D12_2")

MAX_RESAMPLES = 20
MAX_DOUBLINGS = 3


def default_precision(q: int) -> int:
    return 8 * q


@dataclass(frozen=True)
class ChartPoint:
    """Admissible parameters for one chart; normalized slots must equal 1."""
    tag: str
    q: int
    params: dict

    def __post_init__(self):
        if self.tag not in CHART_TAGS:
            raise InadmissibleParams(f"unknown chart {self.tag!r}")
        _validate(self)


def _sym_block(vals) -> list:
    """Copy and symmetry-check a square block of Fractions."""
    n = len(vals)
    out = [[Fraction(x) for x in row] for row in vals]
    for i in range(n):
        if len(out[i]) != n:
            raise InadmissibleParams("block is not square")
        for j in range(i + 1, n):
            if out[i][j] != out[j][i]:
                raise InadmissibleParams("block is not symmetric")
    return out


def _require(cond: bool, msg: str):
    if not cond:
        raise InadmissibleParams(msg)


def _validate(pt: ChartPoint):
    q, p = pt.q, pt.params
    tag = pt.tag
    if tag == "R1":
        nu = [Fraction(x) for x in p["nu"]]
        v = _sym_block(p["v"])
        _require(len(nu) == q and len(v) == q - 1, "R1 needs nu (q) and v (q-1)")
        _require(nu[0] == 1, "nu[0] is the normalized slot")
        _require(v[0][0] == 1, "v[0][0] is the normalized slot")
        _require(all(x != 0 for x in nu), "nu entries must be nonzero")
    elif tag == "A12":
        z = p["zeta"]
        v = _sym_block(p["v"])
        _require(len(v) == q - 2, "A12 needs v of size q-2")
        _require(Fraction(z[(0, 0)]) == 1, "zeta[0,0] is the normalized slot")
        _require(v[0][0] == 1, "v[0,0] is the normalized slot")
        for (i, j) in _zeta_slots_a12(q):
            _require((i, j) in z and Fraction(z[(i, j)]) != 0,
                     f"zeta[{i},{j}] missing or zero")
    elif tag == "A11":
        z = [Fraction(x) for x in p["zeta"]]
        v = _sym_block(p["v"])
        _require(len(z) == q and len(v) == q - 1, "A11 needs zeta (q) and v (q-1)")
        _require(z[0] == 1, "zeta[0] is the normalized slot")
        _require(v[0][0] == 1, "v[0,0] is the normalized slot")
        _require(all(x != 0 for x in z), "zeta entries must be nonzero")
    elif tag in ("B11_1", "B11_2"):
        z = [Fraction(x) for x in p["zeta"]]
        v = _sym_block(p["v"])
        _require(len(z) == q - 1 and len(v) == q - 1,
                 "B11 charts need zeta (q-1) and v (q-1)")
        _require(z[0] == 1, "zeta[0] is the normalized slot")
        _require(v[0][0] == 1, "v[0,0] is the normalized slot")
        _require(all(x != 0 for x in z), "zeta entries must be nonzero")
        _require(Fraction(p["xi"]) != 0, "xi must be nonzero")
    elif tag == "C12":
        z = p["zeta"]
        v = _sym_block(p["v"])
        xi = [Fraction(x) for x in p["xi"]]
        _require(len(v) == q - 2 and len(xi) == 2, "C12 needs v (q-2), xi (2)")
        _require(Fraction(z[(0, 1)]) == 1, "zeta[0,1] is the normalized slot")
        _require(v[0][0] == 1, "v[0,0] is the normalized slot")
        _require(all(x != 0 for x in xi), "xi entries must be nonzero")
        for (i, j) in _zeta_slots_offdiag(q):
            _require((i, j) in z and Fraction(z[(i, j)]) != 0,
                     f"zeta[{i},{j}] missing or zero")
    elif tag in ("D12_1", "D12_2"):
        z = p["zeta"]
        v = _sym_block(p["v"])
        xi = [Fraction(x) for x in p["xi"]]
        _require(len(v) == q - 2 and len(xi) == 3, "D12 needs v (q-2), xi (3)")
        _require(v[0][0] == 1, "v[0,0] is the normalized slot")
        for (i, j) in _zeta_slots_rows(q):
            _require((i, j) in z and Fraction(z[(i, j)]) != 0,
                     f"zeta[{i},{j}] missing or zero")
        _require(Fraction(z[(0, 2)]) == 1, "zeta[0,2] is the normalized slot")
        if tag == "D12_1":
            _require(all(x != 0 for x in xi), "xi entries must be nonzero")
        else:
            _require(xi[0] == 1, "xi[0] is the normalized slot")
            _require(Fraction(p["lam"]) != 0, "lam must be nonzero")


def _zeta_slots_a12(q: int) -> list:
    """(i, j), i <= j, with min < 2: the scaled slots of the A12 chart."""
    return [(i, j) for (i, j) in sym_positions(q) if min(i, j) < 2]


def _zeta_slots_offdiag(q: int) -> list:
    """Off-diagonal (i, j), i < j, min < 2: scaled slots of the C12 chart."""
    return [(i, j) for (i, j) in sym_positions(q) if i < 2 and i != j]


def _zeta_slots_rows(q: int) -> list:
    """(i, j) with i < 2 <= j: the row slots of the D12 charts."""
    return [(i, j) for (i, j) in sym_positions(q) if i < 2 <= j]


def chart_param(pt: ChartPoint, prec: int) -> list:
    """The chart's symmetric series matrix, entries exact to `prec` terms."""
    q, p = pt.q, pt.params
    tag = pt.tag

    def poly(*coeffs):
        return LaurentSeries.from_poly(coeffs, prec)

    grid = [[None] * q for _ in range(q)]
    if tag == "R1":
        nu = [Fraction(x) for x in p["nu"]]
        v = _sym_block(p["v"])
        for i in range(q):
            for j in range(q):
                c = nu[i] * nu[j]
                grid[i][j] = poly(c, v[i - 1][j - 1]) if (i and j) else poly(c)
    elif tag == "A12":
        z, v = p["zeta"], _sym_block(p["v"])
        for i in range(q):
            for j in range(q):
                if min(i, j) < 2:
                    key = (min(i, j), max(i, j))
                    grid[i][j] = poly(0, z[key])
                else:
                    grid[i][j] = poly(v[i - 2][j - 2])
    elif tag == "A11":
        z = [Fraction(x) for x in p["zeta"]]
        v = _sym_block(p["v"])
        for i in range(q):
            for j in range(q):
                if min(i, j) == 0:
                    grid[i][j] = poly(0, z[max(i, j)])
                else:
                    grid[i][j] = poly(v[i - 1][j - 1])
    elif tag in ("B11_1", "B11_2"):
        xi = Fraction(p["xi"])
        z = [Fraction(x) for x in p["zeta"]]
        v = _sym_block(p["v"])
        for i in range(q):
            for j in range(q):
                if i == j == 0:
                    grid[i][j] = poly(0, 0, xi)
                elif min(i, j) == 0:
                    zc = z[max(i, j) - 1]
                    grid[i][j] = poly(0, zc * xi if tag == "B11_2" else zc)
                else:
                    grid[i][j] = poly(v[i - 1][j - 1])
    elif tag == "C12":
        xi = [Fraction(x) for x in p["xi"]]
        z, v = p["zeta"], _sym_block(p["v"])
        for i in range(q):
            for j in range(q):
                if i == j and i < 2:
                    grid[i][j] = poly(0, 0, xi[i])
                elif min(i, j) < 2:
                    key = (min(i, j), max(i, j))
                    grid[i][j] = poly(0, z[key])
                else:
                    grid[i][j] = poly(v[i - 2][j - 2])
    elif tag in ("D12_1", "D12_2"):
        xi = [Fraction(x) for x in p["xi"]]
        xi_block = [[xi[0], xi[1]], [xi[1], xi[2]]]
        z, v = p["zeta"], _sym_block(p["v"])
        lam = Fraction(p["lam"]) if tag == "D12_2" else None
        for i in range(q):
            for j in range(q):
                if i < 2 and j < 2:
                    c = xi_block[i][j]
                    if lam is not None:
                        c = c * (lam if i != j else lam * lam)
                    grid[i][j] = poly(0, 0, c)
                elif min(i, j) < 2:
                    key = (min(i, j), max(i, j))
                    c = z[key]
                    if lam is not None:
                        c = Fraction(c) * lam
                    grid[i][j] = poly(0, c)
                else:
                    grid[i][j] = poly(v[i - 2][j - 2])
    return grid


# ---------------------------------------------------------------------------
# sampling

def _rand_nonzero(rng: random.Random, lo: int = 1, hi: int = 30) -> Fraction:
    return Fraction(rng.randint(lo, hi) * rng.choice((1, -1)))


def _rand_sym_block(rng: random.Random, n: int, pin_first: bool = True) -> tuple:
    v = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v[i][j] = v[j][i] = _rand_nonzero(rng)
    if pin_first:
        v[0][0] = Fraction(1)
    return tuple(tuple(row) for row in v)


def sample_chart_point(tag: str, q: int, rng: random.Random) -> ChartPoint:
    """Random admissible parameters (every free slot a nonzero integer)."""
    if tag == "R1":
        nu = (Fraction(1),) + tuple(_rand_nonzero(rng) for _ in range(q - 1))
        return ChartPoint(tag, q, {"nu": nu, "v": _rand_sym_block(rng, q - 1)})
    if tag == "A12":
        z = {s: _rand_nonzero(rng) for s in _zeta_slots_a12(q)}
        z[(0, 0)] = Fraction(1)
        return ChartPoint(tag, q, {"zeta": z, "v": _rand_sym_block(rng, q - 2)})
    if tag == "A11":
        z = (Fraction(1),) + tuple(_rand_nonzero(rng) for _ in range(q - 1))
        return ChartPoint(tag, q, {"zeta": z, "v": _rand_sym_block(rng, q - 1)})
    if tag in ("B11_1", "B11_2"):
        z = (Fraction(1),) + tuple(_rand_nonzero(rng) for _ in range(q - 2))
        return ChartPoint(tag, q, {"xi": _rand_nonzero(rng), "zeta": z,
                                   "v": _rand_sym_block(rng, q - 1)})
    if tag == "C12":
        z = {s: _rand_nonzero(rng) for s in _zeta_slots_offdiag(q)}
        z[(0, 1)] = Fraction(1)
        return ChartPoint(tag, q, {"xi": (_rand_nonzero(rng), _rand_nonzero(rng)),
                                   "zeta": z, "v": _rand_sym_block(rng, q - 2)})
    if tag in ("D12_1", "D12_2"):
        z = {s: _rand_nonzero(rng) for s in _zeta_slots_rows(q)}
        z[(0, 2)] = Fraction(1)
        xi = (_rand_nonzero(rng), _rand_nonzero(rng), _rand_nonzero(rng))
        params = {"xi": xi, "zeta": z, "v": _rand_sym_block(rng, q - 2)}
        if tag == "D12_2":
            params["xi"] = (Fraction(1), xi[1], xi[2])
            params["lam"] = _rand_nonzero(rng)
        return ChartPoint(tag, q, params)
    raise InadmissibleParams(f"unknown chart {tag!r}")


# ---------------------------------------------------------------------------
# the map along a path

@dataclass
class SeriesImage:
    """Image of a series path under the map, valuation-normalized."""
    vals: list                 # q x q exact valuations
    series: list               # q x q normalized Laurent series (min val 0)
    limit: list                # q x q rationals: leading coeffs where val 0
    prec: int

    def leading(self, i: int, j: int) -> Fraction:
        return self.series[i][j].leading()[1]


def k_series(grid: list, prec: int, rebuild=None) -> SeriesImage:
    """Apply the map to a matrix of Laurent series exactly.

    The image is the adjugate of the entrywise-reciprocal matrix (equal to
    the inverse up to the determinant scalar, hence the same projective
    point), rescaled so the minimum entry valuation is 0.  When an adjugate
    entry is zero to precision the computation retries at doubled precision
    via `rebuild(new_prec)`; without a rebuild hook, or after the doubling
    budget, PrecisionExhausted is raised.
    """
    q = len(grid)
    det_always_zero = True
    for attempt in range(MAX_DOUBLINGS + 1):
        for i in range(q):
            for j in range(q):
                if grid[i][j].is_zero():
                    raise ZeroEntry(i, j)
        recip = [[grid[i][j].invert().truncate(prec) for j in range(q)]
                 for i in range(q)]
        adj = mat_adjugate(recip)
        # M * adj(M) = det(M) * I gives the determinant from one dot product
        det = recip[0][0] * adj[0][0]
        for j in range(1, q):
            det = det + recip[0][j] * adj[j][0]
        entries_known = all(not adj[i][j].is_zero()
                            for i in range(q) for j in range(q))
        if not det.is_zero():
            det_always_zero = False
        if entries_known and not det.is_zero():
            m = min(adj[i][j].val for i in range(q) for j in range(q))
            series = [[adj[i][j].shift(-m) for j in range(q)] for i in range(q)]
            vals = [[series[i][j].val for j in range(q)] for i in range(q)]
            limit = [[series[i][j].coeffs[0] if vals[i][j] == 0 else Fraction(0)
                      for j in range(q)] for i in range(q)]
            return SeriesImage(vals, series, limit, prec)
        if rebuild is None:
            break
        prec *= 2
        grid = rebuild(prec)
    if det_always_zero:
        raise SingularJ("reciprocal series matrix singular to working precision")
    raise PrecisionExhausted(
        f"adjugate entry zero to precision after {MAX_DOUBLINGS} doublings")


# ---------------------------------------------------------------------------
# orbit claims

@dataclass
class OrbitReport:
    claim: str
    q: int
    seed: int
    trials: int
    verdict: str                      # "pass" | "fail"
    reference: str
    base_orders: list = field(default_factory=list)
    first_valuations: list | None = None
    first_limit: list | None = None
    failures: list = field(default_factory=list)
    note: str = "first-order consistent"


CLAIM_REFS = {
    "r1": "K_Z3(R^1) = R_{q-1}",
    "jr": "K_Z3(J R_{q-1}) = R^1",
    "sigma11": "K_Z3(Sigma_{i,i}) = A^{i,i}",
    "sigmaij": "K_Z3(Sigma_{i,j}) = A^{i,j} cap Sigma_{i,i} cap Sigma_{j,j}",
    "a11": ("K_Z4(A^{i,i}) = B^{i,i} cap I(Sigma_{i,i}); "
            "K_Z4(s=0, zeta, v) = (t=0, xi', zeta', v')"),
    "sigma12": "K_Z(Sigma_{i,j}) = C^{i,j}",
    "c12": "K_Z(C^{i,j}) = D^{i,j} cap I(Sigma_{i,j})",
    "d12": "K_Z(D^{i,j}) = D^{i,j}, with restriction equal to the map itself",
}

ORBIT_CLAIMS = tuple(CLAIM_REFS)


def orbit_check(claim: str, q: int, seed: int, trials: int = 10,
                prec: int | None = None) -> OrbitReport:
    """Run one orbit claim over seeded generic trials.

    A trial resamples (up to MAX_RESAMPLES times) when a genericity guard
    trips; a verified pattern or membership violation is a failure, never
    silently resampled.
    """
    if claim not in ORBIT_CLAIMS:
        raise ValueError(f"unknown claim {claim!r}; known: {ORBIT_CLAIMS}")
    if q < 5:
        raise ValueError("orbit claims need q >= 5")
    prec = prec or default_precision(q)
    check = _CLAIM_CHECKS[claim]
    report = OrbitReport(claim=claim, q=q, seed=seed, trials=trials,
                         verdict="pass", reference=CLAIM_REFS[claim])
    for t in range(trials):
        rng = random.Random((seed, claim, t))
        for attempt in range(MAX_RESAMPLES):
            try:
                ok, diag = check(q, rng, prec)
            except DegenerateSample:
                continue
            break
        else:
            raise DegenerateSample(
                f"claim {claim}: no generic sample in {MAX_RESAMPLES} tries")
        report.base_orders.append(diag.get("k"))
        if t == 0:
            report.first_valuations = diag.get("vals")
            report.first_limit = diag.get("limit")
        if not ok:
            report.verdict = "fail"
            report.failures.append({"trial": t, **diag})
    return report


def _expect_pattern(img: SeriesImage, expected, at_least=()) -> tuple:
    """Compare exact valuations to a pattern; entries in at_least are lower bounds."""
    q = len(img.vals)
    bad = []
    for i in range(q):
        for j in range(q):
            want = expected[i][j]
            got = img.vals[i][j]
            if (i, j) in at_least:
                if got < want:
                    bad.append(((i, j), got, f">={want}"))
            elif got != want:
                bad.append(((i, j), got, want))
    return (not bad), bad


def _base_order(img: SeriesImage) -> int:
    pos = [v for row in img.vals for v in row if v > 0]
    if not pos:
        raise DegenerateSample("no positive valuation; path did not degenerate")
    return min(pos)


def _const_series_grid(vals, prec: int) -> list:
    return [[LaurentSeries.from_poly([c], prec) for c in row] for row in vals]


def _generic_const_grid(q: int, rng: random.Random) -> list:
    g = [[Fraction(0)] * q for _ in range(q)]
    for i in range(q):
        for j in range(i, q):
            g[i][j] = g[j][i] = _rand_nonzero(rng)
    return g


def _check_r1(q: int, rng: random.Random, prec: int) -> tuple:
    pt = sample_chart_point("R1", q, rng)
    if rank_of(pt.params["v"]) < q - 1:
        raise DegenerateSample("v block singular")
    img = k_series(chart_param(pt, prec), prec,
                   rebuild=lambda P: chart_param(pt, P))
    r = rank_of(img.limit)
    return r == q - 1, {"k": None, "vals": img.vals, "limit": img.limit,
                        "limit_rank": r}


def _check_jr(q: int, rng: random.Random, prec: int) -> tuple:
    # w0 = B B^T of corank exactly 1, with every entry nonzero
    b = [[Fraction(rng.randint(1, 9) * rng.choice((1, -1)))
          for _ in range(q - 1)] for _ in range(q)]
    w0 = [[sum(b[i][k] * b[j][k] for k in range(q - 1)) for j in range(q)]
          for i in range(q)]
    if rank_of(w0) != q - 1 or any(w0[i][j] == 0 for i in range(q) for j in range(q)):
        raise DegenerateSample("w0 not generic corank one")
    g = _generic_const_grid(q, rng)

    def build(P):
        return [[LaurentSeries.from_poly([w0[i][j], g[i][j]], P).invert()
                 for j in range(q)] for i in range(q)]

    img = k_series(build(prec), prec, rebuild=build)
    r = rank_of(img.limit)
    return r == 1, {"k": None, "vals": img.vals, "limit": img.limit,
                    "limit_rank": r}


def _check_sigma_ii(q: int, rng: random.Random, prec: int) -> tuple:
    i0 = rng.randrange(q)
    base = _generic_const_grid(q, rng)
    speed = _rand_nonzero(rng)

    def build(P):
        grid = _const_series_grid(base, P)
        grid[i0][i0] = LaurentSeries.from_poly([0, speed], P)
        return grid

    img = k_series(build(prec), prec, rebuild=build)
    k = _base_order(img)
    expected = [[k if (i == i0 or j == i0) else 0 for j in range(q)]
                for i in range(q)]
    ok, bad = _expect_pattern(img, expected)
    return ok, {"k": k, "i": i0, "vals": img.vals, "limit": img.limit,
                "bad": bad}


def _check_sigma_ij(q: int, rng: random.Random, prec: int) -> tuple:
    i0 = rng.randrange(q)
    j0 = rng.randrange(q)
    while j0 == i0:
        j0 = rng.randrange(q)
    i0, j0 = min(i0, j0), max(i0, j0)
    base = _generic_const_grid(q, rng)
    speed = _rand_nonzero(rng)

    def build(P):
        grid = _const_series_grid(base, P)
        grid[i0][j0] = grid[j0][i0] = LaurentSeries.from_poly([0, speed], P)
        return grid

    img = k_series(build(prec), prec, rebuild=build)
    k = _base_order(img)
    expected = [[0] * q for _ in range(q)]
    for a in range(q):
        for bcol in range(q):
            if a in (i0, j0) or bcol in (i0, j0):
                expected[a][bcol] = k
    expected[i0][i0] = expected[j0][j0] = 2 * k
    ok, bad = _expect_pattern(img, expected,
                              at_least={(i0, i0), (j0, j0)})
    return ok, {"k": k, "ij": (i0, j0), "vals": img.vals, "limit": img.limit,
                "bad": bad}


def _check_a11(q: int, rng: random.Random, prec: int) -> tuple:
    pt = sample_chart_point("A11", q, rng)
    zeta = pt.params["zeta"]
    v = pt.params["v"]
    # the target of the image per the explicit chart formula:
    # inverse of [[0, 1/zeta], [1/zeta, 1/v]]
    inner = [[Fraction(0)] * q for _ in range(q)]
    for j in range(1, q):
        inner[0][j] = inner[j][0] = 1 / zeta[j]
    for i in range(1, q):
        for j in range(1, q):
            inner[i][j] = 1 / v[i - 1][j - 1]
    if mat_det(inner) == 0:
        raise DegenerateSample("inner matrix singular")
    w = i_grid(inner)
    if w[0][0] == 0 or all(w[0][j] == 0 for j in range(1, q)):
        raise DegenerateSample("target block data degenerate")

    img = k_series(chart_param(pt, prec), prec,
                   rebuild=lambda P: chart_param(pt, P))
    k = _base_order(img)
    expected = [[0] * q for _ in range(q)]
    for j in range(1, q):
        expected[0][j] = expected[j][0] = k
    expected[0][0] = 2 * k
    ok, bad = _expect_pattern(img, expected)
    diag = {"k": k, "vals": img.vals, "limit": img.limit, "bad": bad}
    if not ok:
        return False, diag
    ok2, why = _match_block_data(img, w, k, block=1)
    diag["reconstruction"] = why
    return ok2, diag


def _match_block_data(img: SeriesImage, w: list, k: int, block: int) -> tuple:
    """Match the image's chart data against target block data w.

    The image is only defined up to a global projective scalar and a
    reparametrization of the path speed, so solve for both from one block
    entry and one row entry, then demand exact equality everywhere:
    leading coefficients at valuation 0 equal lam * w, at k equal
    lam * mu * w, and at 2k equal lam * mu^2 * w.
    """
    q = len(w)
    lam = mu = None
    for i in range(block, q):
        for j in range(block, q):
            if w[i][j] != 0:
                if img.vals[i][j] != 0:
                    return False, f"expected valuation 0 at {(i, j)}"
                lam = img.limit[i][j] / w[i][j]
                break
        if lam is not None:
            break
    if lam in (None, 0):
        return False, "no usable block entry to solve the scalar"
    for i in range(block):
        for j in range(block, q):
            if w[i][j] != 0:
                mu = img.leading(i, j) / (lam * w[i][j])
                break
        if mu is not None:
            break
    if mu in (None, 0):
        return False, "no usable row entry to solve the speed"
    for i in range(q):
        for j in range(q):
            inside = (i < block) + (j < block)
            want = w[i][j] * lam * mu ** inside
            got = (img.limit[i][j] if img.vals[i][j] == 0
                   else img.leading(i, j) if img.vals[i][j] in (k, 2 * k)
                   else None)
            if want == 0:
                if img.vals[i][j] == 0 and img.limit[i][j] != 0:
                    return False, f"entry {(i, j)} should vanish in the limit"
                continue
            if got is None or got != want:
                return False, f"entry {(i, j)}: {got} != {want}"
    return True, "exact reconstruction with lam, mu solved"


def _check_sigma12(q: int, rng: random.Random, prec: int) -> tuple:
    base = _generic_const_grid(q, rng)
    speed = _rand_nonzero(rng)

    def build(P):
        grid = _const_series_grid(base, P)
        grid[0][1] = grid[1][0] = LaurentSeries.from_poly([0, speed], P)
        return grid

    img = k_series(build(prec), prec, rebuild=build)
    k = _base_order(img)
    expected = _block_pattern(q, k, diag_double=True)
    ok, bad = _expect_pattern(img, expected)
    return ok, {"k": k, "vals": img.vals, "limit": img.limit, "bad": bad}


def _block_pattern(q: int, k: int, diag_double: bool) -> list:
    """Valuations for the two-row family: rows 0-1 carry k, with either the
    two diagonal cells (C-chart source) or the whole 2x2 block (D-chart
    image) at 2k."""
    expected = [[0] * q for _ in range(q)]
    for i in range(q):
        for j in range(q):
            if min(i, j) < 2:
                expected[i][j] = k
    if diag_double:
        expected[0][0] = expected[1][1] = 2 * k
        expected[0][1] = expected[1][0] = k
    else:
        for i in range(2):
            for j in range(2):
                expected[i][j] = 2 * k
    return expected


def _check_c12(q: int, rng: random.Random, prec: int) -> tuple:
    pt = sample_chart_point("C12", q, rng)
    img = k_series(chart_param(pt, prec), prec,
                   rebuild=lambda P: chart_param(pt, P))
    k = _base_order(img)
    expected = _block_pattern(q, k, diag_double=False)
    ok, bad = _expect_pattern(img, expected)
    diag = {"k": k, "vals": img.vals, "limit": img.limit, "bad": bad}
    if not ok:
        return False, diag
    # membership in I(Sigma_{1,2}): the (0,1) cofactor of the assembled
    # limit matrix vanishes (block scaling leaves that vanishing invariant)
    assembled = _assemble_limit(img, k, block=2)
    minor = [row[:1] + row[2:] for r, row in enumerate(assembled) if r != 0]
    ok2 = mat_det(minor) == 0
    diag["cofactor_01"] = "zero" if ok2 else "nonzero"
    return ok2, diag


def _assemble_limit(img: SeriesImage, k: int, block: int) -> list:
    """Chart data of the image as one rational matrix: leading coefficients
    read at valuation 2k inside the block, k on its rows, 0 outside."""
    q = len(img.vals)
    out = [[Fraction(0)] * q for _ in range(q)]
    for i in range(q):
        for j in range(q):
            inside = (i < block) + (j < block)
            want = (0, k, 2 * k)[inside]
            if img.vals[i][j] == want:
                out[i][j] = img.leading(i, j)
            # higher valuation than the pattern: chart datum is 0
    return out


def _check_d12(q: int, rng: random.Random, prec: int) -> tuple:
    pt = sample_chart_point("D12_1", q, rng)
    xi = pt.params["xi"]
    z = pt.params["zeta"]
    v = pt.params["v"]
    src = [[Fraction(0)] * q for _ in range(q)]
    src[0][0], src[1][1] = xi[0], xi[2]
    src[0][1] = src[1][0] = xi[1]
    for (i, j) in _zeta_slots_rows(q):
        src[i][j] = src[j][i] = z[(i, j)]
    for i in range(2, q):
        for j in range(2, q):
            src[i][j] = v[i - 2][j - 2]
    try:
        w = k_eval_grid(src)
    except (ZeroEntry, SingularJ) as e:
        raise DegenerateSample(f"source block data degenerate: {e}")

    img = k_series(chart_param(pt, prec), prec,
                   rebuild=lambda P: chart_param(pt, P))
    k = _base_order(img)
    expected = _block_pattern(q, k, diag_double=False)
    ok, bad = _expect_pattern(img, expected)
    diag = {"k": k, "vals": img.vals, "limit": img.limit, "bad": bad}
    if not ok:
        return False, diag
    ok2, why = _match_block_data(img, w, k, block=2)
    diag["restriction"] = why
    return ok2, diag


_CLAIM_CHECKS = {
    "r1": _check_r1,
    "jr": _check_jr,
    "sigma11": _check_sigma_ii,
    "sigmaij": _check_sigma_ij,
    "a11": _check_a11,
    "sigma12": _check_sigma12,
    "c12": _check_c12,
    "d12": _check_d12,
}


# ---------------------------------------------------------------------------
# vanishing orders of the homogeneous lift along the charts

ORDER_CHARTS = ("R1", "A11", "B11_1", "C12", "D12_1")


@dataclass
class VanishingOrders:
    q: int
    seed: int
    b: int
    alpha: int
    beta: int
    gamma: int
    lam: int

    def as_tuple(self) -> tuple:
        return (self.b, self.alpha, self.beta, self.gamma, self.lam)

    @staticmethod
    def targets(q: int) -> tuple:
        return (q - 2, 2 * q - 3, 2 * q - 2, 4 * q - 6, 4 * q - 4)


def vanishing_orders(q: int, seed: int) -> VanishingOrders:
    """Minimum vanishing order of the lift's components along each chart.

    The lift component order is ord(adjugate(Q)_ij) - (q-2) ord(P), with P
    the product of all q^2 grid entries and Q the all-but-one-cell products;
    everything runs over exact truncated series, so the orders are exact.
    """
    if q not in (5, 6):
        raise ResourceBound("vanishing orders supported for q in {5, 6}")
    mins = []
    for tag in ORDER_CHARTS:
        rng = random.Random((seed, tag, q))
        pt = sample_chart_point(tag, q, rng)
        prec = default_precision(q)
        for attempt in range(MAX_DOUBLINGS + 1):
            got = _lift_orders(pt, q, prec)
            if got is not None:
                mins.append(got)
                break
            prec *= 2
        else:
            raise PrecisionExhausted(f"chart {tag}: orders undecidable")
    return VanishingOrders(q, seed, *mins)


def _lift_orders(pt: ChartPoint, q: int, prec: int):
    grid = chart_param(pt, prec)
    cells = [grid[i][j] for i in range(q) for j in range(q)]
    m = len(cells)
    pre = [None] * (m + 1)
    for k in range(m):
        pre[k + 1] = cells[k] if pre[k] is None else pre[k] * cells[k]
    suf = [None] * (m + 1)
    for k in range(m - 1, -1, -1):
        suf[k] = cells[k] if suf[k + 1] is None else cells[k] * suf[k + 1]
    total = pre[m]
    ord_p = total.leading()[0]

    def all_but(k):
        if k == 0:
            return suf[1]
        if k == m - 1:
            return pre[m - 1]
        return pre[k] * suf[k + 1]

    qmat = [[all_but(i * q + j) for j in range(q)] for i in range(q)]
    adj = mat_adjugate(qmat)
    orders = []
    for (i, j) in sym_positions(q):
        if adj[i][j].is_zero():
            return None
        orders.append(adj[i][j].leading()[0] - (q - 2) * ord_p)
    return min(orders)
