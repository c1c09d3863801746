"""Iterate degrees measured by restriction to a generic line.

The degree of the n-th iterate is read off by restricting to a random
projective line over a random word-sized prime field: the line's entries
become binary forms, one map application is a reciprocal step (one product
per independent matrix position over the common denominator) followed by an
adjugate, and clearing the tuple's content leaves coprime forms whose common
degree is deg(K^n).

A single (prime, line) witness can undercount a degree with probability
about deg/p; every reported degree therefore carries several independent
witnesses and disagreement is surfaced, never silently resolved.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import exp, log

from .binform import BinaryForm, tuple_content_clear
from .errors import DegenerateLine, IndeterminateLine, NoConsensus
from .fields import PrimeField, random_prime
from .ringmat import mat_adjugate
from .roots import isolate_largest_real_root
from .seeding import child_rng, child_seed
from .symspace import SubspaceSpec

MAX_LINE_RETRIES = 20
CONSENSUS_RETRY_ROUNDS = 2


@dataclass
class LinePath:
    """A line restricted to a subspace, iterated to some power of the map."""
    q: int
    subspace: str
    p: int
    seed: int
    class_forms: list            # one BinaryForm per coordinate class
    degree: int
    iterations: int = 0

    def grid(self):
        spec = SubspaceSpec(self.subspace, self.q)
        cls, reps = spec.grid_classes()
        by_class = {cls[r]: f for r, f in zip(reps, self.class_forms)}
        return [[by_class[cls[(i, j)]] for j in range(self.q)]
                for i in range(self.q)]


def random_line(spec: SubspaceSpec, p: int, seed: int) -> LinePath:
    """Degree-1 forms u*a + v*b for random subspace members a, b."""
    field = PrimeField(p, check=False)
    rng = random.Random(seed)
    _, reps = spec.grid_classes()
    forms = []
    for _ in reps:
        a, b = rng.randrange(p), rng.randrange(p)
        if a == 0 and b == 0:
            raise DegenerateLine("zero entry form")
        forms.append(BinaryForm.linear(field, a, b))
    path = LinePath(spec.q, spec.name, p, seed, forms, 1)
    if _det_identically_zero(path):
        raise DegenerateLine("reciprocal matrix singular along the whole line")
    return path


def _det_identically_zero(path: LinePath) -> bool:
    # det of the common-denominator reciprocal grid, as a form on the line
    grid, _ = _reciprocal_grid(path)
    q = path.q
    adj = mat_adjugate(grid)
    det = None
    for j in range(q):
        t = grid[0][j] * adj[j][0]
        det = t if det is None else det + t
    return det.is_zero()


def _reciprocal_grid(path: LinePath):
    """Common-denominator reciprocal: entry (i,j) is the product of every
    other class form; also returns the class forms for reuse."""
    spec = SubspaceSpec(path.subspace, path.q)
    cls, reps = spec.grid_classes()
    forms = path.class_forms
    m = len(forms)
    pre = [None] * (m + 1)
    for k in range(m):
        pre[k + 1] = forms[k] if pre[k] is None else pre[k] * forms[k]
    suf = [None] * (m + 1)
    for k in range(m - 1, -1, -1):
        suf[k] = forms[k] if suf[k + 1] is None else forms[k] * suf[k + 1]

    def all_but(k):
        if m == 1:
            return BinaryForm.constant(forms[0].field, 1)
        if k == 0:
            return suf[1]
        if k == m - 1:
            return pre[m - 1]
        return pre[k] * suf[k + 1]

    recip = {cls[r]: all_but(t) for t, r in enumerate(reps)}
    grid = [[recip[cls[(i, j)]] for j in range(path.q)] for i in range(path.q)]
    return grid, forms


def _known_content(path: LinePath) -> BinaryForm | None:
    """Content factor guaranteed by the lift identity, divided out before the
    gcd so the Euclidean run happens at the reduced degree.

    For the symmetric grid the adjugate tuple equals (lift) * prod(f_ii)^(q-2)
    * prod(f_ij)^(q-3); for the full grid it is (lift) * D^(q-2) with D the
    product of all entries.  The circulant families get no precomputed factor.
    """
    spec = SubspaceSpec(path.subspace, path.q)
    if path.subspace not in ("sym", "full"):
        return None
    _, reps = spec.grid_classes()
    factors = []
    for (i, j), f in zip(reps, path.class_forms):
        e = (path.q - 2) if (i == j or path.subspace == "full") else (path.q - 3)
        factors.extend([f] * e)
    if not factors:
        return None
    return _product_tree(factors)


def _product_tree(forms: list) -> BinaryForm:
    while len(forms) > 1:
        nxt = [forms[i] * forms[i + 1] for i in range(0, len(forms) - 1, 2)]
        if len(forms) % 2:
            nxt.append(forms[-1])
        forms = nxt
    return forms[0]


def iterate_once(path: LinePath) -> LinePath:
    """One application of the map to the line, reduced to coprime forms."""
    if any(f.is_zero() for f in path.class_forms):
        raise IndeterminateLine("a coordinate form vanished")
    q = path.q
    spec = SubspaceSpec(path.subspace, path.q)
    cls, reps = spec.grid_classes()
    grid, _ = _reciprocal_grid(path)
    adj = mat_adjugate(grid)
    rep_forms = [adj[i][j] for (i, j) in reps]
    if all(f.is_zero() for f in rep_forms):
        raise IndeterminateLine("adjugate vanished identically on the line")
    known = _known_content(path)
    if known is not None:
        rep_forms = [f.exact_div(known) for f in rep_forms]
    try:
        _, reduced = tuple_content_clear(rep_forms)
    except Exception as e:  # AllZero cannot happen past the check above
        raise IndeterminateLine(str(e))
    new_deg = reduced[0].degree
    if new_deg == 0:
        raise IndeterminateLine("iterate is constant on the line")
    bound = (q * q - q + 1) * path.degree
    if new_deg > bound:
        raise AssertionError(f"degree {new_deg} exceeds bound {bound}")
    return LinePath(q, path.subspace, path.p, path.seed, reduced, new_deg,
                    path.iterations + 1)


# ---------------------------------------------------------------------------
# witnesses and consensus

@dataclass
class Witness:
    prime: int
    line_seed: int
    degrees: list
    resamples: int = 0


@dataclass
class DegreeEntry:
    n: int
    degree: int
    witnesses: list              # (prime, line_seed) pairs
    consensus: bool


@dataclass
class DegreeSequence:
    q: int
    subspace: str
    entries: list
    consensus: bool
    notes: list = field(default_factory=list)

    def degrees(self) -> list:
        return [e.degree for e in self.entries]


def measure_witness(q: int, subspace: str, p: int, line_seed: int,
                    n_max: int) -> Witness:
    """Degrees for n = 1..n_max on one line over one prime."""
    spec = SubspaceSpec(subspace, q)
    resamples = 0
    seed = line_seed
    while True:
        try:
            path = random_line(spec, p, seed)
            degs = []
            for _ in range(n_max):
                path = iterate_once(path)
                degs.append(path.degree)
            return Witness(p, line_seed, degs, resamples)
        except (DegenerateLine, IndeterminateLine):
            resamples += 1
            if resamples > MAX_LINE_RETRIES:
                raise
            seed = child_seed(seed, "resample", resamples)


def _witness_job(args) -> Witness:
    return measure_witness(*args)


def degree_sequence(q: int, n_max: int, spec: SubspaceSpec | str,
                    primes_count: int = 3, lines_count: int = 3,
                    seed: int = 0, workers: int = 1) -> DegreeSequence:
    """Consensus degrees deg(K^n) for n = 1..n_max.

    Witnesses are primes_count x lines_count independent (prime, line) jobs.
    All witnesses must agree on every n; a disagreeing minority is replaced
    by fresh witnesses for a bounded number of rounds, every replacement is
    recorded, and remaining disagreement raises NoConsensus.
    """
    if isinstance(spec, str):
        spec = SubspaceSpec(spec, q)
    if q < 3 or n_max < 1:
        raise ValueError("need q >= 3 and n_max >= 1")
    jobs = []
    for i in range(primes_count):
        p = random_prime(child_rng(seed, "prime", i))
        for j in range(lines_count):
            jobs.append((q, spec.name, p, child_seed(seed, "line", i, j), n_max))
    witnesses = _run_jobs(jobs, workers)
    notes = []
    for round_no in range(CONSENSUS_RETRY_ROUNDS + 1):
        disagreeing = _disagreeing_indices(witnesses)
        if not disagreeing:
            break
        if round_no == CONSENSUS_RETRY_ROUNDS:
            n_bad = _first_disagreement(witnesses)
            raise NoConsensus(n_bad, [(w.prime, w.line_seed, w.degrees)
                                      for w in witnesses])
        notes.append(f"round {round_no}: replaced witnesses {sorted(disagreeing)} "
                     f"after disagreement {[witnesses[i].degrees for i in sorted(disagreeing)]}")
        retry_jobs = []
        for t, i in enumerate(sorted(disagreeing)):
            p = random_prime(child_rng(seed, "retry-prime", round_no, t))
            retry_jobs.append((q, spec.name, p,
                               child_seed(seed, "retry-line", round_no, t), n_max))
        fresh = _run_jobs(retry_jobs, workers)
        for i, w in zip(sorted(disagreeing), fresh):
            witnesses[i] = w
    entries = []
    for n in range(1, n_max + 1):
        vals = [w.degrees[n - 1] for w in witnesses]
        entries.append(DegreeEntry(n, vals[0],
                                   [(w.prime, w.line_seed) for w in witnesses],
                                   consensus=len(witnesses) >= 2))
    return DegreeSequence(q, spec.name, entries, consensus=True, notes=notes)


def _run_jobs(jobs, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_witness_job, jobs))
    return [_witness_job(j) for j in jobs]


def _disagreeing_indices(witnesses) -> set:
    """Indices of witnesses off the majority value at any n."""
    bad = set()
    n_max = len(witnesses[0].degrees)
    for n in range(n_max):
        vals = [w.degrees[n] for w in witnesses]
        if len(set(vals)) > 1:
            majority = max(sorted(set(vals)), key=vals.count)
            bad.update(i for i, v in enumerate(vals) if v != majority)
    return bad


def _first_disagreement(witnesses):
    for n in range(len(witnesses[0].degrees)):
        vals = [w.degrees[n] for w in witnesses]
        if len(set(vals)) > 1:
            return n + 1
    return None


# ---------------------------------------------------------------------------
# growth-rate targets and estimates

@dataclass
class DeltaValue:
    """Largest root modulus of x^2 - (q^2-4q+2) x + 1, exactly isolated."""
    q: int
    poly: tuple                  # integer coefficients, lowest first
    lo: Fraction
    hi: Fraction

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def delta_formula(q: int, width: Fraction = Fraction(1, 10 ** 12)) -> DeltaValue:
    """Exact isolating interval for the growth rate; 1 for q = 3, 4.

    For q <= 4 the quadratic's roots have modulus 1 (complex for q = 3, a
    double root at 1 for q = 4), so the largest modulus is exactly 1.
    """
    if q < 3:
        raise ValueError("q must be at least 3")
    c = q * q - 4 * q + 2
    poly = (1, -c, 1)
    if q <= 4:
        return DeltaValue(q, poly, Fraction(1), Fraction(1))
    lo, hi = isolate_largest_real_root([Fraction(x) for x in poly], width)
    return DeltaValue(q, poly, lo, hi)


@dataclass
class DeltaEstimate:
    ratios: list                 # successive Fraction ratios d_{n+1}/d_n
    log_slope: float | None      # least-squares slope of log(deg) vs n
    reference: DeltaValue
    gap: float | None            # |exp(slope) - reference| / reference
    flag: str                    # "exploratory" | "insufficient"


def estimate_delta(seq: DegreeSequence) -> DeltaEstimate:
    """Ratio and slope summary of a measured sequence, against the exact
    target.  Convergence speed carries no guarantee, so the result is
    always exploratory."""
    degs = seq.degrees()
    q = seq.q
    ref = delta_formula(q)
    if len(degs) < 2:
        return DeltaEstimate([], None, ref, None, "insufficient")
    ratios = [Fraction(degs[i + 1], degs[i]) for i in range(len(degs) - 1)]
    xs = list(range(1, len(degs) + 1))
    ys = [log(d) for d in degs]
    nx = float(len(xs))
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    slope = (nx * sxy - sx * sy) / (nx * sxx - sx * sx)
    est = exp(slope)
    refv = ref.value
    gap = abs(est - refv) / refv
    return DeltaEstimate(ratios, slope, ref, gap, "exploratory")
