"""Command-line entry points.

    kinvlab degrees       measure iterate degrees and the growth-rate gap
    kinvlab charpoly      spectral checks of the pullback model
    kinvlab verify-orbits exceptional-orbit claims along blowup charts
    kinvlab orders        vanishing orders along the exceptional families
    kinvlab report        merge JSON artifacts into markdown/CSV + figures

All commands take --seed; identical configurations reproduce identical
output apart from timing.  Exit codes: 0 all checks pass, 1 usage or
resource errors, 2 a mathematical check failed or witnesses disagreed.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import charts, degseq, picard, reporting
from .errors import KinvError, NoConsensus, ResourceBound, UnsupportedQ
from .reporting import REFS, Report
from .seeding import child_rng, child_seed
from .symspace import (
    SubspaceSpec,
    block_scale,
    grids_proj_equal,
    homogeneity_check,
    i_grid,
    j_grid,
    k_eval,
    k_eval_grid,
    random_generic_sym_point,
    rho_conjugate,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunConfig:
    command: str
    q: object = None
    n_max: int | None = None
    space: str = "sym"
    primes: int = 3
    lines: int = 3
    trials: int = 10
    seed: int = 0
    precision: int | None = None
    fmt: str = "json"
    out: str | None = None
    claim: str | None = None
    workers: int = 1
    inputs: str | None = None

    def as_dict(self) -> dict:
        return {
            "command": self.command, "q": self.q, "n": self.n_max,
            "space": self.space, "primes": self.primes, "lines": self.lines,
            "trials": self.trials, "seed": self.seed,
            "precision": self.precision, "format": self.fmt,
            "out": self.out, "claim": self.claim, "workers": self.workers,
        }


def _parse_q_range(text: str) -> list:
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
        if hi < lo:
            raise ValueError("empty q range")
        return list(range(lo, hi + 1))
    return [int(text)]


def build_parser() -> _Parser:
    ap = _Parser(prog="kinvlab",
                 description="exact-arithmetic laboratory for the "
                             "reciprocal-inverse map on symmetric matrices")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_out=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", dest="fmt", default="json",
                       choices=("json", "csv", "markdown"))
        if with_out:
            p.add_argument("--out", default=None, help="output file path")

    p = sub.add_parser("degrees", help="iterate degrees on a generic line")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, default=3, help="highest iterate")
    p.add_argument("--space", default="sym", choices=SubspaceSpec.NAMES)
    p.add_argument("--primes", type=int, default=3)
    p.add_argument("--lines", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)
    common(p)

    p = sub.add_parser("charpoly", help="pullback-model spectral checks")
    p.add_argument("--q", required=True, help="size or range, e.g. 5 or 5..12")
    common(p)

    p = sub.add_parser("verify-orbits", help="exceptional-orbit claims")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--claim", default=None,
                   help=f"restrict to one claim: {', '.join(charts.ORBIT_CLAIMS)}")
    p.add_argument("--precision", type=int, default=None)
    common(p)

    p = sub.add_parser("orders", help="vanishing orders along the charts")
    p.add_argument("--q", type=int, required=True)
    common(p)

    p = sub.add_parser("report", help="merge JSON artifacts into a summary")
    p.add_argument("inputs", help="directory containing report JSON files")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--no-figures", action="store_true")
    p.add_argument("--seed", type=int, default=0)

    return ap


# ---------------------------------------------------------------------------

def cmd_degrees(cfg: RunConfig) -> Report:
    rep = Report("degrees", cfg.as_dict())
    t0 = time.time()
    seq = degseq.degree_sequence(cfg.q, cfg.n_max, cfg.space,
                                 primes_count=cfg.primes,
                                 lines_count=cfg.lines,
                                 seed=cfg.seed, workers=cfg.workers)
    est = degseq.estimate_delta(seq)
    for e in seq.entries:
        rep.add(f"degree_n{e.n}", REFS["degrees"], "pass",
                {"n": e.n, "degree": e.degree, "witnesses": e.witnesses,
                 "consensus": e.consensus})
    if cfg.space in ("sym", "full"):
        want = cfg.q * cfg.q - cfg.q + 1
        got = seq.entries[0].degree
        rep.add("degree_formula_n1", REFS["degree_formula"],
                "pass" if got == want else "fail",
                {"expected": want, "measured": got})
    rep.add("ratios", REFS["ratios"], "exploratory",
            {"ratios": [str(r) for r in est.ratios],
             "ratio_floats": [float(r) for r in est.ratios],
             "in_range": [1 < r <= cfg.q * cfg.q - cfg.q + 1
                          for r in est.ratios]})
    ref = est.reference
    rep.add("delta_gap", REFS["delta_gap"], "exploratory",
            {"log_slope": est.log_slope,
             "slope_estimate": None if est.log_slope is None else
             math.exp(est.log_slope),
             "reference_float": ref.value,
             "reference_interval": [str(ref.lo), str(ref.hi)],
             "gap": est.gap, "flag": est.flag})
    if cfg.q >= 5:
        model = picard.model_sequence(cfg.q, cfg.n_max)
        rep.add("model_comparison", REFS["model"], "exploratory",
                {"measured": seq.degrees(), "model": model,
                 "agree": seq.degrees() == model[:len(seq.entries)]})
    if seq.notes:
        rep.add("witness_notes", REFS["degrees"], "exploratory",
                {"notes": seq.notes})
    rep.elapsed_s = time.time() - t0
    return rep


def cmd_charpoly(cfg: RunConfig) -> Report:
    rep = Report("charpoly", cfg.as_dict())
    t0 = time.time()
    for qv in cfg.q if isinstance(cfg.q, list) else [cfg.q]:
        chk = picard.check_factor(qv)
        ok = chk.divides and chk.dominant_match
        rep.add(f"charpoly_q{qv:02d}", REFS["charpoly"],
                "pass" if ok else "fail",
                {"q": qv, "char_poly": chk.char_coeffs,
                 "quadratic": chk.quadratic, "quotient": chk.quotient,
                 "divides": chk.divides, "dominant_match": chk.dominant_match,
                 "dominant_interval": [str(chk.dominant_lo), str(chk.dominant_hi)],
                 "dominant_float": float((chk.dominant_lo + chk.dominant_hi) / 2),
                 "method": chk.method})
    rep.elapsed_s = time.time() - t0
    return rep


def _identity_records(rep: Report, q: int, seed: int, points: int = 20):
    rng = child_rng(seed, "identities")
    h1 = h2 = rho_ok = rt = True
    for _ in range(points):
        x = random_generic_sym_point(q, rng)
        t = rng.choice((2, 3, 5, 7, -2, -3))
        h1 &= homogeneity_check(x, t, block=1)
        h2 &= homogeneity_check(x, t, block=2)
        l, m = rng.randrange(q), rng.randrange(q)
        lhs = rho_conjugate(l, m, k_eval(x))
        rhs = k_eval(rho_conjugate(l, m, x))
        rho_ok &= grids_proj_equal(lhs.to_grid(), rhs.to_grid())
        back = k_eval_grid(j_grid(i_grid(x.to_grid())))
        rt &= grids_proj_equal(back, x.to_grid())
    rep.add("homogeneity_block1", REFS["homogeneity1"],
            "pass" if h1 else "fail", {"points": points})
    rep.add("homogeneity_block2", REFS["homogeneity2"],
            "pass" if h2 else "fail", {"points": points})
    rep.add("rho_equivariance", REFS["rho"],
            "pass" if rho_ok else "fail", {"points": points})
    rep.add("inverse_roundtrip", REFS["roundtrip"],
            "pass" if rt else "fail", {"points": points})


def cmd_verify_orbits(cfg: RunConfig) -> Report:
    rep = Report("verify-orbits", cfg.as_dict())
    t0 = time.time()
    claims = charts.ORBIT_CLAIMS if cfg.claim is None else (cfg.claim,)
    for claim in claims:
        r = charts.orbit_check(claim, cfg.q, child_seed(cfg.seed, claim),
                               trials=cfg.trials, prec=cfg.precision)
        rep.add(f"orbit_{claim}", r.reference, r.verdict,
                {"trials": r.trials, "base_orders": r.base_orders,
                 "first_valuations": r.first_valuations,
                 "failures": r.failures, "note": r.note})
    if cfg.claim is None:
        _identity_records(rep, cfg.q, cfg.seed)
    rep.elapsed_s = time.time() - t0
    return rep


def cmd_orders(cfg: RunConfig) -> Report:
    rep = Report("orders", cfg.as_dict())
    t0 = time.time()
    targets = charts.VanishingOrders.targets(cfg.q)
    for k in range(2):
        seed = child_seed(cfg.seed, "orders", k)
        rec = charts.vanishing_orders(cfg.q, seed)
        got = rec.as_tuple()
        rep.add(f"orders_q{cfg.q}_s{k}", REFS["orders"],
                "pass" if got == targets else "fail",
                {"q": cfg.q, "seed_index": k, "measured": list(got),
                 "targets": list(targets),
                 "names": ["b", "alpha", "beta", "gamma", "lambda"]})
    rep.elapsed_s = time.time() - t0
    return rep


def cmd_report(cfg: RunConfig, make_figures: bool) -> int:
    try:
        docs = reporting.load_reports(Path(cfg.inputs))
    except (FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    out_dir = Path(cfg.out) if cfg.out else Path(cfg.inputs)
    paths = reporting.merge_summary(docs, out_dir, make_figures=make_figures)
    print(paths["markdown"])
    print(paths["csv"])
    for f in paths["figures"]:
        print(f)
    return EXIT_OK


# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        if ns.command == "degrees":
            cfg = RunConfig("degrees", q=ns.q, n_max=ns.n, space=ns.space,
                            primes=ns.primes, lines=ns.lines, seed=ns.seed,
                            fmt=ns.fmt, out=ns.out, workers=ns.workers)
            if cfg.q < 3:
                print("error: q must be at least 3", file=sys.stderr)
                return EXIT_USAGE
            rep = cmd_degrees(cfg)
        elif ns.command == "charpoly":
            try:
                qs = _parse_q_range(ns.q)
            except ValueError:
                print(f"error: bad q specification {ns.q!r}", file=sys.stderr)
                return EXIT_USAGE
            if min(qs) < 5 or max(qs) > 12:
                print("error: charpoly supports q in 5..12 (the model "
                      "assumes q >= 5)", file=sys.stderr)
                return EXIT_USAGE
            cfg = RunConfig("charpoly", q=qs, seed=ns.seed, fmt=ns.fmt,
                            out=ns.out)
            rep = cmd_charpoly(cfg)
        elif ns.command == "verify-orbits":
            if ns.q < 5:
                print("error: orbit claims need q >= 5", file=sys.stderr)
                return EXIT_USAGE
            if ns.claim is not None and ns.claim not in charts.ORBIT_CLAIMS:
                print(f"error: unknown claim {ns.claim!r}", file=sys.stderr)
                return EXIT_USAGE
            cfg = RunConfig("verify-orbits", q=ns.q, trials=ns.trials,
                            seed=ns.seed, precision=ns.precision,
                            fmt=ns.fmt, out=ns.out, claim=ns.claim)
            rep = cmd_verify_orbits(cfg)
        elif ns.command == "orders":
            if ns.q not in (5, 6):
                print("error: orders supports q in {5, 6} (runtime bound)",
                      file=sys.stderr)
                return EXIT_USAGE
            cfg = RunConfig("orders", q=ns.q, seed=ns.seed, fmt=ns.fmt,
                            out=ns.out)
            rep = cmd_orders(cfg)
        elif ns.command == "report":
            cfg = RunConfig("report", out=ns.out, inputs=ns.inputs,
                            seed=ns.seed)
            return cmd_report(cfg, make_figures=not ns.no_figures)
        else:  # pragma: no cover
            return EXIT_USAGE
    except NoConsensus as e:
        print(f"error: no consensus: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (ResourceBound, UnsupportedQ) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KinvError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED

    text = reporting.write_report(rep, cfg.fmt, Path(cfg.out) if cfg.out else None)
    if cfg.out is None:
        sys.stdout.write(text)
    return EXIT_OK if rep.worst_verdict() == "pass" else EXIT_CHECK_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
