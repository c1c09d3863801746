"""Report records, serialization, and the merged summary with figures.

Every run emits one `Report`: a schema-versioned JSON document with a config
echo and a sorted list of records, each carrying a tri-state verdict and the
mathematical statement it checks.  Reports with identical configs are
byte-identical apart from the timing block.  The merge step rolls previously
written JSON artifacts into one markdown summary, a delimited table, and
growth figures rendered to files next to them.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

SCHEMA_VERSION = "1"

REFS = {
    "degrees": "delta(K) = lim deg(K^n)^(1/n), the exponential rate of growth",
    "degree_formula": "deg(K) = q^2 - q + 1",
    "ratios": "successive ratios deg(K^(n+1))/deg(K^n), exploratory trend",
    "delta_gap": "ratio trend against the largest root of x^2-(q^2-4q+2)x+1",
    "charpoly": "largest modulus of the roots of x^2-(q^2-4q+2)x+1",
    "orders": ("vanishing orders along the exceptional families: "
               "b=q-2, alpha=2q-3, beta=2q-2, gamma=4q-6, lambda=4q-4"),
    "homogeneity1": ("K of [[t^2 xi, t zeta],[t zeta, v]] equals "
                     "[[t^2 xi', t zeta'],[t zeta', v']] when K maps "
                     "(xi, zeta, v) to (xi', zeta', v')"),
    "homogeneity2": "two-row block version of the scaling identity",
    "rho": "rho_{l,m}(K(x)) = K(rho_{l,m}(x)) for row/column swaps",
    "roundtrip": "K(J(I(x))) = x projectively (birational inverse)",
    "model": "iterate-degree prediction from the pullback matrix, exploratory",
}


@dataclass
class Record:
    id: str
    paper_ref: str
    verdict: str                  # "pass" | "fail" | "exploratory"
    data: dict


@dataclass
class Report:
    command: str
    config: dict
    records: list = field(default_factory=list)
    elapsed_s: float = 0.0
    version: str = SCHEMA_VERSION

    def add(self, rec_id: str, ref: str, verdict: str, data: dict):
        self.records.append(Record(rec_id, ref, verdict, data))

    def worst_verdict(self) -> str:
        if any(r.verdict == "fail" for r in self.records):
            return "fail"
        return "pass"

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "command": self.command,
            "config": _plain(self.config),
            "records": [
                {"id": r.id, "paper_ref": r.paper_ref, "verdict": r.verdict,
                 "data": _plain(r.data)}
                for r in sorted(self.records, key=lambda r: r.id)
            ],
            "timing": {"elapsed_s": round(self.elapsed_s, 3)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _plain(obj):
    """Recursively convert to JSON-serializable values; exact rationals
    become strings so nothing is rounded silently."""
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def degrees_csv(report: Report) -> str:
    """Delimited view of a degrees report: n,degree,witnesses,consensus."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["n", "degree", "witnesses", "consensus"])
    for r in sorted(report.records, key=lambda r: r.id):
        if not r.id.startswith("degree_n"):
            continue
        d = r.data
        wit = "|".join(f"{p}:{s}" for p, s in d["witnesses"])
        w.writerow([d["n"], d["degree"], wit, str(d["consensus"]).lower()])
    return buf.getvalue()


def report_markdown(report: Report) -> str:
    lines = [f"# {report.command} report", ""]
    lines.append(f"- schema version: {report.version}")
    cfg = ", ".join(f"{k}={v}" for k, v in sorted(report.config.items())
                    if v is not None)
    lines.append(f"- config: {cfg}")
    lines.append("")
    lines.append("| record | verdict | statement |")
    lines.append("|---|---|---|")
    for r in sorted(report.records, key=lambda r: r.id):
        lines.append(f"| {r.id} | {r.verdict} | {r.paper_ref} |")
    lines.append("")
    return "\n".join(lines)


def write_report(report: Report, fmt: str, out: Path | None) -> str:
    if fmt == "json":
        text = report.to_json()
    elif fmt == "csv":
        text = degrees_csv(report)
    elif fmt == "markdown":
        text = report_markdown(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if out is not None:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    return text


# ---------------------------------------------------------------------------
# merged summary over previously written artifacts

def load_reports(input_dir: Path) -> list:
    reports = []
    for path in sorted(Path(input_dir).glob("*.json")):
        with open(path) as fh:
            doc = json.load(fh)
        if doc.get("version") != SCHEMA_VERSION:
            raise ValueError(
                f"{path.name}: schema version {doc.get('version')!r} "
                f"does not match {SCHEMA_VERSION!r}")
        reports.append((path.name, doc))
    if not reports:
        raise FileNotFoundError(f"no JSON artifacts in {input_dir}")
    return reports


def merge_summary(reports: list, out_dir: Path, make_figures: bool = True) -> dict:
    """Markdown + CSV + figure files summarizing all loaded artifacts."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    by_q: dict = {}
    lines = ["# combined report", ""]
    rows = [("source", "record", "verdict", "q")]
    for name, doc in reports:
        qv = doc["config"].get("q")
        lines.append(f"## {name} ({doc['command']}, q={qv})")
        lines.append("")
        lines.append("| record | verdict | statement |")
        lines.append("|---|---|---|")
        for r in doc["records"]:
            lines.append(f"| {r['id']} | {r['verdict']} | {r['paper_ref']} |")
            rows.append((name, r["id"], r["verdict"], str(qv)))
        lines.append("")
        if doc["command"] == "degrees" and isinstance(qv, int):
            entry = by_q.setdefault(qv, {})
            degs = {}
            for r in doc["records"]:
                if r["id"].startswith("degree_n"):
                    degs[r["data"]["n"]] = r["data"]["degree"]
            if degs:
                entry["measured"] = [degs[n] for n in sorted(degs)]
            for r in doc["records"]:
                if r["id"] == "delta_gap":
                    entry["delta"] = r["data"].get("reference_float")
                if r["id"] == "model_comparison":
                    entry["model"] = r["data"].get("model")
    cmp_lines = _model_comparison_section(by_q)
    lines.extend(cmp_lines)
    md = "\n".join(lines) + "\n"
    (out_dir / "summary.md").write_text(md)
    with open(out_dir / "summary.csv", "w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    figures = []
    if make_figures:
        figures = render_figures(by_q, out_dir)
    return {"markdown": out_dir / "summary.md",
            "csv": out_dir / "summary.csv", "figures": figures}


def _model_comparison_section(by_q: dict) -> list:
    lines = ["## measured vs model (exploratory)", ""]
    lines.append("The model predictions come from powers of the pullback "
                 "matrix; per-iterate agreement is an open comparison, "
                 "recorded but never asserted.")
    lines.append("")
    lines.append("| q | n | measured | model | agree |")
    lines.append("|---|---|---|---|---|")
    for qv in sorted(by_q):
        entry = by_q[qv]
        measured = entry.get("measured", [])
        model = entry.get("model")
        if model is None:
            try:
                from .picard import model_sequence
                model = model_sequence(qv, len(measured)) if qv >= 5 else None
            except Exception:
                model = None
        for n, d in enumerate(measured, start=1):
            mv = model[n - 1] if model and n <= len(model) else ""
            agree = "yes" if mv == d else ("no" if mv != "" else "")
            lines.append(f"| {qv} | {n} | {d} | {mv} | {agree} |")
    lines.append("")
    return lines


def render_figures(by_q: dict, out_dir: Path) -> list:
    """Growth and ratio plots per q, written as PNG files."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = []
    for qv, entry in sorted(by_q.items()):
        measured = entry.get("measured")
        if not measured:
            continue
        ns = list(range(1, len(measured) + 1))
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
        ax1.semilogy(ns, measured, "o-", label="measured")
        model = entry.get("model")
        if model is None and qv >= 5:
            try:
                from .picard import model_sequence
                model = model_sequence(qv, len(measured))
            except Exception:
                model = None
        if model:
            ax1.semilogy(ns, model[:len(measured)], "s--",
                         label="pullback model")
        ax1.set_xlabel("n")
        ax1.set_ylabel("deg(K^n)")
        ax1.set_title(f"degree growth, q={qv}")
        ax1.legend()
        if len(measured) >= 2:
            ratios = [measured[i + 1] / measured[i]
                      for i in range(len(measured) - 1)]
            ax2.plot(ns[1:], ratios, "o-", label="deg ratio")
            delta = entry.get("delta")
            if delta:
                ax2.axhline(delta, color="grey", linestyle=":",
                            label=f"largest root {delta:.4f}")
            ax2.set_xlabel("n")
            ax2.set_ylabel("deg(K^(n+1)) / deg(K^n)")
            ax2.set_title("ratio trend")
            ax2.legend()
        fig.tight_layout()
        path = Path(out_dir) / f"growth_q{qv}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        out.append(path)
    return out
