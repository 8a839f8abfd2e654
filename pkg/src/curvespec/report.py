"""Serialization of results: exact ``p/q`` strings, decimal annotations,
and the full JSON report."""

from __future__ import annotations

import csv
import io
import json
from decimal import Context, Decimal
from fractions import Fraction

from . import __version__
from .puiseux import characteristic_data, format_pairs
from .resolution import DecoratedResolution, log_canonical_threshold
from .spectrum import Spectrum
from .variance import hertling_check, stage_stats
from .verify import VerificationReport

_CTX = Context(prec=12)


def exact(x) -> str:
    return str(Fraction(x))


def approx(x) -> str:
    """Decimal rendering of ``x`` to 12 significant digits (annotation only)."""
    x = Fraction(x)
    d = _CTX.divide(Decimal(x.numerator), Decimal(x.denominator))
    return format(d, "f") if d == d.to_integral_value() else str(d)


def spectrum_rows(s: Spectrum) -> list[dict]:
    return [{"alpha": exact(a), "mult": m, "approx": approx(a)} for a, m in s.entries]


def format_spectrum(s: Spectrum, fmt: str = "text") -> str:
    rows = spectrum_rows(s)
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["alpha", "mult", "approx"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    return _table(["alpha", "mult", "approx"], [[r["alpha"], str(r["mult"]), r["approx"]] for r in rows])


def _table(header, rows) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).ljust(w) for x, w in zip(line, widths)).rstrip() for line in [header, *rows]]
    return "\n".join(lines) + "\n"


def resolution_rows(dec: DecoratedResolution) -> list[dict]:
    return [
        {
            "vertex": v.label,
            "m": dec.m[v],
            "dtilde": dec.dtilde[v],
            "d": dec.dtilde[v] - 1,
            "e": exact(dec.e[v]),
            "degree": dec.graph.degree(v),
        }
        for v in dec.diagram.white
    ]


def format_resolution(dec: DecoratedResolution) -> str:
    header = ["vertex", "m", "d", "e", "center_mult", "degree"]
    rows = [
        [v.label, str(dec.m[v]), str(dec.dtilde[v] - 1), exact(dec.e[v]),
         str(dec.diagram.center_mult[v]), str(dec.graph.degree(v))]
        for v in dec.diagram.white
    ]
    out = _table(header, rows)
    out += "ruptures: " + "; ".join(
        f"{r.vertex.label} m={r.m} neighbors=({','.join(map(str, r.neighbor_mults))})" for r in dec.ruptures
    ) + "\n"
    out += f"lct: {exact(log_canonical_threshold(dec))}\n"
    return out


def build_report(pairs, dec: DecoratedResolution, verification: VerificationReport) -> dict:
    """Assemble the full report as a JSON-ready dict with a fixed key order."""
    cd = characteristic_data(pairs)
    s = verification.spectrum
    h = hertling_check(s, cd.g)
    stats = stage_stats(cd, s)
    return {
        "version": __version__,
        "pairs": format_pairs(cd.pairs),
        "characteristic": {
            "g": cd.g,
            "w": list(cd.w),
            "nprime": list(cd.nprime),
            "mu": cd.mu,
            "mu_stage": list(cd.mu_stage),
            "alpha1": exact(cd.alpha1),
        },
        "spectrum": spectrum_rows(s),
        "resolution": {
            "vertex_count": len(dec.diagram.white),
            "vertices": resolution_rows(dec),
            "ruptures": [
                {"vertex": r.vertex.label, "m": r.m,
                 "neighbors": [u.label for u in r.neighbors], "neighbor_mults": list(r.neighbor_mults)}
                for r in dec.ruptures
            ],
        },
        "lct": exact(log_canonical_threshold(dec)),
        "variance": {
            "V": exact(h.variance),
            "V_approx": approx(h.variance),
            "bound": exact(h.bound),
            "gap": exact(h.gap),
            "stages": [
                {"nu": st.nu, "mu_stage": st.mu_stage, "S": exact(st.S), "eps": exact(st.eps)} for st in stats
            ],
        },
        "verification": {c.name: "pass" if c.passed else "fail" for c in verification.checks},
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
